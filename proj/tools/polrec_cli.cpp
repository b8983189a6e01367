// Copyright 2026 The Polrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polrec_cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "polrec/errors.hpp"
#include "polrec/eval.hpp"
#include "polrec/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

namespace polrec::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct Options {
  // shared
  std::string events_path, anchors_path, model_path, truth_path, out_path;
  std::string user;
  bool strict = false;
  std::uint64_t seed = 0;
  std::size_t n = 10;
  WalkParams walk;
  DiversifyParams div;
  // synth
  SynthParams synth;
  // evaluate
  std::size_t holdout_k = 1;
  std::string diversify_mode = "off";
};

std::vector<InteractionEvent> read_events(const Options& opt) {
  ParseStats stats;
  auto events = load_events(opt.events_path, opt.strict, &stats);
  if (stats.skipped > 0) {
    std::cerr << "skipped " << stats.skipped << " malformed line(s)\n";
  }
  return events;
}

std::optional<AnchorSet> read_anchors(const Options& opt) {
  if (opt.anchors_path.empty()) return std::nullopt;
  return load_anchors(opt.anchors_path);
}

// Writes to the --out path, or stdout when none was given.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw Error(errc::io_failure, "cannot write output file: " + out_path);
  }
  out << text;
}

int run_synth(const Options& opt) {
  const SynthDataset data = generate_synthetic(opt.synth);
  save_events(opt.out_path, data.events);
  if (!opt.truth_path.empty()) save_truth(opt.truth_path, data);
  return kExitOk;
}

int run_fit(const Options& opt) {
  const auto events = read_events(opt);
  const InteractionGraph graph = build_graph(events);
  const auto anchors = read_anchors(opt);
  FitOptions fit_opts;
  fit_opts.seed = opt.seed;
  const IdeologyModel model =
      fit_ideology(graph, anchors ? &*anchors : nullptr, fit_opts);
  save_model(opt.out_path, model);
  return kExitOk;
}

int run_recommend(const Options& opt) {
  const auto events = read_events(opt);
  const InteractionGraph graph = build_graph(events);
  const IdeologyModel model = load_model(opt.model_path);
  const auto user = graph.user_index(opt.user);
  if (!user) {
    throw Error(errc::unknown_user, "unknown user: " + opt.user);
  }
  DiversifyParams div = opt.div;
  div.list_size = opt.n;
  const auto recs = diversify_recommend(graph, model, *user, opt.walk, div);

  std::string text;
  std::size_t rank = 1;
  for (const Recommendation& r : recs) {
    nlohmann::ordered_json j;
    j["rank"] = rank++;
    j["item"] = graph.item_id(r.item);
    j["score"] = r.score;
    j["phi"] = r.phi;
    j["backfilled"] = r.backfilled;
    text += j.dump();
    text += '\n';
  }
  emit(opt.out_path, text);
  return kExitOk;
}

int run_evaluate(const Options& opt) {
  const auto events = read_events(opt);
  const HoldoutSplit split =
      holdout_split(events, SplitSpec{opt.holdout_k, opt.seed});
  const InteractionGraph train = build_graph(split.train_events);
  const auto anchors = read_anchors(opt);
  const IdeologyModel model =
      fit_ideology(train, anchors ? &*anchors : nullptr, FitOptions{});

  auto run_one = [&](bool use_diversifier) {
    return evaluate(train, model, split.test_pairs, opt.walk, opt.div,
                    use_diversifier, opt.n);
  };

  std::string text;
  if (opt.diversify_mode == "both") {
    nlohmann::ordered_json j;
    j["baseline"] = nlohmann::json::parse(report_to_string(run_one(false)));
    j["diversified"] = nlohmann::json::parse(report_to_string(run_one(true)));
    text = j.dump(2) + "\n";
  } else {
    text = report_to_string(run_one(opt.diversify_mode == "on")) + "\n";
  }
  emit(opt.out_path, text);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  Options opt;
  CLI::App app{"polrec: event-specific ideology scaling and diversity-aware "
               "top-N recommendation over user-item share graphs"};
  app.require_subcommand(1);

  auto add_events = [&](CLI::App* cmd) {
    cmd->add_option("--events", opt.events_path, "event file (JSON lines)")
        ->required();
    cmd->add_flag("--strict", opt.strict,
                  "abort on the first malformed event line");
  };
  auto add_walk = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", opt.walk.alpha, "walk probability exponent")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--beta", opt.walk.beta, "item popularity penalty")
        ->check(CLI::Range(0.0, 1.0));
  };
  auto add_div = [&](CLI::App* cmd) {
    cmd->add_option("--lambda", opt.div.lambda,
                    "relevance-diversity tradeoff weight")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--tau", opt.div.tau, "acceptability window half-width")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--pool", opt.div.pool_size, "candidate pool size")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* synth = app.add_subcommand(
      "synth", "generate a polarized synthetic share dataset");
  synth->add_option("--users", opt.synth.n_users, "number of users")
      ->required()
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  synth->add_option("--items", opt.synth.n_items, "number of items")
      ->required()
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  synth->add_option("--mean-a", opt.synth.mean_a, "community A mean position");
  synth->add_option("--mean-b", opt.synth.mean_b, "community B mean position");
  synth->add_option("--std", opt.synth.std_dev, "within-community std")
      ->check(CLI::PositiveNumber);
  synth->add_option("--rho", opt.synth.rho, "base share rate")
      ->check(CLI::Range(1e-12, 1.0));
  synth->add_option("--bandwidth", opt.synth.bandwidth, "affinity bandwidth")
      ->check(CLI::PositiveNumber);
  synth->add_option("--seed", opt.synth.seed, "generator seed");
  synth->add_option("--out", opt.out_path, "event file to write")->required();
  synth->add_option("--truth", opt.truth_path, "ground-truth CSV to write");

  CLI::App* fit = app.add_subcommand(
      "fit", "estimate user and item ideological positions");
  add_events(fit);
  fit->add_option("--anchors", opt.anchors_path,
                  "anchor CSV orienting the axis (user,sign)");
  fit->add_option("--seed", opt.seed, "power-iteration start seed")
      ->default_val(std::uint64_t{42});
  fit->add_option("--out", opt.out_path, "model file to write")->required();

  CLI::App* recommend = app.add_subcommand(
      "recommend", "diversity-aware top-N recommendations for one user");
  add_events(recommend);
  recommend->add_option("--model", opt.model_path, "fitted model file")
      ->required();
  recommend->add_option("--user", opt.user, "external user identifier")
      ->required();
  recommend->add_option("--n", opt.n, "list length")->check(CLI::PositiveNumber);
  add_walk(recommend);
  add_div(recommend);
  recommend->add_option("--out", opt.out_path,
                        "output file (default: stdout)");

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "holdout split, fit on train, report accuracy + diversity");
  add_events(evaluate);
  evaluate->add_option("--anchors", opt.anchors_path,
                       "anchor CSV orienting the axis (user,sign)");
  evaluate->add_option("--holdout-k", opt.holdout_k,
                       "held-out interactions per user")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--seed", opt.seed, "holdout sampling seed");
  evaluate->add_option("--n", opt.n, "list length")->check(CLI::PositiveNumber);
  add_walk(evaluate);
  add_div(evaluate);
  evaluate
      ->add_option("--diversify", opt.diversify_mode,
                   "evaluate the diversified pipeline, the plain walk, or "
                   "both")
      ->check(CLI::IsMember({"on", "off", "both"}));
  evaluate->add_option("--out", opt.out_path, "report file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(synth)) return run_synth(opt);
    if (app.got_subcommand(fit)) return run_fit(opt);
    if (app.got_subcommand(recommend)) return run_recommend(opt);
    return run_evaluate(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (is_numeric_error(e.code())) return kExitNumeric;
    // parameter-domain violations surface from flag values, so they are
    // usage errors rather than data errors
    return e.code() == errc::invalid_params ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace polrec::cli
