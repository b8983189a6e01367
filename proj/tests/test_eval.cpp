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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "polrec/errors.hpp"
#include "polrec/eval.hpp"
#include "polrec/synth.hpp"

using namespace polrec;

namespace {

std::set<std::pair<std::string, std::string>> pair_set(
    const std::vector<InteractionEvent>& events) {
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& e : events) pairs.emplace(e.user, e.item);
  return pairs;
}

}  // namespace

TEST_CASE("holdout eligibility and cardinality") {
  std::vector<InteractionEvent> events;
  events.push_back({"solo", "i0", std::nullopt, "share"});  // 1 item, k=1
  for (int k = 0; k < 5; ++k) {
    events.push_back({"rich", "i" + std::to_string(k), std::nullopt, "share"});
  }
  SUBCASE("k=1: the single-interaction user stays in train") {
    const auto split = holdout_split(events, {1, 7});
    for (const auto& [u, i] : split.test_pairs) CHECK(u == "rich");
    CHECK(split.test_pairs.size() == 1);
    std::size_t solo_train = 0;
    for (const auto& e : split.train_events) solo_train += e.user == "solo";
    CHECK(solo_train == 1);
  }
  SUBCASE("k=2 on 5 items: 3 train, 2 test, disjoint") {
    const auto split = holdout_split(events, {2, 7});
    CHECK(split.test_pairs.size() == 2);
    std::size_t rich_train = 0;
    for (const auto& e : split.train_events) rich_train += e.user == "rich";
    CHECK(rich_train == 3);
    const auto train = pair_set(split.train_events);
    for (const auto& p : split.test_pairs) CHECK(train.count(p) == 0);
  }
}

TEST_CASE("same seed, same split; train and test partition the pair set") {
  const auto events = oracle::random_events(30, 20, 0.25, 3);
  const auto a = holdout_split(events, {2, 11});
  const auto b = holdout_split(events, {2, 11});
  CHECK(a.test_pairs == b.test_pairs);
  CHECK(pair_set(a.train_events) == pair_set(b.train_events));

  auto all = pair_set(a.train_events);
  for (const auto& p : a.test_pairs) {
    CHECK(all.count(p) == 0);  // disjoint
    all.insert(p);
  }
  CHECK(all == pair_set(events));  // union restores the pair set
}

TEST_CASE("no evaluable users is an error") {
  std::vector<InteractionEvent> events{{"u", "i", std::nullopt, "share"}};
  CHECK_THROWS_AS(holdout_split(events, {1, 0}), Error);
}

TEST_CASE("accuracy metric formulas") {
  const std::vector<std::uint32_t> recs{1, 2};
  const std::unordered_set<std::uint32_t> holdout{2, 5};
  CHECK(precision_at_n(recs, holdout, 2) == 0.5);
  CHECK(recall_at_n(recs, holdout, 2) == 0.5);

  const std::unordered_set<std::uint32_t> other{7, 8};
  CHECK(precision_at_n(recs, other, 2) == 0.0);
  CHECK(recall_at_n(recs, other, 2) == 0.0);

  // short lists count only their actual entries, denominator stays n
  const std::vector<std::uint32_t> short_recs{2};
  const std::unordered_set<std::uint32_t> one{2};
  CHECK(precision_at_n(short_recs, one, 5) == 0.2);
  CHECK(recall_at_n(short_recs, one, 5) == 1.0);

  CHECK_THROWS_AS(recall_at_n(recs, {}, 2), Error);
}

TEST_CASE("ndcg formula") {
  const std::vector<std::uint32_t> recs{1, 2, 3};
  CHECK(ndcg_at_n(recs, {2}, 3) ==
        doctest::Approx(1.0 / std::log2(3.0)).epsilon(1e-12));
  // perfect list
  CHECK(ndcg_at_n(recs, {1, 2, 3}, 3) == doctest::Approx(1.0));
  CHECK(ndcg_at_n(recs, {1}, 3) == doctest::Approx(1.0));
  // no hits
  CHECK(ndcg_at_n(recs, {9}, 3) == 0.0);
  CHECK_THROWS_AS(ndcg_at_n(recs, {}, 3), Error);
}

TEST_CASE("spread, intra-list distance and displacement") {
  CHECK(list_spread(std::vector<double>{-1.0, 1.0}) == doctest::Approx(1.0));
  CHECK(list_spread(std::vector<double>{0.7}) == 0.0);
  CHECK(list_spread(std::vector<double>{2.0, 2.0, 2.0}) == 0.0);
  CHECK_THROWS_AS(list_spread({}), Error);

  CHECK(intra_list_distance(std::vector<double>{-1.0, 0.0, 1.0}) ==
        doctest::Approx(4.0 / 3.0));
  CHECK(intra_list_distance(std::vector<double>{3.0, 3.0}) == 0.0);
  CHECK_THROWS_AS(intra_list_distance(std::vector<double>{1.0}), Error);

  CHECK(displacement(1.0, std::vector<double>{0.5}) == doctest::Approx(-0.5));
  CHECK(displacement(0.3, std::vector<double>{0.3, 0.3}) == doctest::Approx(0.0));
  CHECK(displacement(-1.0, std::vector<double>{0.0, 0.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(displacement(0.0, {}), Error);
}

TEST_CASE("coverage and gini") {
  const std::vector<std::vector<std::uint32_t>> lists{{0, 1}, {1, 2}, {3}};
  CHECK(catalog_coverage(lists, 8) == 0.5);
  CHECK(gini_index({1, 1, 1, 1}) == 0.0);
  CHECK(gini_index({0, 0, 0, 4}) == doctest::Approx(0.75));
  CHECK(gini_index({0, 0, 0, 0}) == 0.0);
  CHECK_THROWS_AS(catalog_coverage(lists, 0), Error);
}

TEST_CASE("a perfect single-user world scores 1 across the board") {
  // train: A-{m1,m2}, B-{m1,m2,h}; A's only unseen reachable item is h
  const std::vector<InteractionEvent> train{
      {"A", "m1", std::nullopt, "share"}, {"A", "m2", std::nullopt, "share"},
      {"B", "m1", std::nullopt, "share"}, {"B", "m2", std::nullopt, "share"},
      {"B", "h", std::nullopt, "share"}};
  const auto g = build_graph(train);
  const auto model = fit_ideology(g);
  const auto report = evaluate(g, model, {{"A", "h"}}, {1.0, 0.0},
                               DiversifyParams{}, false, 1);
  CHECK(report.precision == 1.0);
  CHECK(report.recall == 1.0);
  CHECK(report.ndcg == 1.0);
  CHECK(report.n_users_evaluated == 1);
  CHECK(report.n_users_empty_list == 0);
}

TEST_CASE("identity-diversifier evaluation equals the plain one, field for field") {
  SynthParams params;
  params.n_users = 120;
  params.n_items = 60;
  params.rho = 0.15;
  params.seed = 5;
  const auto data = generate_synthetic(params);
  const auto split = holdout_split(data.events, {2, 3});
  const auto train = build_graph(split.train_events);
  const auto model = fit_ideology(train);

  DiversifyParams identity;
  identity.lambda = 1.0;
  identity.tau = 1e9;
  identity.pool_size = 50;
  identity.list_size = 10;

  const auto plain = evaluate(train, model, split.test_pairs, {1.0, 0.6},
                              identity, false, 10);
  const auto reduced = evaluate(train, model, split.test_pairs, {1.0, 0.6},
                                identity, true, 10);
  CHECK(report_to_string(plain) == report_to_string(reduced));
}

TEST_CASE("report means are independent of test pair order") {
  SynthParams params;
  params.n_users = 80;
  params.n_items = 40;
  params.rho = 0.15;
  params.seed = 9;
  const auto data = generate_synthetic(params);
  const auto split = holdout_split(data.events, {1, 2});
  const auto train = build_graph(split.train_events);
  const auto model = fit_ideology(train);

  auto shuffled = split.test_pairs;
  std::reverse(shuffled.begin(), shuffled.end());
  const auto a = evaluate(train, model, split.test_pairs, {1.0, 0.6},
                          DiversifyParams{}, true, 5);
  const auto b = evaluate(train, model, shuffled, {1.0, 0.6},
                          DiversifyParams{}, true, 5);
  CHECK(report_to_string(a) == report_to_string(b));
}

TEST_CASE("evaluate rejects foreign users and empty pair lists") {
  const auto g = build_graph(oracle::two_block_events());
  const auto model = fit_ideology(g);
  CHECK_THROWS_AS(
      evaluate(g, model, {}, {1.0, 0.6}, DiversifyParams{}, false, 5), Error);
  CHECK_THROWS_AS(evaluate(g, model, {{"martian", "x"}}, {1.0, 0.6},
                           DiversifyParams{}, false, 5),
                  Error);
}

TEST_CASE("a user with nothing reachable is counted, scored zero") {
  // train leaves A with only its own seen item: the rec list is empty
  const std::vector<InteractionEvent> train{
      {"A", "x", std::nullopt, "share"},
      {"B", "p", std::nullopt, "share"},
      {"B", "q", std::nullopt, "share"}};
  const auto g = build_graph(train);
  const auto model = fit_ideology(g);
  const auto report = evaluate(g, model, {{"A", "y"}}, {1.0, 0.0},
                               DiversifyParams{}, false, 3);
  CHECK(report.n_users_evaluated == 1);
  CHECK(report.n_users_empty_list == 1);
  CHECK(report.precision == 0.0);
  CHECK(report.recall == 0.0);
  CHECK(report.ndcg == 0.0);
  CHECK(report.list_spread == 0.0);
  CHECK(report.coverage == 0.0);
}

TEST_CASE("report fields stay inside their ranges") {
  SynthParams params;
  params.n_users = 150;
  params.n_items = 70;
  params.rho = 0.12;
  params.seed = 21;
  const auto data = generate_synthetic(params);
  const auto split = holdout_split(data.events, {2, 13});
  const auto train = build_graph(split.train_events);
  const auto model = fit_ideology(train);
  for (const bool use_div : {false, true}) {
    const auto r = evaluate(train, model, split.test_pairs, {1.0, 0.6},
                            DiversifyParams{}, use_div, 10);
    for (double v : {r.precision, r.recall, r.ndcg, r.coverage}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(r.gini >= 0.0);
    CHECK(r.gini < 1.0);
    for (double v : {r.list_spread, r.ild, r.displacement_abs}) {
      CHECK(v >= 0.0);
      CHECK(std::isfinite(v));
    }
    CHECK(r.n_users_evaluated > 0);
  }
}

TEST_CASE("held-out items missing from train still count in recall") {
  // user A holds out item "gone" which no train event mentions: the pair
  // contributes to the holdout size, so recall has denominator 2
  const std::vector<InteractionEvent> train{
      {"A", "m1", std::nullopt, "share"}, {"A", "m2", std::nullopt, "share"},
      {"B", "m1", std::nullopt, "share"}, {"B", "m2", std::nullopt, "share"},
      {"B", "h", std::nullopt, "share"}};
  const auto g = build_graph(train);
  const auto model = fit_ideology(g);
  const auto report = evaluate(g, model, {{"A", "h"}, {"A", "gone"}},
                               {1.0, 0.0}, DiversifyParams{}, false, 2);
  CHECK(report.recall == 0.5);   // one hit of a 2-item holdout
  CHECK(report.precision == 0.5);
}
