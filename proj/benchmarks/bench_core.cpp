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

#include <benchmark/benchmark.h>

#include "polrec/diversify.hpp"
#include "polrec/eval.hpp"
#include "polrec/graph.hpp"
#include "polrec/ideology.hpp"
#include "polrec/synth.hpp"
#include "polrec/walk.hpp"

namespace {

polrec::InteractionGraph make_graph(std::size_t users, std::size_t items) {
  polrec::SynthParams params;
  params.n_users = users;
  params.n_items = items;
  params.seed = 17;
  return polrec::build_graph(polrec::generate_synthetic(params).events);
}

void BM_BuildGraph(benchmark::State& state) {
  polrec::SynthParams params;
  params.n_users = static_cast<std::size_t>(state.range(0));
  params.n_items = params.n_users / 2;
  params.seed = 17;
  const auto data = polrec::generate_synthetic(params);
  for (auto _ : state) {
    auto g = polrec::build_graph(data.events);
    benchmark::DoNotOptimize(g);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(data.events.size()));
}
BENCHMARK(BM_BuildGraph)->Arg(500)->Arg(2000)->Arg(8000);

void BM_RP3BScores(benchmark::State& state) {
  const auto g = make_graph(static_cast<std::size_t>(state.range(0)),
                            static_cast<std::size_t>(state.range(0)) / 2);
  const polrec::WalkParams walk{1.0, 0.6};
  std::uint32_t user = 0;
  for (auto _ : state) {
    auto scores = polrec::rp3b_scores(g, user, walk);
    benchmark::DoNotOptimize(scores);
    user = (user + 1) % static_cast<std::uint32_t>(g.num_users());
  }
}
BENCHMARK(BM_RP3BScores)->Arg(500)->Arg(2000)->Arg(8000);

void BM_FitIdeology(benchmark::State& state) {
  const auto g = make_graph(static_cast<std::size_t>(state.range(0)),
                            static_cast<std::size_t>(state.range(0)) / 2);
  for (auto _ : state) {
    auto model = polrec::fit_ideology(g);
    benchmark::DoNotOptimize(model);
  }
}
BENCHMARK(BM_FitIdeology)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_DiversifyRecommend(benchmark::State& state) {
  const auto g = make_graph(2000, 1000);
  const auto model = polrec::fit_ideology(g);
  const auto pos = polrec::align_positions(model, g);
  polrec::DiversifyParams div;
  div.pool_size = static_cast<std::size_t>(state.range(0));
  div.list_size = 10;
  std::uint32_t user = 0;
  for (auto _ : state) {
    auto recs = polrec::diversify_recommend(g, pos, user, {1.0, 0.6}, div);
    benchmark::DoNotOptimize(recs);
    user = (user + 1) % static_cast<std::uint32_t>(g.num_users());
  }
}
BENCHMARK(BM_DiversifyRecommend)->Arg(50)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
