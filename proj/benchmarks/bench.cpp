#include <abstrans/abstrans.hpp>

#include <benchmark/benchmark.h>

#include <string>

using namespace abstrans;

namespace {

const char* kLoop = R"(transducer loop
input-alphabet a b c d e
output-alphabet p s t u v w x y
init q0 emit p
trans q0 -> q1 on {a} emit eps
trans q1 -> q2 on {b} emit s
trans q2 -> q3 on eps emit t
trans q3 -> q4 on eps emit u
trans q4 -> q2 on eps emit v
trans q2 -> q5 on eps emit w
trans q5 -> q6 on {c} emit x
trans q0 -> q7 on {d} emit eps
trans q7 -> q8 on {e} emit y
)";

const char* kChecker = R"(transducer checker
input-alphabet enter leave alloc5 alloc7
output-alphabet ne7 eq7
init q0 emit eps
trans q0 -> q0 on {leave, alloc5, alloc7} emit eps
trans q0 -> q1 on {enter} emit eps
trans q1 -> q0 on {leave} emit eps
trans q1 -> q1 on {enter, alloc5, alloc7} emit eps
trans q1 -> q1 on {enter.alloc5, alloc5.alloc5, alloc7.alloc5} emit ne7
trans q1 -> qa1 on {enter.alloc7, alloc5.alloc7, alloc7.alloc7} emit eq7
trans q0 -> qa0 on {enter.alloc7} emit eq7
accept qa0 qa1
)";

// Diamond-shaped CFA: each stage branches over two operations and rejoins.
Cfa diamond_cfa(std::size_t stages) {
    static const char* ops[] = {"enter", "alloc5", "alloc7", "leave"};
    Cfa c("diamond", "l0");
    for (std::size_t i = 0; i < stages; ++i) {
        std::string from = "l" + std::to_string(i), to = "l" + std::to_string(i + 1);
        c.add_edge(from, Symbol(ops[i % 4]), to);
        c.add_edge(from, Symbol(ops[(i + 1) % 4]), to);
    }
    return c;
}

void BM_BoundedDenote(benchmark::State& state) {
    auto at = [](const char* n) { return OutputWord::atom(n); };
    OutputWord e = concat_out({at("p"), star(join_out(concat_out({at("t"), at("u"), at("v")}), at("x"))),
                               omega(concat_out(at("c"), at("d")))});
    for (auto _ : state) benchmark::DoNotOptimize(bounded_denote(e, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_BoundedDenote)->DenseRange(1, 4);

void BM_Run(benchmark::State& state) {
    Transducer t = parse_transducer(kLoop);
    Runner run(t);
    Word input = make_word({"a", "b", "c"});
    for (auto _ : state) benchmark::DoNotOptimize(run.run(input, {}));
}
BENCHMARK(BM_Run);

void BM_EliminateEpsilon(benchmark::State& state) {
    Transducer t = parse_transducer(kLoop);
    for (auto _ : state) benchmark::DoNotOptimize(eliminate_epsilon(t));
}
BENCHMARK(BM_EliminateEpsilon);

void BM_EquivalentBounded(benchmark::State& state) {
    Transducer t = parse_transducer(kLoop);
    Transducer e = eliminate_epsilon(t);
    Bounds b{static_cast<std::size_t>(state.range(0)), 1, 2};
    for (auto _ : state) benchmark::DoNotOptimize(equivalent_bounded(t, e, b));
}
BENCHMARK(BM_EquivalentBounded)->DenseRange(1, 3);

void BM_Explore(benchmark::State& state) {
    Transducer t = parse_transducer(kChecker);
    Cfa c = diamond_cfa(static_cast<std::size_t>(state.range(0)));
    AnalysisConfig cfg;
    cfg.merge = state.range(1) ? MergePolicy::Join : MergePolicy::Sep;
    for (auto _ : state) benchmark::DoNotOptimize(explore(c, t, cfg));
}
BENCHMARK(BM_Explore)->ArgsProduct({{4, 8, 16}, {0, 1}});

} // namespace

BENCHMARK_MAIN();
