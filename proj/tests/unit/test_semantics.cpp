#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <abstrans/abstrans.hpp>

#include <catch_amalgamated.hpp>

using namespace abstrans;

namespace {

StateId q(const char* n) { return StateId(n); }
OutputWord at(std::string_view n) { return OutputWord::atom(n); }
Word w(std::initializer_list<std::string_view> l) { return make_word(l); }

std::map<StateId, BoundedLanguage> denote(const TransducerState& s, std::size_t k) {
    std::map<StateId, BoundedLanguage> out;
    for (const auto& [st, o] : s) {
        auto l = bounded_denote(o, k);
        if (!l.empty()) out[st] = l;
    }
    return out;
}

} // namespace

TEST_CASE("runs agree with explicit path enumeration", "[semantics]") {
    gen::TransducerShape shape;
    shape.epsilon_free = true;
    shape.star = 0;
    std::size_t compared = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Transducer t = gen::random_transducer(seed, shape);
        Runner run(t);
        const auto& sigma = *t.input_alphabet();
        for (const auto& input : sigma.words_up_to(3))
            for (const auto& look : lookahead_family(sigma, 1)) {
                INFO("seed " << seed << " input " << word_to_string(input));
                CHECK(denote(run.run(input, look), 2) == oracle::run_paths(t, input, look, 2));
                ++compared;
            }
    }
    CHECK(compared > 1000);
}

TEST_CASE("runs on the fixtures", "[semantics]") {
    Transducer t = fixtures::transducer("two_phase.at");
    Runner run(t);
    auto s = run.run(w({"c", "a", "c", "b"}), {});
    REQUIRE(s.find(q("q2")) != nullptr);
    CHECK(bounded_denote(*s.find(q("q2")), 2).finite == WordSet{w({"o0", "o1", "o1", "o2"})});
    CHECK(run.run(w({"b", "b"}), {}).find(q("q0")) != nullptr);

    Transducer d = fixtures::transducer("dup_branch.at");
    CHECK(Runner(d).run(w({"a"}), {}).size() == 2);
    CHECK(Runner(d).run(w({"a"}), {w({"b"})}).size() == 2);
}

TEST_CASE("lookahead restricts which transitions fire", "[semantics]") {
    auto t = parse_transducer("transducer la\ninput-alphabet a b\noutput-alphabet x y\ninit q0 emit eps\n"
                              "trans q0 -> q1 on {a.b} emit x\ntrans q0 -> q2 on {a} emit y\n");
    Runner run(t);
    CHECK(run.run(w({"a"}), {w({"b"})}).size() == 2);
    auto only = run.run(w({"a"}), {w({"a"})});
    REQUIRE(only.size() == 1);
    CHECK(only.contains(q("q2")));
    CHECK(run.run(w({"a"}), {}).size() == 1);
}

TEST_CASE("feasibility and acceptance", "[semantics]") {
    Transducer d = fixtures::transducer("dup_branch.at");
    CHECK(feasible(d, w({"a", "b"}), {}));
    CHECK(accepts(d, w({"a", "b"}), {}));
    CHECK(feasible(d, w({"a"}), {}));
    CHECK_FALSE(accepts(d, w({"a"}), {}));
    CHECK_FALSE(feasible(d, w({"b"}), {}));

    Transducer i = fixtures::transducer("inescapable_loop.at");
    CHECK(feasible(i, Word{}, {}));
    CHECK(Runner(i).initial_state().contains(bottom_state()));
}

TEST_CASE("bounded transduction records", "[semantics]") {
    Transducer d = fixtures::transducer("dup_branch.at");
    auto acc = accepting_transductions_bounded(d, 2, 0, 1);
    REQUIRE(acc.size() == 4);
    for (const auto& r : acc) {
        CHECK(r.input.size() == 2);
        CHECK(r.outputs.finite == WordSet{w({"x", "y"})});
    }
    auto all = transductions_bounded(d, 2, 0, 1);
    CHECK(all.size() > acc.size());

    auto fam = lookahead_family(*make_alphabet({"a", "b"}), 1);
    REQUIRE(fam.size() == 4);
    CHECK(fam[0].empty());

    TransducerState s;
    s.add(q("q"), join_out(at("x"), at("y")));
    TransductionSet out;
    collect_records(s, w({"a"}), {}, 1, out);
    REQUIRE(out.size() == 1);
    CHECK(out.begin()->outputs.finite == WordSet{w({"x"}), w({"y"})});
}

TEST_CASE("equivalence and its witnesses", "[semantics]") {
    Bounds b{2, 1, 2};
    auto split = fixtures::transducer("split_init.at");
    auto joined = fixtures::transducer("split_init_joined.at");
    auto eps = fixtures::transducer("split_init_eps.at");

    auto r = equivalent_bounded(split, joined, b);
    CHECK_FALSE(r.equivalent);
    REQUIRE_FALSE(r.witnesses.empty());
    CHECK_FALSE(r.witnesses.front().accepting);
    CHECK(equivalent_bounded(split, split, b).equivalent);
    CHECK(equivalent_bounded(joined, joined, b).equivalent);
    CHECK_FALSE(equivalent_bounded(split, eps, b).equivalent);

    auto t = fixtures::transducer("branching_loop.at");
    CHECK(equivalent_bounded(t, eliminate_epsilon(t), b).equivalent);
}

TEST_CASE("determinism", "[semantics]") {
    CHECK(is_deterministic_bounded(fixtures::transducer("branching_loop.at"), 3, 1));
    CHECK(is_deterministic_bounded(fixtures::transducer("split_init_joined.at"), 2, 1));
    CHECK_FALSE(is_deterministic_bounded(fixtures::transducer("split_init.at"), 2, 1));
    CHECK_FALSE(is_deterministic_bounded(fixtures::transducer("dup_branch.at"), 2, 1));
}

TEST_CASE("epsilon elimination", "[semantics]") {
    gen::TransducerShape shape;
    shape.star = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Transducer t = gen::random_transducer(seed, shape);
        Transducer e = eliminate_epsilon(t);
        INFO("seed " << seed);
        CHECK_FALSE(e.has_epsilon_moves());
        CHECK(validate(e).empty());
        CHECK(equivalent_bounded(t, e, Bounds{2, 1, 2}).equivalent);
    }
}
