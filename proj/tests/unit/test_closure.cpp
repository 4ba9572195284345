#include "fixtures.hpp"
#include "generators.hpp"

#include <abstrans/abstrans.hpp>

#include <catch_amalgamated.hpp>

using namespace abstrans;

namespace {

StateId q(const char* n) { return StateId(n); }
OutputWord at(std::string_view n) { return OutputWord::atom(n); }
Word w(std::initializer_list<std::string_view> l) { return make_word(l); }

BoundedLanguage finite(std::initializer_list<Word> ws) {
    BoundedLanguage l;
    l.finite.insert(ws.begin(), ws.end());
    return l;
}

} // namespace

TEST_CASE("epsilon closure and termination states", "[closure]") {
    Transducer t = fixtures::transducer("branching_loop.at");
    CHECK(eps_closure(t, q("q2")) == std::set<StateId>{q("q2"), q("q3"), q("q4"), q("q5")});
    CHECK(closure_termination_states(t, q("q2")) == std::set<StateId>{q("q5")});
    CHECK(closure_termination_states(t, q("q0")) == std::set<StateId>{q("q0")});

    Transducer i = fixtures::transducer("inescapable_loop.at");
    CHECK(eps_closure(i, q("q1")) == std::set<StateId>{q("q1"), q("q3"), q("q4"), bottom_state()});
    CHECK(closure_termination_states(i, q("q3")) == std::set<StateId>{bottom_state()});
    CHECK(closure_termination_states(i, q("q5")) == std::set<StateId>{q("q5")});
}

TEST_CASE("termination state mapping", "[closure]") {
    Transducer t = fixtures::transducer("inescapable_loop.at");
    for (const auto& tr : t.transitions()) {
        if (tr.source == q("q0") && tr.target == q("q2"))
            CHECK(termination_state_mapping(t, tr) == std::set<StateId>{q("q2")});
        if (tr.source == q("q0") && tr.target == q("q1"))
            CHECK(termination_state_mapping(t, tr) == std::set<StateId>{bottom_state()});
        if (tr.source == q("q2")) CHECK(termination_state_mapping(t, tr).empty());
    }
    Transition stray{q("q0"), InputWord::epsilon(t.input_alphabet()), q("q5"), OutputWord::epsilon()};
    CHECK_THROWS_AS(termination_state_mapping(t, stray), DomainError);
}

TEST_CASE("regular output closure", "[closure]") {
    Transducer t = fixtures::transducer("branching_loop.at");
    auto r = output_closure_regular(t, q("q2"), at("s"));
    REQUIRE(r.termination_map.size() == 1);
    CHECK(bounded_denote(r.termination_map.at(q("q5")), 1) == finite({w({"s", "w"}), w({"s", "t", "u", "v", "w"})}));

    auto id = output_closure_regular(t, q("q0"), at("p"));
    REQUIRE(id.termination_map.size() == 1);
    CHECK(id.termination_map.at(q("q0")) == at("p"));

    Transducer i = fixtures::transducer("inescapable_loop.at");
    auto b = output_closure_regular(i, q("q1"), OutputWord::epsilon());
    REQUIRE(b.termination_map.size() == 1);
    CHECK(b.termination_map.at(bottom_state()).all_infinite());
}

TEST_CASE("join output closure is coarser than the regular one", "[closure]") {
    Transducer t = fixtures::transducer("branching_loop.at");
    auto j = output_closure_join(t, q("q2"), OutputWord::epsilon());
    REQUIRE(j.termination_map.size() == 1);
    CHECK(bounded_denote(j.termination_map.at(q("q5")), 3) ==
          finite({Word{}, w({"t"}), w({"u"}), w({"v"}), w({"w"})}));

    Transducer i = fixtures::transducer("inescapable_loop.at");
    auto ji = output_closure_join(i, q("q0"), at("o0"));
    CHECK(ji.termination_map.at(q("q2")) == join_out(at("o0"), at("ob")));
    CHECK(ji.termination_map.count(bottom_state()) == 1);
    CHECK(output_closure(i, q("q0"), at("o0"), ClosureOp::Join).termination_map == ji.termination_map);
}

TEST_CASE("closure of a transducer state joins per termination state", "[closure]") {
    Transducer i = fixtures::transducer("inescapable_loop.at");
    TransducerState s;
    s.add(q("q0"), at("o0"));
    s.add(q("q1"), at("oa"));
    auto c = output_closure_set(i, s, ClosureOp::Regular);
    CHECK(c.size() == 2);
    auto bot = bounded_denote(*c.find(bottom_state()), 3);
    CHECK(bot.finite.empty());
    CHECK(bot.lassos == std::set<Lasso>{make_lasso(w({"o0", "oa"}), w({"oc", "of", "od"})),
                                        make_lasso(w({"oa"}), w({"oc", "of", "od"}))});
    CHECK(bounded_denote(*c.find(q("q2")), 3) == finite({w({"o0", "ob"})}));
}

TEST_CASE("the cached engine agrees with the direct closure", "[closure]") {
    gen::TransducerShape shape;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Transducer t = gen::random_transducer(seed, shape);
        for (ClosureOp op : {ClosureOp::Join, ClosureOp::Regular}) {
            ClosureEngine engine(t, op);
            for (const auto& s : t.states()) {
                auto direct = output_closure(t, s, at("z"), op).termination_map;
                auto cached = engine.closure(s, at("z")).termination_map;
                REQUIRE(direct.size() == cached.size());
                for (const auto& [k, o] : direct) CHECK(leq_bounded(o, cached.at(k), 2));
                for (const auto& [k, o] : cached) CHECK(leq_bounded(o, direct.at(k), 2));
            }
        }
    }
}
