// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// fails that was not listed with --expect-fail.

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <abstrans/abstrans.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace abstrans;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

Word w(std::initializer_list<std::string_view> letters) { return make_word(letters); }

Word cat(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

BoundedLanguage finite_of(std::vector<Word> words) {
    BoundedLanguage l;
    l.finite.insert(words.begin(), words.end());
    return l;
}

BoundedLanguage all_outputs(const TransducerState& s, std::size_t k) {
    BoundedLanguage out;
    for (const auto& [q, o] : s) {
        auto l = bounded_denote(o, k);
        out.finite.insert(l.finite.begin(), l.finite.end());
        out.lassos.insert(l.lassos.begin(), l.lassos.end());
    }
    return out;
}

std::string show(const BoundedLanguage& l) {
    std::string out = "{";
    for (const auto& s : l.to_strings()) out += (out.size() > 1 ? ", " : "") + s;
    return out + "}";
}

// ---------------------------------------------------------------------------

Outcome run_outputs() {
    Outcome r;
    Transducer t = fixtures::transducer("branching_loop.at");
    Runner run(t);
    Word ps = w({"p", "s"}), tuv = w({"t", "u", "v"});
    for (std::size_t k = 0; k <= 2; ++k) {
        std::vector<Word> ab, abc;
        Word mid = ps;
        for (std::size_t n = 0; n <= k; ++n) {
            ab.push_back(cat(mid, w({"w"})));
            abc.push_back(cat(mid, w({"w", "x"})));
            mid = cat(mid, tuv);
        }
        std::vector<std::pair<Word, BoundedLanguage>> table = {
            {Word{}, finite_of({w({"p"})})},
            {w({"a"}), finite_of({w({"p"})})},
            {w({"d", "e"}), finite_of({w({"p", "y"})})},
            {w({"a", "b"}), finite_of(ab)},
            {w({"a", "b", "c"}), finite_of(abc)},
        };
        for (const auto& [input, expected] : table) {
            auto got = all_outputs(run.run(input, {}), k);
            if (got != expected)
                r.fail("k=" + std::to_string(k) + " input " + word_to_string(input) + ": got " + show(got) +
                       ", expected " + show(expected));
        }
    }
    return r;
}

Outcome closure_example() {
    Outcome r;
    Transducer t = fixtures::transducer("inescapable_loop.at");
    auto q = [](const char* n) { return StateId(n); };
    std::set<StateId> closure{q("q0"), q("q1"), q("q2"), q("q3"), q("q4"), bottom_state()};
    if (eps_closure(t, q("q0")) != closure) r.fail("eps_closure(q0)");
    if (closure_termination_states(t, q("q0")) != std::set<StateId>{q("q2"), bottom_state()})
        r.fail("termination states of q0");
    if (closure_termination_states(t, q("q1")) != std::set<StateId>{bottom_state()})
        r.fail("termination states of q1");
    if (eps_closure(t, q("q2")) != std::set<StateId>{q("q2")}) r.fail("eps_closure(q2)");

    auto res = output_closure_regular(t, q("q0"), OutputWord::atom(Symbol("o0")));
    BoundedLanguage to_q2 = finite_of({w({"o0", "ob"})});
    BoundedLanguage to_bot;
    to_bot.lassos.insert(Lasso{w({"o0", "oa"}), w({"oc", "of", "od"})});
    if (res.termination_map.size() != 2) r.fail("closure has " + std::to_string(res.termination_map.size()) + " keys");
    auto check = [&](const StateId& s, const BoundedLanguage& expected) {
        auto it = res.termination_map.find(s);
        if (it == res.termination_map.end())
            r.fail("closure misses " + s.name());
        else if (bounded_denote(it->second, 3) != expected)
            r.fail(s.name() + ": got " + show(bounded_denote(it->second, 3)) + ", expected " + show(expected));
    };
    check(q("q2"), to_q2);
    check(bottom_state(), to_bot);
    return r;
}

Outcome elimination_example() {
    Outcome r;
    Transducer base = fixtures::transducer("inescapable_loop.at");
    // The reference values assume an empty initial emission; the atom o0
    // variant checks that the initial output is carried in front.
    for (bool with_o0 : {false, true}) {
        Transducer t = base;
        TransducerState init;
        init.add(StateId("q0"), with_o0 ? OutputWord::atom(Symbol("o0")) : OutputWord::epsilon());
        t.set_initial(init);
        Transducer e = eliminate_epsilon(t);
        Word pre = with_o0 ? w({"o0"}) : Word{};
        std::string tag = with_o0 ? "[o0] " : "[eps] ";

        BoundedLanguage to_bot;
        to_bot.lassos.insert(Lasso{cat(pre, w({"oa"})), w({"oc", "of", "od"})});
        BoundedLanguage to_q2 = finite_of({cat(pre, w({"ob"}))});
        if (e.initial().size() != 2) r.fail(tag + "initial state has " + std::to_string(e.initial().size()) + " entries");
        const OutputWord* b = e.initial().find(bottom_state());
        const OutputWord* q2 = e.initial().find(StateId("q2"));
        if (!b || bounded_denote(*b, 3) != to_bot) r.fail(tag + "bottom entry");
        if (!q2 || bounded_denote(*q2, 3) != to_q2) r.fail(tag + "q2 entry");
        if (e.transitions().size() != 1) {
            r.fail(tag + std::to_string(e.transitions().size()) + " transitions remain");
        } else {
            const auto& tr = e.transitions().front();
            if (tr.source != StateId("q2") || tr.target != StateId("q5") ||
                tr.input != InputWord::word(t.input_alphabet(), w({"a"})) ||
                bounded_denote(tr.output, 3) != finite_of({w({"oe"})}))
                r.fail(tag + "remaining transition is " + tr.to_string());
        }
        if (e.has_epsilon_moves()) r.fail(tag + "epsilon moves remain");
    }
    return r;
}

Outcome elimination_soundness() {
    Outcome r;
    gen::TransducerShape shape;
    std::size_t loops = 0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        Transducer t = gen::random_transducer(seed, shape);
        if (t.has_epsilon_moves()) ++loops;
        auto res = equivalent_bounded(t, eliminate_epsilon(t), Bounds{3, 3, 4});
        if (!res.equivalent) {
            r.fail("seed " + std::to_string(seed) + ": " + res.witnesses.front().to_string());
            break;
        }
    }
    r.detail += (r.detail.empty() ? "" : "; ") + std::to_string(loops) + "/500 with epsilon moves";
    return r;
}

Outcome determinization() {
    Outcome r;
    Transducer t = fixtures::transducer("split_init.at");
    Transducer t1 = fixtures::transducer("split_init_joined.at");
    Transducer t2 = fixtures::transducer("split_init_eps.at");
    auto has = [](const EquivalenceResult& e, const Word& input) {
        for (const auto& x : e.witnesses)
            if (x.input == input && x.lookahead.empty()) return true;
        return false;
    };
    auto r1 = equivalent_bounded(t, t1, Bounds{});
    auto r2 = equivalent_bounded(t, t2, Bounds{});
    if (r1.equivalent) r.fail("joined initial state not distinguished");
    if (!has(r1, w({"a"}))) r.fail("no witness at <a> for the joined initial state");
    if (r2.equivalent) r.fail("eps initial state not distinguished");
    if (!has(r2, Word{})) r.fail("no witness at eps for the eps initial state");
    return r;
}

// True when some state's closure termination states are not carried over by
// the merge, e.g. a state without epsilon moves gains one from its partner.
bool merge_shifts_termination(const Transducer& t, const Transducer& m, const std::set<StateId>& merged) {
    StateId qm = *std::find_if(m.states().begin(), m.states().end(), [&](const StateId& q) { return !t.has_state(q); });
    auto alpha = [&](const StateId& q) { return merged.count(q) ? qm : q; };
    for (const auto& q : t.states()) {
        auto after = closure_termination_states(m, alpha(q));
        for (const auto& x : closure_termination_states(t, q))
            if (!after.count(alpha(x))) return true;
    }
    return false;
}

Outcome qmerge_overapproximates() {
    Outcome r;
    gen::TransducerShape shape;
    std::size_t failures = 0, unexplained = 0;
    std::string first;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        gen::Rng rng(seed * 7919);
        Transducer t = gen::random_transducer(rng, shape);
        std::vector<StateId> qs(t.states().begin(), t.states().end());
        std::shuffle(qs.begin(), qs.end(), rng);
        std::set<StateId> merge{qs[0], qs[1]};
        Transducer m = qmerge(t, merge);
        auto res = overapproximates_bounded(m, t, Bounds{3, 3, 3});
        if (res.holds) continue;
        if (failures++ == 0) first = "seed " + std::to_string(seed) + ": " + res.witness->to_string().substr(0, 120);
        if (!merge_shifts_termination(t, m, merge)) ++unexplained;
    }
    if (failures > 0)
        r.fail(std::to_string(failures) + "/500 counterexamples, " + std::to_string(failures - unexplained) +
               " of them change closure termination states; first " + first);
    return r;
}

// Records of the union that differ from the operands' records only because
// both operands reach the shared bottom state, where the entries are joined.
bool union_differs_only_at_bottom(const Transducer& t1, const Transducer& t2, const Transducer& u, const Bounds& b) {
    Runner r1(t1), r2(t2), ru(u);
    for (const auto& input : t1.input_alphabet()->words_up_to(b.n))
        for (const auto& look : lookahead_family(*t1.input_alphabet(), b.m)) {
            auto x1 = r1.run(input, look), x2 = r2.run(input, look), xu = ru.run(input, look);
            std::set<BoundedLanguage> parts, whole;
            BoundedLanguage bottom_parts, bottom_whole;
            for (const auto* x : {&x1, &x2})
                for (const auto& [q, o] : *x) {
                    auto l = bounded_denote(o, b.k);
                    if (q != bottom_state()) {
                        parts.insert(l);
                        continue;
                    }
                    bottom_parts.finite.insert(l.finite.begin(), l.finite.end());
                    bottom_parts.lassos.insert(l.lassos.begin(), l.lassos.end());
                }
            for (const auto& [q, o] : xu) {
                auto l = bounded_denote(o, b.k);
                if (q == bottom_state())
                    bottom_whole = l;
                else
                    whole.insert(l);
            }
            if (parts != whole || bottom_parts != bottom_whole) return false;
        }
    return true;
}

Outcome union_law() {
    Outcome r;
    gen::TransducerShape shape;
    Bounds b{3, 1, 3};
    std::size_t differ = 0, at_bottom = 0, accepting_differ = 0;
    std::string first;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        gen::Rng rng(seed * 104729);
        Transducer t1 = gen::random_transducer(rng, shape);
        Transducer t2 = gen::random_transducer(rng, shape);
        Transducer un = union_of(t1, t2);
        auto u = enumerate_transductions(un, b);
        auto a = enumerate_transductions(t1, b);
        auto c = enumerate_transductions(t2, b);
        a.all.insert(c.all.begin(), c.all.end());
        a.accepting.insert(c.accepting.begin(), c.accepting.end());
        if (u.accepting != a.accepting) ++accepting_differ;
        if (u.all == a.all) continue;
        if (differ++ == 0) first = "seed " + std::to_string(seed);
        if (union_differs_only_at_bottom(t1, t2, un, b)) ++at_bottom;
    }
    if (differ > 0 || accepting_differ > 0)
        r.fail(std::to_string(differ) + "/200 pairs differ (first " + first + "), " + std::to_string(at_bottom) +
               " of them only where both operands reach the shared bottom state; " +
               std::to_string(accepting_differ) + " differ on accepting transductions");
    return r;
}

Outcome reduction() {
    Outcome r;
    gen::TransducerShape shape;
    shape.epsilon_free = true;
    std::size_t shrunk = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        Transducer t = gen::random_transducer(seed * 31337, shape);
        Transducer red = reduce_left(t);
        if (red.states().size() > t.states().size()) {
            r.fail("seed " + std::to_string(seed) + ": state count grew");
            break;
        }
        if (red.states().size() < t.states().size()) ++shrunk;
        auto e = equivalent_bounded(t, red, Bounds{3, 2, 3});
        if (!e.equivalent) {
            r.fail("seed " + std::to_string(seed) + ": " + e.witnesses.front().to_string());
            break;
        }
    }
    Transducer dup = fixtures::transducer("dup_branch.at");
    Transducer red = reduce_left(dup);
    if (red.states().size() >= dup.states().size()) r.fail("duplicated branch not reduced");
    if (!equivalent_bounded(dup, red, Bounds{3, 2, 3}).equivalent) r.fail("duplicated branch changed");
    r.detail += (r.detail.empty() ? "" : "; ") + std::to_string(shrunk) + "/200 random transducers shrank";
    return r;
}

Outcome analysis_engine() {
    Outcome r;
    Transducer t = fixtures::transducer("alloc_checker.at");
    ConcernMap cm = fixtures::concerns("alloc_checker.concerns", t);
    AnalysisConfig cfg;
    cfg.concerns = cm;

    auto fires = [&](const Cfa& c) { return explore(c, t, cfg).concerns.count("assert-A") != 0; };
    if (!fires(fixtures::cfa("enter_alloc7_leave.cfa"))) r.fail("alloc7 inside enter/leave not flagged");
    if (fires(fixtures::cfa("enter_alloc5_leave.cfa"))) r.fail("alloc5 inside enter/leave flagged");

    // Every straight-line program of up to five operations.
    std::vector<std::string> ops{"enter", "leave", "alloc5", "alloc7"};
    std::size_t programs = 0;
    std::vector<std::string> prog;
    std::function<void()> all = [&] {
        Cfa c("p", "l0");
        for (std::size_t i = 0; i < prog.size(); ++i)
            c.add_edge("l" + std::to_string(i), Symbol(prog[i]), "l" + std::to_string(i + 1));
        ++programs;
        if (fires(c) != oracle::alloc_checker_fires(prog)) {
            std::string p;
            for (const auto& o : prog) p += o + ";";
            r.fail("program " + p + " disagrees with the oracle");
        }
        if (prog.size() == 5 || !r.pass) return;
        for (const auto& o : ops) {
            prog.push_back(o);
            all();
            prog.pop_back();
        }
    };
    all();

    // Union composition fires what the separate runs fire.
    auto sigma = gen::letters("s", 3);
    auto theta = gen::letters("o", 2);
    std::vector<Symbol> letters(sigma->symbols().begin(), sigma->symbols().end());
    letters.push_back(Symbol("foreign"));
    std::size_t nonempty = 0;
    for (std::uint64_t seed = 1; seed <= 100 && r.pass; ++seed) {
        gen::Rng rng(seed * 65537);
        Transducer a = gen::random_monitor(rng, sigma, theta, 3, 6, "x");
        Transducer b = gen::random_monitor(rng, sigma, theta, 3, 6, "y");
        auto concern_map = [](const Transducer& m) {
            ConcernMap z;
            for (std::size_t i = 0; i < m.transitions().size(); ++i)
                if (m.is_accepting(m.transitions()[i].target)) z[i].insert(m.transitions()[i].target.name());
            return z;
        };
        ConcernMap za = concern_map(a), zb = concern_map(b);
        Cfa c = gen::random_dag_cfa(rng, letters, 6, 3);
        AnalysisConfig ca, cb, cu;
        ca.concerns = za;
        cb.concerns = zb;
        auto [u, zu] = compose_union({a, b}, {za, zb});
        cu.concerns = zu;
        auto sep = explore(c, a, ca).concerns;
        auto other = explore(c, b, cb).concerns;
        sep.insert(other.begin(), other.end());
        auto joint = explore(c, u, cu).concerns;
        if (!sep.empty()) ++nonempty;
        if (sep != joint) r.fail("seed " + std::to_string(seed) + ": union fires a different concern set");
    }
    r.detail += (r.detail.empty() ? "" : "; ") + std::to_string(programs) + " programs, " +
                std::to_string(nonempty) + "/100 union fixtures with concerns";
    return r;
}

Outcome word_algebra() {
    Outcome r;
    auto sigma = make_alphabet({"a", "b"});
    auto universe = sigma->words_up_to(2); // 7 words
    std::vector<InputWord> values;
    for (unsigned mask = 0; mask < (1u << universe.size()); ++mask) {
        WordSet ws;
        for (std::size_t i = 0; i < universe.size(); ++i)
            if (mask & (1u << i)) ws.insert(universe[i]);
        values.push_back(InputWord::of(sigma, ws));
        values.push_back(InputWord::cofinite(sigma, ws));
    }
    const std::size_t n = values.size();
    auto index_of = [&](const InputWord& x) -> std::size_t {
        for (std::size_t i = 0; i < n; ++i)
            if (values[i] == x) return i;
        return n;
    };
    auto slice3 = [&](const InputWord& x) { return oracle::slice(x, 3); };
    std::vector<std::set<Word>> sem;
    for (const auto& v : values) sem.push_back(slice3(v));

    InputWord bot = InputWord::bottom(sigma), top = InputWord::top(sigma);
    std::vector<std::size_t> neg(n);
    std::vector<std::vector<std::size_t>> meet(n, std::vector<std::size_t>(n)), join(n, std::vector<std::size_t>(n));
    std::size_t failures = 0;
    auto bad = [&](const std::string& what) {
        if (failures++ == 0) r.fail(what);
    };

    for (std::size_t i = 0; i < n; ++i) {
        InputWord c = complement_in(values[i]);
        neg[i] = index_of(c);
        if (neg[i] == n) bad("complement leaves the generated family");
        if (meet_in(c, values[i]) != bot) bad("~w & w != bot for " + values[i].to_string());
        if (join_in(c, values[i]) != top) bad("~w | w != top for " + values[i].to_string());
        if (complement_in(c) != values[i]) bad("double complement");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            InputWord m = meet_in(values[i], values[j]);
            InputWord jn = join_in(values[i], values[j]);
            meet[i][j] = index_of(m);
            join[i][j] = index_of(jn);
            if (meet[i][j] == n || join[i][j] == n) {
                bad("meet/join leaves the generated family");
                continue;
            }
            // Set oracle on the length-3 slice, which separates all values here.
            std::set<Word> inter, uni = sem[i];
            for (const auto& x : sem[i])
                if (sem[j].count(x)) inter.insert(x);
            uni.insert(sem[j].begin(), sem[j].end());
            if (sem[meet[i][j]] != inter) bad("meet disagrees with sets: " + values[i].to_string() + ", " + values[j].to_string());
            if (sem[join[i][j]] != uni) bad("join disagrees with sets");
            bool sub = std::includes(sem[j].begin(), sem[j].end(), sem[i].begin(), sem[i].end());
            if (leq_in(values[i], values[j]) != sub) bad("leq disagrees with sets");
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (neg[meet[i][j]] != join[neg[i]][neg[j]]) bad("De Morgan (meet)");
            if (neg[join[i][j]] != meet[neg[i]][neg[j]]) bad("De Morgan (join)");
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (meet[i][join[j][k]] != join[meet[i][j]][meet[i][k]]) bad("meet distributes over join");
                if (join[i][meet[j][k]] != meet[join[i][j]][join[i][k]]) bad("join distributes over meet");
            }

    // Quotient against explicit prefix search; tail against quotient by head.
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = values[i];
        InputWord h = head(x);
        InputWord expected_tail = h.is_bottom() ? bot : quotient(x, h);
        if (tail(x) != expected_tail) bad("tail != quotient by head for " + x.to_string());
        for (std::size_t j = 0; j < n; ++j) {
            if (values[j].is_bottom()) continue;
            InputWord q = quotient(x, values[j]);
            if (slice3(q) != oracle::quotient_slice(x, values[j], 3))
                bad("quotient " + x.to_string() + " / " + values[j].to_string() + " = " + q.to_string());
        }
    }
    r.detail = (r.detail.empty() ? "" : r.detail + "; ") + std::to_string(n) + " values, " +
               std::to_string(failures) + " failures";
    return r;
}

} // namespace

// --expect-fail 6,7 lists criteria known to fail; they still print FAIL, but
// only unexpected failures or unexpected passes make the exit code nonzero.
std::set<int> expected_failures(int argc, char** argv) {
    std::set<int> out;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) != "--expect-fail") continue;
        std::stringstream list(argv[i + 1]);
        for (std::string item; std::getline(list, item, ',');) out.insert(std::stoi(item));
    }
    return out;
}

int main(int argc, char** argv) {
    const std::set<int> expected = expected_failures(argc, argv);
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
        double limit_s;
    };
    std::vector<Criterion> criteria = {
        {1, "run outputs of the branching-loop transducer, k = 0..2", run_outputs, 1.0},
        {2, "epsilon closure, termination states and regular output closure", closure_example, 0},
        {3, "epsilon elimination of the inescapable-loop transducer", elimination_example, 0},
        {4, "epsilon elimination preserves bounded equivalence (500 random)", elimination_soundness, 60.0},
        {5, "single-entry initial states are distinguished from a split one", determinization, 0},
        {6, "state merge overapproximates (500 random)", qmerge_overapproximates, 0},
        {7, "union transductions are the union of transductions (200 random pairs)", union_law, 0},
        {8, "left reduction shrinks and preserves bounded equivalence (200 random)", reduction, 0},
        {9, "analysis engine concerns and union composition", analysis_engine, 0},
        {10, "input word Boolean algebra, quotient, head and tail (exhaustive)", word_algebra, 10.0},
    };

    int failed = 0;
    std::vector<int> unexpected;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_s > 0 && secs >= c.limit_s) {
            std::ostringstream os;
            os << "took " << secs << " s, limit " << c.limit_s << " s";
            o.fail(os.str());
        }
        if (!o.pass) ++failed;
        if (o.pass == static_cast<bool>(expected.count(c.id))) unexpected.push_back(c.id);
        std::printf("[%s] %2d  %s  (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    o.detail.empty() ? "" : "  ", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    if (expected.empty()) return failed == 0 ? 0 : 1;
    for (int id : unexpected) std::printf("criterion %d: outcome differs from --expect-fail\n", id);
    return unexpected.empty() ? 0 : 1;
}
