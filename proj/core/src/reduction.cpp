#include "abstrans/reduction.hpp"

#include "abstrans/abstraction.hpp"
#include "abstrans/errors.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace abstrans {

namespace {

void require_state(const Transducer& t, const StateId& q) {
    if (!t.has_state(q)) throw DomainError(ErrorKind::UnknownState, q.name());
}

} // namespace

LeftProfile left_transductions_bounded(const Transducer& t, const StateId& q, const Bounds& b, ClosureOp op) {
    require_state(t, q);
    if (t.has_epsilon_moves()) throw DomainError(ErrorKind::NotEpsilonFree, t.name());
    Runner runner(t, op);
    const auto start = runner.initial_state();
    const std::set<StateId> only{q};
    LeftProfile out{q, {}};
    const auto looks = lookahead_family(*t.input_alphabet(), b.m);
    for (const auto& input : t.input_alphabet()->words_up_to(b.n))
        for (const auto& look : looks) collect_records(runner.run(start, input, look), input, look, b.k, out.records, &only);
    return out;
}

TransductionSet right_transductions_bounded(const Transducer& t, const StateId& q, const OutputWord& init,
                                            const Bounds& b, ClosureOp op) {
    require_state(t, q);
    Runner runner(t, op);
    TransducerState start;
    start.add(q, init);
    TransductionSet out;
    if (start.empty()) return out;
    const auto looks = lookahead_family(*t.input_alphabet(), b.m);
    for (const auto& input : t.input_alphabet()->words_up_to(b.n))
        for (const auto& look : looks) collect_records(runner.run(start, input, look), input, look, b.k, out);
    return out;
}

std::set<std::pair<Word, WordSet>> right_accepted_bounded(const Transducer& t, const StateId& q, std::size_t n,
                                                          std::size_t m, ClosureOp op) {
    require_state(t, q);
    Runner runner(t, op);
    TransducerState start;
    start.add(q, OutputWord::epsilon());
    std::set<std::pair<Word, WordSet>> out;
    const auto looks = lookahead_family(*t.input_alphabet(), m);
    for (const auto& input : t.input_alphabet()->words_up_to(n))
        for (const auto& look : looks)
            for (const auto& [q2, o] : runner.run(start, input, look))
                if (t.is_accepting(q2)) {
                    out.emplace(input, look);
                    break;
                }
    return out;
}

Partition left_equivalent_candidates(const Transducer& t, std::size_t k) {
    if (t.has_epsilon_moves()) throw DomainError(ErrorKind::NotEpsilonFree, t.name());
    const std::vector<StateId> states(t.states().begin(), t.states().end());
    std::map<StateId, int> index;
    for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = static_cast<int>(i);

    std::map<BoundedLanguage, int> out_class;
    auto classify = [&](const OutputWord& o) {
        auto [it, _] = out_class.emplace(bounded_denote(o, k), static_cast<int>(out_class.size()));
        return it->second;
    };

    using Edge = std::tuple<int, InputWord, int>; // source index, input, output class
    std::vector<std::vector<std::pair<int, InputWord>>> entering(states.size());
    std::vector<std::vector<int>> entering_out(states.size());
    for (const auto& tr : t.transitions()) {
        auto tgt = index.find(tr.target);
        auto src = index.find(tr.source);
        if (tgt == index.end() || src == index.end()) continue;
        entering[tgt->second].emplace_back(src->second, tr.input);
        entering_out[tgt->second].push_back(classify(tr.output));
    }

    std::vector<int> block(states.size());
    {
        std::map<std::pair<bool, int>, int> seed;
        for (std::size_t i = 0; i < states.size(); ++i) {
            const OutputWord* init = t.initial().find(states[i]);
            std::pair<bool, int> key{t.is_accepting(states[i]), init ? classify(*init) : -1};
            block[i] = seed.emplace(key, static_cast<int>(seed.size())).first->second;
        }
    }

    std::size_t nblocks = 0;
    for (;;) {
        using Key = std::tuple<int, int, std::set<Edge>>;
        std::map<Key, int> split;
        std::vector<int> next(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) {
            std::set<Edge> sig;
            for (std::size_t j = 0; j < entering[i].size(); ++j)
                sig.emplace(block[entering[i][j].first], entering[i][j].second, entering_out[i][j]);
            // A state entered in two different ways cannot share its class.
            int alone = sig.size() > 1 ? static_cast<int>(i) : -1;
            Key key{block[i], alone, alone >= 0 ? std::set<Edge>{} : sig};
            next[i] = split.emplace(std::move(key), static_cast<int>(split.size())).first->second;
        }
        block = std::move(next);
        if (split.size() == nblocks) break;
        nblocks = split.size();
    }

    std::map<int, std::set<StateId>> classes;
    for (std::size_t i = 0; i < states.size(); ++i) classes[block[i]].insert(states[i]);
    Partition out;
    for (auto& [_, cls] : classes) out.push_back(std::move(cls));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
    return out;
}

Transducer reduce_left(const Transducer& t, std::size_t k) {
    StatePrecision p;
    for (auto& cls : left_equivalent_candidates(t, k))
        if (cls.size() > 1) p.classes.push_back(std::move(cls));
    if (p.classes.empty()) return t;
    return abstract_states(t, p);
}

} // namespace abstrans
