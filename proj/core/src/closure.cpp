#include "abstrans/closure.hpp"

#include "abstrans/errors.hpp"

#include <algorithm>
#include <deque>

namespace abstrans {

const char* to_string(ClosureOp op) { return op == ClosureOp::Join ? "join" : "regular"; }

namespace {

void require_state(const Transducer& t, const StateId& q) {
    if (!t.has_state(q)) throw DomainError(ErrorKind::UnknownState, q.name());
}

/// The epsilon subgraph reachable from one state.
struct EpsRegion {
    std::vector<StateId> nodes; // sorted
    std::map<StateId, int> index;
    std::vector<Transition> moves; // epsilon moves leaving region nodes
    std::set<StateId> terminal;    // no epsilon move leaves
    std::set<StateId> doomed;      // no terminal state reachable

    EpsRegion(const Transducer& t, const StateId& q) {
        std::set<StateId> seen{q};
        std::deque<StateId> work{q};
        while (!work.empty()) {
            auto x = work.front();
            work.pop_front();
            auto eps = t.epsilon_moves_from(x);
            if (eps.empty()) terminal.insert(x);
            for (auto& m : eps) {
                if (seen.insert(m.target).second) work.push_back(m.target);
                moves.push_back(std::move(m));
            }
        }
        nodes.assign(seen.begin(), seen.end());
        for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);

        // Backward reachability from terminal states.
        std::set<StateId> live = terminal;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& m : moves)
                if (live.count(m.target) && live.insert(m.source).second) changed = true;
        }
        for (const auto& x : nodes)
            if (!live.count(x)) doomed.insert(x);
    }
};

std::set<StateId> termination_of(const Transducer& t, const EpsRegion& r) {
    std::set<StateId> out = r.terminal;
    for (const auto& x : r.nodes)
        if (t.is_accepting(x)) out.insert(x);
    if (!r.doomed.empty()) out.insert(bottom_state());
    return out;
}

/// Generalized automaton for state elimination. Nodes 0..n-1 plus start and final.
class Gnfa {
public:
    explicit Gnfa(std::size_t n) : n_(n), m_(n + 2, std::vector<OutputWord>(n + 2, OutputWord::bottom())) {}

    int start() const { return static_cast<int>(n_); }
    int final() const { return static_cast<int>(n_) + 1; }

    void add(int i, int j, const OutputWord& o) { m_[i][j] = join_out(m_[i][j], o); }

    void eliminate(int k) {
        OutputWord loop = star(m_[k][k]);
        for (std::size_t i = 0; i < m_.size(); ++i) {
            if (static_cast<int>(i) == k || m_[i][k].is_bottom()) continue;
            for (std::size_t j = 0; j < m_.size(); ++j) {
                if (static_cast<int>(j) == k || m_[k][j].is_bottom()) continue;
                m_[i][j] = join_out(m_[i][j], concat_out({m_[i][k], loop, m_[k][j]}));
            }
        }
        for (std::size_t i = 0; i < m_.size(); ++i) {
            m_[i][k] = OutputWord::bottom();
            m_[k][i] = OutputWord::bottom();
        }
    }

    OutputWord result() const { return m_[n_][n_ + 1]; }

private:
    std::size_t n_;
    std::vector<std::vector<OutputWord>> m_;
};

// Elimination order: sorted ids, with the origin last so its loops become an outer star.
std::vector<int> order_with_last(const EpsRegion& r, int last) {
    std::vector<int> order;
    for (int i = 0; i < static_cast<int>(r.nodes.size()); ++i)
        if (i != last) order.push_back(i);
    order.push_back(last);
    return order;
}

// All epsilon paths from `from` ending in `to`.
OutputWord all_paths(const EpsRegion& r, int from, int to) {
    Gnfa g(r.nodes.size());
    for (const auto& m : r.moves) g.add(r.index.at(m.source), r.index.at(m.target), m.output);
    g.add(g.start(), from, OutputWord::epsilon());
    g.add(to, g.final(), OutputWord::epsilon());
    for (int k : order_with_last(r, from)) g.eliminate(k);
    return g.result();
}

// Paths from `from` that reach `to` for the first time at their end.
OutputWord first_arrival(const EpsRegion& r, int from, int to) {
    if (from == to) return OutputWord::epsilon();
    Gnfa g(r.nodes.size());
    for (const auto& m : r.moves) {
        int s = r.index.at(m.source);
        if (s != to) g.add(s, r.index.at(m.target), m.output);
    }
    g.add(g.start(), from, OutputWord::epsilon());
    g.add(to, g.final(), OutputWord::epsilon());
    for (int k : order_with_last(r, from)) g.eliminate(k);
    return g.result();
}

// Non-empty cycles at `s` whose inner states all lie in `allowed`.
OutputWord cycles(const EpsRegion& r, int s, const std::vector<bool>& allowed) {
    const int n = static_cast<int>(r.nodes.size());
    const int back = n; // copy of s receiving the closing edges
    Gnfa g(r.nodes.size() + 1);
    for (const auto& m : r.moves) {
        int u = r.index.at(m.source);
        int v = r.index.at(m.target);
        if (u != s && !allowed[u]) continue;
        if (v == s)
            g.add(u, back, m.output);
        else if (allowed[v])
            g.add(u, v, m.output);
    }
    g.add(g.start(), s, OutputWord::epsilon());
    g.add(back, g.final(), OutputWord::epsilon());
    for (int k = 0; k < n; ++k)
        if (allowed[k] && k != s) g.eliminate(k);
    g.eliminate(s);
    g.eliminate(back);
    return g.result();
}

// Infinite epsilon runs from `origin` that end up in the doomed part of the region.
// Each run has a least state s visited infinitely often; the run is a first arrival
// at s, arbitrary cycles at s, then cycles at s through larger states only.
OutputWord omega_paths(const EpsRegion& r, int origin) {
    const int n = static_cast<int>(r.nodes.size());
    std::vector<bool> inside(n, false);
    for (int i = 0; i < n; ++i) inside[i] = true;
    std::vector<OutputWord> terms;
    for (int s = 0; s < n; ++s) {
        if (!r.doomed.count(r.nodes[s])) continue;
        std::vector<bool> above(n, false);
        for (int i = s + 1; i < n; ++i) above[i] = r.doomed.count(r.nodes[i]) != 0;
        OutputWord tail_cycles = cycles(r, s, above);
        if (tail_cycles.is_bottom()) continue;
        OutputWord any_cycles = cycles(r, s, inside);
        std::vector<OutputWord> parts{first_arrival(r, origin, s)};
        if (any_cycles != tail_cycles) parts.push_back(star(any_cycles));
        parts.push_back(omega(tail_cycles));
        terms.push_back(concat_out(parts));
    }
    return join_out(terms);
}

} // namespace

std::set<StateId> eps_closure(const Transducer& t, const StateId& q) {
    require_state(t, q);
    EpsRegion r(t, q);
    std::set<StateId> out(r.nodes.begin(), r.nodes.end());
    if (!r.doomed.empty()) out.insert(bottom_state());
    return out;
}

std::set<StateId> closure_termination_states(const Transducer& t, const StateId& q) {
    require_state(t, q);
    return termination_of(t, EpsRegion(t, q));
}

std::set<StateId> termination_state_mapping(const Transducer& t, const Transition& tr) {
    if (std::find(t.transitions().begin(), t.transitions().end(), tr) == t.transitions().end())
        throw DomainError(ErrorKind::UnknownTransition, tr.to_string());
    if (!tr.is_epsilon() && t.epsilon_moves_from(tr.source).empty()) return {};
    return closure_termination_states(t, tr.target);
}

ClosureEngine::ClosureEngine(const Transducer& t, ClosureOp op) : t_(t), op_(op) {}

const ClosureEngine::Summary& ClosureEngine::summary(const StateId& q) const {
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(q);
        if (it != cache_.end()) return *it->second;
    }
    require_state(t_, q);
    EpsRegion r(t_, q);
    auto terms = termination_of(t_, r);
    Summary s;
    if (op_ == ClosureOp::Join) {
        std::map<StateId, std::set<StateId>> mapping;
        for (const auto& m : r.moves) {
            if (!mapping.count(m.target)) mapping[m.target] = termination_of(t_, EpsRegion(t_, m.target));
        }
        for (const auto& qo : terms) {
            std::vector<OutputWord> outs;
            for (const auto& m : r.moves)
                if (mapping[m.target].count(qo)) outs.push_back(m.output);
            s.emplace_back(qo, join_out(outs));
        }
    } else {
        const int origin = r.index.at(q);
        std::map<StateId, OutputWord> values;
        for (const auto& qo : terms)
            if (r.index.count(qo)) values[qo] = all_paths(r, origin, r.index.at(qo));
        if (!r.doomed.empty()) {
            auto& v = values[bottom_state()];
            v = join_out(v, omega_paths(r, origin));
        }
        for (auto& [qo, v] : values) s.emplace_back(qo, v);
    }
    std::lock_guard lock(mutex_);
    auto [it, _] = cache_.emplace(q, std::make_shared<const Summary>(std::move(s)));
    return *it->second;
}

ClosureResult ClosureEngine::closure(const StateId& q, const OutputWord& init) const {
    ClosureResult out{q, {}};
    for (const auto& [qo, v] : summary(q)) {
        OutputWord w = op_ == ClosureOp::Join ? join_out(init, v) : concat_out(init, v);
        if (!w.is_bottom()) out.termination_map.emplace(qo, w);
    }
    return out;
}

TransducerState ClosureEngine::apply(const StateId& q, const OutputWord& init) const {
    TransducerState out;
    for (const auto& [qo, w] : closure(q, init).termination_map) out.add(qo, w);
    return out;
}

TransducerState ClosureEngine::apply(const TransducerState& s) const {
    TransducerState out;
    for (const auto& [q, o] : s) out.join(apply(q, o));
    return out;
}

ClosureResult output_closure_join(const Transducer& t, const StateId& q, const OutputWord& init) {
    return ClosureEngine(t, ClosureOp::Join).closure(q, init);
}

ClosureResult output_closure_regular(const Transducer& t, const StateId& q, const OutputWord& init) {
    return ClosureEngine(t, ClosureOp::Regular).closure(q, init);
}

ClosureResult output_closure(const Transducer& t, const StateId& q, const OutputWord& init, ClosureOp op) {
    return ClosureEngine(t, op).closure(q, init);
}

TransducerState output_closure_set(const Transducer& t, const TransducerState& s, ClosureOp op) {
    return ClosureEngine(t, op).apply(s);
}

} // namespace abstrans
