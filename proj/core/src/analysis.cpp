#include "abstrans/analysis.hpp"

#include "abstrans/errors.hpp"

#include <algorithm>
#include <deque>

namespace abstrans {

Cfa::Cfa(std::string name, std::string entry) : name_(std::move(name)), entry_(std::move(entry)) {
    locations_.insert(entry_);
}

void Cfa::add_edge(const std::string& from, Symbol op, const std::string& to) {
    locations_.insert(from);
    locations_.insert(to);
    edges_.push_back({from, op, to});
}

std::vector<std::size_t> Cfa::edges_from(const std::string& l) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].from == l) out.push_back(i);
    return out;
}

Symbol edge_letter(const Cfa& c, std::size_t edge, View view) {
    const auto& e = c.edges().at(edge);
    return view == View::ByOperation ? e.op : Symbol(e.to);
}

namespace {

void paths_ahead(const Cfa& c, const std::string& loc, std::size_t depth, const AnalysisConfig& cfg, Word& cur,
                 WordSet& out) {
    auto next = c.edges_from(loc);
    if (depth == 0 || next.empty()) {
        out.insert(cur);
        return;
    }
    for (auto i : next) {
        cur.push_back(edge_letter(c, i, cfg.view));
        paths_ahead(c, c.edges()[i].to, depth - 1, cfg, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::pair<InputWord, InputWord> look(const Cfa& c, std::size_t edge, const AnalysisConfig& cfg,
                                     const AlphabetRef& sigma) {
    Symbol a = edge_letter(c, edge, cfg.view);
    InputWord first = sigma->contains(a) ? InputWord::word(sigma, Word{a}) : InputWord::bottom(sigma);

    WordSet raw;
    Word cur;
    paths_ahead(c, c.edges()[edge].to, cfg.lookahead_depth, cfg, cur, raw);
    WordSet ahead;
    for (const auto& w : raw) {
        auto stop = std::find_if(w.begin(), w.end(), [&](const Symbol& s) { return !sigma->contains(s); });
        ahead.insert(Word(w.begin(), stop));
    }
    return {first, InputWord::of(sigma, std::move(ahead))};
}

std::vector<AnalysisState> transfer(const AnalysisState& s, std::size_t edge, const Cfa& c, const Runner& runner,
                                    const AnalysisConfig& cfg) {
    auto [in, ahead] = look(c, edge, cfg, runner.transducer().input_alphabet());
    std::vector<AnalysisState> out;
    if (in.is_bottom()) return out;
    auto next = runner.run_hat(s.state, in, ahead);
    for (const auto& [q, o] : next) {
        if (q == bottom_state()) continue;
        AnalysisState n;
        n.location = c.edges()[edge].to;
        n.state.add(q, o);
        n.path = s.path;
        n.path.push_back({edge, q});
        out.push_back(std::move(n));
    }
    return out;
}

std::optional<AnalysisState> merge_states(const AnalysisState& s1, const AnalysisState& s2,
                                          const AnalysisConfig& cfg) {
    if (cfg.merge == MergePolicy::Sep || s1.location != s2.location) return std::nullopt;
    AnalysisState m = s2;
    m.state = join_states(s1.state, s2.state);
    return m;
}

bool covers(const TransducerState& big, const TransducerState& small, std::size_t k) {
    for (const auto& [q, o] : small) {
        const OutputWord* p = big.find(q);
        if (!p || !leq_bounded(o, *p, k)) return false;
    }
    return true;
}

bool stop_covered(const AnalysisState& s, const std::vector<AnalysisState>& reached, std::size_t k) {
    return std::any_of(reached.begin(), reached.end(), [&](const AnalysisState& r) {
        return r.location == s.location && covers(r.state, s.state, k);
    });
}

namespace {

std::map<StateId, std::vector<std::size_t>> entering_accepting(const Transducer& t) {
    std::map<StateId, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < t.transitions().size(); ++i) {
        const auto& tr = t.transitions()[i];
        if (t.is_accepting(tr.target)) out[tr.target].push_back(i);
    }
    return out;
}

} // namespace

std::set<std::string> targets(const AnalysisState& s, const Transducer& t, const AnalysisConfig& cfg) {
    auto entering = entering_accepting(t);
    std::set<std::string> out;
    for (const auto& [q, o] : s.state) {
        if (!t.is_accepting(q)) continue;
        auto it = entering.find(q);
        if (it == entering.end()) continue;
        if (it->second.size() > 1)
            throw DomainError(ErrorKind::MultipleEnteringTransitions, q.name());
        auto c = cfg.concerns.find(it->second.front());
        if (c != cfg.concerns.end()) out.insert(c->second.begin(), c->second.end());
    }
    return out;
}

std::vector<const AnalysisState*> AnalysisReport::at(const std::string& location) const {
    std::vector<const AnalysisState*> out;
    for (const auto& r : reached)
        if (r.location == location) out.push_back(&r);
    return out;
}

namespace {

TransducerState without_bottom(TransducerState s) {
    TransducerState out;
    for (const auto& [q, o] : s)
        if (q != bottom_state()) out.add(q, o);
    return out;
}

} // namespace

AnalysisReport explore(const Cfa& c, const Transducer& t, const AnalysisConfig& cfg) {
    for (const auto& [q, ins] : entering_accepting(t))
        if (ins.size() > 1) throw DomainError(ErrorKind::MultipleEnteringTransitions, q.name());
    for (const auto& [i, names] : cfg.concerns)
        if (i >= t.transitions().size())
            throw DomainError(ErrorKind::UnknownTransition, "concern on transition #" + std::to_string(i));

    Runner runner(t, cfg.closure);
    AnalysisReport rep;
    if (cfg.lookahead_depth < transducer_lookahead(t))
        rep.warnings.push_back("lookahead depth " + std::to_string(cfg.lookahead_depth) +
                               " is below the transducer's requirement " +
                               std::to_string(transducer_lookahead(t)));

    AnalysisState init{c.entry(), without_bottom(runner.initial_state()), {}};
    if (init.state.empty()) {
        rep.warnings.push_back("initial state is empty");
        return rep;
    }

    std::map<std::string, std::size_t> per_location;
    std::map<std::string, std::size_t> merges_at;
    std::set<std::string> exhausted_at;
    auto exhausted = [&](const std::string& l) {
        rep.budget_exhausted = true;
        if (exhausted_at.insert(l).second) rep.warnings.push_back("budget exhausted at location " + l);
    };
    std::deque<std::size_t> wait;
    std::vector<bool> queued;
    auto push = [&](std::size_t i) {
        if (queued.size() <= i) queued.resize(i + 1, false);
        if (!queued[i]) {
            queued[i] = true;
            wait.push_back(i);
        }
    };

    rep.reached.push_back(init);
    per_location[init.location] = 1;
    push(0);

    while (!wait.empty()) {
        std::size_t cur = wait.front();
        wait.pop_front();
        queued[cur] = false;
        AnalysisState s = rep.reached[cur];

        for (auto e : c.edges_from(s.location)) {
            for (auto& n : transfer(s, e, c, runner, cfg)) {
                ++rep.transfers;
                for (std::size_t i = 0; i < rep.reached.size(); ++i) {
                    auto m = merge_states(n, rep.reached[i], cfg);
                    if (m && m->state != rep.reached[i].state) {
                        rep.reached[i] = std::move(*m);
                        ++rep.merges;
                        if (++merges_at[n.location] > cfg.budget) {
                            exhausted(n.location);
                            continue;
                        }
                        push(i);
                    }
                }
                if (stop_covered(n, rep.reached, cfg.output_bound)) continue;
                auto& count = per_location[n.location];
                if (count >= cfg.budget) {
                    exhausted(n.location);
                    continue;
                }
                ++count;
                rep.reached.push_back(std::move(n));
                push(rep.reached.size() - 1);
            }
        }
    }

    for (const auto& r : rep.reached) {
        auto found = targets(r, t, cfg);
        if (found.empty()) continue;
        rep.concerns.insert(found.begin(), found.end());
        rep.concerns_by_location[r.location].insert(found.begin(), found.end());
    }
    return rep;
}

TransducerState replay(const Cfa& c, const Transducer& t, const AnalysisConfig& cfg,
                       const std::vector<PathStep>& path) {
    Runner runner(t, cfg.closure);
    TransducerState s = without_bottom(runner.initial_state());
    for (const auto& step : path) {
        auto [in, ahead] = look(c, step.edge, cfg, t.input_alphabet());
        if (in.is_bottom()) return {};
        auto next = runner.run_hat(s, in, ahead);
        s = TransducerState();
        if (const OutputWord* o = next.find(step.state)) s.add(step.state, *o);
    }
    return s;
}

std::pair<Transducer, ConcernMap> compose_union(const std::vector<Transducer>& ts,
                                                const std::vector<ConcernMap>& concerns) {
    if (ts.empty()) throw DomainError(ErrorKind::EmptyTransducerList, "compose_union");
    if (!concerns.empty() && concerns.size() != ts.size())
        throw DomainError(ErrorKind::InvalidArgument, "one concern map per transducer expected");
    Transducer acc = ts.front();
    ConcernMap cm = concerns.empty() ? ConcernMap{} : concerns.front();
    for (std::size_t i = 1; i < ts.size(); ++i) {
        std::size_t shift = acc.transitions().size();
        acc = union_of(acc, ts[i]);
        if (!concerns.empty())
            for (const auto& [j, names] : concerns[i]) cm[j + shift].insert(names.begin(), names.end());
    }
    return {std::move(acc), std::move(cm)};
}

Transducer compose_union(const std::vector<Transducer>& ts) { return compose_union(ts, {}).first; }

} // namespace abstrans
