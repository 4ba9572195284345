#include "abstrans/output_word.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

namespace abstrans {

struct OutputMatcher::Automaton {
    struct Edge {
        std::optional<Symbol> letter;
        int target;
    };

    std::vector<std::vector<Edge>> edges;
    std::vector<bool> buchi;
    int start = 0;
    int final = 0;

    int add_state() {
        edges.emplace_back();
        buchi.push_back(false);
        return static_cast<int>(edges.size()) - 1;
    }

    void eps(int from, int to) { edges[from].push_back({std::nullopt, to}); }

    // Thompson-style fragment; returns (entry, exit).
    std::pair<int, int> build(const OutputWord& o) {
        int s = add_state();
        int f = add_state();
        switch (o.kind()) {
        case OutKind::Bottom: break;
        case OutKind::Epsilon: eps(s, f); break;
        case OutKind::Atom: edges[s].push_back({o.symbol(), f}); break;
        case OutKind::Concat: {
            int cur = s;
            for (const auto& c : o.children()) {
                auto [cs, cf] = build(c);
                eps(cur, cs);
                cur = cf;
            }
            eps(cur, f);
            break;
        }
        case OutKind::Union:
            for (const auto& c : o.children()) {
                auto [cs, cf] = build(c);
                eps(s, cs);
                eps(cf, f);
            }
            break;
        case OutKind::Star: {
            auto [cs, cf] = build(o.children()[0]);
            eps(s, cs);
            eps(s, f);
            eps(cf, cs);
            eps(cf, f);
            break;
        }
        case OutKind::Omega: {
            // Hub h is visited once per completed iteration of the body.
            int h = add_state();
            buchi[h] = true;
            auto [cs, cf] = build(o.children()[0]);
            eps(s, h);
            eps(h, cs);
            eps(cf, h);
            // Finitely many non-empty iterations leave a finite word.
            if (o.children()[0].nullable()) eps(h, f);
            break;
        }
        }
        return {s, f};
    }

    // Subset construction, built on demand while matching finite words.
    struct Subset {
        std::vector<bool> states;
        std::map<Symbol, int> next;
    };
    std::vector<Subset> subsets;
    std::map<std::vector<bool>, int> subset_ids;
    std::map<std::pair<int, Word>, bool> lasso_cache;

    int subset_of(std::vector<bool> set) {
        closure(set);
        auto it = subset_ids.find(set);
        if (it != subset_ids.end()) return it->second;
        int id = static_cast<int>(subsets.size());
        subset_ids.emplace(set, id);
        subsets.push_back({std::move(set), {}});
        return id;
    }

    int initial() {
        if (subsets.empty()) {
            std::vector<bool> set(edges.size(), false);
            set[start] = true;
            return subset_of(std::move(set));
        }
        return 0;
    }

    // -1 is the empty subset.
    int step(int from, const Symbol& letter) {
        auto it = subsets[from].next.find(letter);
        if (it != subsets[from].next.end()) return it->second;
        std::vector<bool> next(edges.size(), false);
        bool any = false;
        for (std::size_t q = 0; q < edges.size(); ++q) {
            if (!subsets[from].states[q]) continue;
            for (const auto& e : edges[q])
                if (e.letter && *e.letter == letter) next[e.target] = any = true;
        }
        int id = any ? subset_of(std::move(next)) : -1;
        subsets[from].next.emplace(letter, id);
        return id;
    }

    void closure(std::vector<bool>& set) const {
        std::vector<int> stack;
        for (std::size_t i = 0; i < set.size(); ++i)
            if (set[i]) stack.push_back(static_cast<int>(i));
        while (!stack.empty()) {
            int q = stack.back();
            stack.pop_back();
            for (const auto& e : edges[q])
                if (!e.letter && !set[e.target]) {
                    set[e.target] = true;
                    stack.push_back(e.target);
                }
        }
    }
};

OutputMatcher::OutputMatcher(const OutputWord& o) : nfa_(std::make_unique<Automaton>()) {
    auto [s, f] = nfa_->build(o);
    nfa_->start = s;
    nfa_->final = f;
}

OutputMatcher::~OutputMatcher() = default;
OutputMatcher::OutputMatcher(OutputMatcher&&) noexcept = default;
OutputMatcher& OutputMatcher::operator=(OutputMatcher&&) noexcept = default;

bool OutputMatcher::contains(const Word& w) const {
    auto& a = *nfa_;
    int cur = a.initial();
    for (const auto& letter : w) {
        cur = a.step(cur, letter);
        if (cur < 0) return false;
    }
    return a.subsets[cur].states[a.final];
}

bool OutputMatcher::contains(const Lasso& l) const {
    auto& a = *nfa_;
    int from = a.initial();
    for (const auto& letter : l.prefix) {
        from = a.step(from, letter);
        if (from < 0) return false;
    }
    auto key = std::make_pair(from, l.cycle);
    auto cached = a.lasso_cache.find(key);
    if (cached != a.lasso_cache.end()) return cached->second;

    const std::size_t len = l.cycle.size();
    const std::size_t n = a.edges.size();
    auto node = [&](std::size_t q, std::size_t pos) { return q * len + pos; };

    // Product of automaton states with positions in the cycle, explored from
    // the states reached after the prefix.
    const std::size_t total = n * len;
    std::vector<std::vector<std::pair<std::size_t, bool>>> succ(total);
    std::vector<bool> reach(total, false);
    std::vector<std::size_t> stack;
    for (std::size_t q = 0; q < n; ++q)
        if (a.subsets[from].states[q]) {
            reach[node(q, 0)] = true;
            stack.push_back(node(q, 0));
        }
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        const std::size_t q = v / len, pos = v % len;
        for (const auto& e : a.edges[q]) {
            std::size_t w;
            if (!e.letter)
                w = node(e.target, pos);
            else if (*e.letter == l.cycle[pos])
                w = node(e.target, (pos + 1) % len);
            else
                continue;
            succ[v].push_back({w, e.letter.has_value()});
            if (!reach[w]) {
                reach[w] = true;
                stack.push_back(w);
            }
        }
    }

    // Iterative Tarjan over the reachable part.
    const std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(total, unset), low(total, 0), comp(total, unset);
    std::vector<bool> on_stack(total, false);
    std::vector<std::size_t> tstack;
    std::size_t counter = 0, ncomp = 0;
    for (std::size_t root = 0; root < total; ++root) {
        if (!reach[root] || index[root] != unset) continue;
        std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
        index[root] = low[root] = counter++;
        tstack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < succ[v].size()) {
                auto w = succ[v][i++].first;
                if (index[w] == unset) {
                    index[w] = low[w] = counter++;
                    tstack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                auto vv = v;
                call.pop_back();
                if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[vv]);
                if (low[vv] == index[vv]) {
                    std::size_t w;
                    do {
                        w = tstack.back();
                        tstack.pop_back();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                    } while (w != vv);
                    ++ncomp;
                }
            }
        }
    }

    std::vector<bool> has_buchi(ncomp, false), has_letter(ncomp, false);
    for (std::size_t v = 0; v < total; ++v) {
        if (!reach[v]) continue;
        if (a.buchi[v / len]) has_buchi[comp[v]] = true;
        for (auto [w, consumes] : succ[v])
            if (consumes && comp[w] == comp[v]) has_letter[comp[v]] = true;
    }
    bool found = false;
    for (std::size_t c = 0; c < ncomp; ++c)
        if (has_buchi[c] && has_letter[c]) found = true;
    a.lasso_cache.emplace(std::move(key), found);
    return found;
}

bool OutputMatcher::contains_all(const BoundedLanguage& lang) const {
    return std::all_of(lang.finite.begin(), lang.finite.end(), [&](const Word& w) { return contains(w); }) &&
           std::all_of(lang.lassos.begin(), lang.lassos.end(), [&](const Lasso& l) { return contains(l); });
}

bool leq_bounded(const OutputWord& a, const OutputWord& b, std::size_t k) {
    if (a == b) return true;
    return OutputMatcher(b).contains_all(bounded_denote(a, k));
}

} // namespace abstrans
