#include "oracles.hpp"

namespace oracle {

using namespace abstrans;

bool member(const InputWord& w, const Word& x) {
    bool in = w.words().count(x) != 0;
    return w.is_positive() ? in : !in;
}

std::set<Word> slice(const InputWord& w, std::size_t n) {
    std::set<Word> out;
    for (const auto& x : w.alphabet()->words_up_to(n))
        if (member(w, x)) out.insert(x);
    return out;
}

namespace {

std::size_t longest(const InputWord& w) {
    std::size_t n = 0;
    for (const auto& x : w.words()) n = std::max(n, x.size());
    return n;
}

Word cat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

} // namespace

std::set<Word> quotient_slice(const InputWord& w, const InputWord& v, std::size_t n) {
    // A prefix longer than both representations plus one behaves like any other
    // long prefix, so this horizon is exact.
    std::size_t horizon = longest(w) + longest(v) + 1;
    auto prefixes = w.alphabet()->words_up_to(horizon);
    std::set<Word> out;
    for (const auto& s : w.alphabet()->words_up_to(n))
        for (const auto& p : prefixes)
            if (member(v, p) && member(w, cat(p, s))) {
                out.insert(s);
                break;
            }
    return out;
}

BoundedLanguage product(const BoundedLanguage& a, const BoundedLanguage& b) {
    BoundedLanguage out;
    out.lassos = a.lassos;
    for (const auto& x : a.finite) {
        for (const auto& y : b.finite) out.finite.insert(cat(x, y));
        for (const auto& l : b.lassos) out.lassos.insert(make_lasso(cat(x, l.prefix), l.cycle));
    }
    return out;
}

namespace {

void walk(const Transducer& t, const StateId& q, const BoundedLanguage& acc, const Word& rest, std::size_t pos,
          const WordSet& look, std::size_t k, std::map<StateId, BoundedLanguage>& out) {
    if (pos == rest.size()) {
        auto& dst = out[q];
        dst.finite.insert(acc.finite.begin(), acc.finite.end());
        dst.lassos.insert(acc.lassos.begin(), acc.lassos.end());
        return;
    }
    Word remaining(rest.begin() + static_cast<std::ptrdiff_t>(pos), rest.end());
    for (const auto& tr : t.transitions_from(q)) {
        if (tr.is_epsilon()) continue;
        // Some label word, possibly empty, is a prefix of the remaining input
        // followed by a lookahead word, and some label word starts with the
        // next letter.
        bool head_ok = !tr.input.is_positive();
        for (const auto& w : tr.input.words())
            if (tr.input.is_positive() && !w.empty() && w.front() == remaining.front()) head_ok = true;
        if (!head_ok) continue;
        bool fires = false;
        auto try_full = [&](const Word& full) {
            for (std::size_t len = 0; len <= full.size() && !fires; ++len)
                if (member(tr.input, Word(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(len))))
                    fires = true;
        };
        if (look.empty())
            try_full(remaining);
        else
            for (const auto& l : look) try_full(cat(remaining, l));
        if (!fires) continue;
        walk(t, tr.target, product(acc, bounded_denote(tr.output, k)), rest, pos + 1, look, k, out);
    }
}

} // namespace

std::map<StateId, BoundedLanguage> run_paths(const Transducer& t, const Word& input, const WordSet& lookahead,
                                             std::size_t k) {
    std::map<StateId, BoundedLanguage> out;
    for (const auto& [q, o] : t.initial()) walk(t, q, bounded_denote(o, k), input, 0, lookahead, k, out);
    std::erase_if(out, [](const auto& kv) { return kv.second.empty(); });
    return out;
}

bool alloc_checker_fires(const std::vector<std::string>& letters) {
    bool inside = false;
    for (std::size_t j = 0; j + 1 < letters.size(); ++j) {
        if (letters[j] == "enter") inside = true;
        if (letters[j] == "leave") inside = false;
        if (letters[j + 1] == "alloc7" && inside) return true;
    }
    return false;
}

} // namespace oracle
