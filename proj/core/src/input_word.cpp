#include "abstrans/input_word.hpp"

#include "abstrans/errors.hpp"

#include <algorithm>

namespace abstrans {

namespace {

void require_same(const InputWord& a, const InputWord& b) {
    if (!same_alphabet(a.alphabet(), b.alphabet()))
        throw DomainError(ErrorKind::AlphabetMismatch, a.to_string() + " vs " + b.to_string());
}

bool has_prefix(const Word& w, const Word& p) {
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

WordSet set_union(const WordSet& a, const WordSet& b) {
    WordSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

WordSet set_intersection(const WordSet& a, const WordSet& b) {
    WordSet out;
    for (const auto& w : a)
        if (b.count(w)) out.insert(w);
    return out;
}

WordSet set_difference(const WordSet& a, const WordSet& b) {
    WordSet out;
    for (const auto& w : a)
        if (!b.count(w)) out.insert(w);
    return out;
}

// Suffixes of the words in s after stripping p.
WordSet derivative(const WordSet& s, const Word& p) {
    WordSet out;
    for (const auto& w : s)
        if (has_prefix(w, p)) out.emplace(w.begin() + static_cast<std::ptrdiff_t>(p.size()), w.end());
    return out;
}

} // namespace

InputWord::InputWord(AlphabetRef sigma, Polarity p, WordSet words)
    : alphabet_(std::move(sigma)), polarity_(p), words_(std::move(words)) {
    if (!alphabet_) throw DomainError(ErrorKind::InvalidArgument, "input word without alphabet");
    for (const auto& w : words_)
        if (!alphabet_->contains(w))
            throw DomainError(ErrorKind::SymbolNotInAlphabet, word_to_string(w));
}

InputWord InputWord::bottom(AlphabetRef sigma) { return {std::move(sigma), Polarity::Positive, {}}; }
InputWord InputWord::epsilon(AlphabetRef sigma) { return {std::move(sigma), Polarity::Positive, {Word{}}}; }
InputWord InputWord::top(AlphabetRef sigma) { return {std::move(sigma), Polarity::Complement, {}}; }
InputWord InputWord::of(AlphabetRef sigma, WordSet words) {
    return {std::move(sigma), Polarity::Positive, std::move(words)};
}
InputWord InputWord::word(AlphabetRef sigma, Word w) {
    return {std::move(sigma), Polarity::Positive, {std::move(w)}};
}
InputWord InputWord::cofinite(AlphabetRef sigma, WordSet words) {
    return {std::move(sigma), Polarity::Complement, std::move(words)};
}

bool InputWord::is_epsilon() const {
    return is_positive() && words_.size() == 1 && words_.begin()->empty();
}

bool InputWord::contains(const Word& w) const {
    if (!alphabet_->contains(w)) return false;
    return (words_.count(w) != 0) == is_positive();
}

std::string InputWord::to_string() const {
    if (is_bottom()) return "bot";
    if (is_top()) return "top";
    if (is_epsilon()) return "eps";
    std::string out = is_positive() ? "{" : "!{";
    bool first = true;
    for (const auto& w : words_) {
        if (!first) out += ", ";
        first = false;
        out += word_to_string(w);
    }
    return out + "}";
}

std::weak_ordering operator<=>(const InputWord& a, const InputWord& b) {
    if (a.polarity_ != b.polarity_) return a.polarity_ < b.polarity_ ? std::weak_ordering::less : std::weak_ordering::greater;
    if (a.words_ == b.words_) return std::weak_ordering::equivalent;
    return std::lexicographical_compare(a.words_.begin(), a.words_.end(), b.words_.begin(), b.words_.end(), ShortLex{})
               ? std::weak_ordering::less
               : std::weak_ordering::greater;
}

InputWord quotient(const InputWord& w, const InputWord& v) {
    require_same(w, v);
    if (v.is_bottom()) throw DomainError(ErrorKind::QuotientByBottom, w.to_string());
    const auto& sigma = w.alphabet();
    if (v.is_positive()) {
        if (w.is_positive()) {
            WordSet out;
            for (const auto& p : v.words()) {
                auto d = derivative(w.words(), p);
                out.insert(d.begin(), d.end());
            }
            return InputWord::of(sigma, std::move(out));
        }
        // Union over p of the complement of d_p(C) is the complement of their intersection.
        auto it = v.words().begin();
        WordSet common = derivative(w.words(), *it);
        for (++it; it != v.words().end(); ++it) common = set_intersection(common, derivative(w.words(), *it));
        return InputWord::cofinite(sigma, std::move(common));
    }
    if (w.is_positive()) {
        // Prefixes range over the co-finite set: strip every prefix not excluded by v.
        WordSet out;
        for (const auto& x : w.words()) {
            for (std::size_t i = 0; i <= x.size(); ++i) {
                Word p(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
                if (!v.words().count(p)) out.emplace(x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
            }
        }
        return InputWord::of(sigma, std::move(out));
    }
    // Arbitrarily long prefixes strip every stored word away.
    return InputWord::top(sigma);
}

ConcatResult concat_in(const InputWord& a, const InputWord& b) {
    require_same(a, b);
    if (a.is_bottom() || b.is_bottom()) return {InputWord::bottom(a.alphabet()), true};
    if (a.is_epsilon()) return {b, true};
    if (b.is_epsilon()) return {a, true};
    if (a.is_positive() && b.is_positive()) {
        WordSet out;
        for (const auto& x : a.words())
            for (const auto& y : b.words()) {
                Word w = x;
                w.insert(w.end(), y.begin(), y.end());
                out.insert(std::move(w));
            }
        return {InputWord::of(a.alphabet(), std::move(out)), true};
    }
    return {InputWord::top(a.alphabet()), false};
}

InputWord head(const InputWord& w) {
    if (!w.is_positive()) {
        // A finite exclusion set cannot cover every continuation of a letter.
        WordSet out;
        for (const auto& s : w.alphabet()->symbols()) out.insert(Word{s});
        return InputWord::of(w.alphabet(), std::move(out));
    }
    WordSet out;
    for (const auto& x : w.words())
        if (!x.empty()) out.insert(Word{x.front()});
    return InputWord::of(w.alphabet(), std::move(out));
}

InputWord tail(const InputWord& w) {
    auto h = head(w);
    if (h.is_bottom()) return h;
    return quotient(w, h);
}

InputWord meet_in(const InputWord& a, const InputWord& b) {
    require_same(a, b);
    const auto& sigma = a.alphabet();
    if (a.is_positive() && b.is_positive()) return InputWord::of(sigma, set_intersection(a.words(), b.words()));
    if (a.is_positive()) return InputWord::of(sigma, set_difference(a.words(), b.words()));
    if (b.is_positive()) return InputWord::of(sigma, set_difference(b.words(), a.words()));
    return InputWord::cofinite(sigma, set_union(a.words(), b.words()));
}

InputWord join_in(const InputWord& a, const InputWord& b) {
    require_same(a, b);
    const auto& sigma = a.alphabet();
    if (a.is_positive() && b.is_positive()) return InputWord::of(sigma, set_union(a.words(), b.words()));
    if (a.is_positive()) return InputWord::cofinite(sigma, set_difference(b.words(), a.words()));
    if (b.is_positive()) return InputWord::cofinite(sigma, set_difference(a.words(), b.words()));
    return InputWord::cofinite(sigma, set_intersection(a.words(), b.words()));
}

InputWord complement_in(const InputWord& w) {
    if (w.is_positive()) return InputWord::cofinite(w.alphabet(), w.words());
    return InputWord::of(w.alphabet(), w.words());
}

bool leq_in(const InputWord& a, const InputWord& b) {
    require_same(a, b);
    if (a.is_positive()) {
        for (const auto& x : a.words())
            if (!b.contains(x)) return false;
        return true;
    }
    // Co-finite sets over a non-empty alphabet are infinite.
    if (b.is_positive()) return false;
    for (const auto& x : b.words())
        if (!a.words().count(x)) return false;
    return true;
}

std::size_t max_word_length(const InputWord& w) {
    std::size_t n = 0;
    for (const auto& x : w.words()) n = std::max(n, x.size());
    return n;
}

} // namespace abstrans
