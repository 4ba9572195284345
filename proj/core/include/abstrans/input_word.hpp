#pragma once

#include "abstrans/symbol.hpp"

#include <compare>
#include <string>

namespace abstrans {

enum class Polarity { Positive, Complement };

/// Finite (Positive) or co-finite (Complement) set of words over a declared alphabet.
class InputWord {
public:
    static InputWord bottom(AlphabetRef sigma);
    static InputWord epsilon(AlphabetRef sigma);
    static InputWord top(AlphabetRef sigma);
    static InputWord of(AlphabetRef sigma, WordSet words);
    static InputWord word(AlphabetRef sigma, Word w);
    static InputWord cofinite(AlphabetRef sigma, WordSet words);

    Polarity polarity() const { return polarity_; }
    const WordSet& words() const { return words_; }
    const AlphabetRef& alphabet() const { return alphabet_; }

    bool is_positive() const { return polarity_ == Polarity::Positive; }
    bool is_bottom() const { return is_positive() && words_.empty(); }
    bool is_epsilon() const;
    bool is_top() const { return !is_positive() && words_.empty(); }

    bool contains(const Word& w) const;

    std::string to_string() const;

    friend bool operator==(const InputWord& a, const InputWord& b) {
        return a.polarity_ == b.polarity_ && a.words_ == b.words_;
    }
    friend std::weak_ordering operator<=>(const InputWord& a, const InputWord& b);

private:
    InputWord(AlphabetRef sigma, Polarity p, WordSet words);

    AlphabetRef alphabet_;
    Polarity polarity_;
    WordSet words_;
};

/// Left quotient: suffixes s with p.s in w for some p in v. Throws on v = bottom.
InputWord quotient(const InputWord& w, const InputWord& v);

struct ConcatResult {
    InputWord word;
    bool exact;
};

/// Concatenation. Complement operands widen to top with exact = false.
ConcatResult concat_in(const InputWord& a, const InputWord& b);

InputWord head(const InputWord& w);
InputWord tail(const InputWord& w);

InputWord meet_in(const InputWord& a, const InputWord& b);
InputWord join_in(const InputWord& a, const InputWord& b);
InputWord complement_in(const InputWord& w);
bool leq_in(const InputWord& a, const InputWord& b);

/// Longest word length, for Positive words only.
std::size_t max_word_length(const InputWord& w);

} // namespace abstrans
