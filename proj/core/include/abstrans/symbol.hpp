#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace abstrans {

/// Interned symbol name. Equality is a pointer comparison, ordering is by name.
class Symbol {
public:
    explicit Symbol(std::string_view name);

    const std::string& name() const { return *name_; }

    friend bool operator==(const Symbol& a, const Symbol& b) { return a.name_ == b.name_; }
    friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
        if (a.name_ == b.name_) return std::strong_ordering::equal;
        return *a.name_ <=> *b.name_;
    }

private:
    const std::string* name_;
};

/// True for tokens usable as symbol names: non-empty, no whitespace, no reserved punctuation.
bool is_symbol_token(std::string_view s);

using Word = std::vector<Symbol>;

Word make_word(std::initializer_list<std::string_view> letters);
std::string word_to_string(const Word& w, std::string_view sep = ".");

/// Shortlex order: shorter words first, then lexicographic.
struct ShortLex {
    bool operator()(const Word& a, const Word& b) const;
};

using WordSet = std::set<Word, ShortLex>;

/// Finite declared alphabet. Shared between the words built over it.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::set<Symbol> symbols) : symbols_(std::move(symbols)) {}
    Alphabet(std::initializer_list<std::string_view> names);

    const std::set<Symbol>& symbols() const { return symbols_; }
    bool contains(const Symbol& s) const { return symbols_.count(s) != 0; }
    bool contains(const Word& w) const;
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }

    /// All words of length at most n, in shortlex order.
    std::vector<Word> words_up_to(std::size_t n) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

private:
    std::set<Symbol> symbols_;
};

using AlphabetRef = std::shared_ptr<const Alphabet>;

AlphabetRef make_alphabet(std::initializer_list<std::string_view> names);
bool same_alphabet(const AlphabetRef& a, const AlphabetRef& b);

} // namespace abstrans

template <>
struct std::hash<abstrans::Symbol> {
    std::size_t operator()(const abstrans::Symbol& s) const noexcept {
        return std::hash<std::string>{}(s.name());
    }
};
