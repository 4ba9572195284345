#pragma once

#include "abstrans/symbol.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace abstrans {

namespace detail {
struct OutNode;
}

enum class OutKind : std::uint8_t { Bottom, Epsilon, Atom, Concat, Union, Star, Omega };

/// Omega-regular expression over the output alphabet.
///
/// Nodes are hash-consed, so structurally equal expressions share one node and
/// equality is a pointer comparison. Smart constructors (concat_out, join_out,
/// star, omega) normalize; raw() builds an unnormalized node.
class OutputWord {
public:
    OutputWord();

    static OutputWord bottom();
    static OutputWord epsilon();
    static OutputWord atom(Symbol s);
    static OutputWord atom(std::string_view name) { return atom(Symbol(name)); }
    static OutputWord raw(OutKind kind, std::vector<OutputWord> children);

    OutKind kind() const;
    const Symbol& symbol() const;
    const std::vector<OutputWord>& children() const;

    bool is_bottom() const { return kind() == OutKind::Bottom; }
    bool is_epsilon() const { return kind() == OutKind::Epsilon; }

    /// Whether the empty word is denoted.
    bool nullable() const;
    /// Whether every denoted word is infinite (and the set is non-empty).
    bool all_infinite() const;

    std::size_t hash() const;
    const void* id() const { return node_.get(); }

    /// Atoms occurring anywhere in the expression.
    std::set<Symbol> atoms() const;

    std::string to_string() const;

    friend bool operator==(const OutputWord& a, const OutputWord& b) { return a.node_ == b.node_; }
    friend std::strong_ordering operator<=>(const OutputWord& a, const OutputWord& b);

private:
    explicit OutputWord(std::shared_ptr<const detail::OutNode> n) : node_(std::move(n)) {}
    static OutputWord make(OutKind kind, const Symbol* atom, std::vector<OutputWord> children);

    std::shared_ptr<const detail::OutNode> node_;
};

OutputWord concat_out(const OutputWord& a, const OutputWord& b);
OutputWord concat_out(const std::vector<OutputWord>& parts);
OutputWord join_out(const OutputWord& a, const OutputWord& b);
OutputWord join_out(const std::vector<OutputWord>& parts);
OutputWord star(const OutputWord& e);
OutputWord omega(const OutputWord& e);

/// Rebuilds an expression through the smart constructors.
OutputWord normalize(const OutputWord& e);

/// Ultimately periodic word prefix.cycle^w, normalized by make_lasso.
struct Lasso {
    Word prefix;
    Word cycle;

    friend bool operator==(const Lasso&, const Lasso&) = default;
    friend std::strong_ordering operator<=>(const Lasso& a, const Lasso& b);
};

/// Reduces the cycle to its primitive root and rolls the prefix back into it,
/// so equal infinite words get equal lassos. The cycle must be non-empty.
Lasso make_lasso(Word prefix, Word cycle);

std::string lasso_to_string(const Lasso& l);

struct BoundedLanguage {
    WordSet finite;
    std::set<Lasso> lassos;

    bool empty() const { return finite.empty() && lassos.empty(); }
    std::size_t size() const { return finite.size() + lassos.size(); }
    bool subset_of(const BoundedLanguage& other) const;
    std::vector<std::string> to_strings() const;

    friend bool operator==(const BoundedLanguage&, const BoundedLanguage&) = default;
    friend std::strong_ordering operator<=>(const BoundedLanguage& a, const BoundedLanguage& b);
};

/// Words reachable with at most k star unrollings in total across the
/// expression. Omega subterms contribute lassos: a prefix built from unrolled
/// body words and one non-empty body word as the cycle, all within the budget.
BoundedLanguage bounded_denote(const OutputWord& o, std::size_t k);

/// Exact membership in the full language of an expression, via an epsilon-NFA
/// with a Buchi acceptance condition for omega subterms. Finite-word queries
/// share a lazily determinized cache, so one matcher must not be used from
/// several threads at once.
class OutputMatcher {
public:
    explicit OutputMatcher(const OutputWord& o);
    ~OutputMatcher();
    OutputMatcher(OutputMatcher&&) noexcept;
    OutputMatcher& operator=(OutputMatcher&&) noexcept;

    bool contains(const Word& w) const;
    bool contains(const Lasso& l) const;
    bool contains_all(const BoundedLanguage& lang) const;

private:
    struct Automaton;
    std::unique_ptr<Automaton> nfa_;
};

/// Every word of bounded_denote(a, k) is in the language of b.
bool leq_bounded(const OutputWord& a, const OutputWord& b, std::size_t k);

} // namespace abstrans
