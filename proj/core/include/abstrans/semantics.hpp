#pragma once

#include "abstrans/closure.hpp"

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace abstrans {

/// Executes runs over one transducer; holds the closure cache.
class Runner {
public:
    explicit Runner(const Transducer& t, ClosureOp op = ClosureOp::Regular);

    const Transducer& transducer() const { return engine_.transducer(); }
    ClosureOp op() const { return engine_.op(); }

    /// The closure of the initial transducer state, where runs start.
    TransducerState initial_state() const;

    TransducerState run_from(const StateId& q, const OutputWord& init, const InputWord& input,
                             const InputWord& look) const;
    TransducerState run_hat(const TransducerState& s, const InputWord& input, const InputWord& look) const;
    TransducerState run_hat(const InputWord& input, const InputWord& look) const;

    /// Concrete-word convenience: an empty lookahead set is read as {eps}.
    TransducerState run(const Word& input, const WordSet& lookahead) const;
    TransducerState run(const TransducerState& s, const Word& input, const WordSet& lookahead) const;

private:
    ClosureEngine engine_;
};

TransducerState run_from(const Transducer& t, const StateId& q, const OutputWord& init, const InputWord& input,
                         const InputWord& look, ClosureOp op = ClosureOp::Regular);
TransducerState run_hat(const Transducer& t, const TransducerState& s, const InputWord& input,
                        const InputWord& look, ClosureOp op = ClosureOp::Regular);
TransducerState run_hat(const Transducer& t, const InputWord& input, const InputWord& look,
                        ClosureOp op = ClosureOp::Regular);

bool feasible(const Transducer& t, const Word& input, const WordSet& lookahead, ClosureOp op = ClosureOp::Regular);
bool accepts(const Transducer& t, const Word& input, const WordSet& lookahead, ClosureOp op = ClosureOp::Regular);

struct TransductionRecord {
    Word input;
    WordSet lookahead;
    BoundedLanguage outputs;
    /// One expression with this denotation; not part of the record's identity.
    OutputWord output;

    std::string to_string() const;

    friend bool operator==(const TransductionRecord& a, const TransductionRecord& b) {
        return a.input == b.input && a.lookahead == b.lookahead && a.outputs == b.outputs;
    }
    friend std::strong_ordering operator<=>(const TransductionRecord& a, const TransductionRecord& b);
};

using TransductionSet = std::set<TransductionRecord>;

struct Bounds {
    std::size_t n = 3; // input length
    std::size_t m = 1; // lookahead word length
    std::size_t k = 3; // star unrollings in output denotations
};

/// Empty set first, then {w} for every w of length at most m.
std::vector<WordSet> lookahead_family(const Alphabet& sigma, std::size_t m);

struct BoundedTransductions {
    TransductionSet all;
    TransductionSet accepting;
};

BoundedTransductions enumerate_transductions(const Transducer& t, const Bounds& b, ClosureOp op = ClosureOp::Regular);
TransductionSet transductions_bounded(const Transducer& t, std::size_t n, std::size_t m, std::size_t k,
                                      ClosureOp op = ClosureOp::Regular);
TransductionSet accepting_transductions_bounded(const Transducer& t, std::size_t n, std::size_t m, std::size_t k,
                                                ClosureOp op = ClosureOp::Regular);

/// Records of a transducer state reached on (input, lookahead).
void collect_records(const TransducerState& s, const Word& input, const WordSet& lookahead, std::size_t k,
                     TransductionSet& out, const std::set<StateId>* only = nullptr);

struct Witness {
    bool accepting = false;
    Word input;
    WordSet lookahead;
    std::vector<BoundedLanguage> left;
    std::vector<BoundedLanguage> right;

    std::string to_string() const;
};

struct EquivalenceResult {
    bool equivalent = true;
    /// Every differing (input, lookahead) key, transductions before accepting ones.
    std::vector<Witness> witnesses;
};

EquivalenceResult equivalent_bounded(const Transducer& t1, const Transducer& t2, const Bounds& b,
                                     ClosureOp op = ClosureOp::Regular);

struct OverapproximationResult {
    bool holds = true;
    std::optional<Witness> witness;
};

/// Every bounded record of t is covered by a record of t_abs with the same key
/// whose output language contains the record's bounded words.
OverapproximationResult overapproximates_bounded(const Transducer& t_abs, const Transducer& t, const Bounds& b,
                                                 ClosureOp op = ClosureOp::Regular);

bool is_deterministic_bounded(const Transducer& t, std::size_t n, std::size_t m, ClosureOp op = ClosureOp::Regular);

/// Removes all epsilon moves by shortcutting every consuming transition, and
/// the initial state, through the regular output closure of their targets.
Transducer eliminate_epsilon(const Transducer& t, ClosureOp op = ClosureOp::Regular);

} // namespace abstrans
