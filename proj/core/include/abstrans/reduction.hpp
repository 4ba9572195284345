#pragma once

#include "abstrans/semantics.hpp"

#include <set>
#include <vector>

namespace abstrans {

struct LeftProfile {
    StateId state;
    TransductionSet records;
};

LeftProfile left_transductions_bounded(const Transducer& t, const StateId& q, const Bounds& b,
                                       ClosureOp op = ClosureOp::Regular);
TransductionSet right_transductions_bounded(const Transducer& t, const StateId& q, const OutputWord& init,
                                            const Bounds& b, ClosureOp op = ClosureOp::Regular);
std::set<std::pair<Word, WordSet>> right_accepted_bounded(const Transducer& t, const StateId& q, std::size_t n,
                                                          std::size_t m, ClosureOp op = ClosureOp::Regular);

using Partition = std::vector<std::set<StateId>>;

/// Coarsest partition in which co-classed states have the same initial output
/// class, the same accepting flag, and one common entering-transition signature
/// (input word, output class, source class). Requires an epsilon-free transducer.
/// `k` bounds the output comparison.
Partition left_equivalent_candidates(const Transducer& t, std::size_t k = 4);

/// Merges every non-singleton class of left_equivalent_candidates.
Transducer reduce_left(const Transducer& t, std::size_t k = 4);

} // namespace abstrans
