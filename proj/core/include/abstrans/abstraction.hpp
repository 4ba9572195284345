#pragma once

#include "abstrans/transducer.hpp"

#include <optional>
#include <set>
#include <vector>

namespace abstrans {

/// Merges the given states into one fresh state named m(<sorted members>).
Transducer qmerge(const Transducer& t, const std::set<StateId>& qs);

/// Name qmerge picks for a merge set, made fresh against the states of t.
StateId merged_state_name(const Transducer& t, const std::set<StateId>& qs);

struct StatePrecision {
    std::vector<std::set<StateId>> classes;
};

/// Applies qmerge per class, the first class last.
Transducer abstract_states(const Transducer& t, const StatePrecision& p);

/// Selects every transition from source to target.
struct TransitionSelector {
    StateId source;
    StateId target;

    bool matches(const Transition& tr) const { return tr.source == source && tr.target == target; }
};

struct InputDirective {
    TransitionSelector where;
    InputWord widened;
};

struct OutputDirective {
    enum class Mode { Join, Replace };
    TransitionSelector where;
    Mode mode = Mode::Join;
    OutputWord word;
};

/// Transitions not matched by any directive keep their labels.
struct AlphabetPrecision {
    std::vector<InputDirective> inputs;
    std::vector<OutputDirective> outputs;
    /// Unroll bound used to check that replacement outputs lose no words.
    std::size_t check_bound = 4;
};

Transducer abstract_input_alphabet(const Transducer& t, const AlphabetPrecision& p);
Transducer abstract_output_alphabet(const Transducer& t, const AlphabetPrecision& p);

} // namespace abstrans
