#pragma once

#include "abstrans/transducer.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

namespace abstrans {

enum class ClosureOp { Join, Regular };

const char* to_string(ClosureOp op);

std::set<StateId> eps_closure(const Transducer& t, const StateId& q);
std::set<StateId> closure_termination_states(const Transducer& t, const StateId& q);
std::set<StateId> termination_state_mapping(const Transducer& t, const Transition& tr);

struct ClosureResult {
    StateId origin;
    std::map<StateId, OutputWord> termination_map;
};

ClosureResult output_closure_join(const Transducer& t, const StateId& q, const OutputWord& init);
ClosureResult output_closure_regular(const Transducer& t, const StateId& q, const OutputWord& init);
ClosureResult output_closure(const Transducer& t, const StateId& q, const OutputWord& init, ClosureOp op);
TransducerState output_closure_set(const Transducer& t, const TransducerState& s, ClosureOp op);

/// Caches the init-independent part of each state's closure for one transducer.
/// Safe for concurrent use.
class ClosureEngine {
public:
    ClosureEngine(const Transducer& t, ClosureOp op);

    const Transducer& transducer() const { return t_; }
    ClosureOp op() const { return op_; }

    ClosureResult closure(const StateId& q, const OutputWord& init) const;
    TransducerState apply(const StateId& q, const OutputWord& init) const;
    TransducerState apply(const TransducerState& s) const;

private:
    using Summary = std::vector<std::pair<StateId, OutputWord>>;
    const Summary& summary(const StateId& q) const;

    const Transducer& t_;
    ClosureOp op_;
    mutable std::mutex mutex_;
    mutable std::map<StateId, std::shared_ptr<const Summary>> cache_;
};

} // namespace abstrans
