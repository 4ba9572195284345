#include "abstrans/abstraction.hpp"

#include "abstrans/errors.hpp"

#include <map>

namespace abstrans {

StateId merged_state_name(const Transducer& t, const std::set<StateId>& qs) {
    std::string name = "m(";
    bool first = true;
    for (const auto& q : qs) {
        if (!first) name += ",";
        first = false;
        name += q.name();
    }
    name += ")";
    while (t.states().count(StateId(name)) && !qs.count(StateId(name))) name += "'";
    return StateId(name);
}

Transducer qmerge(const Transducer& t, const std::set<StateId>& qs) {
    if (qs.empty()) throw DomainError(ErrorKind::InvalidArgument, "empty merge set");
    for (const auto& q : qs) {
        if (is_reserved(q)) throw DomainError(ErrorKind::ReservedState, q.name());
        if (!t.states().count(q)) throw DomainError(ErrorKind::UnknownState, q.name());
    }
    const StateId qm = merged_state_name(t, qs);
    std::map<StateId, StateId> alpha;
    for (const auto& q : qs) alpha.emplace(q, qm);
    return rename_states(t, alpha);
}

Transducer abstract_states(const Transducer& t, const StatePrecision& p) {
    std::set<StateId> seen;
    for (const auto& cls : p.classes)
        for (const auto& q : cls)
            if (!seen.insert(q).second) throw DomainError(ErrorKind::OverlappingClasses, q.name());
    Transducer out = t;
    for (auto it = p.classes.rbegin(); it != p.classes.rend(); ++it) out = qmerge(out, *it);
    return out;
}

Transducer abstract_input_alphabet(const Transducer& t, const AlphabetPrecision& p) {
    Transducer out = t;
    std::vector<Transition> ts;
    for (auto tr : t.transitions()) {
        for (const auto& d : p.inputs) {
            if (!d.where.matches(tr)) continue;
            if (!leq_in(tr.input, d.widened))
                throw DomainError(ErrorKind::ShrinkingDirective, tr.to_string() + " to " + d.widened.to_string());
            tr.input = d.widened;
        }
        ts.push_back(std::move(tr));
    }
    out.set_transitions(std::move(ts));
    return out;
}

Transducer abstract_output_alphabet(const Transducer& t, const AlphabetPrecision& p) {
    Transducer out = t;
    std::vector<Transition> ts;
    for (auto tr : t.transitions()) {
        for (const auto& d : p.outputs) {
            if (!d.where.matches(tr)) continue;
            if (d.mode == OutputDirective::Mode::Join) {
                tr.output = join_out(tr.output, d.word);
            } else {
                if (!leq_bounded(tr.output, d.word, p.check_bound))
                    throw DomainError(ErrorKind::ShrinkingDirective,
                                      tr.to_string() + " to " + d.word.to_string());
                tr.output = d.word;
            }
        }
        ts.push_back(std::move(tr));
    }
    out.set_transitions(std::move(ts));
    return out;
}

} // namespace abstrans
