#pragma once

#include "abstrans/input_word.hpp"
#include "abstrans/output_word.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace abstrans {

/// Opaque control state name.
class StateId {
public:
    StateId() = default;
    explicit StateId(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }

    friend bool operator==(const StateId&, const StateId&) = default;
    friend std::strong_ordering operator<=>(const StateId&, const StateId&) = default;

private:
    std::string name_;
};

/// Implicit state with a top/eps self-loop.
const StateId& trap_state();
/// Implicit dead state anchoring the output of inescapable epsilon loops.
const StateId& bottom_state();
bool is_reserved(const StateId& q);

struct Transition {
    StateId source;
    InputWord input;
    StateId target;
    OutputWord output;

    bool is_epsilon() const { return input.is_epsilon(); }
    std::string to_string() const;

    friend bool operator==(const Transition&, const Transition&) = default;
    friend std::weak_ordering operator<=>(const Transition& a, const Transition& b);
};

/// Map from control states to output words; bottom entries are dropped and
/// duplicate keys are joined.
class TransducerState {
public:
    TransducerState() = default;

    void add(const StateId& q, const OutputWord& o);
    void join(const TransducerState& other);

    const std::map<StateId, OutputWord>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const OutputWord* find(const StateId& q) const;
    bool contains(const StateId& q) const { return entries_.count(q) != 0; }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    std::string to_string() const;

    friend bool operator==(const TransducerState&, const TransducerState&) = default;
    friend auto operator<=>(const TransducerState& a, const TransducerState& b) { return a.entries_ <=> b.entries_; }

private:
    std::map<StateId, OutputWord> entries_;
};

TransducerState join_states(const TransducerState& a, const TransducerState& b);

class Transducer {
public:
    Transducer() = default;
    Transducer(std::string name, AlphabetRef input_alphabet, AlphabetRef output_alphabet);

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const AlphabetRef& input_alphabet() const { return input_alphabet_; }
    const AlphabetRef& output_alphabet() const { return output_alphabet_; }

    /// Declared states; the implicit trap and bottom states are not listed.
    const std::set<StateId>& states() const { return states_; }
    const TransducerState& initial() const { return initial_; }
    const std::set<StateId>& accepting() const { return accepting_; }
    /// Transitions in insertion order (a multiset; duplicates are harmless).
    const std::vector<Transition>& transitions() const { return transitions_; }

    std::size_t lookahead_bound() const { return lookahead_bound_; }
    void set_lookahead_bound(std::size_t b) { lookahead_bound_ = b; }

    void add_state(const StateId& q);
    void add_initial(const StateId& q, const OutputWord& o);
    void set_initial(TransducerState s) { initial_ = std::move(s); }
    void add_accepting(const StateId& q) { accepting_.insert(q); }
    void add_transition(Transition t) { transitions_.push_back(std::move(t)); }
    void set_transitions(std::vector<Transition> ts) { transitions_ = std::move(ts); }
    void set_accepting(std::set<StateId> f) { accepting_ = std::move(f); }
    void set_states(std::set<StateId> q) { states_ = std::move(q); }

    bool has_state(const StateId& q) const { return states_.count(q) || is_reserved(q); }
    bool is_accepting(const StateId& q) const { return accepting_.count(q) != 0; }

    /// Leaving transitions, with the trap self-loop materialized on demand.
    std::vector<Transition> transitions_from(const StateId& q) const;
    std::vector<Transition> epsilon_moves_from(const StateId& q) const;
    bool has_epsilon_moves() const;

private:
    std::string name_;
    AlphabetRef input_alphabet_;
    AlphabetRef output_alphabet_;
    std::set<StateId> states_;
    TransducerState initial_;
    std::set<StateId> accepting_;
    std::vector<Transition> transitions_;
    std::size_t lookahead_bound_ = 1;
};

enum class Rule {
    MissingAlphabet,
    EmptyInitial,
    UnknownInitialState,
    UnknownAcceptingState,
    UnknownSourceState,
    UnknownTargetState,
    InputIsBottom,
    InputAlphabetMismatch,
    OutputSymbolUnknown,
    ReservedStateDeclared,
    LeavesReservedState,
    ReservedStateAccepting,
};

const char* to_string(Rule r);

struct Violation {
    Rule rule;
    std::string element;

    std::string to_string() const;
    friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate(const Transducer& t);

std::size_t lookahead_of(const Transition& tr, std::size_t lookahead_bound);
std::size_t lookahead_of(const Transducer& t, const Transition& tr);
std::size_t transducer_lookahead(const Transducer& t);

/// Component-wise union. Colliding state names are made disjoint by suffixing.
Transducer union_of(const Transducer& t1, const Transducer& t2);

/// Applies a renaming to every state occurrence.
Transducer rename_states(const Transducer& t, const std::map<StateId, StateId>& renaming);

} // namespace abstrans
