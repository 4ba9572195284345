#include "abstrans/transducer.hpp"

#include "abstrans/errors.hpp"

#include <algorithm>

namespace abstrans {

const StateId& trap_state() {
    static const StateId q("__trap");
    return q;
}

const StateId& bottom_state() {
    static const StateId q("__bot");
    return q;
}

bool is_reserved(const StateId& q) { return q == trap_state() || q == bottom_state(); }

std::string Transition::to_string() const {
    return source.name() + " -> " + target.name() + " on " + input.to_string() + " emit " + output.to_string();
}

std::weak_ordering operator<=>(const Transition& a, const Transition& b) {
    if (auto c = a.source <=> b.source; c != 0) return c;
    if (auto c = a.target <=> b.target; c != 0) return c;
    if (auto c = a.input <=> b.input; c != 0) return c;
    return a.output <=> b.output;
}

void TransducerState::add(const StateId& q, const OutputWord& o) {
    if (o.is_bottom()) return;
    auto [it, inserted] = entries_.emplace(q, o);
    if (!inserted) it->second = join_out(it->second, o);
}

void TransducerState::join(const TransducerState& other) {
    for (const auto& [q, o] : other.entries_) add(q, o);
}

const OutputWord* TransducerState::find(const StateId& q) const {
    auto it = entries_.find(q);
    return it == entries_.end() ? nullptr : &it->second;
}

std::string TransducerState::to_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [q, o] : entries_) {
        if (!first) out += ", ";
        first = false;
        out += "(" + q.name() + ", " + o.to_string() + ")";
    }
    return out + "}";
}

TransducerState join_states(const TransducerState& a, const TransducerState& b) {
    TransducerState out = a;
    out.join(b);
    return out;
}

Transducer::Transducer(std::string name, AlphabetRef input_alphabet, AlphabetRef output_alphabet)
    : name_(std::move(name)), input_alphabet_(std::move(input_alphabet)),
      output_alphabet_(std::move(output_alphabet)) {}

void Transducer::add_state(const StateId& q) {
    if (!is_reserved(q)) states_.insert(q);
}

void Transducer::add_initial(const StateId& q, const OutputWord& o) { initial_.add(q, o); }

std::vector<Transition> Transducer::transitions_from(const StateId& q) const {
    std::vector<Transition> out;
    if (q == trap_state()) {
        out.push_back({q, InputWord::top(input_alphabet_), q, OutputWord::epsilon()});
        return out;
    }
    for (const auto& t : transitions_)
        if (t.source == q) out.push_back(t);
    return out;
}

std::vector<Transition> Transducer::epsilon_moves_from(const StateId& q) const {
    std::vector<Transition> out;
    for (const auto& t : transitions_)
        if (t.source == q && t.is_epsilon()) out.push_back(t);
    return out;
}

bool Transducer::has_epsilon_moves() const {
    return std::any_of(transitions_.begin(), transitions_.end(), [](const Transition& t) { return t.is_epsilon(); });
}

const char* to_string(Rule r) {
    switch (r) {
    case Rule::MissingAlphabet: return "MissingAlphabet";
    case Rule::EmptyInitial: return "EmptyInitial";
    case Rule::UnknownInitialState: return "UnknownInitialState";
    case Rule::UnknownAcceptingState: return "UnknownAcceptingState";
    case Rule::UnknownSourceState: return "UnknownSourceState";
    case Rule::UnknownTargetState: return "UnknownTargetState";
    case Rule::InputIsBottom: return "InputIsBottom";
    case Rule::InputAlphabetMismatch: return "InputAlphabetMismatch";
    case Rule::OutputSymbolUnknown: return "OutputSymbolUnknown";
    case Rule::ReservedStateDeclared: return "ReservedStateDeclared";
    case Rule::LeavesReservedState: return "LeavesReservedState";
    case Rule::ReservedStateAccepting: return "ReservedStateAccepting";
    }
    return "?";
}

std::string Violation::to_string() const { return std::string(abstrans::to_string(rule)) + "(" + element + ")"; }

std::vector<Violation> validate(const Transducer& t) {
    std::vector<Violation> out;
    if (!t.input_alphabet() || t.input_alphabet()->empty())
        out.push_back({Rule::MissingAlphabet, "input"});
    if (!t.output_alphabet()) out.push_back({Rule::MissingAlphabet, "output"});
    for (const auto& q : t.states())
        if (is_reserved(q)) out.push_back({Rule::ReservedStateDeclared, q.name()});
    if (t.initial().empty()) out.push_back({Rule::EmptyInitial, ""});
    for (const auto& [q, o] : t.initial()) {
        if (!t.has_state(q)) out.push_back({Rule::UnknownInitialState, q.name()});
        if (t.output_alphabet())
            for (const auto& a : o.atoms())
                if (!t.output_alphabet()->contains(a)) out.push_back({Rule::OutputSymbolUnknown, a.name()});
    }
    for (const auto& q : t.accepting()) {
        if (is_reserved(q))
            out.push_back({Rule::ReservedStateAccepting, q.name()});
        else if (!t.states().count(q))
            out.push_back({Rule::UnknownAcceptingState, q.name()});
    }
    for (const auto& tr : t.transitions()) {
        std::string where = tr.source.name() + "->" + tr.target.name();
        if (is_reserved(tr.source))
            out.push_back({Rule::LeavesReservedState, where});
        else if (!t.states().count(tr.source))
            out.push_back({Rule::UnknownSourceState, where});
        if (!t.has_state(tr.target)) out.push_back({Rule::UnknownTargetState, where});
        if (tr.input.is_bottom()) out.push_back({Rule::InputIsBottom, where});
        if (!same_alphabet(tr.input.alphabet(), t.input_alphabet()))
            out.push_back({Rule::InputAlphabetMismatch, where});
        if (t.output_alphabet())
            for (const auto& a : tr.output.atoms())
                if (!t.output_alphabet()->contains(a)) out.push_back({Rule::OutputSymbolUnknown, a.name()});
    }
    return out;
}

std::size_t lookahead_of(const Transition& tr, std::size_t lookahead_bound) {
    if (!tr.input.is_positive()) return lookahead_bound;
    std::size_t n = max_word_length(tr.input);
    return n == 0 ? 0 : n - 1;
}

std::size_t lookahead_of(const Transducer& t, const Transition& tr) { return lookahead_of(tr, t.lookahead_bound()); }

std::size_t transducer_lookahead(const Transducer& t) {
    std::size_t out = 0;
    for (const auto& tr : t.transitions()) out = std::max(out, lookahead_of(t, tr));
    return out;
}

Transducer rename_states(const Transducer& t, const std::map<StateId, StateId>& renaming) {
    auto r = [&](const StateId& q) {
        auto it = renaming.find(q);
        return it == renaming.end() ? q : it->second;
    };
    Transducer out(t.name(), t.input_alphabet(), t.output_alphabet());
    out.set_lookahead_bound(t.lookahead_bound());
    for (const auto& q : t.states()) out.add_state(r(q));
    for (const auto& [q, o] : t.initial()) out.add_initial(r(q), o);
    for (const auto& q : t.accepting()) out.add_accepting(r(q));
    for (const auto& tr : t.transitions()) out.add_transition({r(tr.source), tr.input, r(tr.target), tr.output});
    return out;
}

namespace {

std::map<StateId, StateId> suffix_renaming(const Transducer& t, const std::string& suffix,
                                           const std::set<StateId>& avoid) {
    std::map<StateId, StateId> m;
    for (const auto& q : t.states()) {
        std::string name = q.name() + suffix;
        while (avoid.count(StateId(name)) || t.states().count(StateId(name))) name += suffix;
        m.emplace(q, StateId(name));
    }
    return m;
}

} // namespace

Transducer union_of(const Transducer& t1, const Transducer& t2) {
    if (!same_alphabet(t1.input_alphabet(), t2.input_alphabet()) ||
        !same_alphabet(t1.output_alphabet(), t2.output_alphabet()))
        throw DomainError(ErrorKind::AlphabetMismatch, t1.name() + " vs " + t2.name());

    bool collide = std::any_of(t1.states().begin(), t1.states().end(),
                               [&](const StateId& q) { return t2.states().count(q) != 0; });
    Transducer a = t1;
    Transducer b = t2;
    if (collide) {
        std::set<StateId> all = t1.states();
        all.insert(t2.states().begin(), t2.states().end());
        a = rename_states(t1, suffix_renaming(t1, "~1", all));
        all.insert(a.states().begin(), a.states().end());
        b = rename_states(t2, suffix_renaming(t2, "~2", all));
    }

    Transducer out(t1.name() + "+" + t2.name(), t1.input_alphabet(), t1.output_alphabet());
    out.set_lookahead_bound(std::max(t1.lookahead_bound(), t2.lookahead_bound()));
    for (const auto* src : {&a, &b}) {
        for (const auto& q : src->states()) out.add_state(q);
        for (const auto& [q, o] : src->initial()) out.add_initial(q, o);
        for (const auto& q : src->accepting()) out.add_accepting(q);
        for (const auto& tr : src->transitions()) out.add_transition(tr);
    }
    return out;
}

} // namespace abstrans
