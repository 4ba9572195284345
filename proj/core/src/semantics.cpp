#include "abstrans/semantics.hpp"

#include "abstrans/errors.hpp"

#include <algorithm>
#include <map>

namespace abstrans {

Runner::Runner(const Transducer& t, ClosureOp op) : engine_(t, op) {}

TransducerState Runner::initial_state() const { return engine_.apply(transducer().initial()); }

TransducerState Runner::run_from(const StateId& q, const OutputWord& init, const InputWord& input,
                                 const InputWord& look) const {
    if (input.is_bottom()) throw DomainError(ErrorKind::BottomInput, "run on bot");
    if (!input.is_positive()) throw DomainError(ErrorKind::NonPositiveInput, input.to_string());
    if (input.is_epsilon()) {
        TransducerState s;
        s.add(q, init);
        return s;
    }
    const InputWord& ahead = look.is_bottom() ? InputWord::epsilon(input.alphabet()) : look;
    const InputWord combined = concat_in(input, ahead).word;
    const InputWord first = head(input);
    const InputWord rest = tail(input);

    TransducerState out;
    for (const auto& tr : transducer().transitions_from(q)) {
        if (tr.input.is_bottom()) continue;
        if (quotient(combined, tr.input).is_bottom()) continue;
        InputWord tr_head = head(tr.input);
        if (tr_head.is_bottom() || quotient(first, tr_head).is_bottom()) continue;
        for (const auto& [q2, o2] : engine_.closure(tr.target, tr.output).termination_map)
            out.join(run_from(q2, concat_out(init, o2), rest, ahead));
    }
    return out;
}

TransducerState Runner::run_hat(const TransducerState& s, const InputWord& input, const InputWord& look) const {
    TransducerState out;
    for (const auto& [q, o] : s) out.join(run_from(q, o, input, look));
    return out;
}

TransducerState Runner::run_hat(const InputWord& input, const InputWord& look) const {
    return run_hat(initial_state(), input, look);
}

TransducerState Runner::run(const TransducerState& s, const Word& input, const WordSet& lookahead) const {
    const auto& sigma = transducer().input_alphabet();
    InputWord look = lookahead.empty() ? InputWord::epsilon(sigma) : InputWord::of(sigma, lookahead);
    return run_hat(s, InputWord::word(sigma, input), look);
}

TransducerState Runner::run(const Word& input, const WordSet& lookahead) const {
    return run(initial_state(), input, lookahead);
}

TransducerState run_from(const Transducer& t, const StateId& q, const OutputWord& init, const InputWord& input,
                         const InputWord& look, ClosureOp op) {
    return Runner(t, op).run_from(q, init, input, look);
}

TransducerState run_hat(const Transducer& t, const TransducerState& s, const InputWord& input,
                        const InputWord& look, ClosureOp op) {
    return Runner(t, op).run_hat(s, input, look);
}

TransducerState run_hat(const Transducer& t, const InputWord& input, const InputWord& look, ClosureOp op) {
    return Runner(t, op).run_hat(input, look);
}

bool feasible(const Transducer& t, const Word& input, const WordSet& lookahead, ClosureOp op) {
    return !Runner(t, op).run(input, lookahead).empty();
}

bool accepts(const Transducer& t, const Word& input, const WordSet& lookahead, ClosureOp op) {
    for (const auto& [q, o] : Runner(t, op).run(input, lookahead))
        if (t.is_accepting(q)) return true;
    return false;
}

namespace {

std::string lookahead_to_string(const WordSet& look) {
    std::string out = "{";
    bool first = true;
    for (const auto& w : look) {
        if (!first) out += ", ";
        first = false;
        out += word_to_string(w);
    }
    return out + "}";
}

std::string language_to_string(const BoundedLanguage& l) {
    std::string out = "{";
    bool first = true;
    for (const auto& s : l.to_strings()) {
        if (!first) out += ", ";
        first = false;
        out += s;
    }
    return out + "}";
}

bool lookahead_less(const WordSet& a, const WordSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), ShortLex{});
}

// Keeps the expressions alive so node addresses stay valid keys.
class DenotationCache {
public:
    explicit DenotationCache(std::size_t k) : k_(k) {}

    const BoundedLanguage& operator()(const OutputWord& o) {
        auto it = cache_.find(o.id());
        if (it == cache_.end()) it = cache_.emplace(o.id(), std::make_pair(o, bounded_denote(o, k_))).first;
        return it->second.second;
    }

private:
    std::size_t k_;
    std::unordered_map<const void*, std::pair<OutputWord, BoundedLanguage>> cache_;
};

} // namespace

std::string TransductionRecord::to_string() const {
    return "(" + word_to_string(input) + ", " + lookahead_to_string(lookahead) + ", " + language_to_string(outputs) +
           ")";
}

std::strong_ordering operator<=>(const TransductionRecord& a, const TransductionRecord& b) {
    if (a.input != b.input) return ShortLex{}(a.input, b.input) ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.lookahead != b.lookahead)
        return lookahead_less(a.lookahead, b.lookahead) ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.outputs <=> b.outputs;
}

std::vector<WordSet> lookahead_family(const Alphabet& sigma, std::size_t m) {
    std::vector<WordSet> out{WordSet{}};
    for (auto& w : sigma.words_up_to(m)) out.push_back(WordSet{w});
    return out;
}

void collect_records(const TransducerState& s, const Word& input, const WordSet& lookahead, std::size_t k,
                     TransductionSet& out, const std::set<StateId>* only) {
    for (const auto& [q, o] : s) {
        if (only && !only->count(q)) continue;
        out.insert({input, lookahead, bounded_denote(o, k), o});
    }
}

BoundedTransductions enumerate_transductions(const Transducer& t, const Bounds& b, ClosureOp op) {
    Runner runner(t, op);
    DenotationCache denote(b.k);
    const TransducerState start = runner.initial_state();
    BoundedTransductions out;
    const auto looks = lookahead_family(*t.input_alphabet(), b.m);
    for (const auto& input : t.input_alphabet()->words_up_to(b.n)) {
        for (const auto& look : looks) {
            for (const auto& [q, o] : runner.run(start, input, look)) {
                TransductionRecord r{input, look, denote(o), o};
                if (t.is_accepting(q)) out.accepting.insert(r);
                out.all.insert(std::move(r));
            }
        }
    }
    return out;
}

TransductionSet transductions_bounded(const Transducer& t, std::size_t n, std::size_t m, std::size_t k,
                                      ClosureOp op) {
    return enumerate_transductions(t, {n, m, k}, op).all;
}

TransductionSet accepting_transductions_bounded(const Transducer& t, std::size_t n, std::size_t m, std::size_t k,
                                                ClosureOp op) {
    return enumerate_transductions(t, {n, m, k}, op).accepting;
}

std::string Witness::to_string() const {
    std::string out = accepting ? "accepting " : "";
    out += "input=" + word_to_string(input) + " lookahead=" + lookahead_to_string(lookahead) + " left=[";
    for (std::size_t i = 0; i < left.size(); ++i) out += (i ? ", " : "") + language_to_string(left[i]);
    out += "] right=[";
    for (std::size_t i = 0; i < right.size(); ++i) out += (i ? ", " : "") + language_to_string(right[i]);
    return out + "]";
}

namespace {

void require_same_alphabets(const Transducer& a, const Transducer& b) {
    if (!same_alphabet(a.input_alphabet(), b.input_alphabet()) ||
        !same_alphabet(a.output_alphabet(), b.output_alphabet()))
        throw DomainError(ErrorKind::AlphabetMismatch, a.name() + " vs " + b.name());
}

struct DerefLess {
    bool operator()(const BoundedLanguage* a, const BoundedLanguage* b) const { return *a < *b; }
};

using LanguageSet = std::set<const BoundedLanguage*, DerefLess>;

bool same_languages(const LanguageSet& a, const LanguageSet& b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](const auto* x, const auto* y) { return *x == *y; });
}

std::vector<BoundedLanguage> copy_out(const LanguageSet& s) {
    std::vector<BoundedLanguage> out;
    for (const auto* l : s) out.push_back(*l);
    return out;
}

// Walks every (input, lookahead) key once, running both transducers side by
// side. Denotations are cached per input word and dropped afterwards.
template <typename F>
void for_each_key(const Transducer& t1, const Transducer& t2, const Bounds& b, ClosureOp op, F&& f) {
    Runner r1(t1, op), r2(t2, op);
    const TransducerState s1 = r1.initial_state(), s2 = r2.initial_state();
    const auto looks = lookahead_family(*t1.input_alphabet(), b.m);
    for (const auto& input : t1.input_alphabet()->words_up_to(b.n)) {
        DenotationCache d1(b.k), d2(b.k);
        for (const auto& look : looks)
            f(input, look, r1.run(s1, input, look), r2.run(s2, input, look), d1, d2);
    }
}

} // namespace

EquivalenceResult equivalent_bounded(const Transducer& t1, const Transducer& t2, const Bounds& b, ClosureOp op) {
    require_same_alphabets(t1, t2);
    EquivalenceResult res;
    std::vector<Witness> accepting;
    for_each_key(t1, t2, b, op,
                 [&](const Word& input, const WordSet& look, const TransducerState& x, const TransducerState& y,
                     DenotationCache& dx, DenotationCache& dy) {
                     std::set<const void*> ids_x, ids_y, acc_ids_x, acc_ids_y;
                     for (const auto& [q, o] : x) {
                         ids_x.insert(o.id());
                         if (t1.is_accepting(q)) acc_ids_x.insert(o.id());
                     }
                     for (const auto& [q, o] : y) {
                         ids_y.insert(o.id());
                         if (t2.is_accepting(q)) acc_ids_y.insert(o.id());
                     }
                     // Identical expressions denote identical languages.
                     if (ids_x == ids_y && acc_ids_x == acc_ids_y) return;
                     LanguageSet all_x, all_y, acc_x, acc_y;
                     for (const auto& [q, o] : x) {
                         const auto* l = &dx(o);
                         all_x.insert(l);
                         if (t1.is_accepting(q)) acc_x.insert(l);
                     }
                     for (const auto& [q, o] : y) {
                         const auto* l = &dy(o);
                         all_y.insert(l);
                         if (t2.is_accepting(q)) acc_y.insert(l);
                     }
                     if (!same_languages(all_x, all_y))
                         res.witnesses.push_back({false, input, look, copy_out(all_x), copy_out(all_y)});
                     if (!same_languages(acc_x, acc_y))
                         accepting.push_back({true, input, look, copy_out(acc_x), copy_out(acc_y)});
                 });
    res.witnesses.insert(res.witnesses.end(), accepting.begin(), accepting.end());
    res.equivalent = res.witnesses.empty();
    return res;
}

OverapproximationResult overapproximates_bounded(const Transducer& t_abs, const Transducer& t, const Bounds& b,
                                                 ClosureOp op) {
    require_same_alphabets(t_abs, t);
    std::unordered_map<const void*, std::pair<OutputWord, OutputMatcher>> matchers;
    auto matcher = [&](const OutputWord& o) -> const OutputMatcher& {
        auto it = matchers.find(o.id());
        if (it == matchers.end()) it = matchers.emplace(o.id(), std::make_pair(o, OutputMatcher(o))).first;
        return it->second.second;
    };
    std::optional<Witness> all_w, acc_w;
    for_each_key(t_abs, t, b, op,
                 [&](const Word& input, const WordSet& look, const TransducerState& abs, const TransducerState& con,
                     DenotationCache& da, DenotationCache& dc) {
                     if (all_w && acc_w) return;
                     for (const auto& [q, o] : con) {
                         const bool acc = t.is_accepting(q);
                         for (bool need_acc : {false, true}) {
                             if (need_acc && !acc) continue;
                             auto& slot = need_acc ? acc_w : all_w;
                             if (slot) continue;
                             auto usable = [&](StateId qa) { return !need_acc || t_abs.is_accepting(qa); };
                             if (std::any_of(abs.begin(), abs.end(),
                                             [&](const auto& e) { return usable(e.first) && e.second.id() == o.id(); }))
                                 continue;
                             const BoundedLanguage& lang = dc(o);
                             bool covered = false;
                             for (const auto& [qa, oa] : abs) {
                                 if (!usable(qa)) continue;
                                 if (matcher(oa).contains_all(lang)) {
                                     covered = true;
                                     break;
                                 }
                             }
                             if (covered) continue;
                             Witness w{need_acc, input, look, {}, {lang}};
                             for (const auto& [qa, oa] : abs)
                                 if (usable(qa)) w.left.push_back(da(oa));
                             slot = std::move(w);
                         }
                     }
                 });
    if (all_w) return {false, all_w};
    if (acc_w) return {false, acc_w};
    return {};
}

bool is_deterministic_bounded(const Transducer& t, std::size_t n, std::size_t m, ClosureOp op) {
    if (t.initial().size() > 1) return false;
    Runner runner(t, op);
    const TransducerState start = runner.initial_state();
    if (start.size() > 1) return false;
    const auto looks = lookahead_family(*t.input_alphabet(), m);
    for (const auto& input : t.input_alphabet()->words_up_to(n))
        for (const auto& look : looks)
            if (runner.run(start, input, look).size() > 1) return false;
    return true;
}

Transducer eliminate_epsilon(const Transducer& t, ClosureOp op) {
    ClosureEngine engine(t, op);
    Transducer out(t.name(), t.input_alphabet(), t.output_alphabet());
    out.set_lookahead_bound(t.lookahead_bound());
    out.set_states(t.states());
    out.set_accepting(t.accepting());

    // The initial entries play the role of sentinel transitions from a fresh
    // start state: their closure targets become the new initial state.
    out.set_initial(engine.apply(t.initial()));

    for (const auto& tr : t.transitions()) {
        if (tr.is_epsilon()) continue;
        for (const auto& [q2, o2] : engine.closure(tr.target, tr.output).termination_map)
            out.add_transition({tr.source, tr.input, q2, o2});
    }
    return out;
}

} // namespace abstrans
