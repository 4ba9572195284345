#pragma once

#include "abstrans/abstraction.hpp"
#include "abstrans/analysis.hpp"

#include <string>
#include <string_view>

namespace abstrans {

/// Line-oriented transducer format:
///
///     transducer NAME
///     input-alphabet a b c
///     output-alphabet p s t
///     lookahead-bound 2        (optional, default 1)
///     state q7                 (optional, states are also taken from the lines below)
///     init q0 emit p
///     accept q6
///     trans q0 -> q1 on {a} emit eps
///     trans q0 -> q0 on !{a} emit (s.t)*
///
/// `#` starts a comment. Validation violations raise DomainError(InvalidTransducer).
Transducer parse_transducer(std::string_view text, bool validate_result = true);
std::string print_transducer(const Transducer& t);

/// eps | bot | ATOM | e.e | e | e | e* | e^w | (e)
OutputWord parse_output_word(std::string_view text);
/// eps | bot | top | {w, ...} | !{w, ...} | a.b (a single word)
InputWord parse_input_word(std::string_view text, const AlphabetRef& sigma);
/// a.b.c; empty text or `eps` is the empty word.
Word parse_word(std::string_view text);
/// {w, ...}; empty text is the empty set.
WordSet parse_word_set(std::string_view text);

///     cfa NAME
///     entry l0
///     edge l0 -> l1 op enter
Cfa parse_cfa(std::string_view text);
std::string print_cfa(const Cfa& c);

struct Precision {
    StatePrecision states;
    AlphabetPrecision alphabet;
};

///     merge q0 q1 ...
///     widen-input q0 -> q1 to !{a}
///     widen-output q0 -> q1 join t.u
///     widen-output q0 -> q1 to (t.u)*
Precision parse_precision(std::string_view text, const Transducer& t);

///     concern q1 -> q2 NAME
/// Names every transition from q1 to q2.
ConcernMap parse_concerns(std::string_view text, const Transducer& t);

} // namespace abstrans
