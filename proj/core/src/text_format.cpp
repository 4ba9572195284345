#include "abstrans/text_format.hpp"

#include "abstrans/errors.hpp"

#include <cctype>
#include <sstream>

namespace abstrans {

namespace {

bool reserved_char(char c) {
    switch (c) {
    case '{': case '}': case '(': case ')': case ',': case '.':
    case '!': case '*': case '|': case '^': case '#':
        return true;
    default:
        return static_cast<unsigned char>(c) <= ' ';
    }
}

class Cursor {
public:
    Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    bool peek(std::string_view s) {
        skip_ws();
        return text_.substr(pos_, s.size()) == s;
    }
    bool eat(std::string_view s) {
        if (!peek(s)) return false;
        pos_ += s.size();
        return true;
    }
    void expect(std::string_view s) {
        if (!eat(s)) fail("expected '" + std::string(s) + "'", {std::string(s)});
    }
    /// Keyword: must be followed by whitespace or end of line.
    bool eat_keyword(std::string_view s) {
        skip_ws();
        if (text_.substr(pos_, s.size()) != s) return false;
        std::size_t after = pos_ + s.size();
        if (after < text_.size() && !std::isspace(static_cast<unsigned char>(text_[after]))) return false;
        pos_ = after;
        return true;
    }
    void expect_keyword(std::string_view s) {
        if (!eat_keyword(s)) fail("expected '" + std::string(s) + "'", {std::string(s)});
    }
    /// Raw symbol-like token; reserved words are returned as-is.
    std::string token() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && !reserved_char(text_[pos_])) ++pos_;
        if (start == pos_) fail("expected a symbol", {"symbol"});
        return std::string(text_.substr(start, pos_ - start));
    }
    std::string symbol() {
        std::size_t start = (skip_ws(), pos_);
        std::string s = token();
        if (!is_symbol_token(s)) {
            pos_ = start;
            fail("'" + s + "' is not a symbol", {"symbol"});
        }
        return s;
    }
    /// Any run of non-whitespace not containing "->".
    std::string name() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_.substr(pos_, 2) != "->")
            ++pos_;
        if (start == pos_) fail("expected a name", {"name"});
        return std::string(text_.substr(start, pos_ - start));
    }
    std::string rest() {
        skip_ws();
        std::string r(text_.substr(pos_));
        pos_ = text_.size();
        while (!r.empty() && std::isspace(static_cast<unsigned char>(r.back()))) r.pop_back();
        return r;
    }
    std::size_t column() const { return pos_ + 1; }
    std::size_t line() const { return line_; }
    void finish() {
        if (!at_end()) fail("unexpected trailing text", {"end of line"});
    }
    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) const {
        throw ParseError(line_, pos_ + 1, msg, std::move(expected));
    }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

// --- output expressions

OutputWord parse_union(Cursor& c);

OutputWord parse_primary(Cursor& c) {
    if (c.eat("(")) {
        OutputWord w = parse_union(c);
        c.expect(")");
        return w;
    }
    std::string s = c.token();
    if (s == "eps") return OutputWord::epsilon();
    if (s == "bot") return OutputWord::bottom();
    if (!is_symbol_token(s)) c.fail("'" + s + "' is not a symbol", {"symbol", "eps", "bot", "("});
    return OutputWord::atom(Symbol(s));
}

OutputWord parse_postfix(Cursor& c) {
    OutputWord w = parse_primary(c);
    for (;;) {
        if (c.eat("*"))
            w = star(w);
        else if (c.eat("^w"))
            w = omega(w);
        else
            return w;
    }
}

OutputWord parse_concat(Cursor& c) {
    std::vector<OutputWord> parts{parse_postfix(c)};
    while (c.eat(".")) parts.push_back(parse_postfix(c));
    return concat_out(parts);
}

OutputWord parse_union(Cursor& c) {
    std::vector<OutputWord> parts{parse_concat(c)};
    while (c.eat("|")) parts.push_back(parse_concat(c));
    return parts.size() == 1 ? parts.front() : join_out(parts);
}

// --- input words

Word parse_word_at(Cursor& c) {
    std::string first = c.token();
    if (first == "eps") return {};
    if (!is_symbol_token(first)) c.fail("'" + first + "' is not a symbol", {"symbol", "eps"});
    Word w{Symbol(first)};
    while (c.eat(".")) w.push_back(Symbol(c.symbol()));
    return w;
}

WordSet parse_braced(Cursor& c) {
    c.expect("{");
    WordSet out;
    if (c.eat("}")) return out;
    do {
        out.insert(parse_word_at(c));
    } while (c.eat(","));
    c.expect("}");
    return out;
}

InputWord parse_input_at(Cursor& c, const AlphabetRef& sigma) {
    auto checked = [&](const WordSet& ws) {
        for (const auto& w : ws)
            if (!sigma->contains(w)) c.fail("word '" + word_to_string(w) + "' is not over the input alphabet");
        return ws;
    };
    if (c.eat("!")) return InputWord::cofinite(sigma, checked(parse_braced(c)));
    if (c.peek("{")) return InputWord::of(sigma, checked(parse_braced(c)));
    if (c.eat_keyword("bot")) return InputWord::bottom(sigma);
    if (c.eat_keyword("top")) return InputWord::top(sigma);
    return InputWord::of(sigma, checked(WordSet{parse_word_at(c)}));
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
    std::size_t line = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view l = text.substr(start, end - start);
        if (auto h = l.find('#'); h != std::string_view::npos) l = l.substr(0, h);
        ++line;
        Cursor c(l, line);
        if (!c.at_end()) f(c);
        start = end + 1;
    }
}

// Reserved states may appear as initial states and transition targets, which
// is how epsilon elimination records inescapable loops.
StateId state_name(Cursor& c, bool allow_reserved = false) {
    std::size_t col = c.column();
    std::string n = c.name();
    StateId q(n);
    if (!allow_reserved && is_reserved(q)) throw ParseError(c.line(), col, "state name '" + n + "' is reserved");
    return q;
}

AlphabetRef alphabet_line(Cursor& c) {
    std::set<Symbol> syms;
    while (!c.at_end()) syms.insert(Symbol(c.symbol()));
    return std::make_shared<const Alphabet>(std::move(syms));
}

template <typename T>
T parse_whole(std::string_view text, T (*f)(Cursor&)) {
    Cursor c(text, 1);
    T out = f(c);
    c.finish();
    return out;
}

} // namespace

OutputWord parse_output_word(std::string_view text) { return parse_whole<OutputWord>(text, parse_union); }

InputWord parse_input_word(std::string_view text, const AlphabetRef& sigma) {
    Cursor c(text, 1);
    InputWord w = parse_input_at(c, sigma);
    c.finish();
    return w;
}

Word parse_word(std::string_view text) {
    Cursor c(text, 1);
    if (c.at_end()) return {};
    Word w = parse_word_at(c);
    c.finish();
    return w;
}

WordSet parse_word_set(std::string_view text) {
    Cursor c(text, 1);
    if (c.at_end()) return {};
    WordSet ws = parse_braced(c);
    c.finish();
    return ws;
}

Transducer parse_transducer(std::string_view text, bool validate_result) {
    std::string name;
    AlphabetRef in, out;
    struct Pending {
        std::size_t line, col;
        std::string text;
    };
    std::set<StateId> states;
    std::vector<std::pair<StateId, OutputWord>> inits;
    std::set<StateId> accepting;
    std::vector<Transition> trans;
    std::vector<Pending> trans_inputs;
    std::size_t bound = 1;
    bool header = false;

    for_each_line(text, [&](Cursor& c) {
        if (c.eat_keyword("transducer")) {
            if (header) c.fail("duplicate transducer header");
            header = true;
            name = c.name();
        } else if (!header) {
            c.fail("expected 'transducer NAME' first", {"transducer"});
        } else if (c.eat_keyword("input-alphabet")) {
            in = alphabet_line(c);
        } else if (c.eat_keyword("output-alphabet")) {
            out = alphabet_line(c);
        } else if (c.eat_keyword("lookahead-bound")) {
            std::string n = c.name();
            try {
                std::size_t used = 0;
                bound = std::stoul(n, &used);
                if (used != n.size()) throw std::invalid_argument(n);
            } catch (const std::exception&) {
                c.fail("expected a natural number", {"number"});
            }
        } else if (c.eat_keyword("state")) {
            while (!c.at_end()) states.insert(state_name(c));
        } else if (c.eat_keyword("init")) {
            StateId q = state_name(c, true);
            c.expect_keyword("emit");
            if (!is_reserved(q)) states.insert(q);
            inits.emplace_back(q, parse_union(c));
        } else if (c.eat_keyword("accept")) {
            while (!c.at_end()) {
                StateId q = state_name(c);
                states.insert(q);
                accepting.insert(q);
            }
        } else if (c.eat_keyword("trans")) {
            if (!in) c.fail("input-alphabet must precede transitions", {"input-alphabet"});
            StateId src = state_name(c);
            c.expect("->");
            StateId tgt = state_name(c, true);
            c.expect_keyword("on");
            InputWord w = parse_input_at(c, in);
            c.expect_keyword("emit");
            OutputWord o = parse_union(c);
            states.insert(src);
            if (!is_reserved(tgt)) states.insert(tgt);
            trans.push_back({src, w, tgt, o});
            c.finish();
            return;
        } else {
            c.fail("unknown directive",
                   {"input-alphabet", "output-alphabet", "lookahead-bound", "state", "init", "accept", "trans"});
        }
        c.finish();
    });

    if (!header) throw ParseError(1, 1, "missing 'transducer NAME' header", {"transducer"});
    if (!in) in = std::make_shared<const Alphabet>();
    if (!out) out = std::make_shared<const Alphabet>();

    Transducer t(name, in, out);
    t.set_lookahead_bound(bound);
    for (const auto& q : states) t.add_state(q);
    for (const auto& [q, o] : inits) t.add_initial(q, o);
    t.set_accepting(accepting);
    t.set_transitions(std::move(trans));

    if (validate_result) {
        auto v = validate(t);
        if (!v.empty()) {
            std::string msg;
            for (const auto& x : v) msg += (msg.empty() ? "" : "; ") + x.to_string();
            throw DomainError(ErrorKind::InvalidTransducer, msg);
        }
    }
    return t;
}

std::string print_transducer(const Transducer& t) {
    std::ostringstream os;
    os << "transducer " << (t.name().empty() ? "t" : t.name()) << '\n';
    auto alpha = [&](const char* kw, const AlphabetRef& a) {
        os << kw;
        if (a)
            for (const auto& s : a->symbols()) os << ' ' << s.name();
        os << '\n';
    };
    alpha("input-alphabet", t.input_alphabet());
    alpha("output-alphabet", t.output_alphabet());
    if (t.lookahead_bound() != 1) os << "lookahead-bound " << t.lookahead_bound() << '\n';
    if (!t.states().empty()) {
        os << "state";
        for (const auto& q : t.states()) os << ' ' << q.name();
        os << '\n';
    }
    for (const auto& [q, o] : t.initial()) os << "init " << q.name() << " emit " << o.to_string() << '\n';
    for (const auto& q : t.accepting()) os << "accept " << q.name() << '\n';
    for (const auto& tr : t.transitions())
        os << "trans " << tr.source.name() << " -> " << tr.target.name() << " on " << tr.input.to_string()
           << " emit " << tr.output.to_string() << '\n';
    return os.str();
}

Cfa parse_cfa(std::string_view text) {
    std::string name;
    std::string entry;
    bool header = false;
    std::set<std::string> locs;
    std::vector<CfaEdge> edges;
    std::size_t entry_line = 0;

    for_each_line(text, [&](Cursor& c) {
        if (c.eat_keyword("cfa")) {
            if (header) c.fail("duplicate cfa header");
            header = true;
            name = c.name();
        } else if (!header) {
            c.fail("expected 'cfa NAME' first", {"cfa"});
        } else if (c.eat_keyword("entry")) {
            entry = c.name();
            entry_line = c.line();
        } else if (c.eat_keyword("location")) {
            while (!c.at_end()) locs.insert(c.name());
        } else if (c.eat_keyword("edge")) {
            std::string from = c.name();
            c.expect("->");
            std::string to = c.name();
            c.expect_keyword("op");
            edges.push_back({from, Symbol(c.symbol()), to});
        } else {
            c.fail("unknown directive", {"entry", "location", "edge"});
        }
        c.finish();
    });
    if (!header) throw ParseError(1, 1, "missing 'cfa NAME' header", {"cfa"});
    if (entry.empty()) throw ParseError(entry_line ? entry_line : 1, 1, "missing entry location", {"entry"});

    Cfa c(name, entry);
    for (const auto& l : locs) c.add_location(l);
    for (const auto& e : edges) c.add_edge(e.from, e.op, e.to);
    return c;
}

std::string print_cfa(const Cfa& c) {
    std::ostringstream os;
    os << "cfa " << (c.name().empty() ? "c" : c.name()) << '\n' << "entry " << c.entry() << '\n';
    for (const auto& e : c.edges()) os << "edge " << e.from << " -> " << e.to << " op " << e.op.name() << '\n';
    return os.str();
}

namespace {

TransitionSelector selector(Cursor& c, const Transducer& t) {
    std::size_t col = c.column();
    StateId src(c.name());
    c.expect("->");
    StateId tgt(c.name());
    TransitionSelector s{src, tgt};
    bool any = false;
    for (const auto& tr : t.transitions()) any = any || s.matches(tr);
    if (!any)
        throw ParseError(c.line(), col, "no transition " + src.name() + " -> " + tgt.name());
    return s;
}

} // namespace

Precision parse_precision(std::string_view text, const Transducer& t) {
    Precision p;
    for_each_line(text, [&](Cursor& c) {
        if (c.eat_keyword("merge")) {
            std::set<StateId> cls;
            while (!c.at_end()) {
                std::size_t col = c.column();
                StateId q(c.name());
                if (!t.states().count(q)) throw ParseError(c.line(), col, "unknown state '" + q.name() + "'");
                cls.insert(q);
            }
            p.states.classes.push_back(std::move(cls));
        } else if (c.eat_keyword("widen-input")) {
            auto where = selector(c, t);
            c.expect_keyword("to");
            p.alphabet.inputs.push_back({where, parse_input_at(c, t.input_alphabet())});
        } else if (c.eat_keyword("widen-output")) {
            auto where = selector(c, t);
            OutputDirective d{where, OutputDirective::Mode::Join, OutputWord::bottom()};
            if (c.eat_keyword("to"))
                d.mode = OutputDirective::Mode::Replace;
            else
                c.expect_keyword("join");
            d.word = parse_union(c);
            p.alphabet.outputs.push_back(d);
        } else {
            c.fail("unknown directive", {"merge", "widen-input", "widen-output"});
        }
        c.finish();
    });
    return p;
}

ConcernMap parse_concerns(std::string_view text, const Transducer& t) {
    ConcernMap m;
    for_each_line(text, [&](Cursor& c) {
        c.expect_keyword("concern");
        auto where = selector(c, t);
        std::string name = c.name();
        for (std::size_t i = 0; i < t.transitions().size(); ++i)
            if (where.matches(t.transitions()[i])) m[i].insert(name);
        c.finish();
    });
    return m;
}

} // namespace abstrans
