#include "abstrans/symbol.hpp"

#include "abstrans/errors.hpp"

#include <mutex>
#include <unordered_set>

namespace abstrans {

namespace {

std::mutex& intern_mutex() {
    static std::mutex m;
    return m;
}

std::unordered_set<std::string>& intern_table() {
    static std::unordered_set<std::string> table;
    return table;
}

} // namespace

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::AlphabetMismatch: return "alphabet mismatch";
    case ErrorKind::QuotientByBottom: return "quotient by bottom";
    case ErrorKind::SymbolNotInAlphabet: return "symbol not in alphabet";
    case ErrorKind::BottomInput: return "bottom input";
    case ErrorKind::NonPositiveInput: return "non-positive input";
    case ErrorKind::UnknownState: return "unknown state";
    case ErrorKind::UnknownTransition: return "unknown transition";
    case ErrorKind::ReservedState: return "reserved state";
    case ErrorKind::OverlappingClasses: return "overlapping classes";
    case ErrorKind::ShrinkingDirective: return "shrinking directive";
    case ErrorKind::NotEpsilonFree: return "not epsilon-free";
    case ErrorKind::MultipleEnteringTransitions: return "multiple entering transitions";
    case ErrorKind::EmptyTransducerList: return "empty transducer list";
    case ErrorKind::InvalidTransducer: return "invalid transducer";
    case ErrorKind::InvalidArgument: return "invalid argument";
    }
    return "unknown error";
}

DomainError::DomainError(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + (detail.empty() ? "" : ": " + detail)),
      kind_(kind) {}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message,
                       std::vector<std::string> expected)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line), column_(column), expected_(std::move(expected)) {}

Symbol::Symbol(std::string_view name) {
    std::lock_guard lock(intern_mutex());
    name_ = &*intern_table().emplace(name).first;
}

bool is_symbol_token(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c <= ' ') return false;
        switch (c) {
        case '{': case '}': case '(': case ')': case ',': case '.':
        case '!': case '*': case '|': case '^': case '#':
            return false;
        default:
            break;
        }
    }
    return s != "eps" && s != "bot" && s != "top";
}

Word make_word(std::initializer_list<std::string_view> letters) {
    Word w;
    w.reserve(letters.size());
    for (auto l : letters) w.emplace_back(l);
    return w;
}

std::string word_to_string(const Word& w, std::string_view sep) {
    if (w.empty()) return "eps";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += sep;
        out += w[i].name();
    }
    return out;
}

bool ShortLex::operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

Alphabet::Alphabet(std::initializer_list<std::string_view> names) {
    for (auto n : names) symbols_.emplace(n);
}

bool Alphabet::contains(const Word& w) const {
    for (const auto& s : w)
        if (!contains(s)) return false;
    return true;
}

std::vector<Word> Alphabet::words_up_to(std::size_t n) const {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= n; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (const auto& s : symbols_) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        }
        begin = end;
    }
    return out;
}

AlphabetRef make_alphabet(std::initializer_list<std::string_view> names) {
    return std::make_shared<const Alphabet>(names);
}

bool same_alphabet(const AlphabetRef& a, const AlphabetRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

} // namespace abstrans
