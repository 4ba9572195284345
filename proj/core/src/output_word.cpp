#include "abstrans/output_word.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <mutex>
#include <optional>
#include <unordered_map>

namespace abstrans {

namespace detail {

struct OutNode {
    OutKind kind;
    std::optional<Symbol> atom;
    std::vector<OutputWord> children;
    std::size_t hash;
    bool nullable;
    bool all_infinite;
};

} // namespace detail

namespace {

using detail::OutNode;

struct NodeKey {
    OutKind kind;
    const void* atom;
    std::vector<const void*> children;

    bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const noexcept {
        std::size_t h = std::hash<int>{}(static_cast<int>(k.kind)) ^ std::hash<const void*>{}(k.atom);
        for (auto* c : k.children) h = h * 1000003u ^ std::hash<const void*>{}(c);
        return h;
    }
};

struct NodeTable {
    std::mutex mutex;
    std::unordered_map<NodeKey, std::weak_ptr<const OutNode>, NodeKeyHash> nodes;
    std::size_t purge_at = 4096;

    void purge() {
        for (auto it = nodes.begin(); it != nodes.end();) {
            if (it->second.expired())
                it = nodes.erase(it);
            else
                ++it;
        }
        purge_at = std::max<std::size_t>(4096, nodes.size() * 2);
    }
};

NodeTable& table() {
    static NodeTable* t = new NodeTable;
    return *t;
}

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)); }

} // namespace

OutputWord OutputWord::make(OutKind kind, const Symbol* atom, std::vector<OutputWord> children) {
    NodeKey key{kind, atom ? &atom->name() : nullptr, {}};
    key.children.reserve(children.size());
    for (const auto& c : children) key.children.push_back(c.node_.get());

    auto& t = table();
    std::lock_guard lock(t.mutex);
    auto it = t.nodes.find(key);
    if (it != t.nodes.end()) {
        if (auto existing = it->second.lock()) return OutputWord(std::move(existing));
    }

    auto node = std::make_shared<OutNode>();
    node->kind = kind;
    if (atom) node->atom = *atom;
    std::size_t h = static_cast<std::size_t>(kind) + 1;
    if (atom) h = mix(h, std::hash<std::string>{}(atom->name()));
    for (const auto& c : children) h = mix(h, c.hash());
    node->hash = h;
    switch (kind) {
    case OutKind::Bottom:
    case OutKind::Atom:
        node->nullable = false;
        node->all_infinite = false;
        break;
    case OutKind::Epsilon:
        node->nullable = true;
        node->all_infinite = false;
        break;
    case OutKind::Concat:
        node->nullable = std::all_of(children.begin(), children.end(), [](auto& c) { return c.nullable(); });
        node->all_infinite = std::any_of(children.begin(), children.end(), [](auto& c) { return c.all_infinite(); });
        break;
    case OutKind::Union:
        node->nullable = std::any_of(children.begin(), children.end(), [](auto& c) { return c.nullable(); });
        node->all_infinite = !children.empty() &&
                             std::all_of(children.begin(), children.end(), [](auto& c) { return c.all_infinite(); });
        break;
    case OutKind::Star:
        node->nullable = true;
        node->all_infinite = false;
        break;
    case OutKind::Omega:
        node->nullable = children.at(0).nullable();
        node->all_infinite = !children.at(0).nullable() && !children.at(0).is_bottom();
        break;
    }
    node->children = std::move(children);

    std::shared_ptr<const OutNode> shared = std::move(node);
    if (t.nodes.size() >= t.purge_at) t.purge();
    t.nodes[key] = shared;
    return OutputWord(std::move(shared));
}

OutputWord::OutputWord() : OutputWord(bottom()) {}

OutputWord OutputWord::bottom() {
    static const OutputWord b = make(OutKind::Bottom, nullptr, {});
    return b;
}

OutputWord OutputWord::epsilon() {
    static const OutputWord e = make(OutKind::Epsilon, nullptr, {});
    return e;
}

OutputWord OutputWord::atom(Symbol s) { return make(OutKind::Atom, &s, {}); }

OutputWord OutputWord::raw(OutKind kind, std::vector<OutputWord> children) {
    return make(kind, nullptr, std::move(children));
}

OutKind OutputWord::kind() const { return node_->kind; }
const Symbol& OutputWord::symbol() const { return *node_->atom; }
const std::vector<OutputWord>& OutputWord::children() const { return node_->children; }
bool OutputWord::nullable() const { return node_->nullable; }
bool OutputWord::all_infinite() const { return node_->all_infinite; }
std::size_t OutputWord::hash() const { return node_->hash; }

std::set<Symbol> OutputWord::atoms() const {
    std::set<Symbol> out;
    std::set<const void*> seen;
    std::function<void(const OutputWord&)> walk = [&](const OutputWord& w) {
        if (!seen.insert(w.id()).second) return;
        if (w.kind() == OutKind::Atom) out.insert(w.symbol());
        for (const auto& c : w.children()) walk(c);
    };
    walk(*this);
    return out;
}

std::strong_ordering operator<=>(const OutputWord& a, const OutputWord& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (a.kind() != b.kind()) return a.kind() <=> b.kind();
    if (a.kind() == OutKind::Atom) return a.symbol() <=> b.symbol();
    const auto& ca = a.children();
    const auto& cb = b.children();
    for (std::size_t i = 0; i < ca.size() && i < cb.size(); ++i) {
        auto c = ca[i] <=> cb[i];
        if (c != 0) return c;
    }
    return ca.size() <=> cb.size();
}

namespace {

int precedence(OutKind k) {
    switch (k) {
    case OutKind::Union: return 0;
    case OutKind::Concat: return 1;
    case OutKind::Star:
    case OutKind::Omega: return 2;
    default: return 3;
    }
}

void print(const OutputWord& w, std::string& out) {
    auto child = [&](const OutputWord& c, int min_prec) {
        bool paren = precedence(c.kind()) < min_prec;
        if (paren) out += '(';
        print(c, out);
        if (paren) out += ')';
    };
    switch (w.kind()) {
    case OutKind::Bottom: out += "bot"; break;
    case OutKind::Epsilon: out += "eps"; break;
    case OutKind::Atom: out += w.symbol().name(); break;
    case OutKind::Concat:
        for (std::size_t i = 0; i < w.children().size(); ++i) {
            if (i) out += '.';
            child(w.children()[i], 2);
        }
        break;
    case OutKind::Union:
        for (std::size_t i = 0; i < w.children().size(); ++i) {
            if (i) out += " | ";
            child(w.children()[i], 1);
        }
        break;
    case OutKind::Star:
        child(w.children()[0], 2);
        out += '*';
        break;
    case OutKind::Omega:
        child(w.children()[0], 2);
        out += "^w";
        break;
    }
}

} // namespace

std::string OutputWord::to_string() const {
    std::string out;
    print(*this, out);
    return out;
}

OutputWord concat_out(const std::vector<OutputWord>& parts) {
    std::vector<OutputWord> flat;
    bool absorbed = false;
    auto push = [&](const OutputWord& c) {
        if (absorbed || c.is_epsilon()) return;
        flat.push_back(c);
        if (c.all_infinite()) absorbed = true;
    };
    for (const auto& p : parts) {
        if (p.is_bottom()) return OutputWord::bottom();
        if (p.kind() == OutKind::Concat) {
            for (const auto& c : p.children()) {
                if (c.is_bottom()) return OutputWord::bottom();
                push(c);
            }
        } else {
            push(p);
        }
    }
    if (flat.empty()) return OutputWord::epsilon();
    if (flat.size() == 1) return flat.front();
    return OutputWord::raw(OutKind::Concat, std::move(flat));
}

OutputWord concat_out(const OutputWord& a, const OutputWord& b) { return concat_out(std::vector<OutputWord>{a, b}); }

OutputWord join_out(const std::vector<OutputWord>& parts) {
    std::vector<OutputWord> flat;
    for (const auto& p : parts) {
        if (p.is_bottom()) continue;
        if (p.kind() == OutKind::Union) {
            for (const auto& c : p.children())
                if (!c.is_bottom()) flat.push_back(c);
        } else {
            flat.push_back(p);
        }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return OutputWord::bottom();
    if (flat.size() == 1) return flat.front();
    return OutputWord::raw(OutKind::Union, std::move(flat));
}

OutputWord join_out(const OutputWord& a, const OutputWord& b) { return join_out(std::vector<OutputWord>{a, b}); }

OutputWord star(const OutputWord& e) {
    if (e.is_bottom() || e.is_epsilon()) return OutputWord::epsilon();
    if (e.all_infinite()) return join_out(OutputWord::epsilon(), e);
    if (e.kind() == OutKind::Union) {
        std::vector<OutputWord> rest;
        for (const auto& c : e.children())
            if (!c.is_epsilon()) rest.push_back(c);
        if (rest.size() != e.children().size()) return star(join_out(rest));
    }
    return OutputWord::raw(OutKind::Star, {e});
}

OutputWord omega(const OutputWord& e) {
    if (e.is_bottom() || e.is_epsilon()) return e;
    if (e.all_infinite()) return e;
    return OutputWord::raw(OutKind::Omega, {e});
}

OutputWord normalize(const OutputWord& e) {
    std::unordered_map<const void*, OutputWord> memo;
    std::function<OutputWord(const OutputWord&)> go = [&](const OutputWord& w) -> OutputWord {
        auto it = memo.find(w.id());
        if (it != memo.end()) return it->second;
        std::vector<OutputWord> kids;
        for (const auto& c : w.children()) kids.push_back(go(c));
        OutputWord r = w;
        switch (w.kind()) {
        case OutKind::Concat: r = concat_out(kids); break;
        case OutKind::Union: r = join_out(kids); break;
        case OutKind::Star: r = star(kids.at(0)); break;
        case OutKind::Omega: r = omega(kids.at(0)); break;
        default: break;
        }
        memo.emplace(w.id(), r);
        return r;
    };
    return go(e);
}

std::strong_ordering operator<=>(const Lasso& a, const Lasso& b) {
    ShortLex lt;
    if (lt(a.prefix, b.prefix)) return std::strong_ordering::less;
    if (lt(b.prefix, a.prefix)) return std::strong_ordering::greater;
    if (lt(a.cycle, b.cycle)) return std::strong_ordering::less;
    if (lt(b.cycle, a.cycle)) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Lasso make_lasso(Word prefix, Word cycle) {
    const std::size_t n = cycle.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i) periodic = cycle[i] == cycle[i - d];
        if (periodic) {
            cycle.erase(cycle.begin() + static_cast<std::ptrdiff_t>(d), cycle.end());
            break;
        }
    }
    while (!prefix.empty() && !cycle.empty() && prefix.back() == cycle.back()) {
        prefix.pop_back();
        std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
    }
    return {std::move(prefix), std::move(cycle)};
}

std::string lasso_to_string(const Lasso& l) {
    std::string out;
    if (!l.prefix.empty()) out = word_to_string(l.prefix) + ".";
    return out + "(" + word_to_string(l.cycle) + ")^w";
}

bool BoundedLanguage::subset_of(const BoundedLanguage& other) const {
    return std::includes(other.finite.begin(), other.finite.end(), finite.begin(), finite.end(), ShortLex{}) &&
           std::includes(other.lassos.begin(), other.lassos.end(), lassos.begin(), lassos.end());
}

std::vector<std::string> BoundedLanguage::to_strings() const {
    std::vector<std::string> out;
    for (const auto& w : finite) out.push_back(word_to_string(w));
    for (const auto& l : lassos) out.push_back(lasso_to_string(l));
    return out;
}

std::strong_ordering operator<=>(const BoundedLanguage& a, const BoundedLanguage& b) {
    if (a.finite != b.finite)
        return std::lexicographical_compare(a.finite.begin(), a.finite.end(), b.finite.begin(), b.finite.end(),
                                            ShortLex{})
                   ? std::strong_ordering::less
                   : std::strong_ordering::greater;
    if (a.lassos != b.lassos) return a.lassos < b.lassos ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

namespace {

Word cat(const Word& a, const Word& b) {
    Word w;
    w.reserve(a.size() + b.size());
    w.insert(w.end(), a.begin(), a.end());
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

// Finite words of `left` extended by everything in `right`; lassos of `left`
// survive unchanged when `right` is non-empty.
void append_product(const WordSet& left_finite, const BoundedLanguage& right, BoundedLanguage& out) {
    for (const auto& u : left_finite) {
        for (const auto& v : right.finite) out.finite.insert(cat(u, v));
        for (const auto& l : right.lassos) out.lassos.insert(make_lasso(cat(u, l.prefix), l.cycle));
    }
}

BoundedLanguage product(const BoundedLanguage& a, const BoundedLanguage& b) {
    BoundedLanguage out;
    if (b.empty()) return out;
    append_product(a.finite, b, out);
    out.lassos.insert(a.lassos.begin(), a.lassos.end());
    return out;
}

void merge_into(BoundedLanguage& out, const BoundedLanguage& in) {
    out.finite.insert(in.finite.begin(), in.finite.end());
    out.lassos.insert(in.lassos.begin(), in.lassos.end());
}

// Entry j holds the words reachable with at most j star unrollings in total.
using Graded = std::vector<BoundedLanguage>;

BoundedLanguage minus(const BoundedLanguage& a, const BoundedLanguage& b) {
    BoundedLanguage out;
    std::set_difference(a.finite.begin(), a.finite.end(), b.finite.begin(), b.finite.end(),
                        std::inserter(out.finite, out.finite.end()), ShortLex{});
    std::set_difference(a.lassos.begin(), a.lassos.end(), b.lassos.begin(), b.lassos.end(),
                        std::inserter(out.lassos, out.lassos.end()));
    return out;
}

// Words first reachable at exactly level j.
Graded deltas(const Graded& g) {
    Graded d(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) d[j] = j == 0 ? g[0] : minus(g[j], g[j - 1]);
    return d;
}

class Denoter {
public:
    explicit Denoter(std::size_t k) : k_(k) {}

    const Graded& operator()(const OutputWord& o) {
        auto it = memo_.find(o.id());
        if (it != memo_.end()) return it->second;
        Graded r = compute(o);
        return memo_.emplace(o.id(), std::move(r)).first->second;
    }

private:
    Graded constant(BoundedLanguage l) const { return Graded(k_ + 1, l); }

    // Level j of a product only needs the pairs of deltas whose levels sum to j.
    Graded concat(const Graded& a, const Graded& b) const {
        Graded da = deltas(a), db = deltas(b);
        Graded r(k_ + 1);
        for (std::size_t j = 0; j <= k_; ++j) {
            if (j > 0) r[j] = r[j - 1];
            for (std::size_t i = 0; i <= j; ++i) merge_into(r[j], product(da[i], db[j - i]));
        }
        return r;
    }

    // Kleene iteration where each unrolling costs one unit of the budget.
    Graded iterate(const Graded& body) const {
        Graded db = deltas(body);
        Graded s(k_ + 1), ds(k_ + 1);
        for (std::size_t j = 0; j <= k_; ++j) {
            if (j > 0) s[j] = s[j - 1];
            s[j].finite.insert(Word{});
            for (std::size_t i = 0; i + 1 <= j; ++i) merge_into(s[j], product(ds[i], db[j - 1 - i]));
            ds[j] = j == 0 ? s[0] : minus(s[j], s[j - 1]);
        }
        return s;
    }

    Graded compute(const OutputWord& o) {
        switch (o.kind()) {
        case OutKind::Bottom: return constant({});
        case OutKind::Epsilon: return constant({WordSet{Word{}}, {}});
        case OutKind::Atom: return constant({WordSet{Word{o.symbol()}}, {}});
        case OutKind::Concat: {
            Graded r = constant({WordSet{Word{}}, {}});
            for (const auto& c : o.children()) r = concat(r, (*this)(c));
            return r;
        }
        case OutKind::Union: {
            Graded r(k_ + 1);
            for (const auto& c : o.children()) {
                const Graded& d = (*this)(c);
                for (std::size_t j = 0; j <= k_; ++j) merge_into(r[j], d[j]);
            }
            return r;
        }
        case OutKind::Star: return iterate((*this)(o.children()[0]));
        case OutKind::Omega: {
            const Graded& body = (*this)(o.children()[0]);
            Graded prefixes = iterate(body);
            Graded dp = deltas(prefixes), db = deltas(body);
            bool nullable = body[k_].finite.count(Word{}) != 0;
            Graded r(k_ + 1);
            for (std::size_t j = 0; j <= k_; ++j) {
                if (j > 0) r[j].lassos = r[j - 1].lassos;
                r[j].lassos.insert(prefixes[j].lassos.begin(), prefixes[j].lassos.end());
                for (std::size_t i = 0; i <= j; ++i)
                    for (const auto& p : dp[i].finite)
                        for (const auto& c : db[j - i].finite)
                            if (!c.empty()) r[j].lassos.insert(make_lasso(p, c));
                if (nullable) r[j].finite = prefixes[j].finite;
            }
            return r;
        }
        }
        return constant({});
    }

    std::size_t k_;
    std::unordered_map<const void*, Graded> memo_;
};

} // namespace

BoundedLanguage bounded_denote(const OutputWord& o, std::size_t k) { return Denoter(k)(o)[k]; }

} // namespace abstrans
