#pragma once

#include "abstrans/semantics.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace abstrans {

struct CfaEdge {
    std::string from;
    Symbol op;
    std::string to;
};

/// Control-flow automaton: locations joined by operation-labeled edges.
class Cfa {
public:
    Cfa() = default;
    Cfa(std::string name, std::string entry);

    const std::string& name() const { return name_; }
    const std::string& entry() const { return entry_; }
    const std::set<std::string>& locations() const { return locations_; }
    const std::vector<CfaEdge>& edges() const { return edges_; }

    void add_location(const std::string& l) { locations_.insert(l); }
    void add_edge(const std::string& from, Symbol op, const std::string& to);
    std::vector<std::size_t> edges_from(const std::string& l) const;

private:
    std::string name_;
    std::string entry_;
    std::set<std::string> locations_;
    std::vector<CfaEdge> edges_;
};

enum class View { ByOperation, ByTargetLocation };
enum class MergePolicy { Sep, Join };

/// Concern names per transition, keyed by position in Transducer::transitions().
using ConcernMap = std::map<std::size_t, std::set<std::string>>;

struct AnalysisConfig {
    View view = View::ByOperation;
    std::size_t lookahead_depth = 1;
    MergePolicy merge = MergePolicy::Sep;
    ClosureOp closure = ClosureOp::Regular;
    ConcernMap concerns;
    /// Unroll bound for coverage checks.
    std::size_t output_bound = 3;
    /// Maximum number of reached states per location.
    std::size_t budget = 256;
};

struct PathStep {
    std::size_t edge;
    StateId state;

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct AnalysisState {
    std::string location;
    TransducerState state;
    /// Edges taken from the entry, with the control state each split kept.
    std::vector<PathStep> path;
};

/// Letter of an edge under the configured view.
Symbol edge_letter(const Cfa& c, std::size_t edge, View view);

/// The edge letter, and the words of length lookahead_depth (or shorter at
/// path ends) along the edges that follow. Words are cut before the first
/// letter outside sigma; a foreign edge letter yields bottom.
std::pair<InputWord, InputWord> look(const Cfa& c, std::size_t edge, const AnalysisConfig& cfg,
                                     const AlphabetRef& sigma);

std::vector<AnalysisState> transfer(const AnalysisState& s, std::size_t edge, const Cfa& c, const Runner& runner,
                                    const AnalysisConfig& cfg);

/// nullopt means keep both states.
std::optional<AnalysisState> merge_states(const AnalysisState& s1, const AnalysisState& s2,
                                          const AnalysisConfig& cfg);

bool covers(const TransducerState& big, const TransducerState& small, std::size_t k);
bool stop_covered(const AnalysisState& s, const std::vector<AnalysisState>& reached, std::size_t k);

std::set<std::string> targets(const AnalysisState& s, const Transducer& t, const AnalysisConfig& cfg);

struct AnalysisReport {
    std::vector<AnalysisState> reached;
    std::set<std::string> concerns;
    std::map<std::string, std::set<std::string>> concerns_by_location;
    std::size_t transfers = 0;
    std::size_t merges = 0;
    bool budget_exhausted = false;
    std::vector<std::string> warnings;

    std::vector<const AnalysisState*> at(const std::string& location) const;
};

/// FIFO worklist exploration from the entry location and the closed initial state.
AnalysisReport explore(const Cfa& c, const Transducer& t, const AnalysisConfig& cfg);

/// Replays a recorded path and returns the state it reproduces.
TransducerState replay(const Cfa& c, const Transducer& t, const AnalysisConfig& cfg,
                       const std::vector<PathStep>& path);

Transducer compose_union(const std::vector<Transducer>& ts);
/// Also carries each operand's concern map over to the union's transition positions.
std::pair<Transducer, ConcernMap> compose_union(const std::vector<Transducer>& ts,
                                                const std::vector<ConcernMap>& concerns);

} // namespace abstrans
