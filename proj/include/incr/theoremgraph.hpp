#pragma once

#include <string>
#include <vector>

#include "incr/error.hpp"

namespace incr {

/// The nine statements whose implication structure the graph encodes.
enum class Statement {
    IAF,            // |f(b)-f(a)| <= k(b-a) from |f'| <= k
    IAFPrime,       // m(b-a) <= f(b)-f(a) <= M(b-a) from m <= f' <= M
    IAFG,           // |f(b)-f(a)| <= g(b)-g(a) from |f'| <= g'
    MAJA,           // f(b)-f(a) <= M(b-a) from f' <= M
    SVD,            // sign of f' characterizes monotonicity
    FCD,            // f' = 0 on an interval iff f constant
    Rolle,          // equal endpoints force an interior zero of f'
    TAF,            // mean value equality f(b)-f(a) = f'(c)(b-a)
    DarbouxAndSVD,  // f' has the intermediate value property, with SVD
};

inline constexpr int kStatementCount = 9;

const char* statement_name(Statement s);

/// Accepts the enum spellings case-insensitively plus "IAF'" for IAFPrime.
/// UnknownStatement otherwise.
Statement parse_statement(const std::string& text);

/// One directed implication, annotated with the proof device that
/// justifies it. Every edge must carry a nonempty note.
struct Implication {
    Statement from;
    Statement to;
    std::string note;
};

/**
 * The fixed implication graph between the nine statements. Bidirectional
 * equivalences are stored as two arcs. FCD has no outgoing arcs: deriving
 * any of the others from it is the construction's open end, so reachability
 * from FCD is deliberately empty.
 */
class TheoremGraph {
public:
    TheoremGraph(); // builds the fixed edge set

    const std::vector<Implication>& edges() const { return edges_; }
    bool has_edge(Statement from, Statement to) const;

    /// Reflexive-transitive reachability.
    bool implies(Statement from, Statement to) const;

    /// Strongly connected components (Tarjan), each class sorted by enum
    /// order, classes ordered by their smallest member.
    std::vector<std::vector<Statement>> equivalence_classes() const;

    /// DOT digraph with one node per statement and edge labels = notes.
    std::string to_dot() const;

private:
    std::vector<Implication> edges_;
    bool adj_[kStatementCount][kStatementCount] = {};
};

TheoremGraph build_graph();

} // namespace incr
