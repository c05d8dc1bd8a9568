// Second, independent shadow generator: reduce/expand between shadows and
// connected embedded planar simple graphs of degree <= 4.
//
// Reducing deletes loops and collapses parallel edges by the inverse moves of
// the expansion grammar (loop insertion, bigon-forming edge doubling,
// side-preserving doubling of cut edges, parallel-pair insertion between two
// degree-2 vertices).  The reduced graph's embedded-isomorphism class is an
// invariant of the shadow, so shadows regenerate as expansions of their
// reduced graph: prepare the graph, solve a binary constraint system saying
// every vertex must reach degree four, and realize each solution as
// embeddings.  Distinct seeds can never produce isomorphic shadows, which is
// what makes per-seed deduplication sufficient.

#pragma once

#include <vector>

#include "knotcensus/isomorphism.hpp"
#include "knotcensus/parallel.hpp"
#include "knotcensus/pdcode.hpp"
#include "knotcensus/planar_map.hpp"

namespace knotcensus {

enum class MoveKind {
    DeleteLoop,        // inverse loop insertion
    DeleteBigonCopy,   // inverse bigon-forming doubling (one copy removed)
    DeleteCutCopy,     // inverse preserving doubling on a two-edge cut
    DeletePair,        // inverse parallel-pair insertion (both copies removed)
    CollapseFourfold,  // the two-vertex four-edge shadow drops to one edge
};

struct ReductionMove {
    MoveKind kind;
    int e1 = -1;
    int e2 = -1;  // second deleted edge for DeletePair, else -1
};

struct Reduction {
    PartialGraph graph;
    std::vector<ReductionMove> moves;
};

// Strip a shadow to the connected embedded planar simple graph it expands
// from.  choice_seed != 0 randomizes which reducible feature is handled
// first; the reduced graph's embedded-isomorphism class does not depend on
// it.  Throws ParityViolation when the input is not a planar shadow or the
// case analysis meets a configuration no shadow can contain.
Reduction reduce_to_simple(const PdCode& code, unsigned choice_seed = 0);

// One loop added to every vertex of degree 0 or 1, so all degrees land in
// {2, 3, 4}.  (A lone vertex becomes the loop graph; the two-vertex single
// edge additionally stands for the four-fold shadow, which its expansion
// variables cannot reach — expansion_enumerate handles that case directly.)
PartialGraph prepare_graph(const PartialGraph& g);

enum class VarKind {
    Loop,           // l: loop insertion at a degree-2 vertex (+2 degree)
    DoubleEdge,     // d: bigon doubling of a non-cut edge (+1 each endpoint)
    DoubleCutEdge,  // c: doubling of a cut edge, bigon or preserving (+1 each)
    InsertPair,     // p: parallel pair between two degree-2 vertices (+2 each)
};

struct ExpansionVar {
    VarKind kind;
    int i = -1;     // vertex (Loop) or lower endpoint
    int j = -1;     // other endpoint / pair partner
    int edge = -1;  // doubled edge id for the two doubling kinds
};

// Degree equations: degree(v) + sum of chosen increments = 4 at every
// vertex.  Linking: two vertex-disjoint InsertPair vars whose connecting
// arcs would have to cross cannot both be chosen.
struct ConstraintSystem {
    std::vector<ExpansionVar> vars;  // loops, doublings, cut doublings, pairs;
                                     // each class in dictionary order
    std::vector<int> need;           // per vertex: 4 - degree
    std::vector<std::vector<std::pair<int, int>>> incident;  // vertex -> (var, coeff)
    std::vector<std::pair<int, int>> linked;  // incompatible InsertPair var pairs
};

ConstraintSystem build_constraints(const PartialGraph& prepared);

// Every 0/1 assignment satisfying all degree equations and linking
// inequalities, each exactly once, ordered by trying 0 before 1 along the
// variable order.
std::vector<std::vector<char>> solve_branch_and_bound(const ConstraintSystem& cs);

// Realize one solution as shadows: pair insertions first (their arcs are
// located on the current face structure), then cut doublings (two embeddings
// each: bigon-forming or side-preserving), then plain doublings (one
// embedding), then loops (two corners each).
std::vector<PdCode> apply_expansions(const PartialGraph& prepared,
                                     const ConstraintSystem& cs,
                                     const std::vector<char>& solution);

// Full pipeline over all seed graphs with n vertices: prepare, solve,
// expand, dedup per seed, concatenate across seeds.  Seeds must be
// connected, simple, planar, of degree <= 4, pairwise non-isomorphic as
// embedded graphs, and have exactly n vertices.  Throws MissingSeeds when
// the list is empty.
Pdstor expansion_enumerate(int n, const std::vector<PartialGraph>& seeds,
                           ExecPolicy policy = ExecPolicy::Parallel);

// Hermetic seed derivation: the reduced graphs of every class in a store,
// deduplicated by embedded isomorphism and sorted by canonical encoding.
std::vector<PartialGraph> seeds_from_store(const Pdstor& store);

}  // namespace knotcensus
