// Link shadow generation by connect sums of prime shadows, plus a brute-force
// reference generator and quadrangulation dualization.
//
// A shadow is prime when no two of its faces share more than one edge; every
// other shadow splits uniquely (as a multiset of classes) into prime summands
// by cut-and-splice, independent of cut order.  The composite builder
// assembles all shadows of each size from prime stores, and the brute-force
// generator independently enumerates rotation-system gluings so the two can
// be compared class-for-class.

#pragma once

#include <string>
#include <vector>

#include "knotcensus/isomorphism.hpp"
#include "knotcensus/parallel.hpp"
#include "knotcensus/pdcode.hpp"
#include "knotcensus/planar_map.hpp"

namespace knotcensus {

// Splice two shadows at edge e of a and edge f of b: b's labels are shifted
// past a's, then the heads +e and +f are exchanged.  The result has
// V(a)+V(b) vertices, E(a)+E(b) edges, and F(a)+F(b)-2 faces, stays planar
// when both inputs are, and is returned normalized.  e and f must be
// positive labels of their codes; otherwise BadEdgeReference.
PdCode connect_sum(const PdCode& a, SignedEdge e, const PdCode& b, SignedEdge f);

// True when no pair of faces shares two or more edges.
bool is_prime(const PdCode& code);

// Prime summands of a shadow as a sorted multiset of canonical forms.  Finds
// a face pair sharing at least two edges, swaps a same-sign adjacent shared
// pair (the inverse of connect_sum), splits, and recurses; the result does
// not depend on which admissible cut is taken first.
std::vector<PdCode> prime_decompose(const PdCode& code);

// All connect sums a#b over classes a in A, b in B and all positive edge
// pairs, deduplicated.
Pdstor pdstor_sum(const Pdstor& A, const Pdstor& B);

// Link shadow stores for every size 1..n assembled from prime stores.
// primes[k] (1 <= k <= n) must hold every k-crossing prime class; an absent
// or empty store raises MissingPrimeSeeds.  Composites are built by folding
// pdstor_sum over partially sorted partitions (largest part first, the rest
// in every order), grouped by sorted partition so only same-group results
// need isomorphism dedup.  Entry [0] of the result is unused.
std::vector<Pdstor> build_composite_shadows(int n, const std::vector<Pdstor>& primes,
                                            ExecPolicy policy = ExecPolicy::Parallel);

// Reference generator: every gluing of n quadruples up to relabeling, i.e.
// every perfect matching of the 4n vertex slots up to blank-vertex symmetry,
// kept when the rotation system closes up at genus 0.  Work grows like
// (4n-1)!!, so sizes above 6 raise CostGuardExceeded unless overridden.
Pdstor brute_force_shadows(int n, bool override_cost_guard = false,
                           ExecPolicy policy = ExecPolicy::Parallel);

// Classes with exactly one link component.
Pdstor filter_knot_shadows(const Pdstor& store);

// Classes that are prime shadows.
Pdstor filter_primes(const Pdstor& store);

// planar_code bytes -> embedded graphs (alias kept next to the dualizer that
// consumes its output).
std::vector<PartialGraph> ingest_planar_code(const std::string& bytes);

// Dual shadow of a connected simple quadrangulation (every face a
// quadrilateral; otherwise NonQuadFace).  Duals of simple quadrangulations
// are exactly the prime shadows, two vertices up: n+2 quadrangulation
// vertices give n crossings.
PdCode dualize_quadrangulation(const PartialGraph& g);

// Inverse direction used to produce seed files: the dual quadrangulation of
// a shadow.  Simple exactly when the shadow is prime.
PartialGraph quadrangulation_of(const PdCode& code);

}  // namespace knotcensus
