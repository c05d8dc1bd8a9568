// Knot diagrams: a shadow plus an over/under state per crossing and a travel
// direction per component.
//
// The state of a crossing picks which strand passes over: over02 = 1 means
// the strand occupying slots 0 and 2 of the quadruple is the overstrand,
// over02 = 0 means slots 1 and 3.  Component orientations are tracked as
// "reversed" flags against the direction the edge labels already encode.
//
// Two diagrams are the same knot diagram on the sphere when some shadow
// isomorphism carries the states and orientations of one to the other.
// Over/under is read against a chosen side of the sphere, and a reflecting
// isomorphism swaps sides, so it transports states with every crossing
// flipped.  That convention makes diagram isomorphisms knot-type preserving
// for both sphere orientations.

#pragma once

#include <vector>

#include "knotcensus/pdcode.hpp"

namespace knotcensus {

struct Diagram {
    PdCode shadow;
    std::vector<char> over02;    // one flag per crossing, indexed like verts
    std::vector<char> reversed;  // one flag per component

    bool operator==(const Diagram&) const = default;
};

// All distinct diagrams over a single knot shadow: the 2^(n+1) assignments of
// crossing states and curve orientation, one representative per orbit of the
// shadow's automorphism group.  Representatives are the lexicographic minima
// of their orbits in (reversed, over02) order, emitted in increasing order.
// Throws std::invalid_argument unless the shadow is a valid planar knot
// shadow (a single component).
std::vector<Diagram> enumerate_diagrams(const PdCode& shadow);

// Whether two diagrams are related by a sphere isomorphism, i.e. some
// isomorphism of the underlying shadows that matches states and orientations.
bool diagram_isomorphic(const Diagram& a, const Diagram& b);

// Removes monogons (crossings where an edge loops from a vertex back to
// itself) repeatedly until none remain, then rebuilds the diagram with fresh
// labels along the travel direction.  The result has all reversed flags
// cleared; a diagram that collapses completely comes back with an empty
// shadow, which the evaluator treats as a 0-crossing unknot.
Diagram reduce_monogons(const Diagram& d);

// The two crossing-state assignments that make every strand alternate
// over/under along its length (they differ by flipping every crossing).
// Every planar shadow admits exactly this mirror pair; orientations are left
// at the label direction.  Throws std::invalid_argument on invalid or
// non-planar input.
std::vector<Diagram> alternating_diagrams(const PdCode& shadow);

}  // namespace knotcensus
