// HOMFLY-PT polynomials of knot and link diagrams.
//
// Convention: a * P(L+) - a^(-1) * P(L-) = z * P(L0) with P(unknot) = 1, so
// a c-component unlink evaluates to delta^(c-1) with delta = (a - a^(-1))/z,
// and the mirror image of a link has polynomial P(-a^(-1), z).  For knots
// every a-exponent is even, so mirroring reduces to a -> a^(-1).
//
// Evaluation follows the descending-diagram skein tree: walk the diagram
// from a fixed basepoint, find the first crossing met on its understrand,
// and branch on switching and smoothing it.  Diagrams with no such crossing
// are descending, hence unlinks.  Monogons are removed up front and after
// every smoothing, which keeps the tree finite: switching strictly reduces
// the number of understrand-first crossings and smoothing reduces crossings.

#pragma once

#include <map>
#include <utility>

#include "knotcensus/diagram.hpp"

namespace knotcensus {

// Laurent polynomial in a and z with integer coefficients.  Keys are
// (a exponent, z exponent); zero coefficients are never stored.
struct HomflyPoly {
    std::map<std::pair<int, int>, long long> terms;

    bool operator==(const HomflyPoly&) const = default;
    bool operator<(const HomflyPoly& o) const { return terms < o.terms; }
    bool is_zero() const { return terms.empty(); }
};

// coeff * a^ae * z^ze.
HomflyPoly homfly_term(long long coeff, int ae, int ze);
HomflyPoly homfly_one();

HomflyPoly operator+(const HomflyPoly& p, const HomflyPoly& q);
HomflyPoly operator-(const HomflyPoly& p, const HomflyPoly& q);
HomflyPoly operator*(const HomflyPoly& p, const HomflyPoly& q);

// ((a - a^(-1)) / z)^c, the polynomial of a (c+1)-component unlink.
HomflyPoly delta_power(int c);

// Substitutes a -> -a^(-1): the polynomial of the mirror image.
HomflyPoly mirror_poly(const HomflyPoly& p);

// Deterministic single-line rendering, e.g. "-a^-4 + 2a^-2 + a^-2 z^2",
// suitable as a map key.  The zero polynomial renders as "0".
std::string poly_to_string(const HomflyPoly& p);

// |P(a = 1, z = 2i)|, the knot determinant.  Requires every z-exponent to be
// even (true for knots); throws std::invalid_argument otherwise.
long long determinant_from_homfly(const HomflyPoly& p);

// HOMFLY-PT polynomial of a diagram.  The choice_seed picks which deviating
// crossing each branching step resolves when several are available; every
// seed yields the same polynomial (0 = always the first along the walk).
// Throws ComponentCountChanged if the state or orientation vectors do not
// match the shadow, std::invalid_argument if the shadow is invalid or
// non-planar.
HomflyPoly homfly(const Diagram& d, unsigned choice_seed = 0);

}  // namespace knotcensus
