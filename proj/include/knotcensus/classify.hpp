#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <knotcensus/diagram.hpp>
#include <knotcensus/homfly.hpp>

namespace knotcensus {

// Symmetry class of a knot type under the group generated by mirroring (m)
// and orientation reversal (r).  The class decides how a count of diagrams
// whose types form one m/r-orbit splits into per-type counts:
//
//   Full         K = K^m = K^r            no split
//   Reversible   K = K^r, K != K^m        split 2 ways as {K, K^m}
//   Mirror       K = K^m, K != K^r        split 2 ways as {K, K^r}
//   Amphichiral  K = K^mr, K != K^m       split 2 ways as {K, K^r} (= {K, K^m})
//   None         all four distinct        split 4 ways
enum class SymmetryClass { None, Mirror, Reversible, Amphichiral, Full };

std::string symmetry_name(SymmetryClass s);
SymmetryClass parse_symmetry(const std::string& name);

// A named knot type.  Names follow the k_i convention for primes ("3_1"),
// use a ^m suffix for the mirror of a chiral type, and join composite factor
// names with '#' ("3_1#3_1^m").
struct KnotType {
    std::string name;
    SymmetryClass symmetry = SymmetryClass::Full;

    bool operator==(const KnotType& o) const { return name == o.name && symmetry == o.symmetry; }
    bool operator<(const KnotType& o) const { return name < o.name; }
};

// One entry of the reference table: a named prime knot presented by an
// explicit diagram whose crossing count realizes the crossing number in the
// name.
struct ReferenceKnot {
    std::string name;
    SymmetryClass symmetry = SymmetryClass::Full;
    Diagram diagram;
};

// Parses reference knots from a text stream, one per line:
//
//   name | symmetry | shadow pd-code | over02 bits | reversed bits
//
// e.g. "3_1 | reversible | 3: (1,-5,-2,4) (2,5,-3,-6) (-1,-4,6,3) | 011 | 0".
// Blank lines and lines starting with '#' are skipped.  Throws
// std::invalid_argument on malformed input.
std::vector<ReferenceKnot> load_reference_knots(std::istream& in);

// Lookup table from HOMFLY polynomials (rendered with poly_to_string) to the
// knot types with that polynomial.  Covers the unknot, every reference prime
// and its mirror, and all composites of those primes whose total crossing
// number fits the budget.
struct KnotTable {
    std::map<std::string, std::set<KnotType>> by_poly;
    int max_crossings = 0;
};

// Builds the lookup table.  Validates each reference (a valid one-component
// reduced diagram, crossing count matching the name, nontrivial polynomial,
// mirror symmetry of the polynomial consistent with the declared class,
// unique names and polynomials) and throws ReferenceValidationFailure when a
// check fails.  Chiral references contribute a second entry name^m with the
// mirrored polynomial.  Composite types are every multiset of two or more
// factors (primes or their mirrors) with total crossing number at most
// max_total_crossings; their polynomial is the product, their symmetry Full
// when the factor multiset is mirror-invariant and Reversible otherwise.
KnotTable build_knot_table(const std::vector<ReferenceKnot>& refs, int max_total_crossings);

// All knot types in the table with this polynomial; empty means the
// polynomial is outside the table (an unclassified diagram).
std::set<KnotType> classify(const HomflyPoly& p, const KnotTable& table);

// Splits a diagram count attributed to the m/r-orbit of `base` into counts
// per concrete type, following the symmetry class.  Diagram censuses are
// equivariant under mirroring and reversal, so the members of one orbit
// receive equal shares; throws IndivisibleCount if the count does not divide.
std::map<std::string, long long> split_symmetry_counts(const KnotType& base, long long count);

}  // namespace knotcensus
