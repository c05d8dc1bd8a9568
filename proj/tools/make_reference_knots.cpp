// Regenerates assets/reference_knots.txt from the shipped quadrangulation
// files.  For each crossing count k = 3..7 the prime knot shadows are
// dualized out of quadrangulations_k.pc, their two alternating states are
// evaluated, and one diagram per knot type is kept (several shadows can carry
// the same type; the polynomial pair identifies duplicates).  Reduced
// alternating diagrams realize their crossing number, so every type found at
// k really has crossing number k and the per-k groups are disjoint.
//
// Naming: within each k, types are sorted by determinant and named k_1, k_2,
// ... which reproduces the conventional table order for k <= 7; the tool
// aborts if determinants within a k ever tie.  Symmetry: a type whose
// polynomial is mirror-invariant is recorded as fully symmetric, all others
// as reversible (every chiral prime knot with at most 7 crossings is
// invertible; the first exceptions appear at 8 crossings, which is why this
// tool refuses to go past 7).  The base chirality of a chiral pair is the
// state with the lexicographically smaller rendered polynomial.
//
// Usage: make_reference_knots > assets/reference_knots.txt

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <knotcensus/classify.hpp>
#include <knotcensus/diagram.hpp>
#include <knotcensus/homfly.hpp>
#include <knotcensus/shadow_enum.hpp>

using namespace knotcensus;

namespace {

struct Candidate {
    PdCode shadow;
    Diagram base;          // the state whose rendered polynomial is smaller
    std::string poly_key;  // rendered base polynomial
    std::string mirror_key;
    long long det = 0;
    bool mirror_invariant = false;
};

std::string bits(const std::vector<char>& v) {
    std::string s;
    for (char c : v) s.push_back(static_cast<char>('0' + c));
    return s;
}

}  // namespace

int main() {
    const int kMax = 7;
    for (int k = 3; k <= kMax; ++k) {
        std::string path = std::string(KNOTCENSUS_ASSET_DIR) + "/quadrangulations_" +
                           std::to_string(k) + ".pc";
        std::ifstream in(path, std::ios::binary);
        if (!in.good()) {
            std::cerr << "cannot open " << path << "\n";
            return 1;
        }
        std::ostringstream buf;
        buf << in.rdbuf();

        std::vector<Candidate> types;
        for (const PartialGraph& q : ingest_planar_code(buf.str())) {
            PdCode shadow = dualize_quadrangulation(q);
            if (components(shadow).size() != 1) continue;
            std::vector<Diagram> alt = alternating_diagrams(shadow);
            if (alt.size() != 2) {
                std::cerr << "expected an alternating mirror pair on " << serialize(shadow) << "\n";
                return 1;
            }
            Candidate c;
            c.shadow = shadow;
            HomflyPoly p0 = homfly(alt[0]), p1 = homfly(alt[1]);
            if (mirror_poly(p0) != p1) {
                std::cerr << "alternating states of " << serialize(shadow)
                          << " are not a mirror pair\n";
                return 1;
            }
            std::string s0 = poly_to_string(p0), s1 = poly_to_string(p1);
            c.mirror_invariant = (s0 == s1);
            if (s1 < s0) {
                std::swap(s0, s1);
                std::swap(alt[0], alt[1]);
                std::swap(p0, p1);
            }
            c.base = alt[0];
            c.poly_key = s0;
            c.mirror_key = s1;
            c.det = determinant_from_homfly(p0);
            bool seen = false;
            for (const Candidate& prev : types)
                if (prev.poly_key == c.poly_key) seen = true;
            if (!seen) types.push_back(std::move(c));
        }
        std::stable_sort(types.begin(), types.end(),
                         [](const Candidate& a, const Candidate& b) { return a.det < b.det; });
        for (size_t i = 0; i + 1 < types.size(); ++i) {
            if (types[i].det == types[i + 1].det) {
                std::cerr << "determinant tie at " << k << " crossings: naming is ambiguous\n";
                return 1;
            }
        }
        for (size_t i = 0; i < types.size(); ++i) {
            const Candidate& c = types[i];
            std::string name = std::to_string(k) + "_" + std::to_string(i + 1);
            std::string sym = c.mirror_invariant ? "full" : "reversible";
            std::cout << name << " | " << sym << " | " << serialize(c.base.shadow) << " | "
                      << bits(c.base.over02) << " | " << bits(c.base.reversed) << "\n";
        }
    }
    return 0;
}
