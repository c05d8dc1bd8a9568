// Shadow isomorphism search and the isomorphism-keyed code store.
//
// Two pd-codes describe the same shadow when some relabeling of edges and
// vertices maps one onto the other such that every quadruple is carried to a
// quadruple up to rotation (sphere-orientation preserving) or up to reversal
// (orientation reversing), consistently across all vertices.  Candidate maps
// factor through a component-length-preserving component bijection and a
// dihedral map per component; the vertex map is then forced.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "knotcensus/pdcode.hpp"

namespace knotcensus {

// Invariant fingerprint: equal for isomorphic shadows.
struct ShadowHash {
    int v = 0, e = 0, f = 0, c = 0;
    std::vector<int> face_degrees;  // sorted ascending
    std::vector<int> comp_lengths;  // sorted ascending

    bool operator==(const ShadowHash& o) const = default;
    bool operator<(const ShadowHash& o) const;
    uint64_t digest() const;
};

ShadowHash shadow_hash(const PdCode& code);

struct Isomorphism {
    std::vector<int> comp_map;     // source component index -> target index
    std::vector<int> comp_offset;  // dihedral offset per source component
    std::vector<int> comp_dir;     // +1 cyclic, -1 reverse-cyclic
    std::vector<int> edge_map;     // [1..2n] -> target edge label; [0] unused
    std::vector<char> edge_rev;    // per edge: 1 if traversal direction flips
    std::vector<int> vertex_map;   // source vertex -> target vertex
    std::vector<int> slot_rot;     // per source vertex v: sigma_v(k) = rot +- k mod 4
    bool reflects = false;         // sphere orientation reversing

    // Map a signed label through the edge map.
    SignedEdge map_signed(SignedEdge e) const {
        int a = e > 0 ? e : -e;
        int img = edge_map[static_cast<size_t>(a)];
        bool pos = (e > 0) != static_cast<bool>(edge_rev[static_cast<size_t>(a)]);
        return pos ? img : -img;
    }
    int map_slot(int v, int k) const {
        int r = slot_rot[static_cast<size_t>(v)];
        return reflects ? ((r - k) & 3) : ((r + k) & 3);
    }
};

// All isomorphisms from a to b (empty if none).  Deterministic order.
std::vector<Isomorphism> build_isomorphisms(const PdCode& a, const PdCode& b);

long automorphism_count(const PdCode& code);

// Rebuild b from a and an isomorphism; by construction this reproduces b
// exactly (used as a soundness check).
PdCode apply_isomorphism(const Isomorphism& iso, const PdCode& a);

// Compose two isomorphisms a->b and b->c into a->c (slot rotations and
// component data are recomputed from the composed maps).
Isomorphism compose(const Isomorphism& ab, const Isomorphism& bc, const PdCode& a,
                    const PdCode& c);

bool same_action(const Isomorphism& x, const Isomorphism& y);

// Class-canonical representative: the lexicographically smallest serialized
// relabeling over both mirror images, every strand root and direction, and
// every order of equal-length components.  Two codes are isomorphic exactly
// when their canonical forms serialize identically, which keeps stores and
// their saved text independent of insertion order.
PdCode canonical_form(const PdCode& code);

// Store of pairwise non-isomorphic shadows, bucketed by shadow_hash.
// Entries are held in canonical form, sorted within each bucket.
class Pdstor {
  public:
    // Canonicalizes the code and inserts it unless the class is already
    // present.  Returns true when the class is new.
    bool add(const PdCode& code);
    bool contains(const PdCode& code) const;
    size_t size() const { return count_; }

    // Deduplicating union.
    void merge(const Pdstor& other);
    // Fast union for stores known to hold disjoint classes (debug builds
    // assert that no canonical form occurs on both sides).
    void append_disjoint(const Pdstor& other);

    // Representatives sorted by (hash, serialized text); byte-stable.
    std::vector<PdCode> all_sorted() const;

    // Text format: header "pdstor <count> <crossings>", one code per line.
    void save(std::ostream& os, int crossings) const;
    static Pdstor load(std::istream& is, int* crossings_out = nullptr);

    template <typename F>
    void for_each(F&& f) const {
        for (const auto& [k, bucket] : buckets_)
            for (const PdCode& code : bucket) f(code);
    }

  private:
    std::map<ShadowHash, std::vector<PdCode>> buckets_;
    size_t count_ = 0;
};

}  // namespace knotcensus
