#include "knotcensus/diagram.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

#include "knotcensus/errors.hpp"
#include "knotcensus/isomorphism.hpp"

namespace knotcensus {

namespace {

// Transports crossing states along a shadow isomorphism.  over02 refers to
// the slot pair {0,2}; mapping slot 0 to an odd slot swaps which pair the
// flag names, so the bit toggles with the parity of the image slot.  A
// reflecting isomorphism additionally flips every crossing: over/under reads
// against a chosen side of the sphere, and an orientation-reversing sphere
// map only extends to the ambient space by swapping sides.  With that flip
// diagram isomorphisms preserve the knot type; without it they would mirror
// it.
std::vector<char> map_states(const Isomorphism& iso, const PdCode& from,
                             const std::vector<char>& over02) {
    const int n = from.crossings();
    std::vector<char> out(n, 0);
    for (int v = 0; v < n; ++v) {
        int parity = (iso.map_slot(v, 0) & 1) ^ (iso.reflects ? 1 : 0);
        out[iso.vertex_map[v]] = static_cast<char>((over02[v] != 0) ^ (parity != 0));
    }
    return out;
}

std::vector<char> map_orientations(const Isomorphism& iso, const std::vector<char>& reversed) {
    std::vector<char> out(reversed.size(), 0);
    for (size_t c = 0; c < reversed.size(); ++c) {
        bool flip = iso.comp_dir[c] < 0;
        out[iso.comp_map[c]] = static_cast<char>((reversed[c] != 0) ^ flip);
    }
    return out;
}

}  // namespace

std::vector<Diagram> enumerate_diagrams(const PdCode& shadow) {
    Validation val = validate(shadow);
    if (!val.ok())
        throw std::invalid_argument("enumerate_diagrams: invalid shadow: " + val.detail);
    if (!is_planar(shadow)) throw std::invalid_argument("enumerate_diagrams: non-planar shadow");
    if (components(shadow).size() != 1)
        throw std::invalid_argument("enumerate_diagrams: knot shadows only");
    const int n = shadow.crossings();
    if (n >= 62) throw std::invalid_argument("enumerate_diagrams: too many crossings");

    auto isos = build_isomorphisms(shadow, shadow);
    std::vector<Diagram> out;
    for (int rev = 0; rev < 2; ++rev) {
        for (unsigned long long s = 0; s < (1ull << n); ++s) {
            bool minimal = true;
            for (const Isomorphism& iso : isos) {
                int rev2 = rev ^ (iso.comp_dir[0] < 0 ? 1 : 0);
                int flip = iso.reflects ? 1 : 0;
                unsigned long long s2 = 0;
                for (int v = 0; v < n; ++v) {
                    int bit = static_cast<int>((s >> v) & 1) ^ (iso.map_slot(v, 0) & 1) ^ flip;
                    if (bit) s2 |= 1ull << iso.vertex_map[v];
                }
                if (rev2 < rev || (rev2 == rev && s2 < s)) {
                    minimal = false;
                    break;
                }
            }
            if (!minimal) continue;
            Diagram d;
            d.shadow = shadow;
            d.over02.resize(n);
            for (int v = 0; v < n; ++v) d.over02[v] = static_cast<char>((s >> v) & 1);
            d.reversed.assign(1, static_cast<char>(rev));
            out.push_back(std::move(d));
        }
    }
    return out;
}

bool diagram_isomorphic(const Diagram& a, const Diagram& b) {
    if (static_cast<int>(a.over02.size()) != a.shadow.crossings() ||
        static_cast<int>(b.over02.size()) != b.shadow.crossings())
        throw ComponentCountChanged("diagram_isomorphic: state vector size mismatch");
    for (const Isomorphism& iso : build_isomorphisms(a.shadow, b.shadow)) {
        if (map_states(iso, a.shadow, a.over02) != b.over02) continue;
        if (map_orientations(iso, a.reversed) == b.reversed) return true;
    }
    return false;
}

std::vector<Diagram> alternating_diagrams(const PdCode& shadow) {
    Validation val = validate(shadow);
    if (!val.ok()) throw std::invalid_argument("alternating_diagrams: " + val.detail);
    if (!is_planar(shadow)) throw std::invalid_argument("alternating_diagrams: shadow is not planar");
    const int n = shadow.crossings();
    if (n == 0) throw std::invalid_argument("alternating_diagrams: empty shadow");
    PdIndex idx(shadow);
    // The passage through vertex v that uses slots {p, p+2} is the overstrand
    // exactly when over02[v] == (p == 0).  Alternation demands that the two
    // passages joined by each edge sit on opposite levels, which ties the
    // over02 bits together along edges.  Propagate from over02[0] = 0; both
    // global flips of the result alternate.
    std::vector<int> bit(n, -1);
    bit[0] = 0;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int k = 0; k < 4; ++k) {
            int e = std::abs(shadow.verts[v][k]);
            EdgePos head = idx.pos(e), tail = idx.pos(-e);
            // over(head passage) != over(tail passage):
            // (bit[hv] ^ (hk&1)) != (bit[tv] ^ (tk&1))
            int want = 1 ^ (head.slot & 1) ^ (tail.slot & 1);
            int a = head.vertex, b = tail.vertex;
            if (bit[a] == -1) { bit[a] = bit[b] ^ want; stack.push_back(a); }
            else if (bit[b] == -1) { bit[b] = bit[a] ^ want; stack.push_back(b); }
            else if ((bit[a] ^ bit[b]) != want)
                throw std::invalid_argument("alternating_diagrams: no alternating assignment exists");
        }
    }
    for (int v = 0; v < n; ++v)
        if (bit[v] == -1) throw std::invalid_argument("alternating_diagrams: shadow is not connected");
    const int comps = static_cast<int>(components(shadow).size());
    std::vector<Diagram> out;
    for (int flip = 0; flip < 2; ++flip) {
        Diagram d;
        d.shadow = shadow;
        d.over02.resize(n);
        for (int v = 0; v < n; ++v) d.over02[v] = static_cast<char>(bit[v] ^ flip);
        d.reversed.assign(comps, 0);
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace knotcensus
