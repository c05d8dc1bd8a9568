#include "knotcensus/isomorphism.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace knotcensus {

bool ShadowHash::operator<(const ShadowHash& o) const {
    if (v != o.v) return v < o.v;
    if (e != o.e) return e < o.e;
    if (f != o.f) return f < o.f;
    if (c != o.c) return c < o.c;
    if (face_degrees != o.face_degrees) return face_degrees < o.face_degrees;
    return comp_lengths < o.comp_lengths;
}

uint64_t ShadowHash::digest() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    mix(static_cast<uint64_t>(v));
    mix(static_cast<uint64_t>(e));
    mix(static_cast<uint64_t>(f));
    mix(static_cast<uint64_t>(c));
    for (int d : face_degrees) mix(static_cast<uint64_t>(d));
    mix(0xffu);
    for (int d : comp_lengths) mix(static_cast<uint64_t>(d));
    return h;
}

ShadowHash shadow_hash(const PdCode& code) {
    ShadowHash h;
    h.v = code.crossings();
    h.e = code.edge_count();
    auto fs = faces(code);
    h.f = static_cast<int>(fs.size());
    for (const auto& face : fs) h.face_degrees.push_back(static_cast<int>(face.size()));
    std::sort(h.face_degrees.begin(), h.face_degrees.end());
    auto comps = components(code);
    h.c = static_cast<int>(comps.size());
    for (const auto& comp : comps) h.comp_lengths.push_back(static_cast<int>(comp.size()));
    std::sort(h.comp_lengths.begin(), h.comp_lengths.end());
    return h;
}

namespace {

struct CompGroups {
    // Component indices grouped by length, lengths ascending.
    std::vector<int> lengths;
    std::vector<std::vector<int>> groups;
};

CompGroups group_by_length(const std::vector<std::vector<int>>& comps) {
    std::vector<int> order(comps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return comps[static_cast<size_t>(x)].size() < comps[static_cast<size_t>(y)].size();
    });
    CompGroups g;
    for (int idx : order) {
        int len = static_cast<int>(comps[static_cast<size_t>(idx)].size());
        if (g.lengths.empty() || g.lengths.back() != len) {
            g.lengths.push_back(len);
            g.groups.emplace_back();
        }
        g.groups.back().push_back(idx);
    }
    return g;
}

}  // namespace

std::vector<Isomorphism> build_isomorphisms(const PdCode& a, const PdCode& b) {
    std::vector<Isomorphism> out;
    if (shadow_hash(a) != shadow_hash(b)) return out;

    const int n = a.crossings();
    const int ne = a.edge_count();
    PdIndex ia(a);
    PdIndex ib(b);
    auto comps_a = components(a);
    auto comps_b = components(b);
    const int nc = static_cast<int>(comps_a.size());

    CompGroups ga = group_by_length(comps_a);
    CompGroups gb = group_by_length(comps_b);
    if (ga.lengths != gb.lengths) return out;

    // Component bijections: independent permutations within each equal-length
    // group.  perms[g] permutes gb.groups[g].
    std::vector<std::vector<int>> perms(ga.groups.size());
    for (size_t g = 0; g < ga.groups.size(); ++g) {
        perms[g].resize(ga.groups[g].size());
        std::iota(perms[g].begin(), perms[g].end(), 0);
    }

    std::vector<int> comp_map(static_cast<size_t>(nc));
    std::vector<int> comp_offset(static_cast<size_t>(nc));
    std::vector<int> comp_dir(static_cast<size_t>(nc));
    std::vector<int> edge_map(static_cast<size_t>(ne + 1));
    std::vector<char> edge_rev(static_cast<size_t>(ne + 1));
    std::vector<int> vertex_map(static_cast<size_t>(n));
    std::vector<char> vertex_used(static_cast<size_t>(n));

    // Assign vertex images forced by edge ends; reject on conflict.
    auto assign_vertex = [&](int src, int dst) {
        if (vertex_map[static_cast<size_t>(src)] == -1) {
            if (vertex_used[static_cast<size_t>(dst)]) return false;
            vertex_map[static_cast<size_t>(src)] = dst;
            vertex_used[static_cast<size_t>(dst)] = 1;
            return true;
        }
        return vertex_map[static_cast<size_t>(src)] == dst;
    };

    // Depth-first over components: pick (offset, dir) for component ci, extend
    // edge and vertex maps, recurse.
    std::vector<std::pair<int, int>> undo_stack;
    auto try_finish = [&]() {
        // Slot maps: every vertex must match by rotation (preserving) or by
        // reversal (reflecting), with one global choice.
        std::vector<int> slot_rot(static_cast<size_t>(n));
        int mode = 0;  // 0 undecided, 1 preserving, 2 reflecting
        for (int v = 0; v < n; ++v) {
            Quad img;
            for (int k = 0; k < 4; ++k) {
                SignedEdge e = a.verts[static_cast<size_t>(v)][static_cast<size_t>(k)];
                int aa = std::abs(e);
                int m = edge_map[static_cast<size_t>(aa)];
                bool pos = (e > 0) != static_cast<bool>(edge_rev[static_cast<size_t>(aa)]);
                img[static_cast<size_t>(k)] = pos ? m : -m;
            }
            const Quad& tgt = b.verts[static_cast<size_t>(vertex_map[static_cast<size_t>(v)])];
            int p0 = -1;
            for (int k = 0; k < 4; ++k)
                if (tgt[static_cast<size_t>(k)] == img[0]) p0 = k;
            if (p0 < 0) return;
            bool rot = true, ref = true;
            for (int k = 1; k < 4; ++k) {
                if (tgt[static_cast<size_t>((p0 + k) & 3)] != img[static_cast<size_t>(k)])
                    rot = false;
                if (tgt[static_cast<size_t>((p0 - k) & 3)] != img[static_cast<size_t>(k)])
                    ref = false;
            }
            int vmode = rot ? 1 : (ref ? 2 : 0);
            if (vmode == 0) return;
            if (mode == 0) mode = vmode;
            if (mode != vmode) return;
            slot_rot[static_cast<size_t>(v)] = p0;
        }
        Isomorphism iso;
        iso.comp_map = comp_map;
        iso.comp_offset = comp_offset;
        iso.comp_dir = comp_dir;
        iso.edge_map = edge_map;
        iso.edge_rev = edge_rev;
        iso.vertex_map = vertex_map;
        iso.slot_rot = std::move(slot_rot);
        iso.reflects = (mode == 2);
        out.push_back(std::move(iso));
    };

    std::function<void(int)> rec = [&](int ci) {
        if (ci == nc) {
            try_finish();
            return;
        }
        const auto& ca = comps_a[static_cast<size_t>(ci)];
        const int m = static_cast<int>(ca.size());
        const int cb_idx = comp_map[static_cast<size_t>(ci)];
        const auto& cb = comps_b[static_cast<size_t>(cb_idx)];
        for (int r = 0; r < m; ++r) {
            for (int dir : {1, -1}) {
                size_t undo_edges = 0;
                std::vector<int> touched_vertices;
                bool ok = true;
                for (int t = 0; t < m && ok; ++t) {
                    int e = ca[static_cast<size_t>(t)];
                    int f = cb[static_cast<size_t>(((r + dir * t) % m + m) % m)];
                    edge_map[static_cast<size_t>(e)] = f;
                    edge_rev[static_cast<size_t>(e)] = dir < 0;
                    ++undo_edges;
                    int hv = ia.pos(e).vertex;
                    int tv = ia.pos(-e).vertex;
                    int hv_img = dir > 0 ? ib.pos(f).vertex : ib.pos(-f).vertex;
                    int tv_img = dir > 0 ? ib.pos(-f).vertex : ib.pos(f).vertex;
                    for (auto [s, d] : {std::pair{hv, hv_img}, std::pair{tv, tv_img}}) {
                        bool fresh = vertex_map[static_cast<size_t>(s)] == -1;
                        if (!assign_vertex(s, d)) {
                            ok = false;
                            break;
                        }
                        if (fresh) touched_vertices.push_back(s);
                    }
                }
                if (ok) {
                    comp_offset[static_cast<size_t>(ci)] = r;
                    comp_dir[static_cast<size_t>(ci)] = dir;
                    rec(ci + 1);
                }
                for (size_t t = 0; t < undo_edges; ++t) {
                    int e = ca[t];
                    edge_map[static_cast<size_t>(e)] = 0;
                    edge_rev[static_cast<size_t>(e)] = 0;
                }
                for (int s : touched_vertices) {
                    vertex_used[static_cast<size_t>(vertex_map[static_cast<size_t>(s)])] = 0;
                    vertex_map[static_cast<size_t>(s)] = -1;
                }
            }
        }
    };

    // Iterate all component bijections (product of permutations per group).
    std::function<void(size_t)> iterate_gamma = [&](size_t g) {
        if (g == ga.groups.size()) {
            std::fill(edge_map.begin(), edge_map.end(), 0);
            std::fill(edge_rev.begin(), edge_rev.end(), 0);
            std::fill(vertex_map.begin(), vertex_map.end(), -1);
            std::fill(vertex_used.begin(), vertex_used.end(), 0);
            rec(0);
            return;
        }
        std::vector<int>& p = perms[g];
        std::sort(p.begin(), p.end());
        do {
            for (size_t i = 0; i < p.size(); ++i)
                comp_map[static_cast<size_t>(ga.groups[g][i])] =
                    gb.groups[g][static_cast<size_t>(p[i])];
            iterate_gamma(g + 1);
        } while (std::next_permutation(p.begin(), p.end()));
    };
    iterate_gamma(0);
    return out;
}

long automorphism_count(const PdCode& code) {
    return static_cast<long>(build_isomorphisms(code, code).size());
}

PdCode apply_isomorphism(const Isomorphism& iso, const PdCode& a) {
    PdCode b;
    b.verts.resize(a.verts.size());
    for (int v = 0; v < a.crossings(); ++v) {
        int w = iso.vertex_map[static_cast<size_t>(v)];
        for (int k = 0; k < 4; ++k) {
            SignedEdge e = a.verts[static_cast<size_t>(v)][static_cast<size_t>(k)];
            b.verts[static_cast<size_t>(w)][static_cast<size_t>(iso.map_slot(v, k))] =
                iso.map_signed(e);
        }
    }
    return b;
}

Isomorphism compose(const Isomorphism& ab, const Isomorphism& bc, const PdCode& a,
                    const PdCode& c) {
    Isomorphism r;
    const size_t ne = ab.edge_map.size() - 1;
    r.edge_map.resize(ne + 1, 0);
    r.edge_rev.resize(ne + 1, 0);
    for (size_t e = 1; e <= ne; ++e) {
        int mid = ab.edge_map[e];
        r.edge_map[e] = bc.edge_map[static_cast<size_t>(mid)];
        r.edge_rev[e] = ab.edge_rev[e] ^ bc.edge_rev[static_cast<size_t>(mid)];
    }
    r.vertex_map.resize(ab.vertex_map.size());
    for (size_t v = 0; v < ab.vertex_map.size(); ++v)
        r.vertex_map[v] = bc.vertex_map[static_cast<size_t>(ab.vertex_map[v])];
    r.reflects = ab.reflects != bc.reflects;
    // Slot rotations are recomputed directly against c; composing the two
    // dihedral slot maps symbolically is easy to get wrong.
    r.slot_rot.resize(ab.slot_rot.size());
    for (int v = 0; v < a.crossings(); ++v) {
        SignedEdge e0 = a.verts[static_cast<size_t>(v)][0];
        SignedEdge img = r.map_signed(e0);
        const Quad& tgt = c.verts[static_cast<size_t>(r.vertex_map[static_cast<size_t>(v)])];
        for (int k = 0; k < 4; ++k)
            if (tgt[static_cast<size_t>(k)] == img) r.slot_rot[static_cast<size_t>(v)] = k;
    }
    return r;
}

bool same_action(const Isomorphism& x, const Isomorphism& y) {
    return x.edge_map == y.edge_map && x.edge_rev == y.edge_rev &&
           x.vertex_map == y.vertex_map && x.reflects == y.reflects;
}

namespace {

// Mirror image: reverse the rotation at every crossing.  Swapping slots 1 and
// 3 keeps the opposite-slot pass structure, so validity and strand traversal
// are untouched while the embedding's orientation flips.
PdCode mirrored(const PdCode& a) {
    PdCode b = a;
    for (Quad& q : b.verts) std::swap(q[1], q[3]);
    return b;
}

bool quad_less(const Quad& x, const Quad& y) {
    for (int k = 0; k < 4; ++k)
        if (x[static_cast<size_t>(k)] != y[static_cast<size_t>(k)])
            return label_less(x[static_cast<size_t>(k)], y[static_cast<size_t>(k)]);
    return false;
}

// Relabel so that component order[0] gets labels 1..m walking from its root
// in the chosen direction, order[1] continues from m+1, and so on.  Quads are
// rotated smallest-label-first and vertices sorted by their new quads, so the
// result depends only on the shadow and the chosen roots.
PdCode rooted_relabel(const PdCode& a, const std::vector<std::vector<int>>& comps,
                      const std::vector<int>& order, const std::vector<int>& root,
                      const std::vector<int>& dir) {
    int m = 2 * a.crossings();
    std::vector<int> lab(static_cast<size_t>(m) + 1, 0);
    std::vector<char> rev(static_cast<size_t>(m) + 1, 0);
    int next = 1;
    for (int ci : order) {
        const auto& f = comps[static_cast<size_t>(ci)];
        int len = static_cast<int>(f.size());
        for (int t = 0; t < len; ++t) {
            int pos = dir[static_cast<size_t>(ci)] > 0
                          ? (root[static_cast<size_t>(ci)] + t) % len
                          : ((root[static_cast<size_t>(ci)] - t) % len + len) % len;
            int e = f[static_cast<size_t>(pos)];
            lab[static_cast<size_t>(e)] = next++;
            rev[static_cast<size_t>(e)] = dir[static_cast<size_t>(ci)] < 0;
        }
    }
    auto map_signed = [&](SignedEdge e) {
        int ae = e > 0 ? e : -e;
        bool pos = (e > 0) != static_cast<bool>(rev[static_cast<size_t>(ae)]);
        int img = lab[static_cast<size_t>(ae)];
        return pos ? img : -img;
    };
    PdCode b;
    b.verts.reserve(a.verts.size());
    for (const Quad& q : a.verts) {
        Quad r;
        for (int k = 0; k < 4; ++k)
            r[static_cast<size_t>(k)] = map_signed(q[static_cast<size_t>(k)]);
        int best = 0;
        for (int k = 1; k < 4; ++k)
            if (label_less(r[static_cast<size_t>(k)], r[static_cast<size_t>(best)])) best = k;
        Quad rot;
        for (int k = 0; k < 4; ++k)
            rot[static_cast<size_t>(k)] = r[static_cast<size_t>((best + k) & 3)];
        b.verts.push_back(rot);
    }
    std::sort(b.verts.begin(), b.verts.end(), quad_less);
    return b;
}

}  // namespace

PdCode canonical_form(const PdCode& code) {
    PdCode best;
    std::string best_str;
    for (int mir = 0; mir < 2; ++mir) {
        PdCode base = mir ? mirrored(code) : code;
        auto comps = components(base);
        size_t nc = comps.size();
        // Components sorted by length descending; isomorphisms only permute
        // equal lengths, so only those orders can produce the minimum.
        std::vector<int> order(nc);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            size_t lx = comps[static_cast<size_t>(x)].size();
            size_t ly = comps[static_cast<size_t>(y)].size();
            return lx != ly ? lx > ly : x < y;
        });
        std::vector<std::pair<size_t, size_t>> runs;
        for (size_t i = 0; i < nc;) {
            size_t j = i;
            while (j < nc && comps[static_cast<size_t>(order[j])].size() ==
                                 comps[static_cast<size_t>(order[i])].size())
                ++j;
            if (j - i > 1) runs.emplace_back(i, j);
            i = j;
        }
        bool more_orders = true;
        while (more_orders) {
            // Odometer over every root edge and direction per component.
            std::vector<int> rstate(nc, 0);
            for (;;) {
                std::vector<int> root(nc), dir(nc);
                for (size_t c = 0; c < nc; ++c) {
                    root[c] = rstate[c] >> 1;
                    dir[c] = (rstate[c] & 1) ? -1 : 1;
                }
                PdCode cand = rooted_relabel(base, comps, order, root, dir);
                std::string s = serialize(cand);
                if (best_str.empty() || s < best_str) {
                    best_str = std::move(s);
                    best = std::move(cand);
                }
                size_t p = 0;
                while (p < nc) {
                    size_t ci = static_cast<size_t>(order[p]);
                    if (++rstate[ci] < 2 * static_cast<int>(comps[ci].size())) break;
                    rstate[ci] = 0;
                    ++p;
                }
                if (p == nc) break;
            }
            more_orders = false;
            for (auto [b_, e_] : runs) {
                if (std::next_permutation(order.begin() + static_cast<long>(b_),
                                          order.begin() + static_cast<long>(e_))) {
                    more_orders = true;
                    break;
                }
            }
        }
    }
    return best;
}

bool Pdstor::add(const PdCode& code) {
    PdCode canon = canonical_form(code);
    std::string key = serialize(canon);
    auto& bucket = buckets_[shadow_hash(canon)];
    auto it = std::lower_bound(
        bucket.begin(), bucket.end(), key,
        [](const PdCode& x, const std::string& k) { return serialize(x) < k; });
    if (it != bucket.end() && serialize(*it) == key) return false;
    bucket.insert(it, std::move(canon));
    ++count_;
    return true;
}

bool Pdstor::contains(const PdCode& code) const {
    PdCode canon = canonical_form(code);
    std::string key = serialize(canon);
    auto it = buckets_.find(shadow_hash(canon));
    if (it == buckets_.end()) return false;
    const auto& bucket = it->second;
    auto jt = std::lower_bound(
        bucket.begin(), bucket.end(), key,
        [](const PdCode& x, const std::string& k) { return serialize(x) < k; });
    return jt != bucket.end() && serialize(*jt) == key;
}

void Pdstor::merge(const Pdstor& other) {
    other.for_each([this](const PdCode& code) { add(code); });
}

void Pdstor::append_disjoint(const Pdstor& other) {
    for (const auto& [h, bucket] : other.buckets_) {
        auto& mine = buckets_[h];
#ifndef NDEBUG
        for (const PdCode& incoming : bucket)
            for (const PdCode& entry : mine)
                assert(serialize(entry) != serialize(incoming) &&
                       "append_disjoint saw an isomorphic pair");
#endif
        std::vector<PdCode> merged;
        merged.reserve(mine.size() + bucket.size());
        std::merge(mine.begin(), mine.end(), bucket.begin(), bucket.end(),
                   std::back_inserter(merged), [](const PdCode& x, const PdCode& y) {
                       return serialize(x) < serialize(y);
                   });
        mine = std::move(merged);
        count_ += bucket.size();
    }
}

std::vector<PdCode> Pdstor::all_sorted() const {
    std::vector<PdCode> out;
    out.reserve(count_);
    for (const auto& [h, bucket] : buckets_)
        out.insert(out.end(), bucket.begin(), bucket.end());
    return out;
}

void Pdstor::save(std::ostream& os, int crossings) const {
    os << "pdstor " << count_ << " " << crossings << "\n";
    for (const PdCode& code : all_sorted()) os << serialize(code) << "\n";
}

Pdstor Pdstor::load(std::istream& is, int* crossings_out) {
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("pdstor: empty input");
    std::istringstream hs(header);
    std::string tag;
    size_t declared = 0;
    int crossings = 0;
    if (!(hs >> tag >> declared >> crossings) || tag != "pdstor")
        throw std::invalid_argument("pdstor: bad header: " + header);
    Pdstor store;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        store.add(parse_pdcode(line));
    }
    if (store.size() != declared)
        throw std::invalid_argument("pdstor: header declares " + std::to_string(declared) +
                                    " codes, found " + std::to_string(store.size()));
    if (crossings_out) *crossings_out = crossings;
    return store;
}

}  // namespace knotcensus
