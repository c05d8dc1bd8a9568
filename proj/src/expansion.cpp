#include "knotcensus/expansion.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "knotcensus/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace knotcensus {

namespace {

// A corner of a degree-2 vertex, addressed three ways: the end it follows in
// the rotation (placement anchor), and the face walk step sweeping it
// (face id + position, the circular coordinate used for crossing tests).
struct Corner {
    End anchor = PartialGraph::kEmpty;
    int face = -1;
    int pos = -1;
};

struct FaceIndex {
    std::vector<std::vector<End>> walks;
    std::map<End, std::pair<int, int>> place;  // end -> (face, walk position)

    explicit FaceIndex(const PartialGraph& g) : walks(g.faces()) {
        for (int f = 0; f < static_cast<int>(walks.size()); ++f)
            for (int i = 0; i < static_cast<int>(walks[f].size()); ++i)
                place[walks[f][i]] = {f, i};
    }
};

// The corner after end `a` is swept by the face walk step departing through
// corner_successor(a).
Corner corner_after(const PartialGraph& g, const FaceIndex& fx, End a) {
    auto [face, pos] = fx.place.at(g.corner_successor(a));
    return {a, face, pos};
}

std::array<Corner, 2> corners_of(const PartialGraph& g, const FaceIndex& fx, int v) {
    std::vector<End> rot = g.rotation(v);
    assert(rot.size() == 2);
    return {corner_after(g, fx, rot[0]), corner_after(g, fx, rot[1])};
}

// Chords on a face's circular walk cross iff exactly one endpoint of one
// lies strictly inside the arc spanned by the other.
bool chords_cross(int p1, int p2, int q1, int q2) {
    auto inside = [](int lo, int hi, int x) {
        return lo < hi ? (lo < x && x < hi) : (x > lo || x < hi);
    };
    return inside(p1, p2, q1) != inside(p1, p2, q2);
}

struct CornerMatch {
    // arcs[k] joins a corner of v to a corner of w through a common face
    std::array<std::pair<Corner, Corner>, 2> arcs;
};

// The two parallel arcs of a pair insertion must run through common faces
// without crossing each other.  At most one corner matching survives; an
// interleaved double visit (v, w, v, w along one face) cannot occur because
// same-face revisits of a degree-2 vertex come from bridges, whose walk
// segments nest.
bool match_corners(const std::array<Corner, 2>& cv, const std::array<Corner, 2>& cw,
                   CornerMatch& out) {
    for (int swap = 0; swap < 2; ++swap) {
        const Corner& w0 = cw[static_cast<size_t>(swap)];
        const Corner& w1 = cw[static_cast<size_t>(1 - swap)];
        if (cv[0].face != w0.face || cv[1].face != w1.face) continue;
        if (cv[0].face == cv[1].face &&
            chords_cross(cv[0].pos, w0.pos, cv[1].pos, w1.pos))
            continue;
        out.arcs = {std::make_pair(cv[0], w0), std::make_pair(cv[1], w1)};
        return true;
    }
    return false;
}

void insert_pair(PartialGraph& g, int v, int w) {
    FaceIndex fx(g);
    CornerMatch m;
    if (!match_corners(corners_of(g, fx, v), corners_of(g, fx, w), m))
        throw std::logic_error("insert_pair: vertices no longer share two faces");
    for (const auto& [cv, cw] : m.arcs) {
        int e = g.add_edge();
        g.place_after(2 * e, cv.anchor);
        g.place_after(2 * e + 1, cw.anchor);
    }
}

// Doubling places the copy beside the base edge.  Anchoring after the base
// at one endpoint and before it at the other closes an empty bigon between
// them; after at both endpoints leaves the copy on opposite sides instead,
// the embedding that keeps a cut edge's two components separated.
void double_edge(PartialGraph& g, int edge, bool bigon) {
    int e = g.add_edge();
    g.place_after(2 * e, 2 * edge);
    if (bigon)
        g.place_before(2 * e + 1, 2 * edge + 1);
    else
        g.place_after(2 * e + 1, 2 * edge + 1);
}

// A loop's two ends sit adjacently inside one corner of v.
void insert_loop_after(PartialGraph& g, End anchor) {
    int e = g.add_edge();
    g.place_after(2 * e, anchor);
    g.place_after(2 * e + 1, 2 * e);
}

bool is_loop(const PartialGraph& g, int edge) {
    return g.end_vertex(2 * edge) == g.end_vertex(2 * edge + 1);
}

}  // namespace

Reduction reduce_to_simple(const PdCode& code, unsigned choice_seed) {
    Validation val = validate(code);
    if (!val.ok() || !is_planar(code))
        throw ParityViolation("reduce_to_simple: input is not a planar shadow");
    Reduction red;
    red.graph = PartialGraph::from_shadow(code);
    PartialGraph& g = red.graph;
    std::mt19937 rng(choice_seed);

    struct Candidate {
        MoveKind kind;
        int e1 = -1;
        int e2 = -1;
    };
    for (;;) {
        std::vector<Candidate> cands;
        std::vector<int> live = g.live_edges();
        for (int e : live)
            if (is_loop(g, e)) cands.push_back({MoveKind::DeleteLoop, e, -1});

        std::set<std::pair<int, int>> bigons;
        for (const std::vector<End>& walk : g.faces()) {
            if (walk.size() != 2) continue;
            int a = PartialGraph::edge_of(walk[0]);
            int b = PartialGraph::edge_of(walk[1]);
            if (a != b) bigons.insert(std::minmax(a, b));
        }

        std::set<std::pair<int, int>> seen;
        for (int e : live) {
            if (is_loop(g, e)) continue;
            std::pair<int, int> key =
                std::minmax(g.end_vertex(2 * e), g.end_vertex(2 * e + 1));
            if (!seen.insert(key).second) continue;
            std::vector<int> copies = g.edges_between(key.first, key.second);
            switch (copies.size()) {
                case 1:
                    break;
                case 2: {
                    int a = copies[0], b = copies[1];
                    if (bigons.count({a, b}))
                        cands.push_back({MoveKind::DeleteBigonCopy, a, b});
                    else if (!g.connected_ignoring({a, b}))
                        cands.push_back({MoveKind::DeleteCutCopy, a, b});
                    else
                        cands.push_back({MoveKind::DeletePair, a, b});
                    break;
                }
                case 3: {
                    // the middle copy bounds a bigon with each of the others
                    int middle = -1;
                    for (int c : copies) {
                        int beside = 0;
                        for (int d : copies)
                            if (d != c && bigons.count(std::minmax(c, d))) ++beside;
                        if (beside == 2) middle = c;
                    }
                    if (middle < 0)
                        throw ParityViolation(
                            "reduce_to_simple: three-fold edge without middle copy");
                    std::array<int, 2> outer{};
                    int k = 0;
                    for (int c : copies)
                        if (c != middle) outer[static_cast<size_t>(k++)] = c;
                    cands.push_back({MoveKind::DeletePair, outer[0], outer[1]});
                    break;
                }
                case 4:
                    if (g.edge_count() != 4)
                        throw ParityViolation(
                            "reduce_to_simple: four-fold edge inside a larger graph");
                    cands.push_back({MoveKind::CollapseFourfold, copies[0], -1});
                    break;
                default:
                    throw ParityViolation("reduce_to_simple: edge multiplicity above 4");
            }
        }
        if (cands.empty()) break;

        size_t pick = 0;
        bool flip = false;
        if (choice_seed != 0) {
            pick = std::uniform_int_distribution<size_t>(0, cands.size() - 1)(rng);
            flip = std::uniform_int_distribution<int>(0, 1)(rng) != 0;
        }
        Candidate c = cands[pick];
        switch (c.kind) {
            case MoveKind::DeleteLoop:
                g.delete_edge(c.e1);
                red.moves.push_back({c.kind, c.e1, -1});
                break;
            case MoveKind::DeleteBigonCopy:
            case MoveKind::DeleteCutCopy: {
                // the two copies are exchanged by an isomorphism; either goes
                int del = flip ? c.e2 : c.e1;
                g.delete_edge(del);
                red.moves.push_back({c.kind, del, -1});
                break;
            }
            case MoveKind::DeletePair:
                g.delete_edge(c.e1);
                g.delete_edge(c.e2);
                red.moves.push_back({c.kind, c.e1, c.e2});
                break;
            case MoveKind::CollapseFourfold: {
                std::vector<int> copies = g.live_edges();
                int keep = copies[flip ? 1 : 0];
                for (int d : copies)
                    if (d != keep) g.delete_edge(d);
                red.moves.push_back({c.kind, keep, -1});
                break;
            }
        }
    }
    if (!g.simple() || !g.connected())
        throw ParityViolation("reduce_to_simple: reduction left a non-simple graph");
    return red;
}

PartialGraph prepare_graph(const PartialGraph& g) {
    PartialGraph out = g;
    for (int v = 0; v < out.vertex_count(); ++v) {
        int d = out.degree(v);
        if (d > 1) continue;
        if (d == 1) {
            insert_loop_after(out, out.rotation(v)[0]);
        } else {
            int loop = out.add_edge();
            out.place_append(2 * loop, v);
            out.place_append(2 * loop + 1, v);
        }
    }
    return out;
}

ConstraintSystem build_constraints(const PartialGraph& g) {
    ConstraintSystem cs;
    int n = g.vertex_count();
    cs.need.resize(static_cast<size_t>(n));
    cs.incident.resize(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        int d = g.degree(v);
        if (d < 2 || d > 4)
            throw std::invalid_argument(
                "build_constraints: vertex degree outside 2..4; run prepare_graph first");
        cs.need[static_cast<size_t>(v)] = 4 - d;
    }

    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 2) cs.vars.push_back({VarKind::Loop, v, -1, -1});

    // Loops are never doubled: away from the lone-vertex graph they have no
    // degree headroom, and there the Loop variable already covers the shadow.
    std::vector<ExpansionVar> plain, cut;
    for (int e : g.live_edges()) {
        if (is_loop(g, e)) continue;
        int u = g.end_vertex(2 * e), v = g.end_vertex(2 * e + 1);
        if (g.degree(u) >= 4 || g.degree(v) >= 4) continue;
        auto [i, j] = std::minmax(u, v);
        (g.is_bridge(e) ? cut : plain).push_back({VarKind::DoubleCutEdge, i, j, e});
    }
    auto by_pair = [](const ExpansionVar& a, const ExpansionVar& b) {
        return std::tie(a.i, a.j, a.edge) < std::tie(b.i, b.j, b.edge);
    };
    std::sort(plain.begin(), plain.end(), by_pair);
    std::sort(cut.begin(), cut.end(), by_pair);
    for (ExpansionVar v : plain) {
        v.kind = VarKind::DoubleEdge;
        cs.vars.push_back(v);
    }
    for (const ExpansionVar& v : cut) cs.vars.push_back(v);

    // Pair insertions between degree-2 vertices whose corners admit two
    // non-crossing arcs through common faces.
    FaceIndex fx(g);
    std::vector<int> deg2;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 2) deg2.push_back(v);
    std::map<int, CornerMatch> matches;  // var index -> chosen arcs
    for (size_t a = 0; a < deg2.size(); ++a) {
        for (size_t b = a + 1; b < deg2.size(); ++b) {
            CornerMatch m;
            if (!match_corners(corners_of(g, fx, deg2[a]), corners_of(g, fx, deg2[b]), m))
                continue;
            matches[static_cast<int>(cs.vars.size())] = m;
            cs.vars.push_back({VarKind::InsertPair, deg2[a], deg2[b], -1});
        }
    }

    // Two vertex-disjoint pair insertions are incompatible when any of their
    // arcs would cross on a shared face.
    for (auto ita = matches.begin(); ita != matches.end(); ++ita) {
        for (auto itb = std::next(ita); itb != matches.end(); ++itb) {
            const ExpansionVar& va = cs.vars[static_cast<size_t>(ita->first)];
            const ExpansionVar& vb = cs.vars[static_cast<size_t>(itb->first)];
            if (va.i == vb.i || va.i == vb.j || va.j == vb.i || va.j == vb.j) continue;
            bool conflict = false;
            for (const auto& [p1, p2] : ita->second.arcs)
                for (const auto& [q1, q2] : itb->second.arcs)
                    if (p1.face == q1.face &&
                        chords_cross(p1.pos, p2.pos, q1.pos, q2.pos))
                        conflict = true;
            if (conflict) cs.linked.push_back({ita->first, itb->first});
        }
    }

    for (int k = 0; k < static_cast<int>(cs.vars.size()); ++k) {
        const ExpansionVar& var = cs.vars[static_cast<size_t>(k)];
        bool wide = var.kind == VarKind::Loop || var.kind == VarKind::InsertPair;
        int coeff = wide ? 2 : 1;
        cs.incident[static_cast<size_t>(var.i)].push_back({k, coeff});
        if (var.j >= 0) cs.incident[static_cast<size_t>(var.j)].push_back({k, coeff});
    }
    return cs;
}

namespace {

struct Solver {
    const ConstraintSystem& cs;
    std::vector<int> cur, pot;
    std::vector<std::vector<int>> link_adj;
    std::vector<char> val;
    std::vector<std::vector<char>> out;

    explicit Solver(const ConstraintSystem& s)
        : cs(s),
          cur(s.need.size(), 0),
          pot(s.need.size(), 0),
          link_adj(s.vars.size()),
          val(s.vars.size(), 0) {
        for (size_t v = 0; v < s.need.size(); ++v)
            for (auto [k, c] : s.incident[v]) {
                (void)k;
                pot[v] += c;
            }
        for (auto [a, b] : s.linked) {
            link_adj[static_cast<size_t>(a)].push_back(b);
            link_adj[static_cast<size_t>(b)].push_back(a);
        }
    }

    bool feasible(int v) const {
        size_t i = static_cast<size_t>(v);
        return cur[i] <= cs.need[i] && cur[i] + pot[i] >= cs.need[i];
    }

    void dfs(size_t k) {
        if (k == cs.vars.size()) {
            out.push_back(val);
            return;
        }
        const ExpansionVar& var = cs.vars[k];
        bool wide = var.kind == VarKind::Loop || var.kind == VarKind::InsertPair;
        int coeff = wide ? 2 : 1;
        int verts[2] = {var.i, var.j};
        int nverts = var.j >= 0 ? 2 : 1;
        for (char value : {char(0), char(1)}) {
            if (value == 1) {
                bool blocked = false;
                for (int o : link_adj[k])
                    if (val[static_cast<size_t>(o)]) blocked = true;
                if (blocked) continue;
            }
            bool ok = true;
            for (int t = 0; t < nverts; ++t) {
                size_t v = static_cast<size_t>(verts[t]);
                cur[v] += value * coeff;
                pot[v] -= coeff;
                if (!feasible(verts[t])) ok = false;
            }
            if (ok) {
                val[k] = value;
                dfs(k + 1);
                val[k] = 0;
            }
            for (int t = 0; t < nverts; ++t) {
                size_t v = static_cast<size_t>(verts[t]);
                cur[v] -= value * coeff;
                pot[v] += coeff;
            }
        }
    }
};

}  // namespace

std::vector<std::vector<char>> solve_branch_and_bound(const ConstraintSystem& cs) {
    Solver solver(cs);
    for (size_t v = 0; v < cs.need.size(); ++v)
        if (!solver.feasible(static_cast<int>(v))) return {};
    solver.dfs(0);
    return solver.out;
}

std::vector<PdCode> apply_expansions(const PartialGraph& prepared,
                                     const ConstraintSystem& cs,
                                     const std::vector<char>& solution) {
    if (solution.size() != cs.vars.size())
        throw std::invalid_argument("apply_expansions: solution size mismatch");

    std::vector<PartialGraph> acc{prepared};
    // Pair insertions first: their arcs are located on the evolving face
    // structure, which the local doublings and loops never constrain.
    for (size_t k = 0; k < cs.vars.size(); ++k) {
        if (!solution[k] || cs.vars[k].kind != VarKind::InsertPair) continue;
        for (PartialGraph& g : acc) insert_pair(g, cs.vars[k].i, cs.vars[k].j);
    }
    for (size_t k = 0; k < cs.vars.size(); ++k) {
        if (!solution[k] || cs.vars[k].kind != VarKind::DoubleCutEdge) continue;
        std::vector<PartialGraph> next;
        next.reserve(acc.size() * 2);
        for (const PartialGraph& g : acc) {
            next.push_back(g);
            double_edge(next.back(), cs.vars[k].edge, true);
            next.push_back(g);
            double_edge(next.back(), cs.vars[k].edge, false);
        }
        acc = std::move(next);
    }
    for (size_t k = 0; k < cs.vars.size(); ++k) {
        if (!solution[k] || cs.vars[k].kind != VarKind::DoubleEdge) continue;
        for (PartialGraph& g : acc) double_edge(g, cs.vars[k].edge, true);
    }
    for (size_t k = 0; k < cs.vars.size(); ++k) {
        if (!solution[k] || cs.vars[k].kind != VarKind::Loop) continue;
        std::vector<PartialGraph> next;
        next.reserve(acc.size() * 2);
        for (const PartialGraph& g : acc) {
            std::vector<End> rot = g.rotation(cs.vars[k].i);
            for (End anchor : rot) {
                next.push_back(g);
                insert_loop_after(next.back(), anchor);
            }
        }
        acc = std::move(next);
    }

    std::vector<PdCode> out;
    out.reserve(acc.size());
    for (const PartialGraph& g : acc) out.push_back(g.to_shadow());
    return out;
}

namespace {

Pdstor expand_seed(const PartialGraph& seed) {
    Pdstor local;
    if (seed.vertex_count() == 2 && seed.edge_count() == 1) {
        // The four-fold two-vertex shadow also reduces here, but no variable
        // assignment reaches multiplicity four; emit it directly.
        PdCode hopf;
        hopf.verts = {Quad{2, 3, -1, -4}, Quad{1, -3, -2, 4}};
        local.add(hopf);
    }
    PartialGraph prepared = prepare_graph(seed);
    ConstraintSystem cs = build_constraints(prepared);
    for (const std::vector<char>& sol : solve_branch_and_bound(cs))
        for (const PdCode& code : apply_expansions(prepared, cs, sol))
            local.add(code);
    return local;
}

}  // namespace

Pdstor expansion_enumerate(int n, const std::vector<PartialGraph>& seeds,
                           ExecPolicy policy) {
    if (n < 1)
        throw std::invalid_argument("expansion_enumerate: crossing count must be positive");
    if (seeds.empty())
        throw MissingSeeds("expansion_enumerate: no seed graphs supplied");
    std::set<std::string> seen;
    for (const PartialGraph& s : seeds) {
        if (s.vertex_count() != n)
            throw std::invalid_argument("expansion_enumerate: seed has wrong vertex count");
        bool degrees_ok = true;
        for (int v = 0; v < s.vertex_count(); ++v)
            if (s.degree(v) > 4) degrees_ok = false;
        if (!degrees_ok || !s.simple() || !s.connected() || s.genus() != 0)
            throw std::invalid_argument(
                "expansion_enumerate: seeds must be connected planar simple graphs "
                "of degree at most 4");
        if (!seen.insert(s.canonical_encoding()).second)
            throw std::invalid_argument("expansion_enumerate: duplicate seed");
    }

    int count = static_cast<int>(seeds.size());
    std::vector<Pdstor> locals(seeds.size());
#ifdef _OPENMP
    bool threads = policy == ExecPolicy::Parallel && parallel_workers() > 1;
#pragma omp parallel for schedule(dynamic) if (threads)
#else
    (void)policy;
#endif
    for (int i = 0; i < count; ++i)
        locals[static_cast<size_t>(i)] = expand_seed(seeds[static_cast<size_t>(i)]);

    Pdstor out;
    for (Pdstor& l : locals) out.append_disjoint(l);
    return out;
}

std::vector<PartialGraph> seeds_from_store(const Pdstor& store) {
    std::map<std::string, PartialGraph> uniq;
    store.for_each([&](const PdCode& code) {
        PartialGraph g = reduce_to_simple(code).graph;
        uniq.emplace(g.canonical_encoding(), std::move(g));
    });
    std::vector<PartialGraph> out;
    out.reserve(uniq.size());
    for (auto& [enc, g] : uniq) out.push_back(std::move(g));
    return out;
}

}  // namespace knotcensus
