#include "knotcensus/shadow_enum.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "knotcensus/errors.hpp"

namespace knotcensus {

PdCode connect_sum(const PdCode& a, SignedEdge e, const PdCode& b, SignedEdge f) {
    if (e <= 0 || e > a.edge_count())
        throw BadEdgeReference("connect_sum: " + std::to_string(e) +
                               " is not a positive edge label of the left code");
    if (f <= 0 || f > b.edge_count())
        throw BadEdgeReference("connect_sum: " + std::to_string(f) +
                               " is not a positive edge label of the right code");
    int off = a.edge_count();
    PdCode out = a;
    for (const Quad& q : b.verts) {
        Quad shifted;
        for (size_t k = 0; k < 4; ++k)
            shifted[k] = q[k] > 0 ? q[k] + off : q[k] - off;
        out.verts.push_back(shifted);
    }
    // Exchange the two heads; tails stay, so the strands through e and f are
    // spliced into each other.
    EdgePos pe, pf;
    for (size_t v = 0; v < out.verts.size(); ++v)
        for (int k = 0; k < 4; ++k) {
            SignedEdge s = out.verts[v][static_cast<size_t>(k)];
            if (s == e) pe = {static_cast<int>(v), k};
            if (s == f + off) pf = {static_cast<int>(v), k};
        }
    std::swap(out.verts[static_cast<size_t>(pe.vertex)][static_cast<size_t>(pe.slot)],
              out.verts[static_cast<size_t>(pf.vertex)][static_cast<size_t>(pf.slot)]);
    return normalized(out);
}

namespace {

// Absolute edge labels of a face, each face listing an edge at most once
// per occurrence sign (a planar shadow has no edge bordering the same face
// twice).
std::vector<int> face_edges(const std::vector<SignedEdge>& face) {
    std::vector<int> out;
    for (SignedEdge s : face) out.push_back(s > 0 ? s : -s);
    return out;
}

}  // namespace

bool is_prime(const PdCode& code) {
    auto fs = faces(code);
    std::vector<std::vector<int>> edge_sets;
    for (const auto& f : fs) {
        auto es = face_edges(f);
        std::sort(es.begin(), es.end());
        edge_sets.push_back(std::move(es));
    }
    for (size_t i = 0; i < edge_sets.size(); ++i)
        for (size_t j = i + 1; j < edge_sets.size(); ++j) {
            std::vector<int> shared;
            std::set_intersection(edge_sets[i].begin(), edge_sets[i].end(),
                                  edge_sets[j].begin(), edge_sets[j].end(),
                                  std::back_inserter(shared));
            if (shared.size() >= 2) return false;
        }
    return true;
}

namespace {

// Split a code whose vertex set falls apart into two edge-connected groups.
// Returns false if it is still connected.
bool split_pieces(const PdCode& code, PdCode* first, PdCode* second) {
    int n = code.crossings();
    std::vector<int> group(static_cast<size_t>(n), -1);
    // Union by BFS over shared edge labels.
    std::map<int, std::vector<int>> edge_verts;
    for (int v = 0; v < n; ++v)
        for (SignedEdge s : code.verts[static_cast<size_t>(v)])
            edge_verts[s > 0 ? s : -s].push_back(v);
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (const auto& [e, verts] : edge_verts)
        for (size_t i = 0; i + 1 < verts.size(); ++i) {
            adj[static_cast<size_t>(verts[i])].push_back(verts[i + 1]);
            adj[static_cast<size_t>(verts[i + 1])].push_back(verts[i]);
        }
    int groups = 0;
    for (int s = 0; s < n; ++s) {
        if (group[static_cast<size_t>(s)] >= 0) continue;
        std::vector<int> stack = {s};
        group[static_cast<size_t>(s)] = groups;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<size_t>(v)])
                if (group[static_cast<size_t>(w)] < 0) {
                    group[static_cast<size_t>(w)] = groups;
                    stack.push_back(w);
                }
        }
        ++groups;
    }
    if (groups == 1) return false;
    if (groups != 2) return false;  // cannot happen in a bridge-free shadow
    for (int g = 0; g < 2; ++g) {
        PdCode piece;
        std::vector<int> labels;
        for (int v = 0; v < n; ++v) {
            if (group[static_cast<size_t>(v)] != g) continue;
            piece.verts.push_back(code.verts[static_cast<size_t>(v)]);
            for (SignedEdge s : code.verts[static_cast<size_t>(v)])
                if (s > 0) labels.push_back(s);
        }
        std::sort(labels.begin(), labels.end());
        std::map<int, int> remap;
        for (size_t i = 0; i < labels.size(); ++i)
            remap[labels[i]] = static_cast<int>(i) + 1;
        for (Quad& q : piece.verts)
            for (SignedEdge& s : q)
                s = s > 0 ? remap[s] : -remap[-s];
        *(g == 0 ? first : second) = normalized(piece);
    }
    return true;
}

void decompose_into(const PdCode& code, std::vector<PdCode>* out) {
    auto fs = faces(code);
    std::vector<std::vector<int>> edge_sets;
    for (const auto& f : fs) {
        auto es = face_edges(f);
        std::sort(es.begin(), es.end());
        edge_sets.push_back(std::move(es));
    }
    for (size_t i = 0; i < fs.size(); ++i) {
        for (size_t j = i + 1; j < fs.size(); ++j) {
            std::vector<int> shared;
            std::set_intersection(edge_sets[i].begin(), edge_sets[i].end(),
                                  edge_sets[j].begin(), edge_sets[j].end(),
                                  std::back_inserter(shared));
            if (shared.size() < 2) continue;
            // Shared edges in walk order along face i, keeping the sign they
            // carry there.
            std::vector<SignedEdge> along;
            for (SignedEdge s : fs[i]) {
                int a = s > 0 ? s : -s;
                if (std::binary_search(shared.begin(), shared.end(), a))
                    along.push_back(s);
            }
            size_t m = along.size();
            for (size_t t = 0; t < m; ++t) {
                SignedEdge x = along[t];
                SignedEdge y = along[(t + 1) % m];
                if (x == y || (x > 0) != (y > 0)) continue;
                PdCode cut = code;
                EdgePos px, py;
                for (size_t v = 0; v < cut.verts.size(); ++v)
                    for (int k = 0; k < 4; ++k) {
                        SignedEdge s = cut.verts[v][static_cast<size_t>(k)];
                        if (s == x) px = {static_cast<int>(v), k};
                        if (s == y) py = {static_cast<int>(v), k};
                    }
                std::swap(cut.verts[static_cast<size_t>(px.vertex)]
                                   [static_cast<size_t>(px.slot)],
                          cut.verts[static_cast<size_t>(py.vertex)]
                                   [static_cast<size_t>(py.slot)]);
                PdCode a, b;
                if (!split_pieces(cut, &a, &b)) continue;
                if (!validate(a).ok() || !validate(b).ok()) continue;
                if (!is_planar(a) || !is_planar(b)) continue;
                decompose_into(a, out);
                decompose_into(b, out);
                return;
            }
        }
    }
    // No admissible cut: prime.
    out->push_back(canonical_form(code));
}

}  // namespace

std::vector<PdCode> prime_decompose(const PdCode& code) {
    std::vector<PdCode> out;
    decompose_into(code, &out);
    std::sort(out.begin(), out.end(), [](const PdCode& a, const PdCode& b) {
        return serialize(a) < serialize(b);
    });
    return out;
}

Pdstor pdstor_sum(const Pdstor& A, const Pdstor& B) {
    Pdstor out;
    A.for_each([&](const PdCode& a) {
        B.for_each([&](const PdCode& b) {
            for (int e = 1; e <= a.edge_count(); ++e)
                for (int f = 1; f <= b.edge_count(); ++f)
                    out.add(connect_sum(a, e, b, f));
        });
    });
    return out;
}

std::vector<Pdstor> build_composite_shadows(int n, const std::vector<Pdstor>& primes,
                                            ExecPolicy policy) {
    if (n < 1) throw std::invalid_argument("build_composite_shadows: n must be >= 1");
    for (int k = 1; k <= n; ++k)
        if (static_cast<size_t>(k) >= primes.size() || primes[static_cast<size_t>(k)].size() == 0)
            throw MissingPrimeSeeds("build_composite_shadows: no " + std::to_string(k) +
                                    "-crossing primes supplied");

    // One branch per largest part; group keys (sorted partitions) are unique
    // to their branch since the key's maximum is the branch index.
    std::vector<std::map<std::vector<int>, Pdstor>> branch_groups(
        static_cast<size_t>(n) + 1);

    auto run_branch = [&](int k1) {
        auto& groups = branch_groups[static_cast<size_t>(k1)];
        std::vector<int> parts = {k1};
        std::function<void(const Pdstor&, int)> dfs = [&](const Pdstor& store, int used) {
            if (parts.size() >= 2) {
                std::vector<int> key = parts;
                std::sort(key.begin(), key.end(), std::greater<>());
                groups[key].merge(store);
            }
            for (int t = 1; t <= std::min(k1, n - used); ++t) {
                Pdstor next = pdstor_sum(store, primes[static_cast<size_t>(t)]);
                parts.push_back(t);
                dfs(next, used + t);
                parts.pop_back();
            }
        };
        dfs(primes[static_cast<size_t>(k1)], k1);
    };

    if (policy == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (int k1 = 1; k1 <= n; ++k1) run_branch(k1);
    } else {
        for (int k1 = 1; k1 <= n; ++k1) run_branch(k1);
    }

    std::vector<Pdstor> out(static_cast<size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) out[static_cast<size_t>(k)] = primes[static_cast<size_t>(k)];
    for (int k1 = 1; k1 <= n; ++k1)
        for (const auto& [key, store] : branch_groups[static_cast<size_t>(k1)]) {
            int total = std::accumulate(key.begin(), key.end(), 0);
            out[static_cast<size_t>(total)].append_disjoint(store);
        }
    return out;
}

namespace {

// Matching enumeration over the 4n vertex slots.  Slot ids are 4v+k; fresh
// vertices are entered at slot 0 with the smallest untouched index, which
// quotients away vertex relabelings and initial rotations without losing any
// class.  Face walks are tracked incrementally: cs[a] is the corner
// successor once a is matched, closed cs-cycles are final faces, and since
// (closed faces + unmatched slots) never increases, a branch dies as soon as
// that sum drops below the n+2 faces a planar gluing must end with.
struct MatchSearch {
    int n;
    int total;  // 4n
    std::vector<int> partner;
    std::vector<int> cs;
    int unmatched;
    int unmatched_touched;
    int touched;  // vertices with at least one matched slot
    int closed;
    Pdstor found;

    explicit MatchSearch(int crossings)
        : n(crossings),
          total(4 * crossings),
          partner(static_cast<size_t>(4 * crossings), -1),
          cs(static_cast<size_t>(4 * crossings), -1),
          unmatched(4 * crossings),
          unmatched_touched(4),
          touched(1),
          closed(0) {}

    static int rot_next(int slot) { return (slot & ~3) | ((slot + 1) & 3); }

    // Number of cs-cycles newly closed by defining cs at a and b.
    int cycles_closed(int a, int b) const {
        int hits = 0;
        bool b_on_a_cycle = false;
        int x = cs[static_cast<size_t>(a)];
        while (x != -1 && x != a) {
            if (x == b) b_on_a_cycle = true;
            x = cs[static_cast<size_t>(x)];
        }
        if (x == a) ++hits;
        if (!(x == a && b_on_a_cycle)) {
            int y = cs[static_cast<size_t>(b)];
            while (y != -1 && y != b) y = cs[static_cast<size_t>(y)];
            if (y == b) ++hits;
        }
        return hits;
    }

    // Orient each strand once (slot pairs form edges; a strand arriving at a
    // slot departs from the opposite slot) and assign labels in walk order.
    void emit() {
        PdCode code;
        code.verts.assign(static_cast<size_t>(n), {0, 0, 0, 0});
        std::vector<char> assigned(static_cast<size_t>(total), 0);
        int label = 0;
        for (int seed = 0; seed < total; ++seed) {
            if (assigned[static_cast<size_t>(seed)]) continue;
            int depart = seed;
            do {
                int arrive = partner[static_cast<size_t>(depart)];
                ++label;
                code.verts[static_cast<size_t>(depart >> 2)]
                          [static_cast<size_t>(depart & 3)] = -label;
                code.verts[static_cast<size_t>(arrive >> 2)]
                          [static_cast<size_t>(arrive & 3)] = label;
                assigned[static_cast<size_t>(depart)] = 1;
                assigned[static_cast<size_t>(arrive)] = 1;
                depart = (arrive & ~3) | ((arrive + 2) & 3);
            } while (depart != seed);
        }
        found.add(code);
    }

    void run(int depth_limit_for_shards, std::vector<std::vector<int>>* shards) {
        search(0, depth_limit_for_shards, shards);
    }

    void search(int depth, int shard_depth, std::vector<std::vector<int>>* shards) {
        if (unmatched == 0) {
            if (closed == n + 2) emit();
            return;
        }
        if (unmatched_touched == 0) return;  // a later component cannot attach
        if (shards && depth == shard_depth) {
            shards->push_back(partner);
            return;
        }
        int s = 0;
        while (partner[static_cast<size_t>(s)] != -1) ++s;
        for (int t = s + 1; t < total; ++t) {
            if (partner[static_cast<size_t>(t)] != -1) continue;
            int tv = t >> 2;
            bool fresh = tv >= touched;
            if (fresh) {
                if (tv != touched || (t & 3) != 0) continue;  // canonical entry
            }
            if (depth == 0 && t == 3) continue;  // mirror image of t == 1
            // apply
            partner[static_cast<size_t>(s)] = t;
            partner[static_cast<size_t>(t)] = s;
            cs[static_cast<size_t>(s)] = rot_next(t);
            cs[static_cast<size_t>(t)] = rot_next(s);
            int delta = cycles_closed(s, t);
            closed += delta;
            unmatched -= 2;
            unmatched_touched -= 2;
            if (fresh) {
                ++touched;
                unmatched_touched += 4;
            }
            if (closed <= n + 2 && closed + unmatched >= n + 2)
                search(depth + 1, shard_depth, shards);
            // undo
            if (fresh) {
                --touched;
                unmatched_touched -= 4;
            }
            unmatched_touched += 2;
            unmatched += 2;
            closed -= delta;
            cs[static_cast<size_t>(s)] = -1;
            cs[static_cast<size_t>(t)] = -1;
            partner[static_cast<size_t>(s)] = -1;
            partner[static_cast<size_t>(t)] = -1;
        }
    }
};

}  // namespace

Pdstor brute_force_shadows(int n, bool override_cost_guard, ExecPolicy policy) {
    if (n < 1) throw std::invalid_argument("brute_force_shadows: n must be >= 1");
    if (n > 6 && !override_cost_guard)
        throw CostGuardExceeded("brute_force_shadows: size " + std::to_string(n) +
                                " exceeds the default work bound; pass the override "
                                "to run it anyway");
    // Shard at a fixed shallow depth and replay each prefix independently.
    MatchSearch root(n);
    std::vector<std::vector<int>> shards;
    int shard_depth = n >= 3 ? 3 : 0;
    if (shard_depth > 0) {
        root.run(shard_depth, &shards);
    } else {
        root.run(-1, nullptr);
        return std::move(root.found);
    }

    std::vector<Pdstor> results(shards.size());
    auto run_shard = [&](size_t i) {
        MatchSearch worker(n);
        // Rebuild the prefix state by replaying the stored matches in slot
        // order.
        const std::vector<int>& pre = shards[i];
        for (int s = 0; s < worker.total; ++s) {
            int t = pre[static_cast<size_t>(s)];
            if (t <= s) continue;
            worker.partner[static_cast<size_t>(s)] = t;
            worker.partner[static_cast<size_t>(t)] = s;
            worker.cs[static_cast<size_t>(s)] = MatchSearch::rot_next(t);
            worker.cs[static_cast<size_t>(t)] = MatchSearch::rot_next(s);
            worker.closed += worker.cycles_closed(s, t);
            worker.unmatched -= 2;
            worker.unmatched_touched -= 2;
            int tv = t >> 2;
            if (tv >= worker.touched) {
                ++worker.touched;
                worker.unmatched_touched += 4;
            }
        }
        worker.search(shard_depth, -1, nullptr);
        results[i] = std::move(worker.found);
    };

    if (policy == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (size_t i = 0; i < shards.size(); ++i) run_shard(i);
    } else {
        for (size_t i = 0; i < shards.size(); ++i) run_shard(i);
    }

    Pdstor out;
    for (Pdstor& r : results) out.merge(r);
    return out;
}

Pdstor filter_knot_shadows(const Pdstor& store) {
    Pdstor out;
    store.for_each([&](const PdCode& code) {
        if (components(code).size() == 1) out.add(code);
    });
    return out;
}

Pdstor filter_primes(const Pdstor& store) {
    Pdstor out;
    store.for_each([&](const PdCode& code) {
        if (is_prime(code)) out.add(code);
    });
    return out;
}

std::vector<PartialGraph> ingest_planar_code(const std::string& bytes) {
    return parse_planar_code(bytes);
}

PdCode dualize_quadrangulation(const PartialGraph& g) {
    if (g.vertex_count() == 0 || !g.connected())
        throw std::invalid_argument("dualize_quadrangulation: graph must be connected");
    if (g.genus() != 0)
        throw std::invalid_argument("dualize_quadrangulation: graph must be planar");
    for (const auto& f : g.faces())
        if (f.size() != 4)
            throw NonQuadFace("dualize_quadrangulation: face of length " +
                              std::to_string(f.size()));
    return dual_map(g).to_shadow();
}

PartialGraph quadrangulation_of(const PdCode& code) {
    return dual_map(PartialGraph::from_shadow(code));
}

}  // namespace knotcensus
