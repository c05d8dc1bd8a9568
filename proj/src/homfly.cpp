#include "knotcensus/homfly.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "knotcensus/errors.hpp"

namespace knotcensus {

HomflyPoly homfly_term(long long coeff, int ae, int ze) {
    HomflyPoly p;
    if (coeff != 0) p.terms[{ae, ze}] = coeff;
    return p;
}

HomflyPoly homfly_one() { return homfly_term(1, 0, 0); }

HomflyPoly operator+(const HomflyPoly& p, const HomflyPoly& q) {
    HomflyPoly r = p;
    for (const auto& [key, c] : q.terms) {
        long long& slot = r.terms[key];
        slot += c;
        if (slot == 0) r.terms.erase(key);
    }
    return r;
}

HomflyPoly operator-(const HomflyPoly& p, const HomflyPoly& q) {
    HomflyPoly neg;
    for (const auto& [key, c] : q.terms) neg.terms[key] = -c;
    return p + neg;
}

HomflyPoly operator*(const HomflyPoly& p, const HomflyPoly& q) {
    HomflyPoly r;
    for (const auto& [kp, cp] : p.terms)
        for (const auto& [kq, cq] : q.terms) {
            auto key = std::pair{kp.first + kq.first, kp.second + kq.second};
            long long& slot = r.terms[key];
            slot += cp * cq;
            if (slot == 0) r.terms.erase(key);
        }
    return r;
}

HomflyPoly delta_power(int c) {
    if (c < 0) throw std::invalid_argument("delta_power: negative exponent");
    HomflyPoly delta = homfly_term(1, 1, -1) + homfly_term(-1, -1, -1);
    HomflyPoly r = homfly_one();
    for (int i = 0; i < c; ++i) r = r * delta;
    return r;
}

HomflyPoly mirror_poly(const HomflyPoly& p) {
    HomflyPoly r;
    for (const auto& [key, c] : p.terms) {
        long long flipped = (key.first & 1) ? -c : c;
        r.terms[{-key.first, key.second}] = flipped;
    }
    return r;
}

std::string poly_to_string(const HomflyPoly& p) {
    if (p.terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, c] : p.terms) {
        long long mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool bare = key.first == 0 && key.second == 0;
        if (mag != 1 || bare) out << mag;
        if (key.first != 0) {
            out << "a";
            if (key.first != 1) out << "^" << key.first;
        }
        if (key.second != 0) {
            if (key.first != 0) out << " ";
            out << "z";
            if (key.second != 1) out << "^" << key.second;
        }
    }
    return out.str();
}

long long determinant_from_homfly(const HomflyPoly& p) {
    // a = 1, z = 2i: z^(2m) = (-4)^m, so terms sum to an integer when every
    // z-exponent is even.
    long long total = 0;
    for (const auto& [key, c] : p.terms) {
        int ze = key.second;
        if (ze & 1) throw std::invalid_argument("determinant: odd z-exponent");
        long long pow = 1;
        for (int i = 0; i < ze / 2; ++i) pow *= -4;
        if (ze < 0) {
            // z^-2 would leave the integers; knots never have z-degree below 0
            // after collecting terms, but guard anyway.
            throw std::invalid_argument("determinant: negative z-exponent");
        }
        total += c * pow;
    }
    return total < 0 ? -total : total;
}

namespace {

// Flat wiring of a diagram.  Slot ends are numbered 4v+k for crossing v,
// slot k; peer[] joins the two ends of each strand segment, outgoing[] marks
// the end where the strand departs.  Crossings removed during evaluation are
// flagged dead and their ends go stale; free_loops counts closed curves that
// no longer touch any live crossing.
struct Wired {
    int n = 0;
    std::vector<int> peer;
    std::vector<char> outgoing;
    std::vector<char> over02;
    std::vector<char> dead;
    int free_loops = 0;
};

Wired wire(const Diagram& d) {
    Validation val = validate(d.shadow);
    if (!val.ok()) throw std::invalid_argument("homfly: invalid shadow: " + val.detail);
    if (!is_planar(d.shadow)) throw std::invalid_argument("homfly: non-planar shadow");
    const int n = d.shadow.crossings();
    auto comps = components(d.shadow);
    if (static_cast<int>(d.over02.size()) != n || d.reversed.size() != comps.size())
        throw ComponentCountChanged("homfly: state vectors do not match the shadow");

    std::vector<int> comp_of(2 * n + 1, -1);
    for (size_t c = 0; c < comps.size(); ++c)
        for (int e : comps[c]) comp_of[e] = static_cast<int>(c);

    PdIndex idx(d.shadow);
    Wired w;
    w.n = n;
    w.peer.assign(4 * n, -1);
    w.outgoing.assign(4 * n, 0);
    w.over02.assign(d.over02.begin(), d.over02.end());
    w.dead.assign(n, 0);
    for (int e = 1; e <= 2 * n; ++e) {
        EdgePos head = idx.pos(e);
        EdgePos tail = idx.pos(-e);
        int he = 4 * head.vertex + head.slot;
        int te = 4 * tail.vertex + tail.slot;
        w.peer[he] = te;
        w.peer[te] = he;
        bool rev = d.reversed[comp_of[e]] != 0;
        w.outgoing[te] = !rev;
        w.outgoing[he] = rev;
    }
    return w;
}

// Removes crossing v, routing each strand through it.  exits maps an
// incoming slot to the slot where that strand leaves: the straight routing
// k -> k+2 erases the crossing as if the strands never met (how monogons
// unwind), the swapped routing connects each incoming strand to the other
// one's exit, which is the oriented smoothing.  Strands that close up into
// circles free of live crossings are tallied in free_loops.
void dissolve(Wired& w, int v, bool swap_exits) {
    const int base = 4 * v;
    std::array<int, 4> exits{-1, -1, -1, -1};
    std::array<int, 2> ins{-1, -1};
    int found = 0;
    for (int k = 0; k < 4; ++k)
        if (!w.outgoing[base + k]) ins[found++] = k;
    assert(found == 2);
    exits[ins[0]] = ((swap_exits ? ins[1] : ins[0]) + 2) & 3;
    exits[ins[1]] = ((swap_exits ? ins[0] : ins[1]) + 2) & 3;

    std::array<char, 4> consumed{};
    // Chains fed from outside v: splice the external endpoints together.
    for (int k : ins) {
        int from = w.peer[base + k];
        if (from >> 2 == v) continue;
        int cur = k;
        for (;;) {
            consumed[cur] = 1;
            int to = w.peer[base + exits[cur]];
            if (to >> 2 == v) {
                cur = to & 3;
                continue;
            }
            w.peer[from] = to;
            w.peer[to] = from;
            break;
        }
    }
    // Whatever remains is a cycle confined to v: a closed circle.
    for (int k : ins) {
        if (consumed[k]) continue;
        int cur = k;
        do {
            consumed[cur] = 1;
            int to = w.peer[base + exits[cur]];
            assert(to >> 2 == v);
            cur = to & 3;
        } while (cur != k);
        ++w.free_loops;
    }
    w.dead[v] = 1;
}

bool has_self_arc(const Wired& w, int v) {
    for (int k = 0; k < 4; ++k)
        if (w.peer[4 * v + k] >> 2 == v) return true;
    return false;
}

// Unwinds monogons until none remain.  A strand segment from a crossing back
// to itself always occupies adjacent slots in a planar diagram, so erasing
// the crossing with the straight routing is exactly the curl removal.
void strip_monogons(Wired& w) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < w.n; ++v) {
            if (w.dead[v] || !has_self_arc(w, v)) continue;
            dissolve(w, v, false);
            changed = true;
        }
    }
}

struct WalkInfo {
    std::vector<int> deviating;   // crossings first met on their understrand
    std::vector<int> under_slot;  // the arrival slot of that first visit
    int circles = 0;
};

// Traces every live component from its smallest outgoing end.  A crossing
// deviates from descending order when the walk first arrives on the strand
// that passes under.
WalkInfo trace(const Wired& w) {
    WalkInfo info;
    std::vector<char> seen(w.peer.size(), 0);
    std::vector<char> met(w.n, 0);
    for (int start = 0; start < static_cast<int>(w.peer.size()); ++start) {
        if (w.dead[start >> 2] || !w.outgoing[start] || seen[start]) continue;
        ++info.circles;
        int cur = start;
        do {
            seen[cur] = 1;
            int to = w.peer[cur];
            int v = to >> 2;
            int k = to & 3;
            if (!met[v]) {
                met[v] = 1;
                bool over = ((k & 1) == 0) == (w.over02[v] != 0);
                if (!over) {
                    info.deviating.push_back(v);
                    info.under_slot.push_back(k);
                }
            }
            cur = 4 * v + ((k + 2) & 3);
        } while (cur != start);
    }
    return info;
}

// Depth-first skein resolution.  Every state strictly shrinks the measure
// (live crossings, deviating count), so the tree is finite.
HomflyPoly eval(Wired start, unsigned choice_seed) {
    std::mt19937 rng(choice_seed);
    HomflyPoly total;
    std::vector<std::pair<Wired, HomflyPoly>> todo;
    todo.emplace_back(std::move(start), homfly_one());
    while (!todo.empty()) {
        Wired d = std::move(todo.back().first);
        HomflyPoly mult = std::move(todo.back().second);
        todo.pop_back();
        strip_monogons(d);
        WalkInfo info = trace(d);
        if (info.deviating.empty()) {
            // Descending diagram: an unlink.
            total = total + mult * delta_power(info.circles + d.free_loops - 1);
            continue;
        }
        size_t pick = 0;
        if (choice_seed != 0)
            pick = std::uniform_int_distribution<size_t>(0, info.deviating.size() - 1)(rng);
        int v = info.deviating[pick];
        int ku = info.under_slot[pick];
        int ko = !d.outgoing[4 * v + ((ku + 1) & 3)] ? (ku + 1) & 3 : (ku + 3) & 3;
        bool positive = ((ku - ko) & 3) == 1;

        Wired switched = d;
        switched.over02[v] ^= 1;
        Wired smoothed = std::move(d);
        dissolve(smoothed, v, true);
        if (positive) {
            // a P(L+) - a^-1 P(L-) = z P(L0), solved for P(L+).
            todo.emplace_back(std::move(switched), mult * homfly_term(1, -2, 0));
            todo.emplace_back(std::move(smoothed), mult * homfly_term(1, -1, 1));
        } else {
            todo.emplace_back(std::move(switched), mult * homfly_term(1, 2, 0));
            todo.emplace_back(std::move(smoothed), mult * homfly_term(-1, 1, 1));
        }
    }
    return total;
}

}  // namespace

HomflyPoly homfly(const Diagram& d, unsigned choice_seed) {
    if (d.shadow.verts.empty()) {
        if (!d.over02.empty() || d.reversed.size() > 1)
            throw ComponentCountChanged("homfly: empty shadow with nonempty state");
        return homfly_one();
    }
    return eval(wire(d), choice_seed);
}

// Lives here because it shares the wiring machinery with the evaluator.
Diagram reduce_monogons(const Diagram& d) {
    if (d.shadow.verts.empty()) return Diagram{PdCode{}, {}, {}};
    Wired w = wire(d);
    strip_monogons(w);

    std::vector<int> order;  // surviving crossings by first visit
    std::vector<int> vmap(w.n, -1);
    Diagram out;
    int live = 0;
    for (int v = 0; v < w.n; ++v) live += !w.dead[v];
    if (live == 0) return Diagram{PdCode{}, {}, {}};
    out.shadow.verts.assign(live, Quad{0, 0, 0, 0});

    // Fresh labels along the travel direction, components in the order the
    // deterministic trace finds them.  Slots keep their original indices, so
    // the over02 flags carry over unchanged.
    std::vector<char> seen(w.peer.size(), 0);
    int next_edge = 1;
    int next_vertex = 0;
    int circles = 0;
    for (int begin = 0; begin < static_cast<int>(w.peer.size()); ++begin) {
        if (w.dead[begin >> 2] || !w.outgoing[begin] || seen[begin]) continue;
        ++circles;
        int cur = begin;
        do {
            seen[cur] = 1;
            int to = w.peer[cur];
            int vf = cur >> 2;
            int vt = to >> 2;
            if (vmap[vf] < 0) vmap[vf] = next_vertex++;
            if (vmap[vt] < 0) vmap[vt] = next_vertex++;
            int e = next_edge++;
            out.shadow.verts[vmap[vf]][cur & 3] = -e;
            out.shadow.verts[vmap[vt]][to & 3] = e;
            cur = 4 * vt + (((to & 3) + 2) & 3);
        } while (cur != begin);
    }
    out.over02.assign(live, 0);
    for (int v = 0; v < w.n; ++v)
        if (!w.dead[v]) out.over02[vmap[v]] = w.over02[v];
    out.reversed.assign(circles, 0);
    return out;
}

}  // namespace knotcensus
