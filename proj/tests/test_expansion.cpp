#include "knotcensus/expansion.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotcensus/errors.hpp"
#include "knotcensus/isomorphism.hpp"
#include "knotcensus/shadow_enum.hpp"

using namespace knotcensus;

namespace {

PdCode make(std::vector<Quad> qs) {
    PdCode c;
    c.verts = std::move(qs);
    return c;
}

const PdCode kTwist = make({{1, 2, -2, -1}});
const PdCode kHopf = make({{2, 3, -1, -4}, {1, -3, -2, 4}});
const PdCode kTrefoil = make({{1, -5, -2, 4}, {2, 5, -3, -6}, {-1, -4, 6, 3}});

std::vector<std::string> class_list(const Pdstor& store) {
    std::vector<std::string> out;
    for (const PdCode& c : store.all_sorted()) out.push_back(serialize(c));
    return out;
}

PartialGraph path_graph(int k) {
    PartialGraph g;
    for (int v = 0; v < k; ++v) g.add_vertex();
    for (int v = 0; v + 1 < k; ++v) {
        int e = g.add_edge();
        g.place_append(2 * e, v);
        g.place_append(2 * e + 1, v + 1);
    }
    return g;
}

PartialGraph cycle_graph(int k) {
    PartialGraph g = path_graph(k);
    int e = g.add_edge();
    g.place_append(2 * e, k - 1);
    g.place_append(2 * e + 1, 0);
    return g;
}

int count_kind(const ConstraintSystem& cs, VarKind kind) {
    int n = 0;
    for (const ExpansionVar& v : cs.vars)
        if (v.kind == kind) ++n;
    return n;
}

}  // namespace

TEST_CASE("reduction strips the known small shadows to their graphs") {
    Reduction t = reduce_to_simple(kTwist);
    CHECK(t.graph.vertex_count() == 1);
    CHECK(t.graph.edge_count() == 0);
    CHECK(t.moves.size() == 2);
    CHECK(t.moves[0].kind == MoveKind::DeleteLoop);

    Reduction h = reduce_to_simple(kHopf);
    CHECK(h.graph.vertex_count() == 2);
    CHECK(h.graph.edge_count() == 1);
    REQUIRE(h.moves.size() == 1);
    CHECK(h.moves[0].kind == MoveKind::CollapseFourfold);

    Reduction tr = reduce_to_simple(kTrefoil);
    CHECK(tr.graph.canonical_encoding() == cycle_graph(3).canonical_encoding());

    for (int e = 1; e <= 2; ++e) {
        Reduction s = reduce_to_simple(connect_sum(kTwist, 1, kTwist, e));
        CHECK(s.graph.canonical_encoding() == path_graph(2).canonical_encoding());
    }
}

TEST_CASE("reduction rejects non-planar input") {
    CHECK_THROWS_AS(reduce_to_simple(make({{1, 2, -1, -2}})), ParityViolation);
}

TEST_CASE("reduced graph class does not depend on reduction order") {
    for (int k = 1; k <= 4; ++k) {
        for (const PdCode& code : brute_force_shadows(k).all_sorted()) {
            Reduction base = reduce_to_simple(code);
            CHECK(base.graph.vertex_count() == k);
            std::string want = base.graph.canonical_encoding();
            for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
                CHECK(reduce_to_simple(code, seed).graph.canonical_encoding() == want);
            }
        }
    }
}

TEST_CASE("preparing tops up degree-0 and degree-1 vertices with loops") {
    PartialGraph k1;
    k1.add_vertex();
    PartialGraph pk1 = prepare_graph(k1);
    CHECK(pk1.degree(0) == 2);
    CHECK(pk1.loops_at(0).size() == 1);

    PartialGraph p3 = prepare_graph(path_graph(3));
    CHECK(p3.degree(0) == 3);
    CHECK(p3.degree(1) == 2);
    CHECK(p3.degree(2) == 3);
    CHECK(p3.loops_at(0).size() == 1);
    CHECK(p3.loops_at(1).empty());

    CHECK(prepare_graph(p3) == p3);
}

TEST_CASE("triangle constraint system and its solutions") {
    ConstraintSystem cs = build_constraints(cycle_graph(3));
    CHECK(count_kind(cs, VarKind::Loop) == 3);
    CHECK(count_kind(cs, VarKind::DoubleEdge) == 3);
    CHECK(count_kind(cs, VarKind::DoubleCutEdge) == 0);
    CHECK(count_kind(cs, VarKind::InsertPair) == 3);
    CHECK(cs.linked.empty());  // the pair variables all share a vertex

    // all loops; all doublings; one pair plus the loop at the leftover vertex
    std::vector<std::vector<char>> sols = solve_branch_and_bound(cs);
    CHECK(sols.size() == 5);
    CHECK(sols == solve_branch_and_bound(cs));
    for (const std::vector<char>& sol : sols) {
        std::vector<int> got(3, 0);
        for (size_t k = 0; k < sol.size(); ++k) {
            if (!sol[k]) continue;
            const ExpansionVar& var = cs.vars[k];
            bool wide = var.kind == VarKind::Loop || var.kind == VarKind::InsertPair;
            got[static_cast<size_t>(var.i)] += wide ? 2 : 1;
            if (var.j >= 0) got[static_cast<size_t>(var.j)] += wide ? 2 : 1;
        }
        CHECK(got == std::vector<int>{2, 2, 2});
    }
}

TEST_CASE("square cycle yields exactly one linking constraint") {
    ConstraintSystem cs = build_constraints(cycle_graph(4));
    CHECK(count_kind(cs, VarKind::Loop) == 4);
    CHECK(count_kind(cs, VarKind::DoubleEdge) == 4);
    CHECK(count_kind(cs, VarKind::InsertPair) == 6);
    REQUIRE(cs.linked.size() == 1);
    // the two diagonals would have to cross
    const ExpansionVar& a = cs.vars[static_cast<size_t>(cs.linked[0].first)];
    const ExpansionVar& b = cs.vars[static_cast<size_t>(cs.linked[0].second)];
    std::set<std::set<int>> got{{a.i, a.j}, {b.i, b.j}};
    CHECK(got == std::set<std::set<int>>{{0, 2}, {1, 3}});
}

TEST_CASE("unmet degree need without variables is infeasible") {
    ConstraintSystem cs;
    cs.need = {1};
    cs.incident.resize(1);
    CHECK(solve_branch_and_bound(cs).empty());
}

TEST_CASE("path of five keeps its same-face pair insertions") {
    ConstraintSystem cs = build_constraints(prepare_graph(path_graph(5)));
    // the three middle vertices pair up through the single outer face
    CHECK(count_kind(cs, VarKind::InsertPair) == 3);
    CHECK(cs.linked.empty());
    CHECK(count_kind(cs, VarKind::DoubleCutEdge) == 4);
    CHECK(count_kind(cs, VarKind::DoubleEdge) == 0);
}

TEST_CASE("single-edge seed regenerates all two-crossing shadows") {
    std::vector<PartialGraph> seeds{path_graph(2)};
    Pdstor out = expansion_enumerate(2, seeds);
    CHECK(class_list(out) == class_list(brute_force_shadows(2)));
    CHECK(out.contains(kHopf));
}

TEST_CASE("expansion pipeline matches brute force") {
    for (int k = 1; k <= 5; ++k) {
        Pdstor brute = brute_force_shadows(k);
        std::vector<PartialGraph> seeds = seeds_from_store(brute);
        Pdstor expanded = expansion_enumerate(k, seeds);
        CHECK(class_list(expanded) == class_list(brute));
    }
}

TEST_CASE("serial and parallel expansion agree") {
    Pdstor brute = brute_force_shadows(4);
    std::vector<PartialGraph> seeds = seeds_from_store(brute);
    CHECK(class_list(expansion_enumerate(4, seeds, ExecPolicy::Serial)) ==
          class_list(expansion_enumerate(4, seeds, ExecPolicy::Parallel)));
}

TEST_CASE("every shadow round-trips through its own seed") {
    for (int k = 1; k <= 4; ++k) {
        for (const PdCode& code : brute_force_shadows(k).all_sorted()) {
            PartialGraph seed = reduce_to_simple(code).graph;
            CHECK(expansion_enumerate(k, {seed}).contains(code));
        }
    }
}

TEST_CASE("seeds partition the shadows they generate") {
    Pdstor brute = brute_force_shadows(4);
    std::vector<PartialGraph> seeds = seeds_from_store(brute);
    std::set<std::string> all;
    size_t total = 0;
    for (const PartialGraph& seed : seeds) {
        Pdstor part = expansion_enumerate(4, {seed});
        CHECK(part.size() > 0);
        for (const std::string& c : class_list(part)) {
            CHECK(all.insert(c).second);  // no class from two different seeds
            ++total;
        }
    }
    CHECK(total == brute.size());
}

TEST_CASE("expansion input validation") {
    CHECK_THROWS_AS(expansion_enumerate(3, {}), MissingSeeds);
    CHECK_THROWS_AS(expansion_enumerate(3, {path_graph(2)}), std::invalid_argument);
    std::vector<PartialGraph> dup{cycle_graph(3), cycle_graph(3)};
    CHECK_THROWS_AS(expansion_enumerate(3, dup), std::invalid_argument);
}
