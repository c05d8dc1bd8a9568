#include "knotcensus/planar_map.hpp"

#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotcensus/errors.hpp"
#include "knotcensus/isomorphism.hpp"
#include "knotcensus/pdcode.hpp"

using namespace knotcensus;

namespace {

PdCode make(std::vector<Quad> verts) {
    PdCode c;
    c.verts = std::move(verts);
    return c;
}

const PdCode kTwist = make({{1, 2, -2, -1}});
const PdCode kGenus1 = make({{1, 2, -1, -2}});
const PdCode kHopf = make({{2, 3, -1, -4}, {1, -3, -2, 4}});
const PdCode kTrefoil = make({{1, -5, -2, 4}, {2, 5, -3, -6}, {-1, -4, 6, 3}});
const PdCode kL0 = make({{4, -2, -5, 1}, {2, -6, -3, 5}, {6, -4, -1, 3}});

std::string with_header(std::initializer_list<int> bytes) {
    std::string s = ">>planar_code<<";
    for (int b : bytes) s += static_cast<char>(b);
    return s;
}

// Path v0 - v1 - v2.
PartialGraph path3() {
    return parse_planar_code(with_header({3, 2, 0, 1, 3, 0, 2, 0})).front();
}

// 4-cycle v0 v1 v2 v3.
PartialGraph cycle4() {
    return parse_planar_code(with_header({4, 2, 4, 0, 3, 1, 0, 4, 2, 0, 1, 3, 0}))
        .front();
}

// Cube: outer square 0..3, inner square 4..7, spokes i to i+4, rotations from
// the straight-line plane drawing.
PartialGraph cube() {
    return parse_planar_code(with_header({8, 2, 5, 4, 0, 3, 6, 1, 0, 4, 7, 2, 0,
                                          3, 1, 8, 0, 6, 8, 1, 0, 7, 5, 2, 0, 3,
                                          8, 6, 0, 7, 4, 5, 0}))
        .front();
}

bool same_class(const PdCode& a, const PdCode& b) {
    return serialize(canonical_form(a)) == serialize(canonical_form(b));
}

}  // namespace

TEST_CASE("shadow round-trip preserves the isomorphism class") {
    for (const PdCode& code : {kTwist, kGenus1, kHopf, kTrefoil, kL0}) {
        PartialGraph g = PartialGraph::from_shadow(code);
        CHECK(g.vertex_count() == code.crossings());
        CHECK(g.edge_count() == code.edge_count());
        CHECK(g.genus() == genus(code));
        CHECK(g.faces().size() == faces(code).size());
        CHECK(same_class(g.to_shadow(), code));
    }
}

TEST_CASE("to_shadow rejects non-4-regular graphs") {
    CHECK_THROWS_AS((void)path3().to_shadow(), std::invalid_argument);
}

TEST_CASE("structure queries") {
    PartialGraph g = PartialGraph::from_shadow(kHopf);
    CHECK(g.multiplicity(0, 1) == 4);
    CHECK(g.loops_at(0).empty());
    CHECK(!g.simple());
    CHECK(g.connected());
    CHECK(g.component_count() == 1);

    PartialGraph t = PartialGraph::from_shadow(kTwist);
    CHECK(t.loops_at(0).size() == 2);

    PartialGraph c = cycle4();
    CHECK(c.simple());
    for (int e : c.live_edges()) CHECK(!c.is_bridge(e));
    PartialGraph p = path3();
    for (int e : p.live_edges()) CHECK(p.is_bridge(e));

    // Cutting both edges at v0 isolates it; cutting one keeps the cycle
    // connected.
    auto at0 = c.rotation(0);
    REQUIRE(at0.size() == 2);
    CHECK(c.connected_ignoring({PartialGraph::edge_of(at0[0])}));
    CHECK(!c.connected_ignoring(
        {PartialGraph::edge_of(at0[0]), PartialGraph::edge_of(at0[1])}));
}

TEST_CASE("deletion preserves the survivors' cyclic order") {
    PartialGraph g = PartialGraph::from_shadow(kTrefoil);
    auto before = g.rotation(0);
    REQUIRE(before.size() == 4);
    // Pick an end at vertex 0 whose twin is elsewhere (no loops in a trefoil
    // shadow) and delete its edge.
    End victim = before[1];
    int dead = PartialGraph::edge_of(victim);
    g.delete_edge(dead);
    CHECK(!g.edge_alive(dead));
    CHECK(g.edge_count() == 5);
    std::vector<End> expect;
    for (End e : before)
        if (PartialGraph::edge_of(e) != dead) expect.push_back(e);
    CHECK(g.rotation(0) == expect);
}

TEST_CASE("placement chooses the corner") {
    // Two loops on one vertex: nested placement gives the planar twist,
    // interleaved placement gives the genus-1 gluing.
    PartialGraph nested(1);
    int a = nested.add_edge();
    nested.place_append(2 * a, 0);
    nested.place_append(2 * a + 1, 0);
    int b = nested.add_edge();
    nested.place_after(2 * b, 2 * a);
    nested.place_before(2 * b + 1, 2 * a + 1);
    // rotation [a, b, b', a']
    CHECK(nested.genus() == 0);
    CHECK(same_class(nested.to_shadow(), kTwist));

    PartialGraph crossed(1);
    int c = crossed.add_edge();
    crossed.place_append(2 * c, 0);
    crossed.place_append(2 * c + 1, 0);
    int d = crossed.add_edge();
    crossed.place_after(2 * d, 2 * c);
    crossed.place_after(2 * d + 1, 2 * c + 1);
    // rotation [c, d, c', d']
    CHECK(crossed.genus() == 1);
    CHECK(same_class(crossed.to_shadow(), kGenus1));
}

TEST_CASE("single loop embeds in the sphere") {
    PartialGraph g(1);
    int e = g.add_edge();
    g.place_append(2 * e, 0);
    g.place_append(2 * e + 1, 0);
    CHECK(g.genus() == 0);
    CHECK(g.faces().size() == 2);
}

TEST_CASE("edgeless vertices count as sphere components") {
    PartialGraph g(3);
    CHECK(g.component_count() == 3);
    CHECK(g.genus() == 0);
    CHECK(g.canonical_encoding() == "V3");
}

TEST_CASE("dual of the one-quadrilateral tree is the twist") {
    PartialGraph p = path3();
    auto fs = p.faces();
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].size() == 4);
    PartialGraph d = dual_map(p);
    CHECK(d.vertex_count() == 1);
    CHECK(d.edge_count() == 2);
    CHECK(same_class(d.to_shadow(), kTwist));
}

TEST_CASE("dual of the 4-cycle is the hopf shadow") {
    PartialGraph d = dual_map(cycle4());
    CHECK(d.vertex_count() == 2);
    CHECK(d.multiplicity(0, 1) == 4);
    CHECK(same_class(d.to_shadow(), kHopf));
}

TEST_CASE("dual of the cube is a 6-crossing 3-component shadow") {
    PartialGraph q = cube();
    auto fs = q.faces();
    REQUIRE(fs.size() == 6);
    for (const auto& f : fs) CHECK(f.size() == 4);
    PartialGraph d = dual_map(q);
    CHECK(d.vertex_count() == 6);
    CHECK(d.edge_count() == 12);
    CHECK(d.simple());
    PdCode sh = d.to_shadow();
    CHECK(is_planar(sh));
    auto comps = components(sh);
    REQUIRE(comps.size() == 3);
    for (const auto& c : comps) CHECK(c.size() == 4);
}

TEST_CASE("double dual is embedded-isomorphic to the original") {
    for (PartialGraph g : {path3(), cycle4(), cube()}) {
        PartialGraph dd = dual_map(dual_map(g));
        CHECK(dd.canonical_encoding() == g.canonical_encoding());
    }
}

TEST_CASE("canonical encoding matches pd-code classes on 4-regular maps") {
    auto enc = [](const PdCode& c) {
        return PartialGraph::from_shadow(c).canonical_encoding();
    };
    CHECK(enc(kTrefoil) == enc(kL0));
    CHECK(enc(kTwist) != enc(kGenus1));
    CHECK(enc(kTwist) != enc(kHopf));
    // kTrefoil relabeled by e -> 7-e with rotated quads and reversed vertices.
    PdCode scrambled = make({{1, 4, -6, -3}, {2, -4, -1, 5}, {6, -2, -5, 3}});
    REQUIRE(validate(scrambled).ok());
    CHECK(same_class(scrambled, kTrefoil));
    CHECK(enc(scrambled) == enc(kTrefoil));
}

TEST_CASE("planar_code round-trip") {
    std::vector<PartialGraph> graphs = {path3(), cycle4(), cube()};
    std::string bytes = write_planar_code(graphs);
    auto back = parse_planar_code(bytes);
    REQUIRE(back.size() == graphs.size());
    for (size_t i = 0; i < graphs.size(); ++i) {
        CHECK(back[i].canonical_encoding() == graphs[i].canonical_encoding());
        CHECK(back[i].genus() == 0);
    }
}

TEST_CASE("planar_code rejects malformed input") {
    CHECK_THROWS_AS((void)parse_planar_code("nonsense"), BadMagicHeader);
    CHECK_THROWS_AS((void)parse_planar_code(""), BadMagicHeader);
    CHECK_THROWS_AS((void)parse_planar_code(with_header({3, 2, 0, 1})),
                    TruncatedRecord);
    CHECK_THROWS_AS((void)parse_planar_code(with_header({2, 3, 0, 1, 0})),
                    TruncatedRecord);
    CHECK_THROWS_AS((void)parse_planar_code(with_header({2, 2, 0, 1, 0, 0})),
                    TruncatedRecord);
    // Loop bytes and one-sided adjacencies are not representable.
    CHECK_THROWS_AS((void)parse_planar_code(with_header({1, 1, 0})),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)parse_planar_code(with_header({2, 2, 0, 0})),
                    TruncatedRecord);
    CHECK(parse_planar_code(">>planar_code<<").empty());
}

TEST_CASE("planar_code refuses multigraphs") {
    PartialGraph d = dual_map(cycle4());
    CHECK_THROWS_AS((void)write_planar_code({d}), std::invalid_argument);
}
