#include "doctest.h"

#include <set>
#include <stdexcept>

#include "knotcensus/pdcode.hpp"

using namespace knotcensus;

namespace {

PdCode make(std::initializer_list<Quad> quads) {
    PdCode c;
    c.verts.assign(quads.begin(), quads.end());
    return c;
}

// Worked three-crossing unknot-with-kinks example: one component, faces
// include the trigon (-2,-4,-6).
const PdCode kL0 = make({{4, -2, -5, 1}, {2, -6, -3, 5}, {6, -4, -1, 3}});

// Standard trefoil shadow.
const PdCode kTrefoil = make({{1, -5, -2, 4}, {2, 5, -3, -6}, {-1, -4, 6, 3}});

// One-crossing twist (figure-eight curve).
const PdCode kTwist = make({{1, 2, -2, -1}});

}  // namespace

TEST_CASE("validate accepts legal codes") {
    CHECK(validate(kL0).ok());
    CHECK(validate(kTrefoil).ok());
    CHECK(validate(kTwist).ok());
    // Valid but genus 1: the torus-like gluing of two loops.
    CHECK(validate(make({{1, 2, -1, -2}})).ok());
}

TEST_CASE("validate rejects structured errors") {
    CHECK(validate(PdCode{}).error == CodeError::EmptyCode);
    CHECK(validate(make({{1, 2, -2, -3}})).error == CodeError::LabelOutOfRange);
    CHECK(validate(make({{1, 2, -2, 1}})).error == CodeError::DuplicateLabel);
    // Opposite slots +1/+2 and -1/-2 carry equal signs.
    CHECK(validate(make({{1, -1, 2, -2}})).error == CodeError::NonAdjacentSignViolation);
    CHECK(validate(make({{1, 2, 3, -1}, {4, -2, -3, -4}})).error ==
          CodeError::NonAdjacentSignViolation);
}

TEST_CASE("successor matches the defining examples") {
    CHECK(successor(kL0, -2) == -4);
    CHECK(successor(kL0, -4) == -6);
    CHECK(successor(kL0, -6) == -2);
}

TEST_CASE("faces of the worked examples") {
    auto fl0 = faces(kL0);
    CHECK(fl0.size() == 5);
    std::set<std::set<SignedEdge>> got;
    for (auto& f : fl0) got.insert(std::set<SignedEdge>(f.begin(), f.end()));
    CHECK(got.count({-2, -4, -6}) == 1);

    // Trefoil shadow: three bigons and two trigons.
    auto ft = faces(kTrefoil);
    std::multiset<size_t> degs;
    for (auto& f : ft) degs.insert(f.size());
    CHECK(degs == std::multiset<size_t>{2, 2, 2, 3, 3});

    // Twist: two monogons and a bigon.
    auto fw = faces(kTwist);
    std::multiset<size_t> degw;
    for (auto& f : fw) degw.insert(f.size());
    CHECK(degw == std::multiset<size_t>{1, 1, 2});
}

TEST_CASE("genus and planarity") {
    CHECK(genus(kL0) == 0);
    CHECK(genus(kTrefoil) == 0);
    CHECK(genus(kTwist) == 0);
    CHECK(genus(make({{1, 2, -1, -2}})) == 1);
    CHECK(genus(make({{1, -2, -1, 2}})) == 1);
    CHECK(is_planar(kTrefoil));
    CHECK_FALSE(is_planar(make({{1, 2, -1, -2}})));
}

TEST_CASE("components traverse straight through") {
    auto c1 = components(kTrefoil);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0] == std::vector<int>{1, 2, 3, 4, 5, 6});

    auto c0 = components(kL0);
    REQUIRE(c0.size() == 1);
    CHECK(c0[0].size() == 6);

    auto cw = components(kTwist);
    REQUIRE(cw.size() == 1);
    CHECK(cw[0] == std::vector<int>{1, 2});

    // Two-component shadow: two circles crossing twice.
    PdCode hopf = make({{2, 3, -1, -4}, {1, -3, -2, 4}});
    REQUIRE(validate(hopf).ok());
    auto ch = components(hopf);
    CHECK(ch.size() == 2);
    CHECK(genus(hopf) == 0);
}

TEST_CASE("normalized relabels along traversal") {
    PdCode scrambled = make({{5, -3, -6, 2}, {3, -1, -4, 6}, {1, -5, -2, 4}});
    REQUIRE(validate(scrambled).ok());
    PdCode norm = normalized(scrambled);
    CHECK(validate(norm).ok());
    // Edge 1 leaves vertex 1 (slot layout: -1 appears at vertex 0).
    bool found = false;
    for (int k = 0; k < 4; ++k)
        if (norm.verts[0][static_cast<size_t>(k)] == -1) found = true;
    CHECK(found);
    // Idempotent.
    CHECK(normalized(norm) == norm);
    // Components enumerate 1..2n in order after normalization.
    auto comps = components(norm);
    int expect = 1;
    for (auto& comp : comps)
        for (int e : comp) CHECK(e == expect++);
}

TEST_CASE("serialize and parse round-trip") {
    for (const PdCode& code : {kL0, kTrefoil, kTwist}) {
        CHECK(parse_pdcode(serialize(code)) == code);
    }
    CHECK(serialize(kTwist) == "1: (1,2,-2,-1)");
    CHECK(parse_pdcode("1: (+1,+2,-2,-1)") == kTwist);
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS(parse_pdcode(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_pdcode("1: (1,2,-2,-1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pdcode("1: (1,2,-2,-1) junk"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pdcode("2: (1,2,-2,-1)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pdcode("1: (1,0,-2,-1)"), std::invalid_argument);
    // Structurally well-formed but violates the sign rule.
    CHECK_THROWS_AS(parse_pdcode("1: (1,-1,2,-2)"), std::invalid_argument);
}
