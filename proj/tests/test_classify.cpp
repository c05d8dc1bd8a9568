#include <doctest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <knotcensus/classify.hpp>
#include <knotcensus/diagram.hpp>
#include <knotcensus/errors.hpp>
#include <knotcensus/homfly.hpp>
#include <knotcensus/shadow_enum.hpp>

using namespace knotcensus;

namespace {

std::vector<ReferenceKnot> shipped_references() {
    std::ifstream in(std::string(KNOTCENSUS_ASSET_DIR) + "/reference_knots.txt");
    REQUIRE(in.good());
    return load_reference_knots(in);
}

const ReferenceKnot& by_name(const std::vector<ReferenceKnot>& refs, const std::string& name) {
    for (const ReferenceKnot& r : refs)
        if (r.name == name) return r;
    REQUIRE_MESSAGE(false, ("missing reference " + name).c_str());
    static ReferenceKnot dummy;
    return dummy;
}

std::vector<PdCode> knot_shadows(int n) {
    std::vector<PdCode> out;
    for (const PdCode& c : filter_knot_shadows(brute_force_shadows(n)).all_sorted())
        out.push_back(c);
    return out;
}

std::set<std::string> names_of(const std::set<KnotType>& types) {
    std::set<std::string> out;
    for (const KnotType& t : types) out.insert(t.name);
    return out;
}

// An assignment is alternating when every edge changes level between its two
// endpoints: the passage through slots {p, p+2} of v is the overstrand only
// when over02[v] == (p == 0).
bool is_alternating(const Diagram& d) {
    PdIndex idx(d.shadow);
    for (int e = 1; e <= d.shadow.edge_count(); ++e) {
        EdgePos head = idx.pos(e), tail = idx.pos(-e);
        bool over_head = (d.over02[head.vertex] != 0) == ((head.slot & 1) == 0);
        bool over_tail = (d.over02[tail.vertex] != 0) == ((tail.slot & 1) == 0);
        if (over_head == over_tail) return false;
    }
    return true;
}

const PdCode kTrefoil{{{1, -5, -2, 4}, {2, 5, -3, -6}, {-1, -4, 6, 3}}};
const PdCode kHopf{{{2, 3, -1, -4}, {1, -3, -2, 4}}};

Diagram make_diagram(const PdCode& shadow, std::vector<char> over02) {
    Diagram d;
    d.shadow = shadow;
    d.over02 = std::move(over02);
    d.reversed.assign(components(shadow).size(), 0);
    return d;
}

}  // namespace

TEST_CASE("symmetry class names round-trip") {
    for (SymmetryClass s : {SymmetryClass::None, SymmetryClass::Mirror, SymmetryClass::Reversible,
                            SymmetryClass::Amphichiral, SymmetryClass::Full})
        CHECK(parse_symmetry(symmetry_name(s)) == s);
    CHECK_THROWS_AS((void)parse_symmetry("chiral"), std::invalid_argument);
}

TEST_CASE("reference parser accepts the documented line format and rejects damage") {
    std::string good =
        "# comment\n"
        "\n"
        "3_1 | reversible | 3: (1,-5,-2,4) (2,5,-3,-6) (-1,-4,6,3) | 011 | 0\n";
    std::istringstream in(good);
    std::vector<ReferenceKnot> refs = load_reference_knots(in);
    REQUIRE(refs.size() == 1);
    CHECK(refs[0].name == "3_1");
    CHECK(refs[0].symmetry == SymmetryClass::Reversible);
    CHECK(refs[0].diagram.shadow == kTrefoil);
    CHECK(refs[0].diagram.over02 == std::vector<char>{0, 1, 1});
    CHECK(refs[0].diagram.reversed == std::vector<char>{0});

    auto fails = [](const std::string& line) {
        std::istringstream bad(line);
        CHECK_THROWS_AS((void)load_reference_knots(bad), std::invalid_argument);
    };
    fails("3_1 | reversible | 3: (1,-5,-2,4) (2,5,-3,-6) (-1,-4,6,3) | 011\n");
    fails("3_1 | reversible | 3: (1,-5,-2,4) (2,5,-3,-6) (-1,-4,6,3) | 01 | 0\n");
    fails("3_1 | reversible | 3: (1,-5,-2,4) (2,5,-3,-6) (-1,-4,6,3) | 012 | 0\n");
    fails("3_1 | reversible | 3: (1,-5,-2,4) (2,5,-3,-6) (-1,-4,6,3) | 011 | 00\n");
    fails("3_1 | sideways | 3: (1,-5,-2,4) (2,5,-3,-6) (-1,-4,6,3) | 011 | 0\n");
    fails("3_1 | reversible | 3: (1,-5,-2,4) | 011 | 0\n");
}

TEST_CASE("shipped reference table lists the prime knots through 7 crossings") {
    std::vector<ReferenceKnot> refs = shipped_references();
    const std::vector<std::string> expected_names = {"3_1", "4_1", "5_1", "5_2", "6_1",
                                                     "6_2", "6_3", "7_1", "7_2", "7_3",
                                                     "7_4", "7_5", "7_6", "7_7"};
    REQUIRE(refs.size() == expected_names.size());
    for (size_t i = 0; i < refs.size(); ++i) CHECK(refs[i].name == expected_names[i]);

    const std::map<std::string, long long> expected_det = {
        {"3_1", 3},  {"4_1", 5},  {"5_1", 5},  {"5_2", 7},  {"6_1", 9},
        {"6_2", 11}, {"6_3", 13}, {"7_1", 7},  {"7_2", 11}, {"7_3", 13},
        {"7_4", 15}, {"7_5", 17}, {"7_6", 19}, {"7_7", 21}};
    for (const ReferenceKnot& r : refs) {
        CHECK(is_prime(r.diagram.shadow));
        CHECK(components(r.diagram.shadow).size() == 1);
        CHECK(is_alternating(r.diagram));
        HomflyPoly p = homfly(r.diagram);
        CHECK(determinant_from_homfly(p) == expected_det.at(r.name));
        bool amphichiral = (r.name == "4_1" || r.name == "6_3");
        CHECK((r.symmetry == SymmetryClass::Full) == amphichiral);
        CHECK((mirror_poly(p) == p) == amphichiral);
        // base chirality convention: the rendered polynomial of the entry is
        // the smaller of the mirror pair
        CHECK(poly_to_string(p) <= poly_to_string(mirror_poly(p)));
    }
}

TEST_CASE("knot table covers primes, mirrors, and composite products through 7 crossings") {
    std::vector<ReferenceKnot> refs = shipped_references();
    KnotTable table = build_knot_table(refs, 7);
    CHECK(table.max_crossings == 7);
    // 1 unknot + 14 primes + 12 mirrors + 5 composites, all with distinct
    // polynomials
    CHECK(table.by_poly.size() == 32);
    for (const auto& [key, types] : table.by_poly) CHECK(types.size() == 1);

    CHECK(names_of(classify(homfly_one(), table)) == std::set<std::string>{"0_1"});
    for (const ReferenceKnot& r : refs) {
        HomflyPoly p = homfly(r.diagram);
        CHECK(names_of(classify(p, table)) == std::set<std::string>{r.name});
        std::set<std::string> mirror_names = names_of(classify(mirror_poly(p), table));
        if (r.symmetry == SymmetryClass::Full)
            CHECK(mirror_names == std::set<std::string>{r.name});
        else
            CHECK(mirror_names == std::set<std::string>{r.name + "^m"});
    }

    HomflyPoly tre = homfly(by_name(refs, "3_1").diagram);
    HomflyPoly fig = homfly(by_name(refs, "4_1").diagram);
    CHECK(names_of(classify(tre * tre, table)) == std::set<std::string>{"3_1#3_1"});
    CHECK(names_of(classify(tre * mirror_poly(tre), table)) ==
          std::set<std::string>{"3_1#3_1^m"});
    CHECK(names_of(classify(mirror_poly(tre) * mirror_poly(tre), table)) ==
          std::set<std::string>{"3_1^m#3_1^m"});
    CHECK(names_of(classify(tre * fig, table)) == std::set<std::string>{"3_1#4_1"});
    CHECK(names_of(classify(mirror_poly(tre) * fig, table)) ==
          std::set<std::string>{"3_1^m#4_1"});
    // the square knot is fully symmetric, the granny knot only reversible
    CHECK(classify(tre * mirror_poly(tre), table).begin()->symmetry == SymmetryClass::Full);
    CHECK(classify(tre * tre, table).begin()->symmetry == SymmetryClass::Reversible);
    // a polynomial outside the table is unclassified
    CHECK(classify(homfly_term(1, 6, 0), table).empty());
    // 5-crossing primes cannot pair under a 7-crossing budget
    CHECK(classify(homfly(by_name(refs, "5_1").diagram) * tre, table).empty());
}

TEST_CASE("reference validation rejects inconsistent tables") {
    std::vector<ReferenceKnot> refs = shipped_references();
    const ReferenceKnot& trefoil = by_name(refs, "3_1");
    const ReferenceKnot& fig8 = by_name(refs, "4_1");

    auto rejects = [](std::vector<ReferenceKnot> bad, int budget) {
        CHECK_THROWS_AS((void)build_knot_table(bad, budget), ReferenceValidationFailure);
    };

    ReferenceKnot r = trefoil;
    r.name = "trefoil";
    rejects({r}, 7);  // name not of the form k_i

    r = trefoil;
    r.name = "4_1";
    rejects({r}, 7);  // crossing count contradicts the name

    rejects({trefoil, trefoil}, 7);  // duplicate name

    r = trefoil;
    r.name = "3_2";
    rejects({trefoil, r}, 7);  // duplicate polynomial under a fresh name

    ReferenceKnot mirrored = trefoil;
    mirrored.name = "3_2";
    for (char& c : mirrored.diagram.over02) c ^= 1;
    rejects({trefoil, mirrored}, 7);  // mirror duplicates the other chirality

    r = trefoil;
    r.symmetry = SymmetryClass::Full;
    rejects({r}, 7);  // chiral polynomial declared fully symmetric

    r = fig8;
    r.symmetry = SymmetryClass::Reversible;
    rejects({r}, 7);  // mirror-invariant polynomial declared chiral

    rejects({trefoil}, 2);  // reference exceeds the crossing budget

    r.name = "2_1";
    r.symmetry = SymmetryClass::Reversible;
    r.diagram = make_diagram(kHopf, {0, 1});
    rejects({r}, 7);  // links are not knot references

    r.name = "3_1";
    r.diagram = make_diagram(kTrefoil, {0, 0, 0});
    rejects({r}, 7);  // trivial polynomial (an unknot state of the shadow)

    r.diagram = make_diagram(kTrefoil, {0, 1});
    rejects({r}, 7);  // malformed diagram: state vector too short

    // a kinked diagram cannot realize the crossing number its name promises
    PdCode kinked = connect_sum(kTrefoil, 1, PdCode{{{1, 2, -2, -1}}}, 1);
    r.name = "4_2";
    r.diagram = make_diagram(kinked, {0, 1, 1, 0});
    rejects({r}, 7);
}

TEST_CASE("orbit counts split by symmetry class") {
    auto split = [](SymmetryClass s, long long count) {
        return split_symmetry_counts(KnotType{"8_17", s}, count);
    };
    CHECK(split(SymmetryClass::Full, 7) == std::map<std::string, long long>{{"8_17", 7}});
    CHECK(split(SymmetryClass::Reversible, 50864) ==
          std::map<std::string, long long>{{"8_17", 25432}, {"8_17^m", 25432}});
    CHECK(split(SymmetryClass::Mirror, 10) ==
          std::map<std::string, long long>{{"8_17", 5}, {"8_17^r", 5}});
    // a knot equal to its reversed mirror but not to its mirror still splits
    // into two types, the diagram and its reverse
    CHECK(split(SymmetryClass::Amphichiral, 5672) ==
          std::map<std::string, long long>{{"8_17", 2836}, {"8_17^r", 2836}});
    CHECK(split(SymmetryClass::None, 8) ==
          std::map<std::string, long long>{
              {"8_17", 2}, {"8_17^m", 2}, {"8_17^r", 2}, {"8_17^mr", 2}});
    CHECK_THROWS_AS((void)split(SymmetryClass::Reversible, 7), IndivisibleCount);
    CHECK_THROWS_AS((void)split(SymmetryClass::None, 6), IndivisibleCount);
}

TEST_CASE("alternating states form a mirror pair on every small knot shadow") {
    for (int n = 3; n <= 5; ++n) {
        for (const PdCode& shadow : knot_shadows(n)) {
            std::vector<Diagram> alt = alternating_diagrams(shadow);
            REQUIRE(alt.size() == 2);
            for (const Diagram& d : alt) CHECK(is_alternating(d));
            CHECK(mirror_poly(homfly(alt[0])) == homfly(alt[1]));
        }
    }
    CHECK_THROWS_AS((void)alternating_diagrams(PdCode{}), std::invalid_argument);
}

TEST_CASE("small-diagram censuses classify completely") {
    KnotTable table = build_knot_table(shipped_references(), 7);
    std::map<int, std::map<std::string, long long>> expected = {
        {3, {{"0_1", 34}, {"3_1", 1}, {"3_1^m", 1}}},
        {4, {{"0_1", 265}, {"3_1", 5}, {"3_1^m", 5}, {"4_1", 1}}},
        {5,
         {{"0_1", 2744},
          {"3_1", 85},
          {"3_1^m", 85},
          {"4_1", 18},
          {"5_1", 1},
          {"5_1^m", 1},
          {"5_2", 1},
          {"5_2^m", 1}}},
    };
    for (const auto& [n, want] : expected) {
        std::map<std::string, long long> got;
        long long unclassified = 0;
        for (const PdCode& shadow : knot_shadows(n)) {
            for (const Diagram& d : enumerate_diagrams(shadow)) {
                std::set<KnotType> types = classify(homfly(d), table);
                if (types.empty()) {
                    ++unclassified;
                    continue;
                }
                REQUIRE(types.size() == 1);
                ++got[types.begin()->name];
            }
        }
        CHECK(unclassified == 0);
        CHECK(got == want);
    }
}
