#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <knotcensus/census.hpp>
#include <knotcensus/classify.hpp>
#include <knotcensus/diagram.hpp>
#include <knotcensus/errors.hpp>
#include <knotcensus/homfly.hpp>
#include <knotcensus/shadow_enum.hpp>

using namespace knotcensus;

namespace {

Pdstor knot_store(int n) { return filter_knot_shadows(brute_force_shadows(n)); }

KnotTable shipped_table() {
    std::ifstream in(std::string(KNOTCENSUS_ASSET_DIR) + "/reference_knots.txt");
    REQUIRE(in.good());
    return build_knot_table(load_reference_knots(in), 7);
}

std::ifstream expected_asset() {
    std::ifstream in(std::string(KNOTCENSUS_ASSET_DIR) + "/expected_census.txt");
    REQUIRE(in.good());
    return in;
}

// Raw crossing-state assignments of a shadow with label orientations kept;
// unknot detection does not depend on component orientation.
long long unknotted_assignments(const PdCode& shadow) {
    const int n = shadow.crossings();
    long long unknots = 0;
    for (unsigned long long s = 0; s < (1ull << n); ++s) {
        Diagram d;
        d.shadow = shadow;
        d.over02.resize(n);
        for (int v = 0; v < n; ++v) d.over02[v] = static_cast<char>((s >> v) & 1);
        d.reversed.assign(components(shadow).size(), 0);
        if (homfly(d) == homfly_one()) ++unknots;
    }
    return unknots;
}

std::filesystem::path fresh_dir(const std::string& name) {
    std::filesystem::path dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("rationals normalize and round-trip") {
    CHECK(Rational(12, 6) == Rational(2));
    CHECK(Rational(-4, -6) == Rational(2, 3));
    CHECK(Rational(4, -6) == Rational(-2, 3));
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
    CHECK(Rational(3, 4) / Rational(3, 2) == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(7).str() == "7");
    CHECK(Rational(-3, 9).str() == "-1/3");
    CHECK(parse_rational("12/6") == Rational(2));
    CHECK(parse_rational("-5") == Rational(-5));
    CHECK_THROWS_AS((void)Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)(Rational(1) / Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_rational("3/4/5"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_rational("elephant"), std::invalid_argument);
}

TEST_CASE("shadow statistics reproduce the small-size reference values") {
    CensusRecord r3 = stats_shadows(knot_store(3));
    CHECK(r3.crossings == 3);
    CHECK(r3.shadow_count == 6);
    CHECK(r3.mean_automorphisms == Rational(5));
    CHECK(r3.mean_monogons == Rational(12, 6));
    CHECK(r3.monogon_fraction == Rational(5, 6));
    CHECK(r3.mean_bigons == Rational(6, 6));
    CHECK(r3.bigon_fraction == Rational(3, 6));

    CensusRecord r4 = stats_shadows(knot_store(4));
    CHECK(r4.shadow_count == 19);
    CHECK(r4.mean_automorphisms == Rational(64, 19));
    CHECK(r4.mean_monogons == Rational(48, 19));
    CHECK(r4.monogon_fraction == Rational(18, 19));
    CHECK(r4.mean_bigons == Rational(18, 19));
    CHECK(r4.bigon_fraction == Rational(11, 19));

    CensusRecord r5 = stats_shadows(knot_store(5));
    CHECK(r5.shadow_count == 76);
    CHECK(r5.mean_automorphisms == Rational(44, 19));
    CHECK(r5.mean_monogons == Rational(213, 76));
    CHECK(r5.monogon_fraction == Rational(74, 76));
    CHECK(r5.mean_bigons == Rational(88, 76));
    CHECK(r5.bigon_fraction == Rational(52, 76));
}

TEST_CASE("prime summand profile separates tree-like shadows") {
    TreelikeStats t1 = treelike_stats(knot_store(1));
    CHECK(t1.treelike_count == 1);
    CHECK(t1.histogram == std::map<int, long long>{{1, 1}});

    TreelikeStats t3 = treelike_stats(knot_store(3));
    CHECK(t3.treelike_count == 5);
    CHECK(t3.histogram == std::map<int, long long>{{1, 1}, {3, 5}});

    for (int n = 3; n <= 5; ++n) {
        Pdstor store = knot_store(n);
        TreelikeStats t = treelike_stats(store);
        long long total = 0;
        for (const auto& [parts, count] : t.histogram) {
            CHECK(parts != n - 1);
            total += count;
        }
        CHECK(total == static_cast<long long>(store.size()));
    }
}

// The measured fraction for shadows with one 4-crossing prime summand is
// exactly 3/4, not the often-quoted 7/8: the 4-crossing prime knot shadow is
// two coherent 2-crossing twist regions, and flipping one whole region gives
// the 2-bridge knot with fraction 3/2, a trefoil. Of its 16 states, 12 are
// unknots, 2 are figure-8s, and 2 are trefoils (one of each handedness).
// Kink summands multiply states without changing the fraction.
TEST_CASE("unknotted assignment fractions are exactly 1, 3/4, 3/4 by summand profile") {
    std::string fig8;
    {
        Diagram alt = alternating_diagrams(
                          parse_pdcode("4: (1,-5,-2,4) (-1,-6,8,5) (2,-8,-3,7) (3,6,-4,-7)"))
                          .front();
        fig8 = poly_to_string(homfly(alt));
    }
    for (int n = 3; n <= 5; ++n) {
        knot_store(n).for_each([&](const PdCode& shadow) {
            std::vector<PdCode> summands = prime_decompose(shadow);
            int kinks = 0, threes = 0, fours = 0, bigger = 0;
            for (const PdCode& s : summands) {
                if (s.crossings() == 1) ++kinks;
                else if (s.crossings() == 3) ++threes;
                else if (s.crossings() == 4) ++fours;
                else ++bigger;
            }
            long long unknots = unknotted_assignments(shadow);
            long long all = 1ll << n;
            if (kinks == static_cast<int>(summands.size())) {
                CHECK(unknots == all);
            } else if (threes == 1 && fours == 0 && bigger == 0) {
                CHECK(Rational(unknots, all) == Rational(3, 4));
            } else if (fours == 1 && threes == 0 && bigger == 0) {
                CHECK(Rational(unknots, all) == Rational(3, 4));
                // pin the mechanism: the remaining quarter is half figure-8s
                // and a quarter of each trefoil chirality
                std::map<std::string, long long> tally;
                for (unsigned long long s = 0; s < (1ull << n); ++s) {
                    Diagram d;
                    d.shadow = shadow;
                    d.over02.resize(n);
                    for (int v = 0; v < n; ++v)
                        d.over02[v] = static_cast<char>((s >> v) & 1);
                    d.reversed.assign(components(shadow).size(), 0);
                    tally[poly_to_string(homfly(d))]++;
                }
                long long scale = 1ll << (n - 4);
                REQUIRE(tally.size() == 4);
                CHECK(tally[poly_to_string(homfly_one())] == 12 * scale);
                CHECK(tally[fig8] == 2 * scale);
                for (const auto& [key, count] : tally)
                    if (key != fig8 && key != poly_to_string(homfly_one()))
                        CHECK(count == scale);
            }
        });
    }
}

TEST_CASE("diagram classification census matches the reference counts at n=3,4") {
    KnotTable table = shipped_table();
    CensusRecord r3 = build_census(knot_store(3), table);
    CHECK(r3.diagram_count == 36);
    CHECK(r3.type_counts ==
          std::map<std::string, long long>{{"0_1", 34}, {"3_1", 1}, {"3_1^m", 1}});
    CHECK(r3.ambiguous_counts.empty());
    CHECK(census_totals_consistent(r3));
    CHECK(r3.treelike_count == 5);

    CensusRecord r4 = build_census(knot_store(4), table);
    CHECK(r4.diagram_count == 276);
    CHECK(r4.type_counts == std::map<std::string, long long>{
                                {"0_1", 265}, {"3_1", 5}, {"3_1^m", 5}, {"4_1", 1}});
    CHECK(census_totals_consistent(r4));

    // the serial path is the reference for the sharded kernel
    CensusRecord r4s;
    classify_diagrams(knot_store(4), table, r4s, ExecPolicy::Serial);
    CHECK(r4s.diagram_count == r4.diagram_count);
    CHECK(r4s.type_counts == r4.type_counts);
}

TEST_CASE("unknot report combines census fraction with the summand bound") {
    KnotTable table = shipped_table();
    CensusRecord r3 = build_census(knot_store(3), table);
    UnknotReport u3 = unknot_report(r3);
    CHECK(u3.unknot_fraction == Rational(17, 18));
    // 5 tree-like shadows and the one prime 3-crossing shadow out of 6
    CHECK(u3.assignment_lower_bound == Rational(23, 24));

    CensusRecord r4 = build_census(knot_store(4), table);
    UnknotReport u4 = unknot_report(r4);
    CHECK(u4.unknot_fraction == Rational(265, 276));
    auto bucket = [&](int k) {
        auto it = r4.prime_summand_histogram.find(k);
        return it == r4.prime_summand_histogram.end() ? 0ll : it->second;
    };
    CHECK(u4.assignment_lower_bound ==
          (Rational(bucket(4)) + Rational(3, 4) * Rational(bucket(2)) +
           Rational(7, 8) * Rational(bucket(1))) /
              Rational(19));
}

TEST_CASE("rank frequency export orders by count then name with exact probabilities") {
    KnotTable table = shipped_table();
    CensusRecord r4 = build_census(knot_store(4), table);
    CHECK(rank_frequency_csv(r4) ==
          "rank,type,count,probability\n"
          "1,0_1,265,265/276\n"
          "2,3_1,5,5/276\n"
          "3,3_1^m,5,5/276\n"
          "4,4_1,1,1/276\n");

    CensusRecord single;
    single.diagram_count = 7;
    single.type_counts["0_1"] = 7;
    CHECK(rank_frequency_csv(single) == "rank,type,count,probability\n1,0_1,7,1\n");

    CensusRecord with_ambiguous = single;
    with_ambiguous.diagram_count = 9;
    with_ambiguous.ambiguous_counts["8_17|8_17^r"] = 2;
    std::string csv = rank_frequency_csv(with_ambiguous);
    CHECK(csv.find("# ambiguous classes excluded from ranking\n") != std::string::npos);
    CHECK(csv.find("# 8_17|8_17^r,2\n") != std::string::npos);

    // probabilities sum to one
    Rational sum(0);
    std::istringstream rows(rank_frequency_csv(r4));
    std::string line;
    std::getline(rows, line);  // header
    while (std::getline(rows, line)) {
        size_t last = line.rfind(',');
        sum = sum + parse_rational(line.substr(last + 1));
    }
    CHECK(sum == Rational(1));
}

TEST_CASE("verification compares census records against the expected-value cells") {
    KnotTable table = shipped_table();
    std::map<int, CensusRecord> computed;
    computed[3] = build_census(knot_store(3), table);
    computed[3].prime_shadow_count = 1;
    computed[3].link_shadow_count = 7;

    {
        std::ifstream asset = expected_asset();
        VerifyReport rep = verify_expected_census(computed, asset, {3});
        CHECK(rep.ok());
        // 4 counts + 1 automorphisms + 4 faces + 3 types + 1 unknots
        CHECK(rep.cells_checked == 13);
    }
    {
        // a tampered cell fails and is cited by name
        std::map<int, CensusRecord> bad = computed;
        bad[3].type_counts["0_1"] = 35;
        std::ifstream asset = expected_asset();
        VerifyReport rep = verify_expected_census(bad, asset, {3});
        REQUIRE(!rep.ok());
        bool cited = false;
        for (const CellDiff& d : rep.mismatches)
            if (d.cell == "types:n=3:0_1" && d.expected == "34" && d.actual == "35")
                cited = true;
        CHECK(cited);
    }
    {
        std::ifstream asset = expected_asset();
        CHECK_THROWS_AS((void)verify_expected_census(computed, asset, {3, 9}),
                        IncompleteCensus);
    }
    {
        // alternatives accept any listed value; absent fields are reported
        std::istringstream tiny(
            "automorphisms | 3 | mean | 7 or 5\n"
            "counts | 3 | knot_diagrams | 36\n");
        CensusRecord stats_only = stats_shadows(knot_store(3));
        std::map<int, CensusRecord> partial{{3, stats_only}};
        VerifyReport rep = verify_expected_census(partial, tiny, {3});
        REQUIRE(rep.mismatches.size() == 1);
        CHECK(rep.mismatches[0].cell == "counts:n=3:knot_diagrams");
        CHECK(rep.mismatches[0].actual == "absent");
    }
}

TEST_CASE("chunk partitioning covers the store exactly once") {
    Pdstor store = knot_store(4);
    std::vector<WorkChunk> chunks = make_chunks(store, 5);
    CHECK(chunks.size() == 4);  // 19 shadows in chunks of 5
    size_t total = 0;
    for (size_t i = 0; i < chunks.size(); ++i) {
        CHECK(chunks[i].id == static_cast<int>(i));
        CHECK(chunks[i].shadows.size() <= 5);
        total += chunks[i].shadows.size();
    }
    CHECK(total == store.size());
    CHECK_THROWS_AS((void)make_chunks(store, 0), std::invalid_argument);
}

TEST_CASE("chunk results merge into the direct census") {
    KnotTable table = shipped_table();
    Pdstor store = knot_store(4);
    CensusRecord direct = build_census(store, table);

    std::vector<WorkChunk> chunks = make_chunks(store, 3);
    std::vector<std::string> parts;
    for (const WorkChunk& c : chunks) {
        std::string text = process_chunk(c, table);
        CHECK(text == process_chunk(c, table));  // deterministic payload
        parts.push_back(text);
    }
    CensusRecord merged = merge_chunk_results(parts);
    CHECK(merged.diagram_count == direct.diagram_count);
    CHECK(merged.type_counts == direct.type_counts);
    CHECK(merged.shadow_count == direct.shadow_count);

    CHECK_THROWS_AS((void)merge_chunk_results({"chunk 0\nshadows 1\n"}), CorruptResultFile);
    CHECK_THROWS_AS((void)merge_chunk_results({"shadows 1\nend\n"}), CorruptResultFile);
    CHECK_THROWS_AS((void)merge_chunk_results({"chunk 0\ntype 3_1 -4\nend\n"}),
                    CorruptResultFile);
    CHECK_THROWS_AS((void)merge_chunk_results({"chunk 0\nnonsense\nend\n"}),
                    CorruptResultFile);
}

TEST_CASE("chunked runs reproduce the direct census bit for bit") {
    KnotTable table = shipped_table();
    Pdstor store = knot_store(4);
    CensusRecord direct = build_census(store, table);

    ChunkedConfig cfg;
    cfg.chunk_size = 3;
    cfg.workers = 2;
    cfg.result_dir = fresh_dir("knotcensus_chunks_a").string();
    CensusRecord chunked = run_chunked(store, table, cfg);
    CHECK(chunked == direct);
    CHECK(rank_frequency_csv(chunked) == rank_frequency_csv(direct));

    // one chunk, one worker
    ChunkedConfig one;
    one.chunk_size = static_cast<int>(store.size());
    one.workers = 1;
    one.result_dir = fresh_dir("knotcensus_chunks_b").string();
    CHECK(run_chunked(store, table, one) == direct);

    // a rerun over the same result directory reuses finished chunks
    CHECK(run_chunked(store, table, cfg) == direct);
}

TEST_CASE("killed workers requeue their chunk without changing the census") {
    KnotTable table = shipped_table();
    Pdstor store = knot_store(3);
    CensusRecord direct = build_census(store, table);

    ChunkedConfig cfg;
    cfg.chunk_size = 2;
    cfg.workers = 2;
    cfg.lease_seconds = 0.05;
    cfg.result_dir = fresh_dir("knotcensus_chunks_kill").string();
    cfg.abandon_hook = [](int chunk_id, int attempt) { return chunk_id == 0 && attempt == 1; };
    CHECK(run_chunked(store, table, cfg) == direct);

    ChunkedConfig doomed;
    doomed.chunk_size = static_cast<int>(store.size());
    doomed.workers = 1;
    doomed.lease_seconds = 0.01;
    doomed.max_attempts = 2;
    doomed.result_dir = fresh_dir("knotcensus_chunks_doomed").string();
    doomed.abandon_hook = [](int, int) { return true; };
    CHECK_THROWS_AS((void)run_chunked(store, table, doomed), ChunkTimeout);
}
