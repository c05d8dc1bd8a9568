#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <knotcensus/classify.hpp>
#include <knotcensus/isomorphism.hpp>
#include <knotcensus/parallel.hpp>
#include <knotcensus/pdcode.hpp>

namespace knotcensus {

// Exact rational with normalized sign and lowest terms; den > 0 always.
// Census statistics are stored this way so equality against expected values
// is exact; decimal rendering is presentation only.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n) {}
    Rational(long long n, long long d);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const;

    double decimal() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;  // "p/q", or "p" when q == 1
};

Rational parse_rational(const std::string& text);

// Everything the census pipeline knows about one crossing number.  Counts
// default to -1 ("not computed") except the ones the shadow pass always
// fills.  type_counts holds diagrams whose polynomial identified a single
// knot type; ambiguous_counts holds the rest, keyed by the '|'-joined
// candidate names ("unknown" when the polynomial matched nothing).
struct CensusRecord {
    int crossings = 0;
    long long prime_shadow_count = -1;
    long long link_shadow_count = -1;
    long long shadow_count = 0;  // knot shadows
    long long diagram_count = -1;
    std::map<std::string, long long> type_counts;
    std::map<std::string, long long> ambiguous_counts;
    Rational mean_automorphisms;
    Rational mean_monogons;
    Rational monogon_fraction;  // fraction of shadows with at least one monogon
    Rational mean_bigons;
    Rational bigon_fraction;
    long long treelike_count = 0;
    std::map<int, long long> prime_summand_histogram;

    bool operator==(const CensusRecord& o) const = default;
};

// True when every classified diagram is accounted for: sum of type_counts
// plus ambiguous_counts equals diagram_count.
bool census_totals_consistent(const CensusRecord& rec);

// Shadow-level statistics of a fixed-crossing knot shadow store: mean
// automorphism count, mean monogons and bigons per shadow, and the fraction
// of shadows carrying at least one face of each kind.  All exact.
CensusRecord stats_shadows(const Pdstor& store);

struct TreelikeStats {
    long long treelike_count = 0;             // shadows whose summands are all one-crossing
    std::map<int, long long> histogram;       // #prime summands -> #shadows
};

// Prime-summand profile of the store.  Throws std::logic_error if any shadow
// decomposes into exactly n-1 summands: that would need a two-crossing prime
// knot shadow, which does not exist.
TreelikeStats treelike_stats(const Pdstor& store);

// Enumerates every diagram of every shadow class and tallies knot types by
// HOMFLY lookup.  Fills diagram_count, type_counts, ambiguous_counts.  The
// parallel policy shards over shadows; both policies produce the same record.
void classify_diagrams(const Pdstor& store, const KnotTable& table, CensusRecord& rec,
                       ExecPolicy policy = ExecPolicy::Parallel);

// stats_shadows + treelike_stats + classify_diagrams in one pass.
CensusRecord build_census(const Pdstor& store, const KnotTable& table,
                          ExecPolicy policy = ExecPolicy::Parallel);

// The observed unknot fraction next to a prediction of the fraction of
// crossing assignments that come out unknotted, computed from the prime
// summand histogram alone: tree-like shadows weighted 1, shadows with one
// 3-crossing prime summand 3/4, shadows with one 4-crossing summand 7/8.
// The 7/8 weight is the conventional estimate; the measured exact fraction
// for that class is 3/4 (two coherent twist regions of opposite handedness
// give a trefoil, see tests), so the prediction runs slightly high at small
// sizes.  The two fields are not directly comparable either way (the
// observed fraction counts diagram classes, the prediction counts
// assignments), but they track each other closely.
struct UnknotReport {
    Rational unknot_fraction;
    Rational assignment_lower_bound;
};
UnknotReport unknot_report(const CensusRecord& rec);

// Canonical rendering of a full census record as two CSV blocks: a
// "crossings,statistic,value" block with every scalar statistic (exact
// rationals) and the summand histogram, then a
// "crossings,knot_type_or_ambiguity_class,diagram_count" block with
// classified types in name order followed by ambiguity classes.  Fields
// that were not computed are omitted, so two records render identically iff
// they compare equal on their populated parts.
std::string census_csv(const CensusRecord& rec);

// CSV of knot types by descending diagram count, ties broken by name:
// "rank,type,count,probability" with exact probabilities.  Ambiguous classes
// are excluded from the ranking and listed in a trailing comment section.
std::string rank_frequency_csv(const CensusRecord& rec);

// One verified cell that disagreed.
struct CellDiff {
    std::string cell;  // "<group>:n=<crossings>:<field>"
    std::string expected;
    std::string actual;
};

struct VerifyReport {
    long long cells_checked = 0;
    std::vector<CellDiff> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// Compares computed records against the expected-values text (lines of
// "group | n | field | value", '#' comments, "or"-separated alternatives).
// Only rows whose n appears in `requested` are consulted; a requested n with
// no computed record raises IncompleteCensus.  Fields that the record has
// not computed (-1 counts) are reported as mismatches with actual "absent".
VerifyReport verify_expected_census(const std::map<int, CensusRecord>& computed,
                                    std::istream& expected, const std::vector<int>& requested);

// A slice of the shadow store plus its scheduling state.
struct WorkChunk {
    int id = 0;
    std::vector<PdCode> shadows;
    enum class Status { Pending, Leased, Done };
    Status status = Status::Pending;
    int attempts = 0;
};

// Splits the store into chunks of at most chunk_size classes, in store
// order.  Every class lands in exactly one chunk.
std::vector<WorkChunk> make_chunks(const Pdstor& store, int chunk_size);

// Deterministic partial-census text for one chunk ("chunk <id>" header,
// per-type counts, "end" trailer).  This is the worker payload and the
// on-disk result format.
std::string process_chunk(const WorkChunk& chunk, const KnotTable& table);

// Folds partial-census texts (any order) into one record.  Raises
// CorruptResultFile on malformed or truncated text.
CensusRecord merge_chunk_results(const std::vector<std::string>& parts);

struct ChunkedConfig {
    int chunk_size = 64;
    int workers = 2;
    double lease_seconds = 300.0;  // deadline before a leased chunk is requeued
    int max_attempts = 5;          // per chunk; exceeded -> ChunkTimeout escapes
    std::string result_dir;        // chunk_<id>.txt result files live here
    // Fault injection for tests: a worker for which this returns true
    // abandons the chunk without writing a result, as a killed process
    // would.  The chunk is requeued after its lease expires.
    std::function<bool(int chunk_id, int attempt)> abandon_hook;
};

// Chunked census: a single-threaded coordinator leases chunks to a worker
// pool, requeues chunks whose lease expires, and merges result files.
// Workers communicate only through files in result_dir; a rerun over an
// existing result_dir reuses finished chunks (results are keyed by chunk id
// and rewriting them is idempotent).  The merged record is bitwise identical
// to a direct classify_diagrams run.
CensusRecord run_chunked(const Pdstor& store, const KnotTable& table, const ChunkedConfig& cfg);

}  // namespace knotcensus
