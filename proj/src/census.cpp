#include <knotcensus/census.hpp>

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <knotcensus/diagram.hpp>
#include <knotcensus/errors.hpp>
#include <knotcensus/homfly.hpp>
#include <knotcensus/shadow_enum.hpp>

namespace knotcensus {

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
}
Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(num * o.den, den * o.num);
}
bool Rational::operator<(const Rational& o) const { return num * o.den < o.num * den; }

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational parse_rational(const std::string& text) {
    size_t slash = text.find('/');
    try {
        size_t used = 0;
        if (slash == std::string::npos) {
            long long n = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument("");
            return Rational(n);
        }
        long long n = std::stoll(text.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument("");
        std::string d_part = text.substr(slash + 1);
        long long d = std::stoll(d_part, &used);
        if (used != d_part.size()) throw std::invalid_argument("");
        return Rational(n, d);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: cannot parse '" + text + "'");
    }
}

bool census_totals_consistent(const CensusRecord& rec) {
    if (rec.diagram_count < 0) return true;
    long long total = 0;
    for (const auto& [name, count] : rec.type_counts) total += count;
    for (const auto& [key, count] : rec.ambiguous_counts) total += count;
    return total == rec.diagram_count;
}

CensusRecord stats_shadows(const Pdstor& store) {
    CensusRecord rec;
    long long auts = 0, monogons = 0, bigons = 0;
    long long with_monogon = 0, with_bigon = 0;
    long long shadows = 0;
    store.for_each([&](const PdCode& code) {
        if (shadows == 0) rec.crossings = code.crossings();
        ++shadows;
        auts += automorphism_count(code);
        long long m = 0, b = 0;
        for (const auto& face : faces(code)) {
            if (face.size() == 1) ++m;
            if (face.size() == 2) ++b;
        }
        monogons += m;
        bigons += b;
        if (m > 0) ++with_monogon;
        if (b > 0) ++with_bigon;
    });
    rec.shadow_count = shadows;
    if (shadows > 0) {
        rec.mean_automorphisms = Rational(auts, shadows);
        rec.mean_monogons = Rational(monogons, shadows);
        rec.monogon_fraction = Rational(with_monogon, shadows);
        rec.mean_bigons = Rational(bigons, shadows);
        rec.bigon_fraction = Rational(with_bigon, shadows);
    }
    return rec;
}

TreelikeStats treelike_stats(const Pdstor& store) {
    TreelikeStats out;
    store.for_each([&](const PdCode& code) {
        std::vector<PdCode> summands = prime_decompose(code);
        int n = code.crossings();
        int parts = static_cast<int>(summands.size());
        if (n >= 2 && parts == n - 1)
            throw std::logic_error(
                "treelike_stats: a shadow decomposed into n-1 prime summands, which would "
                "require a two-crossing prime knot shadow");
        ++out.histogram[parts];
        bool all_kinks = true;
        for (const PdCode& s : summands)
            if (s.crossings() != 1) all_kinks = false;
        if (all_kinks) ++out.treelike_count;
    });
    return out;
}

void classify_diagrams(const Pdstor& store, const KnotTable& table, CensusRecord& rec,
                       ExecPolicy policy) {
    std::vector<PdCode> shadows = store.all_sorted();
    const int count = static_cast<int>(shadows.size());

    struct Slot {
        long long diagrams = 0;
        std::map<std::string, long long> types;
        std::map<std::string, long long> ambiguous;
    };
    std::vector<Slot> slots(static_cast<size_t>(count));
    auto run_one = [&](int i) {
        Slot& slot = slots[static_cast<size_t>(i)];
        for (const Diagram& d : enumerate_diagrams(shadows[static_cast<size_t>(i)])) {
            ++slot.diagrams;
            std::set<KnotType> types = classify(homfly(d), table);
            if (types.size() == 1) {
                ++slot.types[types.begin()->name];
            } else if (types.empty()) {
                ++slot.ambiguous["unknown"];
            } else {
                std::string key;
                for (const KnotType& t : types) {
                    if (!key.empty()) key += '|';
                    key += t.name;
                }
                ++slot.ambiguous[key];
            }
        }
    };

    if (policy == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (int i = 0; i < count; ++i) run_one(i);
    } else {
        for (int i = 0; i < count; ++i) run_one(i);
    }

    rec.diagram_count = 0;
    rec.type_counts.clear();
    rec.ambiguous_counts.clear();
    for (const Slot& slot : slots) {
        rec.diagram_count += slot.diagrams;
        for (const auto& [name, c] : slot.types) rec.type_counts[name] += c;
        for (const auto& [key, c] : slot.ambiguous) rec.ambiguous_counts[key] += c;
    }
}

CensusRecord build_census(const Pdstor& store, const KnotTable& table, ExecPolicy policy) {
    CensusRecord rec = stats_shadows(store);
    TreelikeStats tl = treelike_stats(store);
    rec.treelike_count = tl.treelike_count;
    rec.prime_summand_histogram = tl.histogram;
    classify_diagrams(store, table, rec, policy);
    return rec;
}

UnknotReport unknot_report(const CensusRecord& rec) {
    UnknotReport out;
    if (rec.diagram_count > 0) {
        long long unknots = 0;
        auto it = rec.type_counts.find("0_1");
        if (it != rec.type_counts.end()) unknots = it->second;
        out.unknot_fraction = Rational(unknots, rec.diagram_count);
    }
    if (rec.shadow_count > 0) {
        auto bucket = [&](int parts) -> long long {
            auto it = rec.prime_summand_histogram.find(parts);
            return it == rec.prime_summand_histogram.end() ? 0 : it->second;
        };
        int n = rec.crossings;
        Rational weighted = Rational(bucket(n)) + Rational(3, 4) * Rational(bucket(n - 2)) +
                            Rational(7, 8) * Rational(bucket(n - 3));
        out.assignment_lower_bound = weighted / Rational(rec.shadow_count);
    }
    return out;
}

std::string census_csv(const CensusRecord& rec) {
    std::ostringstream out;
    out << "crossings,statistic,value\n";
    auto stat = [&](const char* name, const std::string& value) {
        out << rec.crossings << ',' << name << ',' << value << '\n';
    };
    if (rec.prime_shadow_count >= 0)
        stat("prime_shadows", std::to_string(rec.prime_shadow_count));
    if (rec.link_shadow_count >= 0)
        stat("link_shadows", std::to_string(rec.link_shadow_count));
    stat("knot_shadows", std::to_string(rec.shadow_count));
    if (rec.diagram_count >= 0) stat("knot_diagrams", std::to_string(rec.diagram_count));
    stat("mean_automorphisms", rec.mean_automorphisms.str());
    stat("mean_monogons", rec.mean_monogons.str());
    stat("monogon_fraction", rec.monogon_fraction.str());
    stat("mean_bigons", rec.mean_bigons.str());
    stat("bigon_fraction", rec.bigon_fraction.str());
    stat("treelike", std::to_string(rec.treelike_count));
    for (const auto& [parts, count] : rec.prime_summand_histogram)
        stat(("summands_" + std::to_string(parts)).c_str(), std::to_string(count));

    if (rec.diagram_count >= 0) {
        out << "\ncrossings,knot_type_or_ambiguity_class,diagram_count\n";
        for (const auto& [name, count] : rec.type_counts)
            out << rec.crossings << ',' << name << ',' << count << '\n';
        for (const auto& [key, count] : rec.ambiguous_counts)
            out << rec.crossings << ',' << key << ',' << count << '\n';
    }
    return out.str();
}

std::string rank_frequency_csv(const CensusRecord& rec) {
    std::vector<std::pair<std::string, long long>> rows(rec.type_counts.begin(),
                                                        rec.type_counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::ostringstream out;
    out << "rank,type,count,probability\n";
    long long total = rec.diagram_count > 0 ? rec.diagram_count : 0;
    int rank = 0;
    for (const auto& [name, count] : rows) {
        ++rank;
        out << rank << ',' << name << ',' << count << ','
            << (total > 0 ? Rational(count, total).str() : "0") << '\n';
    }
    if (!rec.ambiguous_counts.empty()) {
        out << "# ambiguous classes excluded from ranking\n";
        for (const auto& [key, count] : rec.ambiguous_counts)
            out << "# " << key << ',' << count << '\n';
    }
    return out.str();
}

namespace {

std::string trim_copy(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Field value from a record, or "absent" when that part of the census has
// not been computed.
std::string census_cell(const CensusRecord& rec, const std::string& group,
                        const std::string& field) {
    auto count_or_absent = [](long long v) {
        return v < 0 ? std::string("absent") : std::to_string(v);
    };
    if (group == "counts") {
        if (field == "prime_shadows") return count_or_absent(rec.prime_shadow_count);
        if (field == "link_shadows") return count_or_absent(rec.link_shadow_count);
        if (field == "knot_shadows") return std::to_string(rec.shadow_count);
        if (field == "knot_diagrams") return count_or_absent(rec.diagram_count);
    } else if (group == "automorphisms") {
        if (field == "mean") return rec.mean_automorphisms.str();
    } else if (group == "faces") {
        if (field == "mean_monogons") return rec.mean_monogons.str();
        if (field == "monogon_fraction") return rec.monogon_fraction.str();
        if (field == "mean_bigons") return rec.mean_bigons.str();
        if (field == "bigon_fraction") return rec.bigon_fraction.str();
    } else if (group == "types") {
        if (rec.diagram_count < 0) return "absent";
        auto it = rec.type_counts.find(field);
        return std::to_string(it == rec.type_counts.end() ? 0 : it->second);
    } else if (group == "unknots") {
        if (field == "fraction") {
            if (rec.diagram_count <= 0) return "absent";
            return unknot_report(rec).unknot_fraction.str();
        }
    } else if (group == "treelike") {
        if (field == "count") return std::to_string(rec.treelike_count);
    }
    return "unknown field " + group + "/" + field;
}

// Values compare as exact rationals when both sides parse, as strings
// otherwise.
bool cell_matches(const std::string& expected, const std::string& actual) {
    try {
        return parse_rational(expected) == parse_rational(actual);
    } catch (const std::invalid_argument&) {
        return expected == actual;
    }
}

}  // namespace

VerifyReport verify_expected_census(const std::map<int, CensusRecord>& computed,
                                    std::istream& expected, const std::vector<int>& requested) {
    for (int n : requested)
        if (!computed.count(n))
            throw IncompleteCensus("verify_expected_census: no census record for n=" +
                                   std::to_string(n));
    std::set<int> wanted(requested.begin(), requested.end());

    VerifyReport report;
    std::string line;
    int lineno = 0;
    while (std::getline(expected, line)) {
        ++lineno;
        std::string body = trim_copy(line);
        if (body.empty() || body[0] == '#') continue;
        std::vector<std::string> f;
        {
            std::string cur;
            for (char c : body) {
                if (c == '|') {
                    f.push_back(trim_copy(cur));
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            f.push_back(trim_copy(cur));
        }
        if (f.size() != 4)
            throw std::invalid_argument("expected-census line " + std::to_string(lineno) +
                                        ": want 'group | n | field | value'");
        int n = 0;
        try {
            n = std::stoi(f[1]);
        } catch (const std::exception&) {
            throw std::invalid_argument("expected-census line " + std::to_string(lineno) +
                                        ": bad crossing number '" + f[1] + "'");
        }
        if (!wanted.count(n)) continue;

        std::string actual = census_cell(computed.at(n), f[0], f[2]);
        bool matched = false;
        std::string alt = f[3];
        size_t pos = 0;
        while (!matched) {
            size_t next = alt.find(" or ", pos);
            std::string candidate =
                trim_copy(next == std::string::npos ? alt.substr(pos) : alt.substr(pos, next - pos));
            if (cell_matches(candidate, actual)) matched = true;
            if (next == std::string::npos) break;
            pos = next + 4;
        }
        ++report.cells_checked;
        if (!matched)
            report.mismatches.push_back(
                CellDiff{f[0] + ":n=" + f[1] + ":" + f[2], f[3], actual});
    }
    return report;
}

std::vector<WorkChunk> make_chunks(const Pdstor& store, int chunk_size) {
    if (chunk_size < 1) throw std::invalid_argument("make_chunks: chunk_size must be >= 1");
    std::vector<WorkChunk> chunks;
    std::vector<PdCode> all = store.all_sorted();
    for (size_t i = 0; i < all.size(); i += static_cast<size_t>(chunk_size)) {
        WorkChunk c;
        c.id = static_cast<int>(chunks.size());
        size_t hi = std::min(all.size(), i + static_cast<size_t>(chunk_size));
        c.shadows.assign(all.begin() + static_cast<long>(i), all.begin() + static_cast<long>(hi));
        chunks.push_back(std::move(c));
    }
    return chunks;
}

std::string process_chunk(const WorkChunk& chunk, const KnotTable& table) {
    Pdstor store;
    for (const PdCode& code : chunk.shadows) store.add(code);
    CensusRecord rec;
    classify_diagrams(store, table, rec, ExecPolicy::Serial);

    std::ostringstream out;
    out << "chunk " << chunk.id << "\n";
    out << "crossings " << (chunk.shadows.empty() ? 0 : chunk.shadows.front().crossings())
        << "\n";
    out << "shadows " << chunk.shadows.size() << "\n";
    out << "diagrams " << rec.diagram_count << "\n";
    for (const auto& [name, count] : rec.type_counts)
        out << "type " << name << " " << count << "\n";
    for (const auto& [key, count] : rec.ambiguous_counts)
        out << "ambiguous " << key << " " << count << "\n";
    out << "end\n";
    return out.str();
}

CensusRecord merge_chunk_results(const std::vector<std::string>& parts) {
    CensusRecord rec;
    rec.diagram_count = 0;
    rec.shadow_count = 0;
    bool have_crossings = false;
    for (const std::string& part : parts) {
        std::istringstream in(part);
        std::string line;
        bool saw_header = false, saw_end = false;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string key;
            ls >> key;
            if (key.empty()) continue;
            if (key == "chunk") {
                saw_header = true;
            } else if (key == "crossings") {
                int n = -1;
                if (!(ls >> n)) throw CorruptResultFile("bad crossings line: " + line);
                if (have_crossings && n != rec.crossings)
                    throw CorruptResultFile("chunk results disagree on crossing number");
                rec.crossings = n;
                have_crossings = true;
            } else if (key == "shadows") {
                long long v = -1;
                if (!(ls >> v) || v < 0) throw CorruptResultFile("bad shadows line: " + line);
                rec.shadow_count += v;
            } else if (key == "diagrams") {
                long long v = -1;
                if (!(ls >> v) || v < 0) throw CorruptResultFile("bad diagrams line: " + line);
                rec.diagram_count += v;
            } else if (key == "type" || key == "ambiguous") {
                std::string name;
                long long v = -1;
                if (!(ls >> name >> v) || v < 0)
                    throw CorruptResultFile("bad count line: " + line);
                if (key == "type")
                    rec.type_counts[name] += v;
                else
                    rec.ambiguous_counts[name] += v;
            } else if (key == "end") {
                saw_end = true;
            } else {
                throw CorruptResultFile("unrecognized line: " + line);
            }
        }
        if (!saw_header || !saw_end)
            throw CorruptResultFile("chunk result truncated or missing its header");
    }
    return rec;
}

namespace {

std::string chunk_path(const std::string& dir, int id) {
    return dir + "/chunk_" + std::to_string(id) + ".txt";
}

// A result file is reusable when it parses and describes this exact chunk.
bool reusable_result(const std::string& path, const WorkChunk& chunk, std::string* text) {
    std::ifstream in(path);
    if (!in.good()) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string candidate = buf.str();
    try {
        CensusRecord rec = merge_chunk_results({candidate});
        if (rec.shadow_count != static_cast<long long>(chunk.shadows.size())) return false;
    } catch (const CorruptResultFile&) {
        return false;
    }
    if (candidate.rfind("chunk " + std::to_string(chunk.id) + "\n", 0) != 0) return false;
    *text = candidate;
    return true;
}

void write_atomically(const std::string& path, const std::string& text) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << text;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

CensusRecord run_chunked(const Pdstor& store, const KnotTable& table, const ChunkedConfig& cfg) {
    if (cfg.result_dir.empty())
        throw std::invalid_argument("run_chunked: result_dir must be set");
    std::filesystem::create_directories(cfg.result_dir);

    std::vector<WorkChunk> chunks = make_chunks(store, cfg.chunk_size);
    using Clock = std::chrono::steady_clock;
    std::vector<Clock::time_point> deadlines(chunks.size());

    std::mutex mu;
    std::condition_variable cv;
    size_t done = 0;
    bool stop = false;
    std::string timeout_victim;

    auto worker = [&]() {
        for (;;) {
            int id = -1;
            int attempt = 0;
            {
                std::unique_lock<std::mutex> lk(mu);
                cv.wait(lk, [&] {
                    if (stop) return true;
                    for (const WorkChunk& c : chunks)
                        if (c.status == WorkChunk::Status::Pending) return true;
                    return false;
                });
                if (stop) return;
                for (WorkChunk& c : chunks) {
                    if (c.status == WorkChunk::Status::Pending) {
                        c.status = WorkChunk::Status::Leased;
                        ++c.attempts;
                        deadlines[static_cast<size_t>(c.id)] =
                            Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                               std::chrono::duration<double>(cfg.lease_seconds));
                        id = c.id;
                        attempt = c.attempts;
                        break;
                    }
                }
                if (id < 0) continue;
            }
            // A worker that abandons here behaves like a killed process: the
            // lease expires and the coordinator requeues the chunk.
            if (cfg.abandon_hook && cfg.abandon_hook(id, attempt)) continue;
            const WorkChunk& chunk = chunks[static_cast<size_t>(id)];
            std::string path = chunk_path(cfg.result_dir, id);
            std::string text;
            if (!reusable_result(path, chunk, &text)) {
                text = process_chunk(chunk, table);
                write_atomically(path, text);
            }
            {
                std::lock_guard<std::mutex> lk(mu);
                if (chunks[static_cast<size_t>(id)].status != WorkChunk::Status::Done) {
                    chunks[static_cast<size_t>(id)].status = WorkChunk::Status::Done;
                    ++done;
                }
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    int workers = std::max(1, cfg.workers);
    pool.reserve(static_cast<size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);

    // Coordinator: single-threaded over chunk state.  Requeues expired
    // leases until every chunk is done or one runs out of attempts.
    for (;;) {
        {
            std::lock_guard<std::mutex> lk(mu);
            if (done == chunks.size()) {
                stop = true;
            } else {
                Clock::time_point now = Clock::now();
                for (WorkChunk& c : chunks) {
                    if (c.status != WorkChunk::Status::Leased) continue;
                    if (now < deadlines[static_cast<size_t>(c.id)]) continue;
                    if (c.attempts >= cfg.max_attempts) {
                        timeout_victim = "chunk " + std::to_string(c.id) + " missed " +
                                         std::to_string(c.attempts) + " lease deadlines";
                        stop = true;
                        break;
                    }
                    c.status = WorkChunk::Status::Pending;
                }
            }
        }
        cv.notify_all();
        {
            std::lock_guard<std::mutex> lk(mu);
            if (stop) break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    for (std::thread& t : pool) t.join();
    if (!timeout_victim.empty()) throw ChunkTimeout("run_chunked: " + timeout_victim);

    std::vector<std::string> parts;
    parts.reserve(chunks.size());
    for (const WorkChunk& c : chunks) {
        std::ifstream in(chunk_path(cfg.result_dir, c.id));
        if (!in.good())
            throw CorruptResultFile("missing result file for chunk " + std::to_string(c.id));
        std::ostringstream buf;
        buf << in.rdbuf();
        parts.push_back(buf.str());
    }
    CensusRecord merged = merge_chunk_results(parts);
    if (merged.shadow_count != static_cast<long long>(store.size()))
        throw CorruptResultFile("merged shadow count does not cover the store");

    CensusRecord rec = stats_shadows(store);
    TreelikeStats tl = treelike_stats(store);
    rec.treelike_count = tl.treelike_count;
    rec.prime_summand_histogram = tl.histogram;
    rec.diagram_count = merged.diagram_count;
    rec.type_counts = std::move(merged.type_counts);
    rec.ambiguous_counts = std::move(merged.ambiguous_counts);
    return rec;
}

}  // namespace knotcensus
