// Times each parallel kernel against its serial reference path and prints a
// comparison table.  Sizes are chosen so the default run finishes in well
// under a minute on one core; --reps controls how many repetitions the best
// time is taken over.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <knotcensus/census.hpp>
#include <knotcensus/classify.hpp>
#include <knotcensus/expansion.hpp>
#include <knotcensus/parallel.hpp>
#include <knotcensus/shadow_enum.hpp>

using namespace knotcensus;

namespace {

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<Pdstor> asset_primes(int n) {
    std::vector<Pdstor> primes(static_cast<size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) {
        std::string path = std::string(KNOTCENSUS_ASSET_DIR) + "/quadrangulations_" +
                           std::to_string(k) + ".pc";
        for (const PartialGraph& g : ingest_planar_code(read_file_bytes(path)))
            primes[static_cast<size_t>(k)].add(dualize_quadrangulation(g));
    }
    return primes;
}

double best_seconds(int reps, const std::function<void()>& work) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        work();
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        if (dt.count() < best) best = dt.count();
    }
    return best;
}

void report(const char* kernel, int n, int reps, const std::function<void(ExecPolicy)>& work) {
    double serial = best_seconds(reps, [&] { work(ExecPolicy::Serial); });
    double parallel = best_seconds(reps, [&] { work(ExecPolicy::Parallel); });
    std::printf("%-26s n=%-3d %10.4fs %10.4fs %8.2fx\n", kernel, n, serial, parallel,
                serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel kernel timings"};
    int n_brute = 5, n_composite = 6, n_expansion = 5, n_classify = 5, reps = 3;
    app.add_option("--brute", n_brute, "crossings for brute_force_shadows")->check(CLI::Range(1, 6));
    app.add_option("--composite", n_composite, "crossings for build_composite_shadows")
        ->check(CLI::Range(1, 7));
    app.add_option("--expansion", n_expansion, "crossings for expansion_enumerate")
        ->check(CLI::Range(1, 6));
    app.add_option("--classify", n_classify, "crossings for classify_diagrams")
        ->check(CLI::Range(3, 7));
    app.add_option("--reps", reps, "repetitions, best time wins")->check(CLI::Range(1, 100));
    CLI11_PARSE(app, argc, argv);

    std::printf("worker threads: %d\n", parallel_workers());
    std::printf("%-26s %-5s %11s %11s %9s\n", "kernel", "size", "serial", "parallel", "speedup");

    report("brute_force_shadows", n_brute, reps,
           [&](ExecPolicy p) { brute_force_shadows(n_brute, false, p); });

    std::vector<Pdstor> primes = asset_primes(n_composite);
    report("build_composite_shadows", n_composite, reps,
           [&](ExecPolicy p) { build_composite_shadows(n_composite, primes, p); });

    std::vector<PartialGraph> seeds =
        seeds_from_store(brute_force_shadows(n_expansion, false, ExecPolicy::Parallel));
    report("expansion_enumerate", n_expansion, reps,
           [&](ExecPolicy p) { expansion_enumerate(n_expansion, seeds, p); });

    std::ifstream refs(std::string(KNOTCENSUS_ASSET_DIR) + "/reference_knots.txt");
    KnotTable table = build_knot_table(load_reference_knots(refs), 7);
    Pdstor knots = filter_knot_shadows(brute_force_shadows(n_classify, false, ExecPolicy::Parallel));
    report("classify_diagrams", n_classify, reps, [&](ExecPolicy p) {
        CensusRecord rec;
        classify_diagrams(knots, table, rec, p);
    });
    return 0;
}
