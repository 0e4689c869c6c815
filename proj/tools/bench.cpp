// benchmark: serial reference vs OpenMP-parallel batch verification and
// Hodge evaluation on the shipped corpus.

#include "fanozl/catalog.hpp"
#include "fanozl/dsl.hpp"
#include "fanozl/parallel.hpp"

#include <chrono>
#include <iostream>

using namespace fanozl;

namespace {

double run_verify(const std::vector<CatalogEntry>& entries,
                  const std::string& data_dir, int threads,
                  std::string& digest) {
    worker_threads() = threads;
    auto t0 = std::chrono::steady_clock::now();
    VerifyReport rep = verify(entries, Selector{}, data_dir);
    double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    digest = report_csv(rep);
    return dt;
}

}  // namespace

int main(int argc, char** argv) {
    std::string data_dir = argc > 1 ? argv[1] : "data";
    int max_threads = argc > 2 ? std::atoi(argv[2]) : 8;
    auto entries = load_catalog(data_dir + "/catalog.txt");
    // a small but representative slice keeps the benchmark quick
    std::vector<CatalogEntry> slice;
    for (const auto& e : entries)
        if (slice.size() < 12) slice.push_back(e);

    std::string ref_digest;
    double serial = run_verify(slice, data_dir, 1, ref_digest);
    std::cout << "serial reference: " << serial << " s\n";
    for (int t = 2; t <= max_threads; t *= 2) {
        std::string digest;
        double dt = run_verify(slice, data_dir, t, digest);
        std::cout << "omp x" << t << ": " << dt << " s  speedup "
                  << serial / dt
                  << (digest == ref_digest ? "  [outputs identical]"
                                           : "  [OUTPUT MISMATCH]")
                  << "\n";
        if (digest != ref_digest) return 1;
    }
    return 0;
}
