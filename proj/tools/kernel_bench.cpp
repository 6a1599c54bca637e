// Compares the serial reference and the OpenMP invariant-cell kernel on
// generated suppressed graphs, and reports the near-linear pipeline timings.

#include "tabprot/detection.hpp"
#include "tabprot/oracle.hpp"
#include "tabprot/suppress.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace tabprot;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Mixed-orientation copy so the kernel has real per-edge work to do: every
// third edge leans on a bound.
MixedGraph with_mixed_orientations(MixedGraph g, uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (GraphEdge& e : g.edges) {
    uint64_t roll = rng() % 3;
    if (roll == 1) e.dir = Orientation::toward_column;
    if (roll == 2) e.dir = Orientation::toward_row;
  }
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes{2000, 4000, 8000};
  uint64_t seed = 1;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      seed = std::stoull(argv[++i]);
    } else if (arg == "--sizes" && i + 1 < argc) {
      sizes.clear();
      std::string list = argv[++i];
      size_t pos = 0;
      while (pos < list.size()) {
        size_t comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        sizes.push_back(std::stoi(list.substr(pos, comma - pos)));
        pos = comma + 1;
      }
    } else {
      std::cerr << "usage: tabprot-kernel-bench [--sizes n1,n2,...] [--seed s]\n";
      return 2;
    }
  }

#ifdef _OPENMP
  std::cout << "# threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "# threads: 1 (OpenMP disabled)\n";
#endif
  std::cout << "n,m,serial_ms,parallel_ms,speedup\n";
  for (int n : sizes) {
    int side = n / 2;
    MixedGraph g =
        with_mixed_orientations(generate_suppressed_graph(side, n - side, 2 * n, seed), seed);

    auto t0 = std::chrono::steady_clock::now();
    auto serial = invariant_cells_serial(g);
    double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto parallel = invariant_cells(g);
    double parallel_ms = ms_since(t0);

    if (serial != parallel) throw std::logic_error("kernel results diverged");
    std::cout << n << "," << g.edges.size() << "," << serial_ms << "," << parallel_ms
              << "," << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0) << "\n";
  }
  return 0;
}
