// Compares the serial reference kernels against the OpenMP ones on the
// largest instances the library builds, checking that the reports agree.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qdecomp/constructions.hpp"

using namespace qdecomp;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_partition(const std::string& name, const Decomposition& d, int reps) {
  double serial = 0, parallel = 0;
  bool agree = true;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    VerifyReport rs = verify_partition_serial(d);
    serial += seconds(t0);
    t0 = std::chrono::steady_clock::now();
    VerifyReport rp = verify_partition(d, {.parallel = true});
    parallel += seconds(t0);
    agree = agree && rs.ok == rp.ok && rs.failures.size() == rp.failures.size();
  }
  std::printf("%-34s %8zu pieces  serial %8.2f ms  omp %8.2f ms  x%.2f  %s\n", name.c_str(),
              d.pieces.size(), 1e3 * serial / reps, 1e3 * parallel / reps,
              parallel > 0 ? serial / parallel : 0.0, agree ? "match" : "MISMATCH");
}

void bench_orbit(const std::string& name, const EdgeSet& base, const Subgroup& g, int reps) {
  double serial = 0, parallel = 0;
  bool agree = true;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    auto s = orbit_translates_serial(g, base);
    serial += seconds(t0);
    t0 = std::chrono::steady_clock::now();
    auto p = orbit_translates(g, base, true);
    parallel += seconds(t0);
    agree = agree && s == p;
  }
  std::printf("%-34s %8zu translates  serial %6.2f ms  omp %6.2f ms  x%.2f  %s\n", name.c_str(),
              g.order(), 1e3 * serial / reps, 1e3 * parallel / reps,
              parallel > 0 ? serial / parallel : 0.0, agree ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  bool long_run = false;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--long") long_run = true;

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run the same serial code\n");
#endif

  bench_partition("p4 pieces of Q_8", p4_decomposition(8), 5);
  bench_partition("p4 pieces of Q_10", p4_decomposition(10), 3);
  bench_partition("Q_2 subcubes of Q_8", subcube_decomposition(2, 8), 5);
  bench_partition("Hamiltonian cycles of Q_8", ringel_hamiltonian_decomposition(3), 5);

  FundamentalHamiltonian f3 = fundamental_hamiltonian(3);
  bench_orbit("Q_8 fundamental cycle orbit", f3.cycle.edge_set(), f3.group, 10);

  if (long_run) {
    FundamentalHamiltonian f4 = fundamental_hamiltonian(4);
    bench_orbit("Q_16 fundamental cycle orbit", f4.cycle.edge_set(), f4.group, 3);
    Decomposition d =
        orbit_decomposition(f4.cycle.edge_set(), f4.group, PieceShape::cycle(1 << 16),
                            "fundamental-hamiltonian(Q16)");
    bench_partition("Q_16 cycle pieces", d, 3);
  }
  return 0;
}
