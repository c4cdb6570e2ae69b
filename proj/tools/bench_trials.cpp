// Benchmark of the Monte-Carlo trial runner: OpenMP path vs the serial
// reference path on a Lemma-1 style workload, with a bitwise equality check
// between the two (per-trial RNG streams make them identical by design).

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qcoh/entropy.hpp"
#include "qcoh/linalg.hpp"
#include "qcoh/states.hpp"
#include "qcoh/trial_runner.hpp"

using namespace qcoh;

namespace {

double lemma1_margin(std::size_t i, Rng& rng) {
  const std::size_t d = 2 + i % 3;
  const DensityMatrix rho = random_density(d, d, rng);
  const DensityMatrix sigma = random_density(d, d, rng);
  double margin = 1e300;
  for (double q : {0.2, 0.5, 0.8}) {
    const HermitianMatrix t = t_q_operator(rho.hermitian(), sigma.hermitian(), q);
    const HermitianMatrix sigma_inv = spectral_pow(sigma.hermitian(), -1.0);
    const HermitianMatrix low = HermitianMatrix::symmetrized(
        rho.hermitian().matrix() -
            rho.hermitian().matrix() * sigma_inv.matrix() * rho.hermitian().matrix(),
        1e-9);
    const HermitianMatrix high = sigma.hermitian() - rho.hermitian();
    margin = std::min(margin, psd_order_leq(low, t, 1e-9).min_eigenvalue);
    margin = std::min(margin, psd_order_leq(t, high, 1e-9).min_eigenvalue);
  }
  return margin;
}

double timed_ms(std::size_t trials, Execution mode, std::vector<double>& out) {
  const auto t0 = std::chrono::high_resolution_clock::now();
  out = run_trials<double>(trials, lemma1_margin, /*seed=*/42, mode);
  const auto t1 = std::chrono::high_resolution_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t trials = 2000;
  if (argc > 1) trials = std::strtoull(argv[1], nullptr, 10);

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both runs are serial\n");
#endif
  std::printf("workload: %zu Lemma-1 sandwich trials at d in {2,3,4}\n", trials);

  std::vector<double> serial_out, parallel_out;
  // Warm-up pass so page faults and allocator growth hit neither timing.
  timed_ms(std::min<std::size_t>(trials, 64), Execution::serial, serial_out);

  const double t_serial = timed_ms(trials, Execution::serial, serial_out);
  const double t_parallel = timed_ms(trials, Execution::parallel, parallel_out);

  bool identical = serial_out.size() == parallel_out.size();
  double worst = 0.0;
  for (std::size_t i = 0; identical && i < serial_out.size(); ++i) {
    if (serial_out[i] != parallel_out[i]) identical = false;
    worst = std::min(worst, serial_out[i]);
  }

  std::printf("serial reference: %10.1f ms\n", t_serial);
  std::printf("openmp parallel:  %10.1f ms\n", t_parallel);
  std::printf("speedup:          %10.2fx\n", t_serial / t_parallel);
  std::printf("results bitwise identical: %s\n", identical ? "yes" : "NO");
  std::printf("worst sandwich margin: %.3e\n", worst);
  return identical ? 0 : 1;
}
