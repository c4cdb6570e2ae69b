// Acceptance suite: runs every verification suite at its normative size
// (base budget 200, dimensions {2, 3}) and reports one line per criterion.
// Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "qcoh/verify.hpp"

using namespace qcoh;

namespace {

struct Criterion {
  int number;
  std::string description;
  std::vector<std::string> suites;  // all must pass
};

const std::vector<Criterion> kCriteria = {
    {1, "maximal coherence closed form, d in 2..6, q in 0.1..0.9, 1e-6",
     {"maximal_coherence_closed_form"}},
    {2, "pure-qubit C_half = 2 C_g (1e-6); mixed full-rank strictly above",
     {"pure_qubit_chalf_equals_2cg", "mixed_qubit_chalf_above_2cg"}},
    {3, "pure-qubit fidelity closed form, 1e-9",
     {"pure_qubit_fidelity_formula"}},
    {4, "Lemma 1 sandwich, 1000 full-rank pairs, margins -1e-9",
     {"lemma1_sandwich"}},
    {5, "deformed-log scalar sandwich, 1e4 samples, 1e-12",
     {"deformed_log_sandwich"}},
    {6, "axioms C1-C5 over 200 trials per dimension",
     {"c1_faithfulness", "c2_monotonicity", "c3_strong_monotonicity", "c4_convexity",
      "c5_block_additivity"}},
    {7, "ALT inequality f_half^2 <= F, 1000 pairs, 1e-10",
     {"alt_inequality"}},
    {8, "optimizer matches the d=2 grid oracle within 1e-5, 50 states per measure",
     {"optimizer_grid_oracle_d2"}},
    {9, "Hoelder vector inequality, 1e4 samples, 1e-12",
     {"hoelder_step"}},
    {10, "T_q property suite (I)-(V) plus unital trace inequality, 1e-9",
     {"tq_homogeneity", "tq_monotonicity", "tq_superadditivity", "tq_joint_concavity",
      "tq_unitary_invariance", "tq_unital_trace_inequality"}},
    {11, "Lemma 2/3: forced channels hard-asserted, CPTP census reported",
     {"lemma2_forced_channels", "lemma3_forced_channels"}},
};

}  // namespace

int main() {
  VerifyOptions opts;  // 200 trials, dims {2,3}, seed 0: the normative sizes
  const auto t0 = std::chrono::steady_clock::now();
  const VerificationReport report = run_verification(opts);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::map<std::string, const SuiteResult*> by_name;
  for (const auto& s : report.suites) by_name[s.name] = &s;

  bool all_pass = true;
  for (const auto& crit : kCriteria) {
    bool pass = true;
    double worst = std::numeric_limits<double>::infinity();
    std::size_t trials = 0;
    for (const auto& name : crit.suites) {
      const SuiteResult* s = by_name.at(name);
      pass = pass && s->passed;
      worst = std::min(worst, s->worst_margin);
      trials += s->trials;
    }
    all_pass = all_pass && pass;
    std::printf("[%s] criterion %2d: %s (trials %zu, worst margin %.3e)\n",
                pass ? "PASS" : "FAIL", crit.number, crit.description.c_str(), trials,
                worst);
  }

  // Census suites attached to criterion 11: satisfaction rates, not gates.
  for (const char* name : {"lemma2_census_cptp", "lemma3_census_incoherent"}) {
    const SuiteResult* s = by_name.at(name);
    std::printf("[INFO] %s: %zu/%zu satisfied (worst margin %.3e)\n", name, s->passes,
                s->trials, s->worst_margin);
  }
  std::printf("%s in %.1f s\n", all_pass ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", elapsed);
  return all_pass ? 0 : 1;
}
