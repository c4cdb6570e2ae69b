// Command-line front end: compute coherence measures of states stored as
// JSON files, sweep the Tsallis parameter, run the verification suites, and
// search for strong-monotonicity violations of the Tsallis-alpha coherence.
//
// Exit codes: 0 success, 1 verification hard-suite failure, 2 malformed
// state file or invalid arguments, 3 invariant violation (input is not a
// density matrix), 4 optimizer non-convergence (result still written).

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcoh/channels.hpp"
#include "qcoh/errors.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/states.hpp"
#include "qcoh/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitNotConverged = 4;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw qcoh::FileFormatError("cannot write " + out_path);
  out << text;
}

std::string sigma_field(const qcoh::DiagonalState& sigma) {
  std::string s;
  for (std::size_t i = 0; i < sigma.dim(); ++i) {
    if (i) s += ";";
    s += fmt_double(sigma[i]);
  }
  return s;
}

struct MeasureArgs {
  std::string name;
  double q = 0.5;
  bool q_given = false;
};

// Runs one named measure; the q parameter is validated per measure.
qcoh::MeasureReport run_measure(const qcoh::DensityMatrix& rho, const MeasureArgs& args,
                                const qcoh::OptimizerConfig& cfg) {
  if (args.name == "cq") {
    if (!args.q_given) throw qcoh::DomainError("measure cq needs --q");
    return qcoh::c_q(rho, args.q, cfg);
  }
  if (args.name == "c-half") return qcoh::c_half(rho, cfg);
  if (args.name == "cg") return qcoh::geometric_coherence(rho, cfg);
  if (args.name == "tsallis-alpha") {
    if (!args.q_given) throw qcoh::DomainError("measure tsallis-alpha needs --q");
    return qcoh::tsallis_alpha_coherence(rho, args.q, cfg);
  }
  // The baselines have no optimization step; report the dephased state as
  // the reference incoherent state.
  qcoh::MeasureReport rep;
  rep.optimal_sigma = qcoh::dephase(rho);
  rep.converged = true;
  if (args.name == "l1") {
    rep.value = qcoh::l1_coherence(rho);
  } else if (args.name == "rel-ent") {
    rep.value = qcoh::rel_entropy_coherence(rho);
  } else {
    throw qcoh::DomainError("unknown measure: " + args.name);
  }
  return rep;
}

int cmd_coherence(const std::string& state_path, const MeasureArgs& margs,
                  const qcoh::OptimizerConfig& cfg, const std::string& out_path,
                  const std::string& format) {
  const qcoh::DensityMatrix rho = qcoh::load_state_json(state_path);
  const qcoh::MeasureReport rep = run_measure(rho, margs, cfg);

  if (format == "csv") {
    std::string text = "# schema_version=1\n";
    text += "measure,q,value,converged,iterations,optimal_sigma\n";
    text += margs.name + "," + fmt_double(rep.q) + "," + fmt_double(rep.value) + "," +
            (rep.converged ? "true" : "false") + "," + std::to_string(rep.iterations) +
            ",\"" + sigma_field(rep.optimal_sigma) + "\"\n";
    write_text(text, out_path);
  } else {
    json rec{{"schema_version", 1},
             {"command", "coherence"},
             {"state", state_path},
             {"measure", margs.name},
             {"q", rep.q},
             {"value", rep.value},
             {"converged", rep.converged},
             {"iterations", rep.iterations},
             {"optimal_sigma", rep.optimal_sigma.probs()}};
    write_text(rec.dump(2) + "\n", out_path);
  }
  return rep.converged ? kExitOk : kExitNotConverged;
}

struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
};

SweepRange parse_sweep(const std::string& spec) {
  SweepRange r;
  char extra = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &r.start, &r.stop, &r.steps, &extra) != 3 ||
      r.steps < 1)
    throw qcoh::DomainError("--sweep expects START:STOP:STEPS with STEPS >= 1");
  return r;
}

int cmd_sweep(const std::string& state_path, const MeasureArgs& margs,
              const SweepRange& range, const qcoh::OptimizerConfig& cfg,
              const std::string& out_path, const std::string& format) {
  if (margs.name != "cq" && margs.name != "tsallis-alpha")
    throw qcoh::DomainError("sweep supports measures with a q parameter: cq, tsallis-alpha");

  std::vector<double> qs(range.steps);
  for (int i = 0; i < range.steps; ++i)
    qs[i] = range.steps == 1
                ? range.start
                : range.start + (range.stop - range.start) * i / (range.steps - 1);
  for (double q : qs) {
    if (margs.name == "cq")
      qcoh::EntropyParam::for_measure(q);
    else
      qcoh::EntropyParam::for_alpha_entropy(q);
  }

  const qcoh::DensityMatrix rho = qcoh::load_state_json(state_path);
  bool all_converged = true;
  std::vector<qcoh::MeasureReport> rows;
  rows.reserve(qs.size());
  for (double q : qs) {
    MeasureArgs m = margs;
    m.q = q;
    m.q_given = true;
    rows.push_back(run_measure(rho, m, cfg));
    all_converged = all_converged && rows.back().converged;
    // Re-validate every emitted row against the closed-form bound.
    const double v = rows.back().value;
    if (v < 0.0 || (margs.name == "cq" && v > qcoh::c_q_max(rho.dim(), q) + 1e-8))
      throw qcoh::InternalConsistencyError("sweep value " + std::to_string(v) +
                                           " escapes [0, c_q_max] at q = " +
                                           std::to_string(q));
  }

  if (format == "json") {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"q", r.q},
                     {"value", r.value},
                     {"converged", r.converged},
                     {"iterations", r.iterations}});
    json rec{{"schema_version", 1},
             {"command", "sweep"},
             {"state", state_path},
             {"measure", margs.name},
             {"rows", std::move(arr)}};
    write_text(rec.dump(2) + "\n", out_path);
  } else {
    std::string text = "# schema_version=1\n";
    text += "q,value,converged,iterations\n";
    for (const auto& r : rows)
      text += fmt_double(r.q) + "," + fmt_double(r.value) + "," +
              (r.converged ? "true" : "false") + "," + std::to_string(r.iterations) + "\n";
    write_text(text, out_path);
  }
  return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_verify(const qcoh::VerifyOptions& opts, const std::string& out_path) {
  const qcoh::VerificationReport report = qcoh::run_verification(opts);
  for (const auto& s : report.suites) {
    std::fprintf(stderr, "%-34s %6zu/%-6zu %s  worst margin %.3e\n", s.name.c_str(),
                 s.passes, s.trials,
                 s.hard ? (s.passed ? "pass" : "FAIL") : "census", s.worst_margin);
  }
  write_text(qcoh::report_to_json(report).dump(2) + "\n", out_path);
  return report.overall_pass ? kExitOk : kExitVerifyFailed;
}

int cmd_search_violation(const MeasureArgs& margs, std::size_t d, std::size_t trials,
                         std::uint64_t seed, const qcoh::OptimizerConfig& cfg,
                         const std::string& out_path) {
  if (margs.name != "tsallis-alpha")
    throw qcoh::DomainError(
        "search-violation applies to measure tsallis-alpha only; C_q satisfies strong "
        "monotonicity for q in (0,1)");
  if (!margs.q_given) throw qcoh::DomainError("search-violation needs --q");
  qcoh::EntropyParam::for_alpha_entropy(margs.q);

  const auto hit = qcoh::find_tsallis_alpha_violation(d, margs.q, trials, seed, cfg);
  json rec{{"schema_version", 1},
           {"command", "search-violation"},
           {"measure", margs.name},
           {"q", margs.q},
           {"d", d},
           {"trials", trials},
           {"seed", seed},
           {"found", hit.has_value()}};
  if (hit) {
    json kraus = json::array();
    for (const auto& k : hit->channel.operators()) {
      json re = json::array(), im = json::array();
      for (std::size_t i = 0; i < k.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (std::size_t j = 0; j < k.cols(); ++j) {
          rrow.push_back(k(i, j).real());
          irow.push_back(k(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
      }
      kraus.push_back({{"re", std::move(re)}, {"im", std::move(im)}});
    }
    rec["counterexample"] = {{"trial", hit->trial},
                             {"average", hit->average},
                             {"total", hit->total},
                             {"state", json::parse(qcoh::state_to_json(hit->rho))},
                             {"kraus", std::move(kraus)}};
  } else {
    rec["message"] = "not found in " + std::to_string(trials) + " trials";
  }
  write_text(rec.dump(2) + "\n", out_path);
  return kExitOk;
}

int cmd_max_coherent(std::size_t d, std::optional<double> q, const std::string& out_path) {
  const qcoh::DensityMatrix rho = qcoh::maximally_coherent(d);
  if (q) {
    qcoh::EntropyParam::for_measure(*q);
    std::fprintf(stderr, "closed-form C_q(rho_%zu) at q=%s: %s\n", d,
                 fmt_double(*q).c_str(), fmt_double(qcoh::c_q_max(d, *q)).c_str());
  }
  write_text(qcoh::state_to_json(rho) + "\n", out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence quantifiers from the Tsallis relative operator entropy"};
  app.require_subcommand(1);

  std::string state_path, out_path;
  std::string format = "json";
  MeasureArgs margs;
  std::string sweep_spec;
  std::size_t dim = 2;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  double tol_override = 0.0;
  bool serial = false;
  bool inject_defect = false;
  std::vector<std::size_t> verify_dims;
  qcoh::OptimizerConfig cfg;

  const auto add_common = [&](CLI::App* cmd, bool with_state) {
    if (with_state)
      cmd->add_option("--state", state_path, "state JSON file {dim, re, im}")->required();
    cmd->add_option("--out", out_path, "output path (default: stdout)");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--tol", tol_override, "optimizer convergence tolerance override");
    cmd->add_option("--seed", seed, "seed for randomized steps (default 0)");
  };

  CLI::App* coherence = app.add_subcommand("coherence", "compute one coherence measure");
  add_common(coherence, true);
  coherence->add_option("--measure", margs.name, "cq|c-half|cg|tsallis-alpha|l1|rel-ent")
      ->required();
  coherence->add_option("--q", margs.q, "entropy parameter");

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate a measure over a q range");
  add_common(sweep, true);
  sweep->add_option("--measure", margs.name, "cq|tsallis-alpha")->required();
  sweep->add_option("--sweep", sweep_spec, "START:STOP:STEPS")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the full verification suites");
  add_common(verify, false);
  verify->add_option("--trials", trials, "Monte-Carlo budget (200 = normative size)");
  verify->add_option("--d", verify_dims, "dimensions to sample (default 2 3)");
  verify->add_flag("--serial", serial, "run trials serially instead of OpenMP");
  verify->add_flag("--inject-defect", inject_defect,
                   "negative control: corrupt one channel so verification must fail")
      ->group("");  // hidden test hook

  CLI::App* search = app.add_subcommand("search-violation",
                                        "look for strong-monotonicity violations");
  add_common(search, false);
  search->add_option("--measure", margs.name, "must be tsallis-alpha")->required();
  search->add_option("--q", margs.q, "entropy parameter");
  search->add_option("--d", dim, "state dimension");
  search->add_option("--trials", trials, "number of seeded trials");

  CLI::App* maxcoh = app.add_subcommand("max-coherent",
                                        "emit the maximally coherent state as a state file");
  add_common(maxcoh, false);
  maxcoh->add_option("--d", dim, "dimension")->required();
  maxcoh->add_option("--q", margs.q, "also print the closed-form C_q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  margs.q_given = coherence->count("--q") || search->count("--q") || maxcoh->count("--q");
  if (tol_override > 0.0) cfg.conv_tol = tol_override;
  cfg.seed = seed;
  // Sweeps are tables; they default to CSV unless a format was requested.
  if (sweep->parsed() && sweep->count("--format") == 0) format = "csv";

  try {
    if (coherence->parsed())
      return cmd_coherence(state_path, margs, cfg, out_path, format);
    if (sweep->parsed())
      return cmd_sweep(state_path, margs, parse_sweep(sweep_spec), cfg, out_path, format);
    if (verify->parsed()) {
      qcoh::VerifyOptions opts;
      opts.base_trials = trials;
      if (!verify_dims.empty()) opts.dims = verify_dims;
      opts.seed = seed;
      opts.mode = serial ? qcoh::Execution::serial : qcoh::Execution::parallel;
      opts.optimizer = cfg;
      opts.inject_defect = inject_defect;
      return cmd_verify(opts, out_path);
    }
    if (search->parsed())
      return cmd_search_violation(margs, dim, trials, seed, cfg, out_path);
    if (maxcoh->parsed())
      return cmd_max_coherent(dim,
                              maxcoh->count("--q") ? std::optional<double>(margs.q)
                                                   : std::nullopt,
                              out_path);
  } catch (const qcoh::FileFormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  } catch (const qcoh::DomainError& e) {
    // Argument-range problems (q out of range, bad measure name) land here.
    std::fprintf(stderr, "error: q out of range or invalid argument: %s\n", e.what());
    return kExitBadInput;
  } catch (const qcoh::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvariant;
  }
  return kExitBadInput;
}
