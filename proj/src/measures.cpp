#include "qcoh/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcoh/errors.hpp"
#include "qcoh/rng.hpp"

namespace qcoh {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Clamp tiny negative results of an exact-zero quantity to zero (also
// normalizes IEEE negative zero).
double clamp_rounding(double value) {
  return (value <= 0.0 && value > -1e-10) ? 0.0 : value;
}

std::vector<double> floored(std::vector<double> p, double floor) {
  double sum = 0.0;
  for (auto& pi : p) {
    pi = std::max(pi, floor);
    sum += pi;
  }
  for (auto& pi : p) pi /= sum;
  return p;
}

struct AscentResult {
  std::vector<double> probs;
  double value = kNegInf;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
};

// Component-wise finite differences; the down-shift is clamped at zero so the
// evaluation point stays nonnegative.
std::vector<double> fd_gradient(const SimplexObjective& obj, const std::vector<double>& p,
                                double fp, double h) {
  const std::size_t n = p.size();
  std::vector<double> g(n, 0.0);
  std::vector<double> work = p;
  for (std::size_t i = 0; i < n; ++i) {
    const double up = p[i] + h;
    const double dn = std::max(p[i] - h, 0.0);
    work[i] = up;
    const double f_up = obj(work);
    work[i] = dn;
    const double f_dn = obj(work);
    work[i] = p[i];
    if (std::isfinite(f_up) && std::isfinite(f_dn)) {
      g[i] = (f_up - f_dn) / (up - dn);
    } else if (std::isfinite(f_up)) {
      g[i] = (f_up - fp) / h;
    } else if (std::isfinite(f_dn) && p[i] > dn) {
      g[i] = (fp - f_dn) / (p[i] - dn);
    }
  }
  return g;
}

AscentResult ascend(const SimplexObjective& obj, std::vector<double> p,
                    const OptimizerConfig& cfg) {
  AscentResult res;
  const std::size_t n = p.size();
  p = project_to_simplex(std::move(p));
  double fp = obj(p);
  // Infeasible start (e.g. boundary point of a q > 1 objective): pull toward
  // the barycenter until the objective is finite.
  for (int tries = 0; !std::isfinite(fp) && tries < 40; ++tries) {
    for (auto& pi : p) pi = 0.5 * pi + 0.5 / static_cast<double>(n);
    fp = obj(p);
  }
  if (!std::isfinite(fp)) return res;

  res.history.push_back(fp);
  std::vector<double> cand(n);
  std::vector<double> dir(n);
  double step_memory[2] = {1.0, 1.0};
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    res.iterations = iter;
    const std::vector<double> g = fd_gradient(obj, p, fp, cfg.grad_step);

    // For a concave objective the simplex duality gap max_i g_i - <g, p>
    // bounds the remaining suboptimality, so it is the stopping criterion.
    double g_max = g[0];
    double g_dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      g_max = std::max(g_max, g[i]);
      g_dot += p[i] * g[i];
    }
    if (g_max - g_dot <= cfg.conv_tol) {
      res.converged = true;
      break;
    }

    double fc = kNegInf;
    bool improved = false;
    // Two ascent directions, each with a backtracking line search. The
    // Fisher-preconditioned direction p o (g - <g,p>) equalizes the wildly
    // different curvature scales near the simplex boundary (x^{1-q} terms);
    // the raw gradient is kept as a fallback since only it can revive a
    // coordinate that sits at zero. Successful step sizes are remembered per
    // direction and allowed to grow, floored at unit step so one cramped
    // iteration cannot stall all later ones.
    for (int which = 0; which < 2 && !improved; ++which) {
      if (which == 0) {
        double gbar = 0.0;
        for (std::size_t i = 0; i < n; ++i) gbar += p[i] * g[i];
        for (std::size_t i = 0; i < n; ++i) dir[i] = p[i] * (g[i] - gbar);
      } else {
        dir = g;
      }
      double step = std::clamp(4.0 * step_memory[which], 1.0, 1e6);
      for (; step >= 1e-14; step *= 0.5) {
        for (std::size_t i = 0; i < n; ++i) cand[i] = p[i] + step * dir[i];
        cand = project_to_simplex(std::move(cand));
        fc = obj(cand);
        if (std::isfinite(fc) && fc > fp) {
          improved = true;
          break;
        }
      }
      if (improved) {
        // The largest improving step usually overshoots the ridge top and
        // oscillates; refine by halving while the section keeps rising.
        std::vector<double> probe(n);
        for (double s = step * 0.5; s >= 1e-14; s *= 0.5) {
          for (std::size_t i = 0; i < n; ++i) probe[i] = p[i] + s * dir[i];
          probe = project_to_simplex(std::move(probe));
          const double fprobe = obj(probe);
          if (!std::isfinite(fprobe) || fprobe <= fc) break;
          fc = fprobe;
          cand = probe;
          step = s;
        }
        step_memory[which] = step;
      }
    }
    if (!improved) {
      // No ascent at any step size in either direction: numerically optimal.
      res.converged = true;
      break;
    }
    p = cand;
    fp = fc;
    res.history.push_back(fp);
  }
  res.probs = std::move(p);
  res.value = fp;
  return res;
}

}  // namespace

std::vector<double> project_to_simplex(std::vector<double> x) {
  // Sort-based Euclidean projection: shift everything down by the largest
  // theta for which the positive part still sums to one.
  const std::size_t n = x.size();
  std::vector<double> u = x;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double csum = 0.0;
  double csum_at_pivot = u[0];
  std::size_t pivot = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    csum += u[j - 1];
    if (u[j - 1] - (csum - 1.0) / static_cast<double>(j) > 0.0) {
      pivot = j;
      csum_at_pivot = csum;
    }
  }
  const double theta = (csum_at_pivot - 1.0) / static_cast<double>(pivot);
  for (auto& xi : x) xi = std::max(xi - theta, 0.0);
  // Normalize away the last few ulps.
  double sum = 0.0;
  for (double xi : x) sum += xi;
  if (sum > 0.0)
    for (auto& xi : x) xi /= sum;
  return x;
}

SimplexOptimum optimize_over_simplex(const SimplexObjective& objective, std::size_t dim,
                                     const OptimizerConfig& cfg,
                                     const std::vector<std::vector<double>>& extra_starts) {
  if (dim == 0) throw DomainError("optimize_over_simplex: dimension must be positive");
  if (cfg.restarts < 1 || cfg.max_iters < 1 || cfg.grad_step <= 0.0 ||
      cfg.conv_tol <= 0.0 || cfg.prob_floor <= 0.0 || cfg.grid_points < 2)
    throw DomainError("optimize_over_simplex: optimizer settings must be positive");
  if (cfg.prob_floor * static_cast<double>(dim) >= 1.0)
    throw DomainError("optimize_over_simplex: prob_floor too large for this dimension");

  std::vector<std::vector<double>> starts;
  starts.push_back(std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
  for (const auto& s : extra_starts) {
    if (s.size() != dim)
      throw DimensionError("optimize_over_simplex: extra start has wrong length");
    starts.push_back(s);
  }
  Rng rng(cfg.seed);
  while (starts.size() < static_cast<std::size_t>(std::max(cfg.restarts, 1)))
    starts.push_back(rng.dirichlet(dim));

  SimplexOptimum best;
  best.value = kNegInf;
  int total_iters = 0;
  bool any_finite = false;
  for (const auto& start : starts) {
    AscentResult r = ascend(objective, start, cfg);
    total_iters += r.iterations;
    if (!std::isfinite(r.value)) continue;
    if (!any_finite || r.value > best.value) {
      any_finite = true;
      best.probs = r.probs;
      best.value = r.value;
      best.converged = r.converged;
      best.history = std::move(r.history);
    }
  }
  best.iterations = total_iters;
  if (!any_finite)
    throw DomainError("optimize_over_simplex: objective infeasible on every start");

  best.probs = floored(std::move(best.probs), cfg.prob_floor);
  const double refreshed = objective(best.probs);
  if (std::isfinite(refreshed)) best.value = refreshed;
  return best;
}

SimplexOptimum grid_scan_d2(const SimplexObjective& objective, int grid_points) {
  if (grid_points < 2) throw DomainError("grid_scan_d2: need at least 2 points");
  SimplexOptimum best;
  best.value = kNegInf;
  std::vector<double> p(2);
  for (int i = 0; i < grid_points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(grid_points - 1);
    p[0] = t;
    p[1] = 1.0 - t;
    const double v = objective(p);
    if (std::isfinite(v) && v > best.value) {
      best.value = v;
      best.probs = p;
    }
  }
  best.converged = true;
  return best;
}

namespace {

// Shared tail: assemble a MeasureReport from a simplex optimum.
MeasureReport make_report(SimplexOptimum opt, double value, double q) {
  MeasureReport rep;
  rep.value = clamp_rounding(value);
  rep.optimal_sigma = DiagonalState::from(std::move(opt.probs));
  rep.q = q;
  rep.iterations = opt.iterations;
  rep.converged = opt.converged;
  rep.objective_history = std::move(opt.history);
  return rep;
}

SimplexObjective guard(std::function<double(const std::vector<double>&)> raw) {
  return [raw = std::move(raw)](const std::vector<double>& p) -> double {
    try {
      return raw(p);
    } catch (const DomainError&) {
      return kNegInf;
    }
  };
}

}  // namespace

MeasureReport c_q(const DensityMatrix& rho, double q, const OptimizerConfig& cfg,
                  const Tolerances& tol) {
  EntropyParam::for_measure(q);
  FqEvaluator fq(rho, q, tol);
  SimplexObjective obj = guard([&fq](const std::vector<double>& p) { return fq(p); });
  SimplexOptimum opt =
      optimize_over_simplex(obj, rho.dim(), cfg, {dephase(rho).probs()});
  const double value = (std::pow(opt.value, 1.0 / q) - 1.0) / (q - 1.0);
  return make_report(std::move(opt), value, q);
}

double c_q_max(std::size_t d, double q) {
  EntropyParam::for_measure(q);
  if (d < 1) throw DomainError("c_q_max: d must be positive");
  return (std::pow(static_cast<double>(d), (q - 1.0) / q) - 1.0) / (q - 1.0);
}

MeasureReport c_half(const DensityMatrix& rho, const OptimizerConfig& cfg,
                     const Tolerances& tol) {
  FqEvaluator fq(rho, 0.5, tol);
  SimplexObjective obj = guard([&fq](const std::vector<double>& p) { return fq(p); });
  SimplexOptimum opt =
      optimize_over_simplex(obj, rho.dim(), cfg, {dephase(rho).probs()});
  const double value = 2.0 * (1.0 - opt.value * opt.value);
  return make_report(std::move(opt), value, 0.5);
}

MeasureReport geometric_coherence(const DensityMatrix& rho, const OptimizerConfig& cfg,
                                  const Tolerances& tol) {
  FidelityEvaluator fid(rho, tol);
  SimplexObjective obj = guard([&fid](const std::vector<double>& p) { return fid(p); });
  SimplexOptimum opt =
      optimize_over_simplex(obj, rho.dim(), cfg, {dephase(rho).probs()});
  const double value = 1.0 - opt.value;
  return make_report(std::move(opt), value, 0.5);
}

MeasureReport tsallis_alpha_coherence(const DensityMatrix& rho, double q,
                                      const OptimizerConfig& cfg, const Tolerances& tol) {
  EntropyParam::for_alpha_entropy(q);
  AlphaEvaluator ft(rho, q, tol);
  // 1/(q-1) changes sign at q = 1: maximize f~ below it, minimize above.
  const double orientation = q < 1.0 ? 1.0 : -1.0;
  SimplexObjective obj = guard([&ft, orientation](const std::vector<double>& p) {
    const double v = ft(p);
    if (!std::isfinite(v)) return kNegInf;
    return orientation * v;
  });
  SimplexOptimum opt =
      optimize_over_simplex(obj, rho.dim(), cfg, {dephase(rho).probs()});
  const double f_star = orientation * opt.value;
  const double value = (f_star - 1.0) / (q - 1.0);
  return make_report(std::move(opt), value, q);
}

double l1_coherence(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) sum += std::abs(rho(i, j));
  return sum;
}

namespace {

double von_neumann_entropy_base2(const std::vector<double>& eigenvalues) {
  double s = 0.0;
  for (double lam : eigenvalues)
    if (lam > 0.0) s -= lam * std::log2(lam);
  return s;
}

}  // namespace

double rel_entropy_coherence(const DensityMatrix& rho, const Tolerances& tol) {
  (void)tol;
  Spectrum spec = eigh(rho.hermitian());
  std::vector<double> diag(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) diag[i] = std::max(rho(i, i).real(), 0.0);
  std::vector<double> lam = spec.eigenvalues;
  for (auto& l : lam) l = std::max(l, 0.0);
  return clamp_rounding(von_neumann_entropy_base2(diag) - von_neumann_entropy_base2(lam));
}

}  // namespace qcoh
