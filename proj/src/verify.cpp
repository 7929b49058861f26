#include "curtangent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "curtangent/calculus.hpp"
#include "curtangent/cur_map.hpp"
#include "curtangent/dense_core.hpp"
#include "curtangent/experiment.hpp"
#include "curtangent/perturb.hpp"
#include "curtangent/tangent.hpp"

namespace curtangent {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                    double floor) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (y[i] > floor && x[i] > 0.0) {
      lx.push_back(std::log10(x[i]));
      ly.push_back(std::log10(y[i]));
    }
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

double rounding_floor(double scale) { return 1e3 * 0x1p-52 * scale; }

namespace {

constexpr std::uint64_t kInstanceStride = 1000;

ExperimentConfig config_for(std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.seed = seed;
  return with_defaults(cfg);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// Rank-5 10x10 base point with gamma = sigma_5 = 10^{-1}, plus its compact
// factors, for the intersection-scale checks.
struct SmallRankProblem {
  Matrix W;
  CompactSVD svd;
  double gamma;
};

SmallRankProblem small_rank_problem(std::uint64_t seed) {
  const int d = 10, r = 5;
  const Matrix Q = orthonormalize_gaussian(d, r, seed);
  const Matrix Z = orthonormalize_gaussian(d, r, seed + 1);
  Vector sig(r);
  for (int i = 0; i < r; ++i) sig(i) = std::pow(10.0, -i / 4.0);
  CompactSVD svd{Q, sig, Z};
  Matrix W = svd.reconstruct();
  return SmallRankProblem{std::move(W), std::move(svd), sig(r - 1)};
}

}  // namespace

CheckResult check_example41() {
  const Matrix M = Matrix::Constant(3, 3, 1.0 / 3.0);
  const SelectionPair sel = make_selection({0}, {0}, 3, 3);
  Matrix E = Matrix::Zero(3, 3);
  E(2, 2) = 1.0;

  bool ok = true;
  std::string detail;
  for (double eps : {1e-3, 2.0 / 3.0, 10.0}) {
    const double err = (cur_rank_truncated(M + eps * E, sel, 1) - M).norm();
    if (err > 1e-14) {
      ok = false;
      detail += "cur error " + fmt(err) + " at eps=" + fmt(eps) + "; ";
    }
  }

  const Matrix A = M + (2.0 / 3.0) * E;
  const Matrix A1 = truncate_rank(A, 1);
  const double svd_err = (A1 - M).norm();
  const double expected = std::sqrt(33.0) / 9.0;
  if (std::abs(svd_err - expected) > 1e-12) {
    ok = false;
    detail += "svd error " + fmt(svd_err) + " != sqrt(33)/9; ";
  }

  Matrix golden(3, 3);
  golden << 2.0 / 9, 2.0 / 9, 4.0 / 9,
            2.0 / 9, 2.0 / 9, 4.0 / 9,
            4.0 / 9, 4.0 / 9, 8.0 / 9;
  if ((A1 - golden).cwiseAbs().maxCoeff() > 1e-12) {
    ok = false;
    detail += "truncated entries off golden; ";
  }
  return CheckResult{"example-golden-values", ok,
                     ok ? "all golden values match" : detail};
}

CheckResult check_exactness(std::uint64_t seed, int instances) {
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    const TestProblem prob =
        build_test_problem(config_for(seed + kInstanceStride * i));
    const double rel = (cur_rank_truncated(prob.M, prob.sel, prob.svd.rank()) -
                        prob.M).norm() / prob.M.norm();
    worst = std::max(worst, rel);
  }
  const bool ok = worst <= 1e-11;
  return CheckResult{"cur-exactness", ok,
                     "worst relative error " + fmt(worst) + " over " +
                         std::to_string(instances) + " instances"};
}

CheckResult check_projector_properties(std::uint64_t seed, int instances) {
  double worst = 0.0;
  std::string failure;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t base = seed + kInstanceStride * i;
    const TestProblem prob = build_test_problem(config_for(base));
    const int m = prob.sel.m, n = prob.sel.n, r = prob.svd.rank();

    const Matrix E = generic_perturbation(m, n, base + 500);
    const Matrix IE = oblique_tangent_project(prob.tp, E);
    const double idem = (oblique_tangent_project(prob.tp, IE) - IE).norm();

    Matrix Et = prob.svd.left * gaussian_matrix(n, r, base + 501).transpose() +
                gaussian_matrix(m, r, base + 502) * prob.svd.right.transpose();
    Et /= Et.norm();
    const double fixed = (oblique_tangent_project(prob.tp, Et) - Et).norm();

    const double range = normal_project(prob.svd, IE).norm();

    const Matrix Ek = invisible_perturbation(prob.sel, base + 503);
    const double kernel = oblique_tangent_project(prob.tp, Ek).norm();

    const double inst_worst = std::max({idem, fixed, range, kernel});
    if (inst_worst > worst) {
      worst = inst_worst;
      failure = "instance " + std::to_string(i) + ": idem=" + fmt(idem) +
                " fixed=" + fmt(fixed) + " range=" + fmt(range) +
                " kernel=" + fmt(kernel);
    }
  }
  const bool ok = worst <= 1e-10;
  return CheckResult{"oblique-projector-properties", ok,
                     "worst residual " + fmt(worst) + " (" + failure + ")"};
}

CheckResult check_derivative_slope(std::uint64_t seed, int instances) {
  const std::vector<double> eps_grid = log_grid(1e-6, 1e-3, 2);
  double worst_dev = 0.0;
  int skipped = 0;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t base = seed + kInstanceStride * i;
    const TestProblem prob = build_test_problem(config_for(base));
    const Matrix E = generic_perturbation(prob.sel.m, prob.sel.n, base + 500);
    const Matrix IE = oblique_tangent_project(prob.tp, E);
    std::vector<double> residuals;
    for (double eps : eps_grid) {
      residuals.push_back(
          (cur_rank_truncated(prob.M + eps * E, prob.sel, prob.svd.rank()) -
           prob.M - eps * IE).norm());
    }
    const double slope =
        loglog_slope(eps_grid, residuals, rounding_floor(prob.M.norm()));
    if (std::isnan(slope)) {
      ++skipped;
      continue;
    }
    worst_dev = std::max(worst_dev, std::abs(slope - 2.0));
  }
  const bool ok = worst_dev <= 0.1 && skipped == 0;
  return CheckResult{"cur-derivative-slope", ok,
                     "worst |slope - 2| = " + fmt(worst_dev) + ", " +
                         std::to_string(skipped) + " instances below floor"};
}

CheckResult check_fd_derivative_ratio(std::uint64_t seed, int instances) {
  double worst_lo = std::numeric_limits<double>::infinity();
  double worst_hi = 0.0;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t base = seed + kInstanceStride * i;
    const TestProblem prob = build_test_problem(config_for(base));
    const Matrix E = generic_perturbation(prob.sel.m, prob.sel.n, base + 500);
    const Matrix IE = cur_frechet_derivative(prob.tp, E);
    auto fd_err = [&](double t) {
      return (finite_difference_derivative(MapKind::cur_truncated, prob.M,
                                           prob.sel, prob.svd.rank(), E, t) -
              IE).norm();
    };
    const double ratio = fd_err(1e-3) / fd_err(1e-4);
    worst_lo = std::min(worst_lo, ratio);
    worst_hi = std::max(worst_hi, ratio);
  }
  const bool ok = worst_lo >= 100.0 / 3.0 && worst_hi <= 300.0;
  return CheckResult{"cur-fd-derivative-ratio", ok,
                     "step-error ratios in [" + fmt(worst_lo) + ", " +
                         fmt(worst_hi) + "], expected 100 within factor 3"};
}

CheckResult check_truncation_bound(std::uint64_t seed, int instances) {
  int failures = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t base = seed + kInstanceStride * i;
    const SmallRankProblem sp = small_rank_problem(base);
    Matrix E = gaussian_matrix(10, 10, base + 2);
    E *= 0.1 * sp.gamma / spectral_norm(E);
    const ExpansionReport rep = truncation_expansion(sp.W, E, 5, 0.2);
    if (!rep.satisfied) ++failures;
    worst_margin = std::min(worst_margin, rep.bound - rep.remainder_norm);
  }
  const bool ok = failures == 0;
  return CheckResult{"rank-truncation-remainder-bound", ok,
                     std::to_string(failures) + "/" +
                         std::to_string(instances) +
                         " violations, smallest margin " + fmt(worst_margin)};
}

CheckResult check_appendix_a(std::uint64_t seed, int instances) {
  bool ok = true;
  std::string detail;

  // Pseudoinverse derivative vs central differences along fixed-rank curves.
  const int fd_instances = 20;
  double ratio_lo = std::numeric_limits<double>::infinity(), ratio_hi = 0.0;
  for (int i = 0; i < fd_instances; ++i) {
    const std::uint64_t base = seed + kInstanceStride * i;
    const SmallRankProblem sp = small_rank_problem(base);
    Matrix dir = orthogonal_tangent_project(
        sp.svd, gaussian_matrix(10, 10, base + 2));
    dir /= dir.norm();
    const Matrix deriv = pinv_derivative(sp.W, dir);
    auto fd_err = [&](double t) {
      return ((pinv_truncated(sp.W + t * dir, 5) -
               pinv_truncated(sp.W - t * dir, 5)) / (2.0 * t) -
              deriv).norm();
    };
    const double ratio = fd_err(1e-3) / fd_err(1e-4);
    ratio_lo = std::min(ratio_lo, ratio);
    ratio_hi = std::max(ratio_hi, ratio);
  }
  if (ratio_lo < 100.0 / 3.0 || ratio_hi > 300.0) {
    ok = false;
    detail += "pinv fd ratios [" + fmt(ratio_lo) + ", " + fmt(ratio_hi) + "]; ";
  }

  // Numerical velocity of t -> (W + t Delta)_r lies in the tangent space.
  double worst_velocity = 0.0;
  for (int i = 0; i < fd_instances; ++i) {
    const std::uint64_t base = seed + kInstanceStride * i;
    const SmallRankProblem sp = small_rank_problem(base);
    Matrix delta = gaussian_matrix(10, 10, base + 3);
    delta /= delta.norm();
    const double t = 1e-5 * std::max(1.0, sp.W.norm());
    const Matrix velocity =
        (truncate_rank(sp.W + t * delta, 5) - truncate_rank(sp.W - t * delta, 5)) /
        (2.0 * t);
    worst_velocity = std::max(
        worst_velocity, fixed_rank_velocity_residual(sp.svd, velocity));
  }
  if (worst_velocity > 1e-6) {
    ok = false;
    detail += "velocity residual " + fmt(worst_velocity) + "; ";
  }

  // (I - W W^+) S^T M = 0 and M P (I - W^+ W) = 0 on admissible instances.
  double worst_consequence = 0.0;
  for (int i = 0; i < instances; ++i) {
    const TestProblem prob =
        build_test_problem(config_for(seed + kInstanceStride * i));
    const ConsequenceResiduals res =
        cur_pinv_consequence_check(prob.svd, prob.sel);
    worst_consequence = std::max(
        worst_consequence, std::max(res.left_res, res.right_res) / prob.M.norm());
  }
  if (worst_consequence > 1e-10) {
    ok = false;
    detail += "consequence residual " + fmt(worst_consequence) + "; ";
  }

  if (ok) {
    detail = "fd ratios [" + fmt(ratio_lo) + ", " + fmt(ratio_hi) +
             "], velocity residual " + fmt(worst_velocity) +
             ", consequence residual " + fmt(worst_consequence);
  }
  return CheckResult{"pinv-derivative-and-velocity", ok, detail};
}

CheckResult check_generic_prediction(std::uint64_t seed) {
  const ExperimentConfig cfg = config_for(seed);
  const auto records = run_generic_experiment(cfg);
  bool ok = true;
  std::string detail;
  double worst_small = 0.0, worst_mid = 0.0;
  for (const auto& rec : records) {
    const double dev_cur = std::abs(rec.err_cur / rec.pred_cur - 1.0);
    const double dev_svd = std::abs(rec.err_svd / rec.pred_svd - 1.0);
    const double dev = std::max(dev_cur, dev_svd);
    if (rec.epsilon <= 1.0000001e-8) worst_small = std::max(worst_small, dev);
    if (rec.epsilon <= 1.0000001e-4) worst_mid = std::max(worst_mid, dev);
  }
  if (worst_small > 1e-3) {
    ok = false;
    detail += "deviation " + fmt(worst_small) + " at eps=1e-8; ";
  }
  if (worst_mid > 0.02) {
    ok = false;
    detail += "deviation " + fmt(worst_mid) + " for eps<=1e-4; ";
  }
  if (ok) {
    detail = "err/pred deviations: " + fmt(worst_small) + " at 1e-8, " +
             fmt(worst_mid) + " up to 1e-4";
  }
  return CheckResult{"generic-prediction-ratio", ok, detail};
}

CheckResult check_structured_dichotomy(std::uint64_t seed) {
  const ExperimentConfig cfg = config_for(seed);
  const TestProblem prob = build_test_problem(cfg);
  const double floor = rounding_floor(prob.M.norm());
  bool ok = true;
  std::string detail;

  const auto inv = run_structured_experiment(cfg, PerturbationFamily::invisible);
  std::vector<double> eps, err_svd;
  double worst_cur = 0.0;
  for (const auto& rec : inv) {
    worst_cur = std::max(worst_cur, rec.err_cur);
    eps.push_back(rec.epsilon);
    err_svd.push_back(rec.err_svd);
  }
  if (worst_cur > 1e-13 * prob.M.norm()) {
    ok = false;
    detail += "invisible err_cur " + fmt(worst_cur) + "; ";
  }
  const double inv_svd_slope = loglog_slope(eps, err_svd, floor);
  if (!(std::abs(inv_svd_slope - 1.0) <= 0.05)) {
    ok = false;
    detail += "invisible svd slope " + fmt(inv_svd_slope) + "; ";
  }

  const auto nor = run_structured_experiment(cfg, PerturbationFamily::normal);
  std::vector<double> eps_w, svd_w, cur_w;
  for (const auto& rec : nor) {
    if (rec.epsilon >= 0.9999e-7 && rec.epsilon <= 1.0001e-4) {
      eps_w.push_back(rec.epsilon);
      svd_w.push_back(rec.err_svd);
      cur_w.push_back(rec.err_cur);
    }
  }
  const double nor_svd_slope = loglog_slope(eps_w, svd_w, floor);
  const double nor_cur_slope = loglog_slope(eps_w, cur_w, floor);
  // An exactly normal perturbation keeps M + eps E block-orthogonal, so the
  // rank-r truncation recovers M exactly and err_svd sits at rounding level,
  // below the measurement floor. That is the strongest form of the
  // second-order claim; fit a slope only when the residual is measurable.
  std::string svd_note;
  if (std::isnan(nor_svd_slope)) {
    const double worst_svd =
        *std::max_element(svd_w.begin(), svd_w.end());
    if (worst_svd > floor) {
      ok = false;
      detail += "normal err_svd " + fmt(worst_svd) + " above floor; ";
    }
    svd_note = "svd exact (err<=" + fmt(worst_svd) + ", below floor)";
  } else if (!(std::abs(nor_svd_slope - 2.0) <= 0.1)) {
    ok = false;
    detail += "normal svd slope " + fmt(nor_svd_slope) + "; ";
  } else {
    svd_note = "svd slope " + fmt(nor_svd_slope);
  }
  if (!(std::abs(nor_cur_slope - 1.0) <= 0.05)) {
    ok = false;
    detail += "normal cur slope " + fmt(nor_cur_slope) + "; ";
  }
  if (ok) {
    detail = "invisible: err_cur<=" + fmt(worst_cur) + ", svd slope " +
             fmt(inv_svd_slope) + "; normal: " + svd_note + ", cur slope " +
             fmt(nor_cur_slope);
  }
  return CheckResult{"structured-slope-dichotomy", ok, detail};
}

CheckResult check_visibility(std::uint64_t seed) {
  const ExperimentConfig cfg = config_for(seed);
  const TestProblem prob = build_test_problem(cfg);
  const double floor = rounding_floor(prob.M.norm());
  const auto records = run_visibility_experiment(cfg);

  bool ok = true;
  std::string detail;
  double worst_dev = 0.0;
  for (const auto& rec : records) {
    if (rec.pred_cur <= floor) continue;
    worst_dev = std::max(worst_dev, std::abs(rec.err_cur / rec.pred_cur - 1.0));
  }
  if (worst_dev > 0.1) {
    ok = false;
    detail += "err/pred deviation " + fmt(worst_dev) + "; ";
  }

  const Matrix e5 = visible_perturbation(prob.sel, 5.0, cfg.seed + 100);
  const Matrix e10 = visible_perturbation(prob.sel, 10.0, cfg.seed + 100);
  const double plateau = oblique_tangent_project(prob.tp, e10).norm() /
                         oblique_tangent_project(prob.tp, e5).norm();
  if (!(plateau >= 0.8 && plateau <= 1.25)) {
    ok = false;
    detail += "plateau ratio " + fmt(plateau) + "; ";
  }
  if (ok) {
    detail = "err/pred deviation " + fmt(worst_dev) + ", plateau ratio " +
             fmt(plateau);
  }
  return CheckResult{"visibility-sweep", ok, detail};
}

CheckResult check_obliqueness_comparison(std::uint64_t seed, int instances) {
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t base = seed + kInstanceStride * i;
    const TestProblem prob = build_test_problem(config_for(base));
    const Matrix E = generic_perturbation(prob.sel.m, prob.sel.n, base + 500);
    const ComparisonGap gap = comparison_gap(prob.tp, E);
    worst_excess = std::max(worst_excess, gap.lhs - gap.rhs);
  }

  // With full selection the oblique projector is the orthogonal one.
  const TestProblem prob = build_test_problem(config_for(seed));
  std::vector<int> all_rows(prob.sel.m), all_cols(prob.sel.n);
  std::iota(all_rows.begin(), all_rows.end(), 0);
  std::iota(all_cols.begin(), all_cols.end(), 0);
  const SelectionPair full =
      make_selection(all_rows, all_cols, prob.sel.m, prob.sel.n);
  const TangentPoint tp_full = make_tangent_point(prob.svd, full);
  const Matrix E = generic_perturbation(prob.sel.m, prob.sel.n, seed + 500);
  const double full_lhs = comparison_gap(tp_full, E).lhs;

  const bool ok = worst_excess <= 1e-10 && full_lhs <= 1e-12;
  return CheckResult{"obliqueness-comparison-bound", ok,
                     "worst lhs-rhs " + fmt(worst_excess) +
                         ", full-selection lhs " + fmt(full_lhs)};
}

CheckResult check_csv_determinism(std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.seed = seed;
  const auto tmp = std::filesystem::temp_directory_path();
  const std::string p1 = (tmp / "curtangent_det_a.csv").string();
  const std::string p2 = (tmp / "curtangent_det_b.csv").string();
  write_csv(run_generic_experiment(cfg), p1);
  write_csv(run_generic_experiment(cfg), p2);
  std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  const bool ok = !s1.str().empty() && s1.str() == s2.str();
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
  return CheckResult{"csv-determinism", ok,
                     ok ? "two runs byte-identical" : "outputs differ"};
}

std::vector<CheckResult> run_suite(const std::string& suite,
                                   std::uint64_t seed) {
  std::vector<CheckResult> results;
  const bool all = suite == "all";
  if (all || suite == "projectors") {
    results.push_back(check_projector_properties(seed));
    results.push_back(check_obliqueness_comparison(seed));
  }
  if (all || suite == "calculus") {
    results.push_back(check_derivative_slope(seed));
    results.push_back(check_fd_derivative_ratio(seed));
    results.push_back(check_appendix_a(seed));
  }
  if (all || suite == "bounds") {
    results.push_back(check_exactness(seed));
    results.push_back(check_truncation_bound(seed));
  }
  if (all) {
    results.push_back(check_example41());
    results.push_back(check_generic_prediction(seed));
    results.push_back(check_structured_dichotomy(seed));
    results.push_back(check_visibility(seed));
    results.push_back(check_csv_determinism(seed));
  }
  if (results.empty()) {
    throw InvalidInput("run_suite: unknown suite '" + suite + "'");
  }
  return results;
}

}  // namespace curtangent
