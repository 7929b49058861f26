#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curtangent/perturb.hpp"
#include "curtangent/tangent.hpp"
#include "curtangent/types.hpp"

namespace curtangent {

struct ExperimentConfig {
  int m = 80;
  int n = 70;
  int r = 5;
  int s = 10;  // 2r
  int c = 10;  // 2r
  std::uint64_t seed = 0;
  std::vector<double> eps_grid;    // defaults to 10^{-8+k/2}, k = 0..14
  std::vector<double> alpha_grid;  // defaults to 10^{-3+k/5}, k = 0..20
  std::vector<double> eps_fixed;   // defaults to {1e-6, 1e-5, 1e-4}
  std::string output_path;
};

/// Fills empty grids with the defaults above and validates the config.
ExperimentConfig with_defaults(ExperimentConfig cfg);

/// log-spaced grid from lo to hi with points_per_decade points per decade,
/// endpoints included.
std::vector<double> log_grid(double lo, double hi, int points_per_decade);

struct ExperimentRecord {
  double epsilon = 0.0;
  std::optional<double> alpha;  // set only for the visibility sweep
  double err_cur = 0.0;   // ||Phi_r(M + eps E) - M||_F
  double err_svd = 0.0;   // ||(M + eps E)_r - M||_F
  double pred_cur = 0.0;  // eps * ||oblique tangent projection of E||_F
  double pred_svd = 0.0;  // eps * ||orthogonal tangent projection of E||_F
};

struct TestProblem {
  CompactSVD svd;  // of M
  SelectionPair sel;
  TangentPoint tp;
  Matrix M;
  std::uint64_t seed_used;  // base seed of the admissible draw
};

/// Builds the reproducible test problem: U, V from orthonormalized Gaussian
/// draws (seeds seed, seed+1), singular values 10^{-(i-1)/4}, selection by
/// top-(s,c) leverage scores. Inadmissible draws retry with seed+2, up to 16
/// attempts.
TestProblem build_test_problem(const ExperimentConfig& cfg);

std::vector<ExperimentRecord> run_generic_experiment(const ExperimentConfig& cfg);
std::vector<ExperimentRecord> run_structured_experiment(
    const ExperimentConfig& cfg, PerturbationFamily family);
std::vector<ExperimentRecord> run_visibility_experiment(
    const ExperimentConfig& cfg);

/// Schema: epsilon,alpha,err_cur,err_svd,pred_cur,pred_svd. One row per
/// record, alpha empty when absent, floats as shortest round-trip decimals,
/// LF line endings.
void write_csv(const std::vector<ExperimentRecord>& records,
               const std::string& path);

std::vector<ExperimentRecord> read_csv(const std::string& path);

struct Series {
  std::string label;
  std::function<double(const ExperimentRecord&)> x;
  std::function<double(const ExperimentRecord&)> y;
};

struct SeriesSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Conventional series layout for an experiment: observed and predicted
/// errors against epsilon (or against alpha for the visibility sweep).
SeriesSpec default_series_spec(PerturbationFamily family);

/// Standalone SVG 1.1, 800x600 logical units, log10 axes, one polyline per
/// series. Non-positive values are omitted; the count of omitted points is
/// recorded in the document title.
void write_svg_loglog(const std::vector<ExperimentRecord>& records,
                      const SeriesSpec& spec, const std::string& path);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

int cli_main(int argc, char** argv);

}  // namespace curtangent
