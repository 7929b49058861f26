#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "curtangent/cur_map.hpp"
#include "curtangent/dense_core.hpp"
#include "curtangent/experiment.hpp"
#include "curtangent/verify.hpp"

namespace curtangent {

namespace {

void print_matrix(const Matrix& A) {
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      std::printf("%s%12.9f", j == 0 ? "  " : "  ", A(i, j));
    }
    std::printf("\n");
  }
}

int run_example41() {
  const Matrix M = Matrix::Constant(3, 3, 1.0 / 3.0);
  const SelectionPair sel = make_selection({0}, {0}, 3, 3);
  Matrix E = Matrix::Zero(3, 3);
  E(2, 2) = 1.0;

  std::printf("Base point M = (1/3) ones(3,3), selection S = P = {row/col 0}, "
              "E = e3 e3^T\n\n");
  std::printf("Rank-truncated CUR recovery (exact removal):\n");
  for (double eps : {1e-3, 2.0 / 3.0, 10.0}) {
    const double err = (cur_rank_truncated(M + eps * E, sel, 1) - M).norm();
    std::printf("  ||Phi_1(M + %g E) - M||_F = %.3e\n", eps, err);
  }

  const Matrix A1 = truncate_rank(M + (2.0 / 3.0) * E, 1);
  std::printf("\nRank-1 SVD truncation of A at eps = 2/3:\n");
  print_matrix(A1);
  std::printf("  ||(A)_1 - M||_F = %.15f\n", (A1 - M).norm());
  std::printf("  sqrt(33)/9     = %.15f\n", std::sqrt(33.0) / 9.0);
  return 0;
}

int run_experiment(const std::string& family_name, const ExperimentConfig& cfg,
                   const std::string& out_path, const std::string& svg_path) {
  PerturbationFamily family;
  std::vector<ExperimentRecord> records;
  if (family_name == "generic") {
    family = PerturbationFamily::generic;
    records = run_generic_experiment(cfg);
  } else if (family_name == "invisible") {
    family = PerturbationFamily::invisible;
    records = run_structured_experiment(cfg, family);
  } else if (family_name == "normal") {
    family = PerturbationFamily::normal;
    records = run_structured_experiment(cfg, family);
  } else if (family_name == "visibility") {
    family = PerturbationFamily::visible;
    records = run_visibility_experiment(cfg);
  } else {
    std::cerr << "unknown experiment family: " << family_name << "\n";
    return 1;
  }
  if (!out_path.empty()) {
    write_csv(records, out_path);
    std::printf("wrote %zu records to %s\n", records.size(), out_path.c_str());
  }
  if (!svg_path.empty()) {
    write_svg_loglog(records, default_series_spec(family), svg_path);
    std::printf("wrote plot to %s\n", svg_path.c_str());
  }
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed) {
  const auto results = run_suite(suite, seed);
  bool all_pass = true;
  for (const auto& res : results) {
    std::printf("[%s] %-34s %s\n", res.pass ? "PASS" : "FAIL",
                res.name.c_str(), res.detail.c_str());
    all_pass = all_pass && res.pass;
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Rank-truncated CUR maps, oblique tangent projectors, and "
               "their local perturbation behavior"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string family;
  std::string out_path;
  std::string svg_path;
  double eps_min = 1e-8, eps_max = 1e-1;
  int eps_per_decade = 2;
  double alpha_min = 1e-3, alpha_max = 1e1;
  int alpha_per_decade = 5;

  auto* exp = app.add_subcommand("experiment", "run one perturbation study");
  exp->add_option("family", family, "generic|invisible|normal|visibility")
      ->required()
      ->check(CLI::IsMember({"generic", "invisible", "normal", "visibility"}));
  exp->add_option("--m", cfg.m, "rows of the test matrix");
  exp->add_option("--n", cfg.n, "columns of the test matrix");
  exp->add_option("--rank", cfg.r, "target rank");
  exp->add_option("--rows", cfg.s, "number of selected rows");
  exp->add_option("--cols", cfg.c, "number of selected columns");
  exp->add_option("--seed", cfg.seed, "base seed");
  exp->add_option("--eps-min", eps_min, "smallest perturbation size");
  exp->add_option("--eps-max", eps_max, "largest perturbation size");
  exp->add_option("--eps-per-decade", eps_per_decade, "eps grid density");
  exp->add_option("--alpha-min", alpha_min, "smallest visibility parameter");
  exp->add_option("--alpha-max", alpha_max, "largest visibility parameter");
  exp->add_option("--alpha-per-decade", alpha_per_decade, "alpha grid density");
  exp->add_option("--out", out_path, "CSV output path");
  exp->add_option("--svg", svg_path, "SVG plot output path");

  std::string suite = "all";
  std::uint64_t verify_seed = 0;
  auto* ver = app.add_subcommand("verify", "run property suites");
  ver->add_option("--suite", suite, "projectors|calculus|bounds|all")
      ->check(CLI::IsMember({"projectors", "calculus", "bounds", "all"}));
  ver->add_option("--seed", verify_seed, "base seed for random instances");

  auto* ex41 = app.add_subcommand("example41",
                                  "print the 3x3 rank-one golden example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (exp->parsed()) {
      cfg.eps_grid = log_grid(eps_min, eps_max, eps_per_decade);
      cfg.alpha_grid = log_grid(alpha_min, alpha_max, alpha_per_decade);
      cfg.output_path = out_path;
      return run_experiment(family, cfg, out_path, svg_path);
    }
    if (ver->parsed()) return run_verify(suite, verify_seed);
    if (ex41->parsed()) return run_example41();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace curtangent
