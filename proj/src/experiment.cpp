#include "curtangent/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "curtangent/cur_map.hpp"
#include "curtangent/dense_core.hpp"

namespace curtangent {

std::vector<double> log_grid(double lo, double hi, int points_per_decade) {
  if (!(lo > 0.0) || !(hi >= lo) || points_per_decade < 1) {
    throw InvalidInput("log_grid: need 0 < lo <= hi and points_per_decade >= 1");
  }
  std::vector<double> grid;
  const double lg_lo = std::log10(lo);
  const double lg_hi = std::log10(hi);
  const double step = 1.0 / points_per_decade;
  for (int k = 0;; ++k) {
    const double lg = lg_lo + k * step;
    if (lg > lg_hi + 1e-9) break;
    grid.push_back(std::pow(10.0, lg));
  }
  return grid;
}

ExperimentConfig with_defaults(ExperimentConfig cfg) {
  if (cfg.eps_grid.empty()) cfg.eps_grid = log_grid(1e-8, 1e-1, 2);
  if (cfg.alpha_grid.empty()) cfg.alpha_grid = log_grid(1e-3, 1e1, 5);
  if (cfg.eps_fixed.empty()) cfg.eps_fixed = {1e-6, 1e-5, 1e-4};
  if (cfg.r < 1 || cfg.r > std::min(cfg.s, cfg.c) ||
      std::min(cfg.s, cfg.c) > std::min(cfg.m, cfg.n)) {
    throw InvalidInput("config: need r <= min(s,c) <= min(m,n)");
  }
  auto sorted_positive = [](const std::vector<double>& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!(g[i] > 0.0) || (i > 0 && g[i] <= g[i - 1])) return false;
    }
    return true;
  };
  if (!sorted_positive(cfg.eps_grid) || !sorted_positive(cfg.alpha_grid) ||
      !sorted_positive(cfg.eps_fixed)) {
    throw InvalidInput("config: grids must be positive and strictly ascending");
  }
  return cfg;
}

TestProblem build_test_problem(const ExperimentConfig& raw) {
  const ExperimentConfig cfg = with_defaults(raw);
  std::string tried;
  for (int attempt = 0; attempt < 16; ++attempt) {
    const std::uint64_t seed = cfg.seed + 2 * attempt;
    if (!tried.empty()) tried += ", ";
    tried += std::to_string(seed);

    const Matrix U = orthonormalize_gaussian(cfg.m, cfg.r, seed);
    const Matrix V = orthonormalize_gaussian(cfg.n, cfg.r, seed + 1);
    Vector sigmas(cfg.r);
    for (int i = 0; i < cfg.r; ++i) sigmas(i) = std::pow(10.0, -i / 4.0);
    CompactSVD svd{U, sigmas, V};

    SelectionPair sel = make_selection(
        top_k_selection(leverage_scores(U), cfg.s),
        top_k_selection(leverage_scores(V), cfg.c), cfg.m, cfg.n);
    if (!is_admissible(svd, sel)) continue;

    TangentPoint tp = make_tangent_point(svd, sel);
    Matrix M = svd.reconstruct();
    return TestProblem{std::move(svd), std::move(sel), std::move(tp),
                       std::move(M), seed};
  }
  throw ConstructionError(
      "build_test_problem: no admissible draw after 16 attempts (seeds " +
      tried + ")");
}

namespace {

std::vector<ExperimentRecord> sweep_epsilon(const TestProblem& prob,
                                            const Matrix& E,
                                            const std::vector<double>& eps_grid,
                                            std::optional<double> alpha) {
  const int r = prob.svd.rank();
  const double pred_cur_unit = oblique_tangent_project(prob.tp, E).norm();
  const double pred_svd_unit = orthogonal_tangent_project(prob.svd, E).norm();
  std::vector<ExperimentRecord> records;
  records.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    const Matrix A = prob.M + eps * E;
    ExperimentRecord rec;
    rec.epsilon = eps;
    rec.alpha = alpha;
    rec.err_cur = (cur_rank_truncated(A, prob.sel, r) - prob.M).norm();
    rec.err_svd = (truncate_rank(A, r) - prob.M).norm();
    rec.pred_cur = eps * pred_cur_unit;
    rec.pred_svd = eps * pred_svd_unit;
    records.push_back(rec);
  }
  return records;
}

}  // namespace

std::vector<ExperimentRecord> run_generic_experiment(
    const ExperimentConfig& raw) {
  const ExperimentConfig cfg = with_defaults(raw);
  const TestProblem prob = build_test_problem(cfg);
  const Matrix E = generic_perturbation(cfg.m, cfg.n, cfg.seed + 100);
  return sweep_epsilon(prob, E, cfg.eps_grid, std::nullopt);
}

std::vector<ExperimentRecord> run_structured_experiment(
    const ExperimentConfig& raw, PerturbationFamily family) {
  if (family != PerturbationFamily::invisible &&
      family != PerturbationFamily::normal) {
    throw InvalidInput("run_structured_experiment: family must be invisible or normal");
  }
  const ExperimentConfig cfg = with_defaults(raw);
  const TestProblem prob = build_test_problem(cfg);
  const Matrix E = make_perturbation({family, 0.0, cfg.seed + 100}, prob.sel,
                                     prob.svd);
  return sweep_epsilon(prob, E, cfg.eps_grid, std::nullopt);
}

std::vector<ExperimentRecord> run_visibility_experiment(
    const ExperimentConfig& raw) {
  const ExperimentConfig cfg = with_defaults(raw);
  const TestProblem prob = build_test_problem(cfg);
  std::vector<ExperimentRecord> records;
  records.reserve(cfg.eps_fixed.size() * cfg.alpha_grid.size());
  for (double eps : cfg.eps_fixed) {
    for (double alpha : cfg.alpha_grid) {
      // One seed for the whole sweep: the Gaussian draw is held fixed and
      // only the mixing parameter alpha varies.
      const Matrix E = visible_perturbation(prob.sel, alpha, cfg.seed + 100);
      auto one = sweep_epsilon(prob, E, {eps}, alpha);
      records.push_back(one.front());
    }
  }
  return records;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv(const std::vector<ExperimentRecord>& records,
               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << "epsilon,alpha,err_cur,err_svd,pred_cur,pred_svd\n";
  for (const auto& r : records) {
    out << format_double(r.epsilon) << ','
        << (r.alpha ? format_double(*r.alpha) : std::string()) << ','
        << format_double(r.err_cur) << ',' << format_double(r.err_svd) << ','
        << format_double(r.pred_cur) << ',' << format_double(r.pred_svd)
        << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

std::vector<ExperimentRecord> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("read_csv: missing header in " + path);
  }
  std::vector<ExperimentRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    while (fields.size() < 6) fields.emplace_back();
    ExperimentRecord rec;
    rec.epsilon = std::stod(fields[0]);
    if (!fields[1].empty()) rec.alpha = std::stod(fields[1]);
    rec.err_cur = std::stod(fields[2]);
    rec.err_svd = std::stod(fields[3]);
    rec.pred_cur = std::stod(fields[4]);
    rec.pred_svd = std::stod(fields[5]);
    records.push_back(rec);
  }
  return records;
}

SeriesSpec default_series_spec(PerturbationFamily family) {
  SeriesSpec spec;
  if (family == PerturbationFamily::visible) {
    spec.title = "CUR recovery error vs visibility";
    spec.x_label = "alpha";
    spec.y_label = "Frobenius error";
    spec.series = {
        {"err_cur", [](const ExperimentRecord& r) { return r.alpha.value_or(0.0); },
         [](const ExperimentRecord& r) { return r.err_cur; }},
        {"pred_cur", [](const ExperimentRecord& r) { return r.alpha.value_or(0.0); },
         [](const ExperimentRecord& r) { return r.pred_cur; }},
    };
    return spec;
  }
  const char* name = family == PerturbationFamily::generic ? "generic"
                     : family == PerturbationFamily::invisible ? "invisible"
                                                               : "normal";
  spec.title = std::string("CUR vs SVD recovery error, ") + name + " perturbation";
  spec.x_label = "epsilon";
  spec.y_label = "Frobenius error";
  auto x = [](const ExperimentRecord& r) { return r.epsilon; };
  spec.series = {
      {"err_cur", x, [](const ExperimentRecord& r) { return r.err_cur; }},
      {"pred_cur", x, [](const ExperimentRecord& r) { return r.pred_cur; }},
      {"err_svd", x, [](const ExperimentRecord& r) { return r.err_svd; }},
      {"pred_svd", x, [](const ExperimentRecord& r) { return r.pred_svd; }},
  };
  return spec;
}

void write_svg_loglog(const std::vector<ExperimentRecord>& records,
                      const SeriesSpec& spec, const std::string& path) {
  constexpr double width = 800.0, height = 600.0;
  constexpr double left = 80.0, right = 660.0, top = 50.0, bottom = 540.0;

  struct Point { double lx, ly; };
  std::vector<std::vector<Point>> lines(spec.series.size());
  int omitted = 0;
  double lx_min = 0.0, lx_max = 0.0, ly_min = 0.0, ly_max = 0.0;
  bool any = false;
  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    for (const auto& rec : records) {
      const double x = spec.series[si].x(rec);
      const double y = spec.series[si].y(rec);
      if (!(x > 0.0) || !(y > 0.0)) {
        ++omitted;
        continue;
      }
      const Point p{std::log10(x), std::log10(y)};
      if (!any) {
        lx_min = lx_max = p.lx;
        ly_min = ly_max = p.ly;
        any = true;
      }
      lx_min = std::min(lx_min, p.lx); lx_max = std::max(lx_max, p.lx);
      ly_min = std::min(ly_min, p.ly); ly_max = std::max(ly_max, p.ly);
      lines[si].push_back(p);
    }
  }
  if (!any) { lx_min = -1; lx_max = 1; ly_min = -1; ly_max = 1; }
  if (lx_max == lx_min) { lx_min -= 0.5; lx_max += 0.5; }
  if (ly_max == ly_min) { ly_min -= 0.5; ly_max += 0.5; }

  auto map_x = [&](double lx) {
    return left + (lx - lx_min) / (lx_max - lx_min) * (right - left);
  };
  auto map_y = [&](double ly) {
    return bottom - (ly - ly_min) / (ly_max - ly_min) * (bottom - top);
  };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b"};

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_svg_loglog: cannot open " + path);
  std::string title = spec.title;
  if (omitted > 0) {
    title += " (" + std::to_string(omitted) + " non-positive points omitted)";
  }
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "width=\"" << width << "\" height=\"" << height << "\" "
      << "viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<title>" << title << "</title>\n"
      << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << (left + right) / 2 << "\" y=\"28\" "
      << "text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";

  // axes
  out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right
      << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";

  // decade ticks
  for (int d = static_cast<int>(std::ceil(lx_min));
       d <= static_cast<int>(std::floor(lx_max)); ++d) {
    const double px = map_x(d);
    out << "<line x1=\"" << px << "\" y1=\"" << bottom << "\" x2=\"" << px
        << "\" y2=\"" << bottom + 6 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px << "\" y=\"" << bottom + 22
        << "\" text-anchor=\"middle\" font-size=\"12\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ly_min));
       d <= static_cast<int>(std::floor(ly_max)); ++d) {
    const double py = map_y(d);
    out << "<line x1=\"" << left - 6 << "\" y1=\"" << py << "\" x2=\"" << left
        << "\" y2=\"" << py << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << left - 10 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-size=\"12\">1e" << d << "</text>\n";
  }

  out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << bottom + 45
      << "\" text-anchor=\"middle\" font-size=\"14\">" << spec.x_label
      << "</text>\n"
      << "<text x=\"20\" y=\"" << (top + bottom) / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 "
      << (top + bottom) / 2 << ")\">" << spec.y_label << "</text>\n";

  for (std::size_t si = 0; si < lines.size(); ++si) {
    const char* color = palette[si % 6];
    if (lines[si].size() >= 2) {
      out << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& p : lines[si]) {
        out << map_x(p.lx) << ',' << map_y(p.ly) << ' ';
      }
      out << "\"/>\n";
    }
    for (const auto& p : lines[si]) {
      out << "<circle cx=\"" << map_x(p.lx) << "\" cy=\"" << map_y(p.ly)
          << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    // legend
    const double ly_pos = top + 20.0 * static_cast<double>(si);
    out << "<line x1=\"" << right + 15 << "\" y1=\"" << ly_pos << "\" x2=\""
        << right + 45 << "\" y2=\"" << ly_pos << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << right + 50 << "\" y=\"" << ly_pos + 4
        << "\" font-size=\"12\">" << spec.series[si].label << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write_svg_loglog: write failed for " + path);
}

}  // namespace curtangent
