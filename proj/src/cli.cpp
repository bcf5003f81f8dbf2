#include "jacobi/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "jacobi/factorize.hpp"
#include "jacobi/oracle.hpp"

namespace jacobi {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void parallel_for(size_t count, const std::function<void(size_t)>& body) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(std::min<size_t>(hw, count));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

class RowWriter {
public:
  RowWriter(OutputFormat format, std::vector<std::string> columns)
      : format_(format), columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> str_cells, nlohmann::json json_row) {
    csv_rows_.push_back(std::move(str_cells));
    json_rows_.push_back(std::move(json_row));
  }

  void write(std::ostream& os) const {
    if (format_ == OutputFormat::csv) {
      for (size_t c = 0; c < columns_.size(); ++c)
        os << (c ? "," : "") << columns_[c];
      os << "\n";
      for (const auto& row : csv_rows_) {
        for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
        os << "\n";
      }
    } else {
      os << json_rows_.dump(2) << "\n";
    }
  }

private:
  OutputFormat format_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> csv_rows_;
  nlohmann::json json_rows_ = nlohmann::json::array();
};

void append_complex(std::vector<std::string>& cells, Complex v) {
  cells.push_back(fmt(v.real()));
  cells.push_back(fmt(v.imag()));
}

void append_matrix_columns(std::vector<std::string>& names, const std::string& label, int q) {
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < q; ++c) {
      names.push_back(label + "_" + std::to_string(r) + "_" + std::to_string(c) + "_re");
      names.push_back(label + "_" + std::to_string(r) + "_" + std::to_string(c) + "_im");
    }
}

void append_matrix_cells(std::vector<std::string>& cells, const CMat& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) append_complex(cells, m(r, c));
}

nlohmann::json matrix_json(const CMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(nlohmann::json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

int emit(const RunConfig& cfg, const RowWriter& writer, std::ostream& fallback) {
  if (cfg.out_path.empty()) {
    writer.write(fallback);
    return 0;
  }
  std::ofstream file(cfg.out_path);
  if (!file) {
    fallback << "error: cannot write output file '" << cfg.out_path << "'\n";
    return 2;
  }
  writer.write(file);
  return 0;
}

ProfileConfig load_or_throw(const RunConfig& cfg) { return load_profile_file(cfg.profile_path); }

std::vector<SpectralPoint> grid_for(const RunConfig& cfg, const Tail& tail) {
  return make_spectral_grid(tail, cfg.z_samples, cfg.exclusion_eps);
}

double max_block_residual(const ScatteringData& got, const ScatteringData& want) {
  return std::max({rel_residual(got.Tl, want.Tl), rel_residual(got.Tr, want.Tr),
                   rel_residual(got.L, want.L), rel_residual(got.R, want.R)});
}

struct NamedCheck {
  std::string name;
  double residual = 0.0;
  bool expect_below = true;  // false: inequality expected to hold (residual >= tol)
};

int write_check_table(const RunConfig& cfg, const std::vector<NamedCheck>& checks,
                      std::ostream& out) {
  bool all_ok = true;
  size_t width = 4;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks) {
    const bool ok = c.expect_below ? c.residual < cfg.tolerance : c.residual >= cfg.tolerance;
    all_ok = all_ok && ok;
    out << (ok ? "[PASS] " : "[FAIL] ") << c.name << std::string(width - c.name.size() + 2, ' ')
        << "max residual " << fmt(c.residual)
        << (c.expect_below ? "" : "  (inequality expected)") << "\n";
  }
  if (!cfg.out_path.empty()) {
    RowWriter writer(cfg.format, {"check", "max_residual", "expectation", "status"});
    for (const auto& c : checks) {
      const bool ok = c.expect_below ? c.residual < cfg.tolerance : c.residual >= cfg.tolerance;
      const char* expectation = c.expect_below ? "below_tol" : "at_least_tol";
      writer.add_row({c.name, fmt(c.residual), expectation, ok ? "pass" : "fail"},
                     {{"check", c.name},
                      {"max_residual", c.residual},
                      {"expectation", expectation},
                      {"status", ok ? "pass" : "fail"}});
    }
    const int rc = emit(cfg, writer, out);
    if (rc != 0) return rc;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const ProfileConfig pc = load_or_throw(cfg);
  const ValidationReport report = validate_profile(pc.profile);
  for (const auto& item : report.items) {
    out << (item.passed ? "[PASS] " : "[FAIL] ") << item.name;
    if (!item.detail.empty()) out << "  (" << item.detail << ")";
    out << "\n";
  }
  if (report.classification)
    out << "classification: " << to_string(*report.classification) << "\n";
  return report.all_passed() ? 0 : 1;
}

int cmd_scatter(const RunConfig& cfg, std::ostream& out) {
  const ProfileConfig pc = load_or_throw(cfg);
  if (!validate_profile(pc.profile).all_passed()) {
    out << "error: profile fails validation; run the validate command\n";
    return 2;
  }
  const auto grid = grid_for(cfg, pc.profile.tail());
  const int q = pc.profile.q();

  std::vector<std::string> columns = {"z_re", "z_im", "lambda_re", "lambda_im"};
  for (const char* label : {"Tl", "Tr", "L", "R"}) append_matrix_columns(columns, label, q);
  columns.push_back("unitarity_residual");
  columns.push_back("status");

  struct Row {
    std::optional<ScatteringData> data;
    double unitarity = 0.0;
    std::string status = "ok";
  };
  std::vector<Row> rows(grid.size());
  parallel_for(grid.size(), [&](size_t i) {
    try {
      ScatteringData d = extract_scattering(pc.profile, grid[i]);
      rows[i].unitarity = unitarity_residual(d);
      rows[i].data = std::move(d);
    } catch (const Error& e) {
      rows[i].status = "failed";
    }
  });

  RowWriter writer(cfg.format, columns);
  bool any_failed = false;
  for (size_t i = 0; i < grid.size(); ++i) {
    const auto& row = rows[i];
    std::vector<std::string> cells;
    append_complex(cells, grid[i].z);
    append_complex(cells, grid[i].lambda);
    nlohmann::json jrow = {{"z", {grid[i].z.real(), grid[i].z.imag()}},
                           {"lambda", {grid[i].lambda.real(), grid[i].lambda.imag()}},
                           {"status", row.status}};
    if (row.data) {
      for (const auto* m : {&row.data->Tl, &row.data->Tr, &row.data->L, &row.data->R})
        append_matrix_cells(cells, *m);
      cells.push_back(fmt(row.unitarity));
      jrow["Tl"] = matrix_json(row.data->Tl);
      jrow["Tr"] = matrix_json(row.data->Tr);
      jrow["L"] = matrix_json(row.data->L);
      jrow["R"] = matrix_json(row.data->R);
      jrow["unitarity_residual"] = row.unitarity;
    } else {
      any_failed = true;
      for (int k = 0; k < 4 * q * q * 2 + 1; ++k) cells.push_back("nan");
    }
    cells.push_back(row.status);
    writer.add_row(std::move(cells), std::move(jrow));
  }
  const int rc = emit(cfg, writer, out);
  if (rc != 0) return rc;
  return any_failed ? 1 : 0;
}

int cmd_factorize(const RunConfig& cfg, std::ostream& out) {
  const ProfileConfig pc = load_or_throw(cfg);
  if (cfg.cuts.empty()) {
    out << "error: factorize requires --cuts\n";
    return 2;
  }
  const Partition part{cfg.cuts};
  const auto pieces = fragment(pc.profile, part);  // validates the cuts
  const auto grid = grid_for(cfg, pc.profile.tail());
  const int q2 = 2 * pc.profile.q();

  std::vector<std::string> columns = {"z_re", "z_im"};
  for (size_t j = 0; j < pieces.size(); ++j)
    append_matrix_columns(columns, "Lambda" + std::to_string(j + 1), q2);
  columns.push_back("lambda_residual");
  columns.push_back("sigma_residual");
  columns.push_back("status");

  struct Row {
    std::vector<CMat> lambdas;
    double lambda_residual = std::numeric_limits<double>::infinity();
    double sigma_residual = std::numeric_limits<double>::infinity();
    std::string status = "ok";
  };
  std::vector<Row> rows(grid.size());
  parallel_for(grid.size(), [&](size_t i) {
    try {
      for (const Fragment& frag : pieces)
        rows[i].lambdas.push_back(
            build_transition(extract_scattering(frag.profile, grid[i])).left.m);
      const ReportCard card = factorization_check(pc.profile, part, grid[i]);
      rows[i].lambda_residual = card.items()[0].residual;
      rows[i].sigma_residual = card.items()[1].residual;
    } catch (const Error&) {
      rows[i].status = "failed";
    }
  });

  RowWriter writer(cfg.format, columns);
  double worst = 0.0;
  bool any_failed = false;
  for (size_t i = 0; i < grid.size(); ++i) {
    const Row& row = rows[i];
    std::vector<std::string> cells;
    append_complex(cells, grid[i].z);
    nlohmann::json jrow = {{"z", {grid[i].z.real(), grid[i].z.imag()}}, {"status", row.status}};
    if (row.status == "ok") {
      nlohmann::json jlam = nlohmann::json::array();
      for (const CMat& m : row.lambdas) {
        append_matrix_cells(cells, m);
        jlam.push_back(matrix_json(m));
      }
      cells.push_back(fmt(row.lambda_residual));
      cells.push_back(fmt(row.sigma_residual));
      jrow["Lambda"] = std::move(jlam);
      jrow["lambda_residual"] = row.lambda_residual;
      jrow["sigma_residual"] = row.sigma_residual;
      worst = std::max({worst, row.lambda_residual, row.sigma_residual});
    } else {
      any_failed = true;
      for (size_t k = 0; k < pieces.size() * q2 * q2 * 2 + 2; ++k) cells.push_back("nan");
    }
    cells.push_back(row.status);
    writer.add_row(std::move(cells), std::move(jrow));
  }
  out << "max factorization residual " << fmt(worst) << " over " << grid.size() << " z\n";
  const int rc = emit(cfg, writer, out);
  if (rc != 0) return rc;
  return (!any_failed && worst < cfg.tolerance) ? 0 : 1;
}

int cmd_closed_form(const RunConfig& cfg, std::ostream& out) {
  const ProfileConfig pc = load_or_throw(cfg);
  const auto grid = grid_for(cfg, pc.profile.tail());
  const int q = pc.profile.q();

  std::vector<std::string> columns = {"z_re", "z_im", "lambda_re", "lambda_im"};
  for (const char* label : {"Tl", "Tr", "L", "R"}) append_matrix_columns(columns, label, q);
  columns.push_back("pipeline_residual");
  columns.push_back("status");

  struct Row {
    std::optional<ScatteringData> data;
    double residual = std::numeric_limits<double>::infinity();
    std::string status = "ok";
  };
  std::vector<Row> rows(grid.size());
  std::atomic<bool> not_point{false};
  parallel_for(grid.size(), [&](size_t i) {
    try {
      ScatteringData d = point_defect_closed_form(pc.profile, grid[i]);
      rows[i].residual = max_block_residual(d, extract_scattering(pc.profile, grid[i]));
      rows[i].data = std::move(d);
    } catch (const NotPointDefectError&) {
      not_point = true;
    } catch (const Error&) {
      rows[i].status = "failed";
    }
  });
  if (not_point) {
    out << "error: profile is not a single-site defect\n";
    return 2;
  }

  RowWriter writer(cfg.format, columns);
  double worst = 0.0;
  bool any_failed = false;
  for (size_t i = 0; i < grid.size(); ++i) {
    const Row& row = rows[i];
    std::vector<std::string> cells;
    append_complex(cells, grid[i].z);
    append_complex(cells, grid[i].lambda);
    nlohmann::json jrow = {{"z", {grid[i].z.real(), grid[i].z.imag()}},
                           {"lambda", {grid[i].lambda.real(), grid[i].lambda.imag()}},
                           {"status", row.status}};
    if (row.data) {
      for (const auto* m : {&row.data->Tl, &row.data->Tr, &row.data->L, &row.data->R})
        append_matrix_cells(cells, *m);
      cells.push_back(fmt(row.residual));
      jrow["Tl"] = matrix_json(row.data->Tl);
      jrow["Tr"] = matrix_json(row.data->Tr);
      jrow["L"] = matrix_json(row.data->L);
      jrow["R"] = matrix_json(row.data->R);
      jrow["pipeline_residual"] = row.residual;
      worst = std::max(worst, row.residual);
    } else {
      any_failed = true;
      for (int k = 0; k < 4 * q * q * 2 + 1; ++k) cells.push_back("nan");
    }
    cells.push_back(row.status);
    writer.add_row(std::move(cells), std::move(jrow));
  }
  out << "max closed-form vs pipeline residual " << fmt(worst) << "\n";
  const int rc = emit(cfg, writer, out);
  if (rc != 0) return rc;
  return (!any_failed && worst < cfg.tolerance) ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const ProfileConfig pc = load_or_throw(cfg);
  const CoefficientProfile& p = pc.profile;
  if (!validate_profile(p).all_passed()) {
    out << "error: profile fails validation; run the validate command\n";
    return 2;
  }

  std::vector<SpectralPoint> grid = grid_for(cfg, p.tail());
  if (cfg.seed) {
    // extra randomized spectral samples, deterministic under the seed
    std::mt19937_64 rng(*cfg.seed);
    std::uniform_real_distribution<double> angle(0.05, std::acos(-1.0) - 0.05);
    for (int k = 0; k < 8; ++k) {
      const double theta = angle(rng) * (k % 2 == 0 ? 1.0 : -1.0);
      grid.push_back(make_spectral_point(std::polar(1.0, theta), p.tail(), cfg.exclusion_eps));
    }
  }

  Partition part;
  if (!cfg.cuts.empty())
    part.cuts = cfg.cuts;
  else
    part.cuts = {p.window_empty() ? 0 : (p.n_min() + p.n_max()) / 2};

  std::map<std::string, double> worst;
  auto fold = [&](const ReportCard& card) {
    for (const auto& item : card.items()) {
      auto [it, inserted] = worst.emplace(item.name, item.residual);
      if (!inserted) it->second = std::max(it->second, item.residual);
    }
  };

  std::vector<ReportCard> cards(grid.size());
  std::vector<std::string> errors(grid.size());
  parallel_for(grid.size(), [&](size_t i) {
    try {
      const SpectralPoint& zp = grid[i];
      ReportCard card;
      const ScatteringData d = extract_scattering(p, zp);
      card.merge(identity_suite(p, zp, d));
      card.merge(determinant_suite(p, zp, d));
      const TransitionPair tp = build_transition(d, extract_scattering(
          p, make_spectral_point(1.0 / zp.z, p.tail())));
      card.add("transition matrices from either spectral argument", tp.cross_residual);
      card.add("Lambda Sigma = I",
               op_norm(tp.left.m * tp.right.m - identity(2 * p.q())));
      const int mid = p.window_empty() ? 0 : (p.n_min() + p.n_max()) / 2;
      card.merge(relate_frames(build_frames(p, zp, mid), tp.left, tp.right));
      card.merge(fragment_jost_relations(p, part, zp));
      card.merge(factorization_check(p, part, zp));
      card.add("oracle agreement", max_block_residual(oracle_scattering(p, zp), d));
      cards[i] = std::move(card);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  for (const auto& msg : errors) {
    if (!msg.empty()) {
      out << "error: verification aborted at a spectral point: " << msg << "\n";
      return 1;
    }
  }
  for (const auto& card : cards) fold(card);

  std::vector<NamedCheck> checks;
  checks.reserve(worst.size() + 1);
  for (const auto& [name, residual] : worst) checks.push_back({name, residual, true});

  if (pc.expect_unequal_det) {
    double closest = std::numeric_limits<double>::infinity();
    for (const auto& zp : grid) {
      const ScatteringData d = extract_scattering(p, zp);
      closest = std::min(closest,
                         rel_residual(determinant(d.Tl), determinant(d.Tr)));
    }
    checks.push_back({"det Tl stays away from det Tr", closest, false});
  }

  return write_check_table(cfg, checks, out);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-valued Jacobi lattice scattering: coefficients, transition matrices, "
               "fragment factorization"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "csv";

  auto add_common = [&](CLI::App* sub, bool needs_cuts) {
    sub->add_option("--profile", cfg.profile_path, "profile config (JSON)")->required();
    sub->add_option("--z-samples", cfg.z_samples, "spectral grid size")
        ->check(CLI::PositiveNumber);
    sub->add_option("--eps", cfg.exclusion_eps, "exclusion radius around z = +-1")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tolerance, "residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", cfg.seed, "seed for randomized samples");
    sub->add_option("--out", cfg.out_path, "output file path");
    if (needs_cuts)
      sub->add_option("--cuts", cfg.cuts, "fragmentation cut points m1,m2,...")
          ->delimiter(',');
  };

  CLI::App* validate = app.add_subcommand("validate", "check profile admissibility");
  add_common(validate, false);
  CLI::App* scatter = app.add_subcommand("scatter", "scattering coefficients over the grid");
  add_common(scatter, false);
  CLI::App* factorize_cmd =
      app.add_subcommand("factorize", "fragment transition matrices and product residuals");
  add_common(factorize_cmd, true);
  CLI::App* closed_form =
      app.add_subcommand("closed-form", "single-site defect closed form vs pipeline");
  add_common(closed_form, false);
  CLI::App* verify = app.add_subcommand("verify", "full identity suite over the grid");
  add_common(verify, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;

  try {
    if (validate->parsed()) {
      cfg.command = Command::validate;
      return cmd_validate(cfg, out);
    }
    if (scatter->parsed()) {
      cfg.command = Command::scatter;
      return cmd_scatter(cfg, out);
    }
    if (factorize_cmd->parsed()) {
      cfg.command = Command::factorize;
      return cmd_factorize(cfg, out);
    }
    if (closed_form->parsed()) {
      cfg.command = Command::closed_form;
      return cmd_closed_form(cfg, out);
    }
    if (verify->parsed()) {
      cfg.command = Command::verify;
      return cmd_verify(cfg, out);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidPartitionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace jacobi
