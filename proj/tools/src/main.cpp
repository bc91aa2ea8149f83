// Batch front-end: every subcommand reads one JSON config, writes
// deterministic reports and CSV maps into --out, and exits 0 on success,
// 1 when a computed residual exceeds the tolerance, 2 on config or input
// errors, 3 when the model is degenerate.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "json.hpp"

#include "lgtt/errors.hpp"
#include "lgtt/io.hpp"
#include "lgtt/metric_field.hpp"
#include "lgtt/phase_field.hpp"
#include "lgtt/radial.hpp"
#include "lgtt/reduced_field.hpp"
#include "lgtt/ring.hpp"
#include "lgtt/sha256.hpp"
#include "lgtt/symbol.hpp"
#include "lgtt/toeplitz.hpp"
#include "lgtt/types.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lgtt;

namespace {

constexpr double kDefaultTol = 1e-8;

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("config is missing field: ") + key);
  return *it;
}

int as_int(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) throw std::invalid_argument(std::string(key) + " must be an integer");
  return v.get<int>();
}

double as_double(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) throw std::invalid_argument(std::string(key) + " must be a number");
  return v.get<double>();
}

std::string as_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) throw std::invalid_argument(std::string(key) + " must be a string");
  return v.get<std::string>();
}

cplx as_complex(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw std::invalid_argument(std::string(key) + " must be a [re, im] pair");
  return cplx(v[0].get<double>(), v[1].get<double>());
}

struct RunConfig {
  json raw;
  fs::path base_dir;
  std::string sha;

  std::string model;  // model_a | model_b | custom
  cplx t{1.0, 0.0};
  int N = 0;
  int M = 0;
  bool has_N = false;
  bool has_M = false;
  double gamma = 0.0;
  bool has_gamma = false;
  double tol = kDefaultTol;
  bool allow_degenerate = false;

  const json* section(const char* name) const {
    auto it = raw.find(name);
    return it == raw.end() ? nullptr : &*it;
  }

  fs::path resolve(const std::string& rel) const {
    fs::path p(rel);
    return p.is_absolute() ? p : base_dir / p;
  }
};

RunConfig load_config(const std::string& path, std::optional<double> tol_override,
                      bool allow_degenerate, bool degenerate_pathway) {
  const std::string text = read_text_file(path);
  RunConfig cfg;
  try {
    cfg.raw = json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  if (!cfg.raw.is_object()) throw std::invalid_argument("config must be a JSON object");
  cfg.base_dir = fs::path(path).parent_path();
  cfg.sha = sha256_hex(text);
  cfg.allow_degenerate = allow_degenerate;

  cfg.model = as_string(cfg.raw, "model");
  if (cfg.model != "model_a" && cfg.model != "model_b" && cfg.model != "custom")
    throw std::invalid_argument("model must be model_a, model_b, or custom");
  if (cfg.raw.contains("t")) cfg.t = as_complex(cfg.raw, "t");
  if (cfg.raw.contains("N")) {
    cfg.N = as_int(cfg.raw, "N");
    cfg.has_N = true;
  }
  if (cfg.raw.contains("M")) {
    cfg.M = as_int(cfg.raw, "M");
    cfg.has_M = true;
  }
  if (cfg.raw.contains("tol")) cfg.tol = as_double(cfg.raw, "tol");
  if (tol_override) cfg.tol = *tol_override;
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const bool has_c = cfg.raw.contains("c");
  const bool has_gamma_field = cfg.raw.contains("gamma");
  if (has_c && has_gamma_field) throw std::invalid_argument("give either c or gamma, not both");
  if (cfg.model == "model_b" && !has_c && !has_gamma_field)
    throw std::invalid_argument("model_b needs c or gamma");
  if (has_c) {
    const double c = as_double(cfg.raw, "c");
    if (c < 1.0) throw std::invalid_argument("model_b needs c >= 1");
    cfg.gamma = std::acosh(c);
    cfg.has_gamma = true;
  } else if (has_gamma_field) {
    cfg.gamma = as_double(cfg.raw, "gamma");
    if (cfg.gamma < 0.0) throw std::invalid_argument("gamma must be nonnegative");
    cfg.has_gamma = true;
  }
  if (cfg.has_gamma && cfg.gamma == 0.0 && !(allow_degenerate && degenerate_pathway))
    throw DegenerateCritical("the two chains merge at c = 1; --allow-degenerate only routes this to the B = 0 pathway");
  return cfg;
}

ExpPolynomial model_from(const RunConfig& cfg) {
  if (cfg.model == "model_a") return ExpPolynomial::model_a(cfg.t);
  if (cfg.model == "model_b") {
    if (!cfg.has_gamma) throw std::invalid_argument("model_b needs c or gamma");
    return ExpPolynomial::model_b(cfg.t, std::cosh(cfg.gamma));
  }
  const json* cust = cfg.section("custom");
  if (!cust) throw std::invalid_argument("custom model needs a custom section");
  ExpPolynomial wp;
  wp.t = cfg.t;
  wp.linear_coeff = as_complex(*cust, "linear_coeff");
  const json& terms = require(*cust, "exp_terms");
  if (!terms.is_array()) throw std::invalid_argument("exp_terms must be an array");
  for (const json& term : terms) {
    ExpTerm e;
    e.k = as_int(term, "k");
    e.c = as_complex(term, "c");
    wp.exp_terms.push_back(e);
  }
  wp.validate();
  return wp;
}

int require_N(const RunConfig& cfg) {
  if (!cfg.has_N) throw std::invalid_argument("config is missing field: N");
  return cfg.N;
}

int require_M(const RunConfig& cfg) {
  if (!cfg.has_M) throw std::invalid_argument("config is missing field: M");
  return cfg.M;
}

double require_gamma(const RunConfig& cfg) {
  if (!cfg.has_gamma) throw std::invalid_argument("config is missing field: gamma (or c)");
  return cfg.gamma;
}

std::vector<std::string> csv_comments(const RunConfig& cfg) {
  return {"config_sha256=" + cfg.sha, "tol=" + format_g17(cfg.tol)};
}

JsonNode report_head(const char* kind, const RunConfig& cfg) {
  JsonNode n = JsonNode::object();
  n.add("kind", JsonNode::string(kind));
  n.add("config_sha256", JsonNode::string(cfg.sha));
  n.add("tol", JsonNode::number(cfg.tol));
  return n;
}

void write_out(const fs::path& out_dir, const std::string& name, const std::string& content) {
  fs::create_directories(out_dir);
  write_text_file((out_dir / name).string(), content);
}

JsonNode complex_list(const Vector& v) {
  JsonNode arr = JsonNode::array();
  for (int i = 0; i < v.size(); ++i) arr.push(JsonNode::complex_number(v[i]));
  return arr;
}

double grid_max(const RealGrid& map) {
  double worst = 0.0;
  const TGrid& g = map.grid();
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2) {
      const double v = map.at(i1, i2);
      if (!std::isnan(v)) worst = std::max(worst, v);
    }
  return worst;
}

int cmd_ring(const RunConfig& cfg, const fs::path& out_dir) {
  const ExpPolynomial wp = model_from(cfg);
  const CriticalChainSet cs = find_critical_chains(wp, require_N(cfg));
  const Vector eta = eta_diagonal(cs);
  const CouplingMatrix C = coupling_matrix(cs);

  JsonNode chains = JsonNode::array();
  for (const Chain& ch : cs.chains) {
    JsonNode c = JsonNode::object();
    c.add("base", JsonNode::complex_number(ch.base));
    c.add("u", JsonNode::complex_number(ch.u));
    c.add("hessian", JsonNode::complex_number(ch.hessian));
    c.add("dwdt_base", JsonNode::complex_number(ch.dwdt_base));
    chains.push(std::move(c));
  }

  JsonNode report = report_head("ring_report", cfg);
  report.add("model", JsonNode::string(cfg.model));
  report.add("t", JsonNode::complex_number(cfg.t));
  report.add("N", JsonNode::integer(cs.truncation));
  report.add("R", JsonNode::integer(cs.R()));
  report.add("chains", std::move(chains));
  report.add("eta_diagonal", complex_list(eta));
  report.add("c_diagonal", complex_list(C.diag));
  write_out(out_dir, "ring_report.json", report.dump());
  return 0;
}

int cmd_verify(const RunConfig& cfg, const fs::path& out_dir) {
  const json* sec = cfg.section("verify");
  if (!sec) throw std::invalid_argument("config is missing field: verify");
  const bool has_symbol = sec->contains("symbol");
  const bool has_grid = sec->contains("metric_grid");
  if (!has_symbol && !has_grid)
    throw std::invalid_argument("verify needs a symbol or a metric_grid input");

  const ExpPolynomial wp = model_from(cfg);
  const int N = require_N(cfg);
  const CriticalChainSet cs = find_critical_chains(wp, N);
  const double gamma = cs.R() == 2 ? require_gamma(cfg) : 0.0;

  JsonNode report = report_head("verify_report", cfg);
  bool pass = true;

  if (has_symbol) {
    const MetricSymbol s = symbol_from_json_text(read_text_file(cfg.resolve(as_string(*sec, "symbol")).string()));
    if (s.R() != cs.R())
      throw std::invalid_argument("symbol chain count does not match the model");
    if (s.M() != require_M(cfg))
      throw std::invalid_argument("symbol sample count does not match the declared M");
    const double reality = symbol_reality_residual(s, cfg.t, gamma);
    const double commutator = commutator_identity_residual(s, N, gamma);
    report.add("symbol_reality_residual", JsonNode::number(reality));
    report.add("commutator_identity_residual", JsonNode::number(commutator));
    pass = pass && reality <= cfg.tol && commutator <= cfg.tol;
  }

  if (has_grid) {
    const MetricGridFile gf =
        metric_grid_from_json_text(read_text_file(cfg.resolve(as_string(*sec, "metric_grid")).string()));
    if (static_cast<int>(gf.eta.rows()) != cs.dim())
      throw std::invalid_argument("metric grid dimension does not match R * (2N + 1)");
    const MetricField field(gf.samples, gf.eta);
    const CouplingMatrix C = coupling_matrix(cs);

    const RealGrid rmap = reality_map(field);
    const RealGrid zmap = zero_curvature_map(field, C);
    double invariance = 0.0;
    for (int i1 = 0; i1 < gf.grid.n1; ++i1)
      for (int i2 = 0; i2 < gf.grid.n2; ++i2)
        invariance = std::max(invariance, invariance_check(field.samples().at(i1, i2), cs.R()));

    write_out(out_dir, "reality_map.csv", csv_residual_map(rmap, csv_comments(cfg)));
    write_out(out_dir, "zc_map.csv", csv_residual_map(zmap, csv_comments(cfg)));
    const double rmax = grid_max(rmap);
    const double zmax = grid_max(zmap);
    report.add("reality_max", JsonNode::number(rmax));
    report.add("zero_curvature_max", JsonNode::number(zmax));
    report.add("invariance_max", JsonNode::number(invariance));
    report.add("hermiticity_correction", JsonNode::number(field.max_hermiticity_correction()));
    pass = pass && rmax <= cfg.tol && zmax <= cfg.tol && invariance <= cfg.tol;
  }

  report.add("pass", JsonNode::boolean(pass));
  write_out(out_dir, "verify_report.json", report.dump());
  return pass ? 0 : 1;
}

int cmd_reduce(const RunConfig& cfg, const fs::path& out_dir) {
  const json* sec = cfg.section("reduce");
  if (!sec) throw std::invalid_argument("config is missing field: reduce");
  const MetricSymbol s =
      symbol_from_json_text(read_text_file(cfg.resolve(as_string(*sec, "symbol")).string()));
  if (s.M() != require_M(cfg))
    throw std::invalid_argument("symbol sample count does not match the declared M");
  const int N = require_N(cfg);

  JsonNode report = report_head("reduce_report", cfg);
  bool pass = true;

  const ToeplitzTruncation T = fourier_expand(s, N);
  write_out(out_dir, "toeplitz.json", toeplitz_to_json(T).dump());

  const MetricSymbol back = fourier_reduce(T, s.M());
  const double roundtrip = max_sample_diff(back, s);
  write_out(out_dir, "reduced_symbol.json", symbol_to_json(back).dump());
  report.add("roundtrip_residual", JsonNode::number(roundtrip));
  pass = pass && roundtrip <= cfg.tol;

  if (s.R() == 2) {
    const double gamma = require_gamma(cfg);
    const MetricSymbol gt = rescale_D(s, gamma);
    write_out(out_dir, "rescaled_symbol.json", symbol_to_json(gt).dump());
    const double scale = 1.0 / (2.0 * std::abs(cfg.t) * std::sinh(gamma));
    const double su11 = su11_residual(gt, scale);
    report.add("su11_residual", JsonNode::number(su11));
    pass = pass && su11 <= cfg.tol;
  }

  report.add("pass", JsonNode::boolean(pass));
  write_out(out_dir, "reduce_report.json", report.dump());
  return pass ? 0 : 1;
}

int cmd_solve_modes(const RunConfig& cfg, const fs::path& out_dir) {
  const json* sec = cfg.section("solve_modes");
  if (!sec) throw std::invalid_argument("config is missing field: solve_modes");
  const BoundaryPhase boundary =
      boundary_phase_from_json_text(read_text_file(cfg.resolve(as_string(*sec, "boundary")).string()));
  const double r1 = as_double(*sec, "r1");
  if (!(r1 > boundary.r0)) throw std::invalid_argument("r1 must exceed the boundary radius");
  const int k_max = as_int(*sec, "k_max");
  const int n_max = as_int(*sec, "n_max");
  int n_out = 257;
  if (sec->contains("n_out")) n_out = as_int(*sec, "n_out");
  const TGrid grid = grid_from_json_text(require(*sec, "grid").dump());

  const std::vector<cplx> amps =
      boundary_mode_amplitudes(boundary.values, boundary.n_psi, boundary.M, k_max, n_max);

  // Unit-amplitude profiles; the complex mode amplitude scales them in the
  // reconstruction below and in the report.
  std::vector<RadialProfile> profiles;
  std::vector<std::vector<double>> profile_rows;
  std::vector<std::vector<double>> decay_rows;
  JsonNode modes = JsonNode::array();
  for (int k = -k_max; k <= k_max; ++k) {
    for (int n = -n_max; n <= n_max; ++n) {
      const cplx a = amps[static_cast<size_t>((k + k_max) * (2 * n_max + 1) + (n + n_max))];
      RadialProfile p = solve_radial_decaying(k, n, boundary.r0, r1, 1.0, n_out);
      const double ld = asymptotic_decay_check(p.r, p.h);
      const double target = k != 0 ? -two_pi * std::abs(k) : -std::abs(n) / r1;
      for (size_t i = 0; i < p.r.size(); ++i)
        profile_rows.push_back({static_cast<double>(k), static_cast<double>(n), p.r[i], p.h[i]});
      decay_rows.push_back({static_cast<double>(k), static_cast<double>(n), ld, target,
                            target != 0.0 ? std::abs((ld - target) / target) : std::abs(ld)});
      JsonNode mode = JsonNode::object();
      mode.add("k", JsonNode::integer(k));
      mode.add("n", JsonNode::integer(n));
      mode.add("amplitude", JsonNode::complex_number(a));
      mode.add("log_derivative_outer", JsonNode::number(ld));
      mode.add("target", JsonNode::number(target));
      modes.push(std::move(mode));
      profiles.push_back(std::move(p));
    }
  }

  write_out(out_dir, "modes_profiles.csv",
            csv_table({"k", "n", "r", "h"}, profile_rows, csv_comments(cfg)));
  write_out(out_dir, "decay_table.csv",
            csv_table({"k", "n", "log_derivative", "target", "rel_error"}, decay_rows,
                      csv_comments(cfg)));

  // Reconstruction on the output grid: nodes inside the annulus get the mode
  // sum, everything else NaN so downstream CSVs skip them.
  PhaseField phi(grid, boundary.M);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i1 = 0; i1 < grid.n1; ++i1) {
    for (int i2 = 0; i2 < grid.n2; ++i2) {
      const double x = grid.t1(i1);
      const double y = grid.t2(i2);
      const double r = std::hypot(x, y);
      if (r < boundary.r0 || r > r1) {
        for (int m = 0; m < boundary.M; ++m) phi.at(i1, i2, m) = nan;
        continue;
      }
      const double psi = std::atan2(y, x);
      for (int m = 0; m < boundary.M; ++m) {
        const double theta = static_cast<double>(m) / boundary.M;
        cplx acc(0.0, 0.0);
        size_t idx = 0;
        for (int k = -k_max; k <= k_max; ++k)
          for (int n = -n_max; n <= n_max; ++n, ++idx) {
            const cplx a = amps[idx];
            const double hval = profile_value(profiles[idx], r);
            acc += a * hval * std::exp(iu * (n * psi + two_pi * k * theta));
          }
        phi.at(i1, i2, m) = acc.real();
      }
    }
  }

  write_out(out_dir, "phi_grid.csv", csv_theta_grid(phi, csv_comments(cfg)));
  const RealGrid lmap = laplace_map(phi);
  write_out(out_dir, "laplace_map.csv", csv_residual_map(lmap, csv_comments(cfg)));

  JsonNode report = report_head("modes_report", cfg);
  report.add("r0", JsonNode::number(boundary.r0));
  report.add("r1", JsonNode::number(r1));
  report.add("modes", std::move(modes));
  report.add("max_laplace_residual", JsonNode::number(grid_max(lmap)));
  write_out(out_dir, "modes_report.json", report.dump());
  return 0;
}

int cmd_pcf_check(const RunConfig& cfg, const fs::path& out_dir) {
  const json* sec = cfg.section("pcf_check");
  if (!sec) throw std::invalid_argument("config is missing field: pcf_check");
  const SymbolField field =
      symbol_field_from_json_text(read_text_file(cfg.resolve(as_string(*sec, "field")).string()));
  if (field.M() != require_M(cfg))
    throw std::invalid_argument("field sample count does not match the declared M");

  JsonNode report = report_head("pcf_report", cfg);
  bool pass = true;

  const RealGrid map = pcf_map(field);
  write_out(out_dir, "pcf_map.csv", csv_residual_map(map, csv_comments(cfg)));
  const double pcf_max = grid_max(map);
  report.add("pcf_max", JsonNode::number(pcf_max));
  pass = pass && pcf_max <= cfg.tol;

  if (field.R() == 2 && cfg.has_gamma) {
    const double B = b_constant(cfg.gamma);
    const RealGrid fmap = su11_field_map(ReducedConnection(field, B));
    write_out(out_dir, "field_eq_map.csv", csv_residual_map(fmap, csv_comments(cfg)));
    const double fmax = grid_max(fmap);
    report.add("b", JsonNode::number(B));
    report.add("field_eq_max", JsonNode::number(fmax));
    pass = pass && fmax <= cfg.tol;
  }

  if (sec->contains("gammas") && field.R() == 2) {
    const json& gl = (*sec)["gammas"];
    if (!gl.is_array()) throw std::invalid_argument("gammas must be an array");
    std::vector<double> gammas;
    for (const json& v : gl) {
      if (!v.is_number()) throw std::invalid_argument("gammas must hold numbers");
      gammas.push_back(v.get<double>());
    }
    int node1 = field.grid().n1 / 2;
    int node2 = field.grid().n2 / 2;
    if (sec->contains("node")) {
      const json& nd = (*sec)["node"];
      if (!nd.is_array() || nd.size() != 2 || !nd[0].is_number_integer() || !nd[1].is_number_integer())
        throw std::invalid_argument("node must be a pair of indices");
      node1 = nd[0].get<int>();
      node2 = nd[1].get<int>();
    }
    const std::vector<BLimitRow> rows = b_limit_consistency(field, node1, node2, gammas);
    std::vector<std::vector<double>> table;
    for (const BLimitRow& row : rows) table.push_back({row.gamma, row.b, row.gap});
    write_out(out_dir, "b_limit.csv", csv_table({"gamma", "b", "gap"}, table, csv_comments(cfg)));
  }

  report.add("pass", JsonNode::boolean(pass));
  write_out(out_dir, "pcf_report.json", report.dump());
  return pass ? 0 : 1;
}

void apply_thread_env() {
  const char* env = std::getenv("LGTT_THREADS");
  if (!env || !*env) return;
  int n = 0;
  const auto [ptr, ec] = std::from_chars(env, env + std::string_view(env).size(), n);
  if (ec != std::errc() || *ptr != '\0' || n < 1)
    throw std::invalid_argument("LGTT_THREADS must be a positive integer");
  Eigen::setNbThreads(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical workbench for exponential-superpotential chiral-ring data"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  double tol_value = 0.0;
  bool allow_degenerate = false;
  app.add_option("--config", config_path, "Path to the JSON run config")->required();
  app.add_option("--out", out_dir, "Output directory (default: current directory)");
  CLI::Option* tol_opt = app.add_option("--tol", tol_value, "Override the config tolerance");
  app.add_flag("--allow-degenerate", allow_degenerate,
               "Route the degenerate c = 1 model to the B = 0 pathway where one exists");

  CLI::App* ring = app.add_subcommand("ring", "Write the chain and pairing report");
  CLI::App* verify = app.add_subcommand("verify", "Check reality, invariance, and flatness residuals");
  CLI::App* reduce = app.add_subcommand("reduce", "Symbol <-> Toeplitz reduction and rescaling");
  CLI::App* solve_modes = app.add_subcommand("solve-modes", "Solve decaying radial modes from boundary data");
  CLI::App* pcf_check = app.add_subcommand("pcf-check", "Field-equation and B -> 0 limit residuals");
  for (CLI::App* sub : {ring, verify, reduce, solve_modes, pcf_check}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    apply_thread_env();
    std::optional<double> tol_override;
    if (tol_opt->count() > 0) tol_override = tol_value;
    const RunConfig cfg =
        load_config(config_path, tol_override, allow_degenerate, pcf_check->parsed());
    const fs::path out(out_dir);
    if (ring->parsed()) return cmd_ring(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (reduce->parsed()) return cmd_reduce(cfg, out);
    if (solve_modes->parsed()) return cmd_solve_modes(cfg, out);
    return cmd_pcf_check(cfg, out);
  } catch (const DegenerateCritical& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NonDecaying& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
