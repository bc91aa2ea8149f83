// Acceptance gate for the workbench. Each criterion prints exactly one
// PASS/FAIL line with the measured numbers; the process exits nonzero when
// any line fails. Tolerances are pinned here on purpose: loosening one is a
// visible diff, not a config tweak.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "lgtt/grid.hpp"
#include "lgtt/io.hpp"
#include "lgtt/metric_field.hpp"
#include "lgtt/phase_field.hpp"
#include "lgtt/radial.hpp"
#include "lgtt/reduced_field.hpp"
#include "lgtt/ring.hpp"
#include "lgtt/symbol.hpp"
#include "lgtt/toeplitz.hpp"
#include "lgtt/types.hpp"

#include "oracles.hpp"

using namespace lgtt;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int g_failures = 0;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void report(int num, const char* label, bool ok, const std::string& detail) {
  std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", num, label,
              detail.empty() ? "" : " | ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

template <class F>
void criterion(int num, const char* label, F&& f) {
  try {
    const std::pair<bool, std::string> r = f();
    report(num, label, r.first, r.second);
  } catch (const std::exception& e) {
    report(num, label, false, std::string("exception: ") + e.what());
  }
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double cdist(cplx a, cplx b) { return std::abs(a - b); }

TGrid centered_grid(int n, double h, double c1 = 0.0, double c2 = 0.0) {
  TGrid g;
  g.n1 = n;
  g.n2 = n;
  g.h = h;
  g.t1_min = c1 - h * (n / 2);
  g.t2_min = c2 - h * (n / 2);
  return g;
}

SymbolField drifting_boost(const TGrid& g, int M, double c) {
  return SymbolField::sample(g, 2, M, [&](double t1, double t2, double theta) {
    const double s = (0.3 + 0.2 * t1) * std::cos(two_pi * theta);
    const double chi = (0.4 + 0.1 * t2) * std::sin(two_pi * theta);
    Matrix u(2, 2);
    u << std::cosh(s), std::exp(iu * chi) * std::sinh(s),
         std::exp(-iu * chi) * std::sinh(s), std::cosh(s);
    return Matrix(c * u);
  });
}

// ---- criteria on the library ----

std::pair<bool, std::string> one_chain_tables() {
  const auto t0 = std::chrono::steady_clock::now();
  const int N = 8;
  const CriticalChainSet cs = find_critical_chains(ExpPolynomial::model_a(cplx(1.0, 0.0)), N);

  // pairing through residues of products: eta = identity at t = 1
  double eta_dev = 0.0;
  for (int j = -N; j <= N; ++j) {
    for (int l = -N; l <= N; ++l) {
      const RingElement prod =
          RingElement::indicator(cs, 0, j) * RingElement::indicator(cs, 0, l);
      const cplx expect = j == l ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      eta_dev = std::max(eta_dev, cdist(residue(cs, prod), expect));
    }
  }

  const CouplingMatrix C = coupling_matrix(cs);
  double c_dev = 0.0;
  for (int j = -N; j <= N; ++j)
    c_dev = std::max(c_dev, cdist(C.diag[cs.index(0, j)], cplx(1.0, -two_pi * j)));

  const double dt = seconds_since(t0);
  const bool ok = eta_dev < 1e-12 && c_dev < 1e-12 && dt < 1.0;
  return {ok, fmt("eta dev %.2e, C dev %.2e (tol 1e-12), %.3fs (limit 1s)", eta_dev, c_dev, dt)};
}

std::pair<bool, std::string> two_chain_tables() {
  const auto t0 = std::chrono::steady_clock::now();
  const double gamma = 1.0;
  const cplx t(1.0, 0.0);
  const int N = 8;
  const ExpPolynomial wp = ExpPolynomial::model_b(t, std::cosh(gamma));
  const CriticalChainSet cs = find_critical_chains(wp, N);

  const double ea = -std::exp(gamma) / (2.0 * std::sinh(gamma));
  const double eb = std::exp(-gamma) / (2.0 * std::sinh(gamma));
  double eta_dev = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int rp = 0; rp < 2; ++rp) {
      for (int j = -N; j <= N; ++j) {
        for (int l = -N; l <= N; ++l) {
          const cplx v = eta_pairing(cs, RingElement::indicator(cs, r, j),
                                     RingElement::indicator(cs, rp, l));
          const cplx expect =
              (r == rp && j == l) ? cplx(r == 0 ? ea : eb, 0.0) : cplx(0.0, 0.0);
          eta_dev = std::max(eta_dev, cdist(v, expect));
        }
      }
    }
  }

  const CouplingMatrix C = coupling_matrix(cs);
  const double A = -(1.0 + 0.5 * std::cosh(2.0 * gamma));
  const double B = 0.5 * std::sinh(2.0 * gamma) - gamma;
  double c_dev = 0.0;
  double direct_dev = 0.0;
  const double c = std::cosh(gamma);
  for (int j = -N; j <= N; ++j) {
    c_dev = std::max(c_dev, cdist(C.diag[cs.index(0, j)], cplx(A + B, two_pi * j)));
    c_dev = std::max(c_dev, cdist(C.diag[cs.index(1, j)], cplx(A - B, two_pi * j)));
    // independent evaluation at the located critical points, written out by
    // hand instead of going through the polynomial helpers
    for (int r = 0; r < 2; ++r) {
      const cplx x = cs.point(r, j);
      const cplx direct = 0.5 * std::exp(2.0 * x) - 2.0 * c * std::exp(x) + x;
      direct_dev = std::max(direct_dev, cdist(C.diag[cs.index(r, j)], direct));
    }
  }

  const double dt = seconds_since(t0);
  const bool ok = eta_dev < 1e-12 && c_dev < 1e-12 && direct_dev < 1e-10 && dt < 1.0;
  return {ok, fmt("eta dev %.2e, C dev %.2e (tol 1e-12), direct dev %.2e (tol 1e-10), %.3fs",
                  eta_dev, c_dev, direct_dev, dt)};
}

std::pair<bool, std::string> commutator_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  const int M = 64;
  const int N = 32;
  double worst = 0.0;
  for (uint64_t seed = 1; seed <= 10; ++seed)
    worst = std::max(worst, commutator_identity_residual(oracles::random_symbol_r1(seed, M), N));
  const double gamma = 0.5;
  for (uint64_t seed = 11; seed <= 20; ++seed) {
    const oracles::BoostParams bp = oracles::random_boost(seed, 2, 0.3);
    const MetricSymbol g = MetricSymbol::from_function(
        2, M, [&](double th) { return oracles::boost_matrix(bp, th); });
    worst = std::max(worst, commutator_identity_residual(g, N, gamma));
  }
  const double dt = seconds_since(t0);
  const bool ok = worst < 1e-8 && dt < 5.0;
  return {ok, fmt("20 symbols, worst residual %.2e (tol 1e-8), %.3fs (limit 5s)", worst, dt)};
}

std::pair<bool, std::string> reality_detection() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst_clean = 0.0;
  double weakest_flag = 1e300;
  for (int trial = 0; trial < 20; ++trial) {
    const cplx t = (0.5 + 1.2 * std::abs(dist(rng))) * std::exp(iu * (pi_const * dist(rng)));
    const double a1 = dist(rng), b1 = dist(rng), a2 = dist(rng);
    const MetricSymbol f = MetricSymbol::from_function(1, 64, [&](double th) {
      const double phi = a1 * std::cos(two_pi * th) + b1 * std::sin(two_pi * th) +
                         a2 * std::cos(2.0 * two_pi * th);
      Matrix v(1, 1);
      v(0, 0) = std::exp(iu * phi) / std::abs(t);
      return v;
    });
    worst_clean = std::max(worst_clean, symbol_reality_residual(f, t));

    MetricSymbol bad = f;
    const int m = 1 + trial % 62;
    Matrix v = bad.sample(m);
    v(0, 0) *= 1.0 + 1e-3;
    bad.set_sample(m, v);
    weakest_flag = std::min(weakest_flag, symbol_reality_residual(bad, t));
  }
  const bool ok = worst_clean < 1e-12 && weakest_flag > 1e-4;
  return {ok, fmt("20 phases: clean %.2e (tol 1e-12), perturbed %.2e (floor 1e-4)",
                  worst_clean, weakest_flag)};
}

std::pair<bool, std::string> flatness_routes() {
  // manufactured band-limited phase away from any flatness solution
  const TGrid g = centered_grid(5, 0.02, 2.0, 0.5);
  const PhaseField phi = PhaseField::sample(g, 64, [](double t1, double t2, double th) {
    return 0.3 * std::cos(two_pi * th) * t1 + 0.2 * std::sin(2.0 * two_pi * th) * t2;
  });
  const TtstarOracle oracle = symbol_ttstar_oracle(phi, 16, 2, 2);

  // harmonic family: the scalar residual is pure truncation error, O(h^2)
  auto scalar_residual = [](double h) {
    const TGrid gh = centered_grid(5, h, 0.0, 0.2);
    const PhaseField p = PhaseField::sample(gh, 32, [](double t1, double, double th) {
      return 0.1 * std::cos(two_pi * th) * std::exp(two_pi * t1);
    });
    return symbol_ttstar_oracle(p, 4, 2, 2).scalar_residual;
  };
  const double r_coarse = scalar_residual(0.02);
  const double r_fine = scalar_residual(0.01);
  const double ratio = r_coarse / r_fine;

  const bool ok = oracle.gap < 1e-6 && ratio > 3.2 && ratio < 4.8;
  return {ok, fmt("route gap %.2e (tol 1e-6), harmonic refinement ratio %.3f (want 4 +- 20%%)",
                  oracle.gap, ratio)};
}

std::pair<bool, std::string> radial_decay() {
  const auto t0 = std::chrono::steady_clock::now();
  const double r1 = 5.0;
  const RadialProfile p = solve_radial_decaying(1, 0, 0.4, r1, 1.0, 4097);
  const double ld = asymptotic_decay_check(p.r, p.h);
  const double rel = std::abs((ld + two_pi) / two_pi);

  // independent adaptive integration from far field down to the endpoint;
  // the grid value carries the h^2 kappa^2 / 3 endpoint-stencil error, so the
  // agreement bound is relative
  const double oracle = oracles::adaptive_log_derivative(1, 0, r1, r1 + 3.0);
  const double oracle_gap = std::abs(ld - oracle) / std::abs(oracle);

  // the same quantity at the much smaller radius, reported for scale
  const double ld_small = oracles::adaptive_log_derivative(1, 0, r1 / two_pi, r1);

  const double dt = seconds_since(t0);
  const bool ok = rel < 0.02 && oracle_gap < 1e-4 && dt < 1.0;
  return {ok, fmt("ld(%.0f) = %.5f vs -2pi: %.2f%% (limit 2%%), oracle gap %.2e rel, "
                  "ld(5/(2pi)) = %.5f, %.3fs",
                  r1, ld, 100.0 * rel, oracle_gap, ld_small, dt)};
}

std::pair<bool, std::string> reduced_equation() {
  // identity field: both residuals are exact floating-point zero
  const TGrid g = centered_grid(5, 0.1);
  const SymbolField id = SymbolField::sample(g, 2, 8, [](double, double, double) {
    return Matrix(Matrix::Identity(2, 2));
  });
  const double id_deformed = su11_field_residual(ReducedConnection(id, b_constant(0.5)), 2, 2);
  const double id_plain = pcf_residual(id, 2, 2);
  const bool exact = id_deformed == 0.0 && id_plain == 0.0;

  // diagonal harmonic-phase field: residual decays at second order
  auto diag_residual = [](double h) {
    const TGrid gh = centered_grid(5, h, 0.0, 0.2);
    const SymbolField f = SymbolField::sample(gh, 2, 32, [](double t1, double, double th) {
      Matrix m = Matrix::Zero(2, 2);
      const double phi = 0.1 * std::cos(two_pi * th) * std::exp(two_pi * t1);
      m(0, 0) = std::exp(iu * phi);
      m(1, 1) = std::exp(-iu * phi);
      return m;
    });
    return pcf_residual(f, 2, 2);
  };
  const double ratio = diag_residual(0.02) / diag_residual(0.01);

  // random diagonal fields: the two-chain operator splits into two copies of
  // the one-chain operator
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-0.4, 0.4);
  double abelian_dev = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const double p0 = dist(rng), q0 = dist(rng), c0 = dist(rng), d0 = dist(rng);
    const double p1 = dist(rng), q1 = dist(rng), c1 = dist(rng), d1 = dist(rng);
    auto entry0 = [&](double t1, double t2, double th) {
      return std::exp(cplx(p0 * t1 + q0 * t2, c0 * std::cos(two_pi * th) + d0 * t1));
    };
    auto entry1 = [&](double t1, double t2, double th) {
      return std::exp(cplx(p1 * t2, c1 * std::sin(two_pi * th) + d1 * t2 + q1 * t1));
    };
    const TGrid ga = centered_grid(5, 0.05, 0.3, 0.2);
    const SymbolField pair = SymbolField::sample(ga, 2, 16, [&](double t1, double t2, double th) {
      Matrix m = Matrix::Zero(2, 2);
      m(0, 0) = entry0(t1, t2, th);
      m(1, 1) = entry1(t1, t2, th);
      return m;
    });
    const SymbolField first = SymbolField::sample(ga, 1, 16, [&](double t1, double t2, double th) {
      Matrix m(1, 1);
      m(0, 0) = entry0(t1, t2, th);
      return m;
    });
    const SymbolField second = SymbolField::sample(ga, 1, 16, [&](double t1, double t2, double th) {
      Matrix m(1, 1);
      m(0, 0) = entry1(t1, t2, th);
      return m;
    });
    const std::vector<Matrix> line = field_equation_line(ReducedConnection(pair, 0.0), 2, 2);
    const std::vector<Matrix> l0 = field_equation_line(ReducedConnection(first, 0.0), 2, 2);
    const std::vector<Matrix> l1 = field_equation_line(ReducedConnection(second, 0.0), 2, 2);
    for (int m = 0; m < 16; ++m) {
      const Matrix& block = line[static_cast<size_t>(m)];
      const cplx a = l0[static_cast<size_t>(m)](0, 0);
      const cplx b = l1[static_cast<size_t>(m)](0, 0);
      const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
      abelian_dev = std::max(abelian_dev, std::abs(block(0, 0) - a) / scale);
      abelian_dev = std::max(abelian_dev, std::abs(block(1, 1) - b) / scale);
      abelian_dev = std::max(abelian_dev, std::abs(block(0, 1)) / scale);
      abelian_dev = std::max(abelian_dev, std::abs(block(1, 0)) / scale);
    }
  }

  const bool ok = exact && ratio > 3.2 && ratio < 4.8 && abelian_dev < 1e-10;
  return {ok, fmt("identity residuals %s, harmonic ratio %.3f (want 4 +- 20%%), "
                  "abelian dev %.2e (tol 1e-10)",
                  exact ? "exactly 0" : "NONZERO", ratio, abelian_dev)};
}

std::pair<bool, std::string> deformation_gap() {
  const TGrid g = centered_grid(5, 0.1, 0.5, -0.3);
  const SymbolField f = drifting_boost(g, 16, 1.3);
  const std::vector<double> gammas = {0.5, 0.25, 0.125};
  const std::vector<BLimitRow> rows = b_limit_consistency(f, 2, 2, gammas);

  double b_dev = 0.0;
  std::vector<double> logb, logg;
  bool positive = true;
  for (size_t i = 0; i < rows.size(); ++i) {
    const double expected_b = 0.5 * std::sinh(2.0 * gammas[i]) - gammas[i];
    b_dev = std::max(b_dev, std::abs(rows[i].b - expected_b) / expected_b);
    positive = positive && rows[i].gap > 0.0;
    logb.push_back(std::log(rows[i].b));
    logg.push_back(std::log(rows[i].gap));
  }
  const oracles::LineFit fit = oracles::fit_line(logb, logg);

  const bool ok = rows.size() == 3 && b_dev < 1e-14 && positive &&
                  std::abs(fit.slope - 1.0) < 0.3;
  return {ok, fmt("B dev %.2e vs formula, log-log slope %.4f (want 1 +- 0.3)",
                  b_dev, fit.slope)};
}

std::pair<bool, std::string> rescaled_family() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double worst = 0.0;
  double worst_reality = 0.0;
  double worst_roundtrip = 0.0;
  for (uint64_t seed = 100; seed < 110; ++seed) {
    const double gamma = 0.3 + 1.2 * dist(rng);
    const cplx t = (0.5 + dist(rng)) * std::exp(iu * (two_pi * dist(rng)));
    const double c = 1.0 / (2.0 * std::abs(t) * std::sinh(gamma));
    const oracles::BoostParams bp = oracles::random_boost(seed);
    Matrix D = Matrix::Zero(2, 2);
    D(0, 0) = std::exp(0.5 * gamma);
    D(1, 1) = std::exp(-0.5 * gamma);

    // the rescaled representative satisfies the reality constraint
    const MetricSymbol member = MetricSymbol::from_function(
        2, 64, [&](double th) { return Matrix(c * oracles::boost_matrix(bp, th)); });
    worst_reality = std::max(worst_reality, symbol_reality_residual(member, t, gamma));

    // full-basis metric built by hand, then pushed through the rescaling
    const MetricSymbol g = MetricSymbol::from_function(2, 64, [&](double th) {
      return Matrix(D * (c * oracles::boost_matrix(bp, th)) * D);
    });
    const MetricSymbol gt = rescale_D(g, gamma);
    worst_roundtrip = std::max(worst_roundtrip, max_sample_diff(gt, member));
    worst = std::max(worst, su11_residual(gt, c));
  }
  const bool ok = worst_reality < 1e-12 && worst < 1e-10 && worst_roundtrip < 1e-12;
  return {ok, fmt("10 members: reality %.2e (tol 1e-12), group residual %.2e (tol 1e-10), "
                  "rescale agreement %.2e",
                  worst_reality, worst, worst_roundtrip)};
}

std::pair<bool, std::string> second_flatness() {
  const TGrid g = centered_grid(10, 0.07, 0.4, -0.2);
  const ExpPolynomial wp = ExpPolynomial::model_b(cplx(1.0, 0.0), std::cosh(0.8));
  const CriticalChainSet cs = find_critical_chains(wp, 2);
  const CouplingMatrix C = coupling_matrix(cs);
  const int dim = cs.dim();

  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  int nodes = 0;
  for (int trial = 0; trial < 3; ++trial) {
    const MatrixGrid samples = MatrixGrid::sample(g, [&](int, int) {
      Matrix m(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c2 = 0; c2 < dim; ++c2) m(r, c2) = cplx(dist(rng), dist(rng));
      return m;
    });
    for (int i1 = 2; i1 < g.n1 - 2; ++i1)
      for (int i2 = 2; i2 < g.n2 - 2; ++i2) {
        worst = std::max(worst, second_zero_curvature_residual(samples, C, i1, i2));
        ++nodes;
      }
  }
  const bool ok = worst == 0.0 && nodes > 0;
  return {ok, fmt("%d random interior evaluations, worst residual %s", nodes,
                  worst == 0.0 ? "exactly 0" : fmt("%.2e (NONZERO)", worst).c_str())};
}

// ---- criterion 11: the installed command-line surface ----

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LGTT_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
  std::vector<std::vector<double>> rows;
  bool header_seen = false;
  std::string text = read_text_file(p.string());
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    size_t start = 0;
    while (start <= line.size()) {
      size_t comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      row.push_back(std::stod(line.substr(start, comma - start)));
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::pair<bool, std::string> cli_contract() {
  const fs::path root("acceptance_scratch");
  fs::remove_all(root);
  fs::create_directories(root);
  auto put = [&](const std::string& name, const std::string& content) {
    write_text_file((root / name).string(), content);
    return (root / name).string();
  };
  auto out = [&](const std::string& name) { return (root / name).string(); };
  std::string problems;
  auto expect = [&](const char* what, int got, int want) {
    if (got != want) problems += fmt(" [%s: exit %d, want %d]", what, got, want);
  };

  // -- ring --
  const std::string ring_cfg = put("ring.json", R"({"model": "model_a", "t": [1.0, 0.0], "N": 2})");
  expect("ring ok", run_cli("ring --config " + ring_cfg + " --out " + out("ring1")), 0);
  {
    const json rep = json::parse(read_text_file(out("ring1") + "/ring_report.json"));
    const auto& cd = rep["c_diagonal"];
    bool entries = cd.size() == 5;
    for (int i = 0; entries && i < 5; ++i)
      entries = std::abs(cd[i][0].get<double>() - 1.0) < 1e-12 &&
                std::abs(cd[i][1].get<double>() + two_pi * (i - 2)) < 1e-12;
    if (!entries) problems += " [ring report entries off]";
  }
  const std::string degen = put("degen.json",
                                R"({"model": "model_b", "t": [1.0, 0.0], "N": 2, "c": 1.0})");
  expect("ring degenerate", run_cli("ring --config " + degen + " --out " + out("ring2")), 3);
  const std::string noterms = put("noterms.json", R"({
    "model": "custom", "t": [1.0, 0.0], "N": 2,
    "custom": {"linear_coeff": [-1.0, 0.0], "exp_terms": []}})");
  expect("ring malformed", run_cli("ring --config " + noterms + " --out " + out("ring3")), 2);

  // -- verify, plus byte-level determinism across two runs --
  {
    const MetricSymbol s = MetricSymbol::from_function(1, 16, [](double) {
      return Matrix(Matrix::Identity(1, 1));
    });
    put("symbol.json", symbol_to_json(s).dump());
    TGrid g;
    g.n1 = 5;
    g.n2 = 5;
    g.h = 0.1;
    g.t1_min = 0.8;
    g.t2_min = -0.2;
    // at N = 1 the pairing is the 3 x 3 identity and the constant unit
    // metric satisfies reality and flatness exactly
    const Matrix eta = Matrix::Identity(3, 3);
    const MatrixGrid samples =
        MatrixGrid::sample(g, [&](int, int) { return Matrix(Matrix::Identity(3, 3)); });
    put("grid.json", metric_grid_to_json(samples, eta).dump());
  }
  const std::string verify_cfg = put("verify.json", R"({
    "model": "model_a", "t": [1.0, 0.0], "N": 1, "M": 16,
    "verify": {"symbol": "symbol.json", "metric_grid": "grid.json"}})");
  expect("verify ok", run_cli("verify --config " + verify_cfg + " --out " + out("v1")), 0);
  expect("verify rerun", run_cli("verify --config " + verify_cfg + " --out " + out("v2")), 0);
  for (const char* name : {"verify_report.json", "reality_map.csv", "zc_map.csv"}) {
    if (read_text_file(out("v1") + "/" + name) != read_text_file(out("v2") + "/" + name))
      problems += fmt(" [%s differs between runs]", name);
  }
  {
    const MetricSymbol bad = MetricSymbol::from_function(1, 16, [](double) {
      return Matrix(cplx(1.001, 0.0) * Matrix::Identity(1, 1));
    });
    put("bad_symbol.json", symbol_to_json(bad).dump());
  }
  const std::string verify_bad = put("verify_bad.json", R"({
    "model": "model_a", "t": [1.0, 0.0], "N": 1, "M": 16, "tol": 1e-6,
    "verify": {"symbol": "bad_symbol.json"}})");
  expect("verify tolerance", run_cli("verify --config " + verify_bad + " --out " + out("v3")), 1);
  const std::string verify_mm = put("verify_mm.json", R"({
    "model": "model_a", "t": [1.0, 0.0], "N": 1, "M": 32,
    "verify": {"symbol": "symbol.json"}})");
  expect("verify usage", run_cli("verify --config " + verify_mm + " --out " + out("v4")), 2);

  // -- reduce --
  {
    const MetricSymbol s = MetricSymbol::from_coefficients(
        1, 32, {{0, Matrix::Identity(1, 1)}, {1, 0.25 * Matrix::Identity(1, 1)}});
    put("reduce_symbol.json", symbol_to_json(s).dump());
    const double gamma = 1.0;
    const double c = 1.0 / (2.0 * std::sinh(gamma));
    Matrix D = Matrix::Zero(2, 2);
    D(0, 0) = std::exp(0.5 * gamma);
    D(1, 1) = std::exp(-0.5 * gamma);
    const oracles::BoostParams bp = oracles::random_boost(5);
    const MetricSymbol pair = MetricSymbol::from_function(2, 32, [&](double th) {
      return Matrix(D * (c * oracles::boost_matrix(bp, th)) * D);
    });
    put("reduce_pair.json", symbol_to_json(pair).dump());
  }
  const std::string reduce_cfg = put("reduce.json", R"({
    "model": "model_a", "t": [1.0, 0.0], "N": 4, "M": 32,
    "reduce": {"symbol": "reduce_symbol.json"}})");
  expect("reduce ok", run_cli("reduce --config " + reduce_cfg + " --out " + out("rd1")), 0);
  // declaring the wrong branch point puts the pair outside the scaled group
  const std::string reduce_off = put("reduce_off.json", R"({
    "model": "model_b", "t": [1.0, 0.0], "gamma": 0.4, "N": 4, "M": 32,
    "reduce": {"symbol": "reduce_pair.json"}})");
  expect("reduce tolerance", run_cli("reduce --config " + reduce_off + " --out " + out("rd2")), 1);
  const std::string reduce_alias = put("reduce_alias.json", R"({
    "model": "model_a", "t": [1.0, 0.0], "N": 8, "M": 32,
    "reduce": {"symbol": "reduce_symbol.json"}})");
  expect("reduce usage", run_cli("reduce --config " + reduce_alias + " --out " + out("rd3")), 2);

  // -- solve-modes --
  {
    BoundaryPhase b;
    b.r0 = 0.5;
    b.n_psi = 8;
    b.M = 4;
    for (int p = 0; p < b.n_psi; ++p)
      for (int m = 0; m < b.M; ++m)
        b.values.push_back(2.5 + 0.3 * std::cos(two_pi * p / b.n_psi));
    put("boundary_k0.json", boundary_phase_to_json(b).dump());
    BoundaryPhase w;
    w.r0 = 0.5;
    w.n_psi = 8;
    w.M = 4;
    for (int p = 0; p < w.n_psi; ++p)
      for (int m = 0; m < w.M; ++m) w.values.push_back(std::cos(two_pi * m / w.M));
    put("boundary_k1.json", boundary_phase_to_json(w).dump());
    put("boundary_empty.json",
        R"({"kind": "boundary_phase", "r0": 0.5, "n_psi": 8, "M": 4, "values": []})");
  }
  const char* modes_grid = R"("grid": {"n1": 5, "n2": 5, "h": 0.25, "t1_min": 0.6, "t2_min": -0.5})";
  const std::string modes_k0 = put("modes_k0.json", fmt(R"({
    "model": "model_a", "t": [1.0, 0.0],
    "solve_modes": {"boundary": "boundary_k0.json", "r1": 5.0, "k_max": 0, "n_max": 1, %s}})",
                                                        modes_grid));
  expect("solve-modes power law", run_cli("solve-modes --config " + modes_k0 + " --out " + out("m1")), 0);
  {
    // every k = 0 profile is an exact power law: log h is linear in log r
    double fit_residual = 0.0;
    std::vector<double> lr, lh;
    const auto rows = read_csv(out("m1") + "/modes_profiles.csv");
    for (int n = -1; n <= 1; ++n) {
      lr.clear();
      lh.clear();
      for (const auto& row : rows)
        if (row[0] == 0.0 && row[1] == static_cast<double>(n)) {
          lr.push_back(std::log(row[2]));
          lh.push_back(std::log(std::abs(row[3])));
        }
      fit_residual = std::max(fit_residual, oracles::fit_line(lr, lh).max_abs_residual);
    }
    if (fit_residual >= 1e-8) problems += fmt(" [k=0 log fit residual %.2e]", fit_residual);
  }
  const std::string modes_k1 = put("modes_k1.json", fmt(R"({
    "model": "model_a", "t": [1.0, 0.0],
    "solve_modes": {"boundary": "boundary_k1.json", "r1": 5.0, "k_max": 1, "n_max": 0, %s}})",
                                                        modes_grid));
  expect("solve-modes decay", run_cli("solve-modes --config " + modes_k1 + " --out " + out("m2")), 0);
  {
    bool found = false;
    for (const auto& row : read_csv(out("m2") + "/decay_table.csv"))
      if (row[0] == 1.0 && row[1] == 0.0) {
        found = true;
        if (row[4] >= 0.02) problems += fmt(" [k=1 decay off by %.2f%%]", 100.0 * row[4]);
      }
    if (!found) problems += " [k=1 row missing from decay table]";
  }
  const std::string modes_empty = put("modes_empty.json", fmt(R"({
    "model": "model_a", "t": [1.0, 0.0],
    "solve_modes": {"boundary": "boundary_empty.json", "r1": 5.0, "k_max": 1, "n_max": 1, %s}})",
                                                              modes_grid));
  expect("solve-modes usage", run_cli("solve-modes --config " + modes_empty + " --out " + out("m3")), 2);

  // -- pcf-check --
  {
    TGrid g;
    g.n1 = 6;
    g.n2 = 6;
    g.h = 0.1;
    g.t1_min = 0.5;
    g.t2_min = -0.3;
    const SymbolField id = SymbolField::sample(g, 2, 8, [](double, double, double) {
      return Matrix(Matrix::Identity(2, 2));
    });
    put("field_id.json", symbol_field_to_json(id).dump());
    const SymbolField bumpy = SymbolField::sample(g, 2, 8, [](double t1, double t2, double) {
      Matrix m = Matrix::Identity(2, 2);
      m(0, 0) += cplx(0.2 * t1 * t1 + 0.1 * t2, 0.0);
      return m;
    });
    put("field_bumpy.json", symbol_field_to_json(bumpy).dump());
  }
  const std::string pcf_cfg = put("pcf.json", R"({
    "model": "model_b", "t": [1.0, 0.0], "gamma": 0.5, "M": 8,
    "pcf_check": {"field": "field_id.json"}})");
  expect("pcf-check ok", run_cli("pcf-check --config " + pcf_cfg + " --out " + out("p1")), 0);
  const std::string pcf_bump = put("pcf_bump.json", R"({
    "model": "model_b", "t": [1.0, 0.0], "gamma": 0.5, "M": 8,
    "pcf_check": {"field": "field_bumpy.json"}})");
  expect("pcf-check tolerance", run_cli("pcf-check --config " + pcf_bump + " --out " + out("p2")), 1);
  const std::string pcf_nom = put("pcf_nom.json", R"({
    "model": "model_b", "t": [1.0, 0.0], "gamma": 0.5,
    "pcf_check": {"field": "field_id.json"}})");
  expect("pcf-check usage", run_cli("pcf-check --config " + pcf_nom + " --out " + out("p3")), 2);

  return {problems.empty(),
          problems.empty() ? std::string("byte-identical reruns; 15 exit-code classes hold")
                           : problems};
}

}  // namespace

int main() {
  criterion(1, "one-chain pairing and coupling diagonal", one_chain_tables);
  criterion(2, "two-chain pairing blocks and coupling split", two_chain_tables);
  criterion(3, "commutator identity on random band-limited symbols", commutator_identity);
  criterion(4, "one-chain reality residual flags modulus defects", reality_detection);
  criterion(5, "matrix and scalar flatness routes on manufactured fields", flatness_routes);
  criterion(6, "radial decay rate of the k = 1 mode", radial_decay);
  criterion(7, "reduced equation exactness and abelian agreement", reduced_equation);
  criterion(8, "deformation gap scales linearly in the coupling", deformation_gap);
  criterion(9, "rescaled reality family lands in the scaled group", rescaled_family);
  criterion(10, "second flatness condition is identically zero", second_flatness);
  criterion(11, "CLI determinism and exit-code contract", cli_contract);

  if (g_failures == 0) {
    std::printf("acceptance: all 11 criteria hold\n");
    return 0;
  }
  std::printf("acceptance: %d of 11 criteria FAILED\n", g_failures);
  return 1;
}
