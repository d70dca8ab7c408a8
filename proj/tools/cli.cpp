#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include <hgflow/contiguity.hpp>
#include <hgflow/error.hpp>
#include <hgflow/hamiltonian.hpp>
#include <hgflow/hgsolution.hpp>
#include <hgflow/json_io.hpp>
#include <hgflow/lax.hpp>
#include <hgflow/parallel.hpp>
#include <hgflow/pfaffian.hpp>
#include <hgflow/series.hpp>

namespace hgflow::cli {

namespace {

using io::json;

constexpr const char* kComplexHelp =
    "Complex numbers are written as re, imj or re+imj (e.g. 0.3, -2j, 0.25-0.1j).";

// A single pass/fail measurement. upper == true means value <= threshold is
// a pass; otherwise value > threshold is (negative controls).
struct Check {
  std::string name;
  double value;
  double threshold;
  bool upper = true;

  bool pass() const { return upper ? value <= threshold : value > threshold; }
};

struct Report {
  std::string command;
  json params = json::object();
  std::vector<Check> checks;
  json result = json::object();
  std::vector<std::string> text_lines;  // extra lines for text output

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string full(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

void render(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"name", c.name},
                        {"value", c.value},
                        {"threshold", c.threshold},
                        {"comparison", c.upper ? "<=" : ">"},
                        {"pass", c.pass()}});
    json doc = {{"command", r.command}, {"params", r.params}, {"checks", checks}, {"result", r.result},
                {"pass", r.pass()}};
    out << doc.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    out << "check,value,threshold,comparison,status\n";
    for (const auto& c : r.checks)
      out << c.name << "," << sci(c.value) << "," << sci(c.threshold) << "," << (c.upper ? "<=" : ">") << ","
          << (c.pass() ? "PASS" : "FAIL") << "\n";
    return;
  }
  out << r.command << "\n";
  for (const auto& line : r.text_lines) out << "  " << line << "\n";
  std::size_t width = 0;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  for (const auto& c : r.checks) {
    out << "  " << c.name << std::string(width - c.name.size() + 2, ' ') << sci(c.value) << "  "
        << (c.upper ? "<= " : ">  ") << sci(c.threshold) << "  " << (c.pass() ? "PASS" : "FAIL") << "\n";
  }
  if (!r.checks.empty()) out << (r.pass() ? "PASS" : "FAIL") << "\n";
}

// ---------------------------------------------------------------------------
// parameter sources

struct ParamOptions {
  std::string file;
  int L = 0;
  int N = 0;
  std::vector<std::string> alpha, beta, gamma, e, kappa, theta;
  std::uint64_t seed = 0;
};

void add_param_options(CLI::App* sub, ParamOptions& po) {
  sub->add_option("--params", po.file, "JSON parameter file ({L,N,e,kappa,theta} or {L,N,alpha,beta,gamma})");
  sub->add_option("--L", po.L, "matrix size L >= 2");
  sub->add_option("--N", po.N, "number of variables N >= 1");
  sub->add_option("--alpha", po.alpha, "alpha_1..alpha_{L-1}");
  sub->add_option("--beta", po.beta, "beta_1..beta_N");
  sub->add_option("--gamma", po.gamma, "gamma_1..gamma_{L-1}");
  sub->add_option("--e", po.e, "e_0..e_{L-1}");
  sub->add_option("--kappa", po.kappa, "kappa_0..kappa_{L-1}");
  sub->add_option("--theta", po.theta, "theta_1..theta_N or theta_0..theta_N");
  sub->add_option("--seed", po.seed, "seed for random parameters and samples (default 0)");
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

std::vector<cplx> parse_list(const std::vector<std::string>& tokens) {
  std::vector<cplx> out;
  for (const auto& t : tokens) out.push_back(parse_complex(t));
  return out;
}

enum class Source { File, InlineHG, InlineSystem, Random };

Source source_of(const ParamOptions& po) {
  const bool hg = !po.alpha.empty() || !po.beta.empty() || !po.gamma.empty();
  const bool sys = !po.e.empty() || !po.kappa.empty() || !po.theta.empty();
  const int count = int(!po.file.empty()) + int(hg) + int(sys);
  if (count > 1) bad("give exactly one parameter source: --params, inline (alpha, beta, gamma) or inline (e, kappa, theta)");
  if (!po.file.empty()) return Source::File;
  if (hg) return Source::InlineHG;
  if (sys) return Source::InlineSystem;
  return Source::Random;
}

void require_shape(const ParamOptions& po) {
  if (po.L == 0 || po.N == 0) bad("inline parameters need --L and --N");
}

int dim_or(int v, int fallback) { return v == 0 ? fallback : v; }

SystemParams resolve_system(const ParamOptions& po, bool reducible) {
  switch (source_of(po)) {
    case Source::File: {
      const json j = io::read_json_file(po.file);
      if (!j.contains("e")) bad(po.file + ": expected the {L,N,e,kappa,theta} form");
      return io::system_params_from_json(j);
    }
    case Source::InlineSystem:
      require_shape(po);
      return SystemParams(po.L, po.N, parse_list(po.e), parse_list(po.kappa), parse_list(po.theta));
    case Source::InlineHG:
      bad("this command needs (e, kappa, theta), not (alpha, beta, gamma)");
    case Source::Random:
      break;
  }
  return random_params(po.seed, dim_or(po.L, 3), dim_or(po.N, 2), reducible);
}

HGParams resolve_hg(const ParamOptions& po) {
  switch (source_of(po)) {
    case Source::File: {
      const json j = io::read_json_file(po.file);
      if (j.contains("alpha")) return io::hg_params_from_json(j);
      return map_system_to_hg(io::system_params_from_json(j));
    }
    case Source::InlineHG:
      require_shape(po);
      return HGParams(po.L, po.N, parse_list(po.alpha), parse_list(po.beta), parse_list(po.gamma));
    case Source::InlineSystem:
      require_shape(po);
      return map_system_to_hg(SystemParams(po.L, po.N, parse_list(po.e), parse_list(po.kappa), parse_list(po.theta)));
    case Source::Random:
      break;
  }
  return map_system_to_hg(random_params(po.seed, dim_or(po.L, 3), dim_or(po.N, 2), false));
}

std::vector<cplx> point_arg(const std::vector<std::string>& tokens, int N, const char* name) {
  auto x = parse_list(tokens);
  if (static_cast<int>(x.size()) != N) bad(std::string(name) + " needs N = " + std::to_string(N) + " entries");
  return x;
}

json complex_list(std::span<const cplx> v) { return io::to_json(std::vector<cplx>(v.begin(), v.end())); }

// ---------------------------------------------------------------------------
// sampling helpers shared by the checks

std::vector<cplx> generic_point(std::mt19937_64& rng, int N) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (;;) {
    std::vector<cplx> x(N);
    for (auto& v : x) v = {u(rng), u(rng)};
    if (locus_distance(x) > 0.1) return x;
  }
}

std::vector<cplx> chamber_point(std::mt19937_64& rng, int N) {
  std::uniform_real_distribution<double> u(0.1, 0.9);
  for (;;) {
    std::vector<double> v(N);
    for (auto& t : v) t = u(rng);
    std::sort(v.rbegin(), v.rend());
    std::vector<cplx> x(v.begin(), v.end());
    if (locus_distance(x) > 0.05) return x;
  }
}

CVector random_cvector(std::mt19937_64& rng, int n, double r = 1.0) {
  std::uniform_real_distribution<double> u(-r, r);
  CVector v(n);
  for (auto& c : v) c = {u(rng), u(rng)};
  return v;
}

double max_abs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------
// subcommands

struct Common {
  ParamOptions po;
  std::string format = "text";
  std::optional<double> tol;
  std::optional<int> degree_opt;
  int degree = 0;  // resolved per subcommand
};

void add_common(CLI::App* sub, Common& c, int default_degree) {
  add_param_options(sub, c.po);
  sub->add_option("--degree", c.degree_opt, "series truncation degree M (default " + std::to_string(default_degree) + ")")
      ->check(CLI::PositiveNumber);
  sub->preparse_callback([&c, default_degree](std::size_t) { c.degree = default_degree; });
  sub->add_option("--tol", c.tol, "tolerance (overrides the per-check defaults)")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "csv", "json"}));
}

double tol_or(const Common& c, double fallback) { return c.tol.value_or(fallback); }

struct EvalOptions {
  std::vector<std::string> x;
  std::string method = "series";
  int nodes = 48;
  bool dump = false;
};

int cmd_eval(const Common& c, const EvalOptions& eo, std::ostream& out) {
  const HGParams hp = resolve_hg(c.po);
  const auto x = point_arg(eo.x, hp.N(), "--x");
  const auto ts = series_coefficients(hp, c.degree);
  if (eo.dump) {
    out << std::setprecision(17);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      for (int v : ts.layout().index(k)) out << v << ",";
      out << ts[k].real() << "," << ts[k].imag() << "\n";
    }
    return 0;
  }
  Report r{"eval"};
  r.params = io::to_json(hp);
  r.result["x"] = complex_list(x);
  r.result["degree"] = c.degree;
  std::optional<cplx> sv, iv;
  if (eo.method != "integral") {
    const auto v = eval_series(ts, x);
    sv = v.value;
    r.result["series"] = {{"value", io::to_json(v.value)}, {"tail_bound", v.tail_bound}};
    r.text_lines.push_back("series   = " + full(v.value) + "  (tail bound " + sci(v.tail_bound) + ")");
  }
  if (eo.method != "series") {
    iv = eval_integral(hp, x, {eo.nodes});
    r.result["integral"] = {{"value", io::to_json(*iv)}, {"nodes", eo.nodes}};
    r.text_lines.push_back("integral = " + full(*iv) + "  (" + std::to_string(eo.nodes) + " nodes per axis)");
  }
  if (sv && iv) r.checks.push_back({"series_vs_integral", std::abs(*sv - *iv), tol_or(c, 1e-8)});
  render(r, c.format, out);
  return r.pass() ? 0 : 1;
}

int cmd_pde(const Common& c, std::ostream& out) {
  const HGParams hp = resolve_hg(c.po);
  Report r{"pde-check"};
  r.params = io::to_json(hp);
  r.result["degree"] = c.degree;
  for (int i = 1; i <= hp.N(); ++i) {
    const auto res = hg_pde_residual(hp, c.degree, i);
    r.checks.push_back({"pde_scaled_i" + std::to_string(i), res.max_scaled, tol_or(c, 1e-12)});
    r.result["max_abs"].push_back(res.max_abs);
  }
  render(r, c.format, out);
  return r.pass() ? 0 : 1;
}

int cmd_pfaffian(const Common& c, int samples, std::ostream& out) {
  const HGParams hp = resolve_hg(c.po);
  const int L = hp.L();
  const int N = hp.N();
  const auto pc = build_connection(hp);
  std::mt19937_64 rng(c.po.seed);
  std::vector<std::pair<std::vector<cplx>, CVector>> pts;
  for (int k = 0; k < samples; ++k) {
    auto x = generic_point(rng, N);
    pts.emplace_back(std::move(x), random_cvector(rng, SolutionVector::rank(L, N)));
  }
  struct Sample {
    double agree = 0.0;
    double frob = 0.0;
  };
  const auto per = parallel_map<Sample>(pts.size(), [&](std::size_t k) {
    const auto& [x, v] = pts[k];
    const SolutionVector y(L, N, v);
    const auto om = omega_at(pc, x);
    const auto sd = scalar_derivative(hp, x, y);
    Sample s;
    for (int i = 0; i < N; ++i) {
      const double scale = (om[i].cwiseAbs() * v.cwiseAbs()).maxCoeff();
      s.agree = std::max(s.agree, max_abs(om[i] * v - sd[i].vec()) / scale);
    }
    s.frob = integrability_residual(pc, x).max_scaled;
    return s;
  });
  double agree = 0.0, frob = 0.0;
  for (const auto& s : per) {
    agree = std::max(agree, s.agree);
    frob = std::max(frob, s.frob);
  }
  const auto sol = holomorphic_solution(hp, c.degree);
  std::vector<cplx> x0(N);
  for (int i = 0; i < N; ++i) x0[i] = 0.05 * (i + 1) / N;
  const auto y0 = evaluate_solution(sol, L, x0);
  const auto d = scalar_derivative(hp, x0, y0);
  double holo = 0.0;
  for (int i = 1; i <= N; ++i) holo = std::max(holo, max_abs(differentiate_solution(sol, L, i, x0).vec() - d[i - 1].vec()));

  Report r{"pfaffian-check"};
  r.params = io::to_json(hp);
  r.result = {{"samples", samples}, {"degree", c.degree}, {"rank", SolutionVector::rank(L, N)}};
  r.checks.push_back({"scalar_vs_matrix", agree, tol_or(c, 1e-13)});
  r.checks.push_back({"integrability_scaled", frob, tol_or(c, 1e-12)});
  r.checks.push_back({"holomorphic_solution", holo, tol_or(c, 1e-9)});
  render(r, c.format, out);
  return r.pass() ? 0 : 1;
}

int cmd_continue(const Common& c, const std::string& path_file, std::ostream& out) {
  const HGParams hp = resolve_hg(c.po);
  const int L = hp.L();
  const int N = hp.N();
  const PathSpec path = io::path_from_json(io::read_json_file(path_file));
  validate_path(path, N);
  const auto sol = holomorphic_solution(hp, c.degree);
  const auto y0 = evaluate_solution(sol, L, path.waypoints.front());
  const double tol = tol_or(c, 1e-10);

  std::vector<std::pair<double, CVector>> rows;
  std::vector<std::vector<cplx>> xs;
  auto record = [&](double s, std::span<const cplx> x, const SolutionVector& y) {
    rows.emplace_back(s, y.vec());
    xs.emplace_back(x.begin(), x.end());
  };
  record(0.0, path.waypoints.front(), y0);
  const auto y_end = continue_solution(build_connection(hp), path, y0, tol, record);

  if (c.format == "json") {
    json samples = json::array();
    for (std::size_t k = 0; k < rows.size(); ++k)
      samples.push_back({{"s", rows[k].first}, {"x", complex_list(xs[k])},
                         {"y", io::to_json(SolutionVector(L, N, rows[k].second))}});
    json doc = {{"command", "continue"}, {"params", io::to_json(hp)}, {"checks", json::array()},
                {"result", {{"tol", tol}, {"samples", samples}, {"final", io::to_json(y_end)}}}, {"pass", true}};
    out << doc.dump(2) << "\n";
    return 0;
  }
  out << "s";
  for (int i = 1; i <= N; ++i) out << ",x_" << i << ".re,x_" << i << ".im";
  for (int k = 0; k < SolutionVector::rank(L, N); ++k) out << ",y_" << k << ".re,y_" << k << ".im";
  out << "\n" << std::setprecision(17);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out << rows[k].first;
    for (const cplx& v : xs[k]) out << "," << v.real() << "," << v.imag();
    for (const cplx& v : rows[k].second) out << "," << v.real() << "," << v.imag();
    out << "\n";
  }
  return 0;
}

// Staircase endpoints: a_i spread along (0, 1), b_i = a_i + (0.08 + 0.12i).
std::pair<std::vector<cplx>, std::vector<cplx>> staircase_ends(int N) {
  std::vector<cplx> a(N), b(N);
  for (int i = 0; i < N; ++i) {
    a[i] = cplx(0.7 * (N - i) / (N + 1), 0.05);
    b[i] = a[i] + cplx(0.08, 0.12);
  }
  return {a, b};
}

PhasePoint staircase(const PhasePoint& start, const std::vector<cplx>& a, const std::vector<cplx>& b,
                     const SystemParams& sp, bool forward, double tol) {
  const int N = sp.N();
  PhasePoint pt = start;
  std::vector<cplx> cur = a;
  for (int k = 0; k < N; ++k) {
    const int i = forward ? k : N - 1 - k;
    std::vector<cplx> next = cur;
    next[i] = b[i];
    pt = flow(cur, next, pt, sp, tol);
    cur = next;
  }
  return pt;
}

int cmd_hamiltonian(const Common& c, int samples, std::ostream& out) {
  const SystemParams sp = resolve_system(c.po, false);
  const int L = sp.L();
  const int N = sp.N();
  std::mt19937_64 rng(c.po.seed);
  double ad_fd = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto x = generic_point(rng, N);
    const int K = N * (L - 1);
    const PhasePoint pt(L, N, random_cvector(rng, K), random_cvector(rng, K));
    const auto field = canonical_vector_field(x, pt, sp);
    const double h = 1e-6;
    for (int j = 1; j <= N; ++j) {
      for (int k = 0; k < K; ++k) {
        for (int which = 0; which < 2; ++which) {
          PhasePoint plus = pt, minus = pt;
          (which == 0 ? plus.qs() : plus.ps())(k) += h;
          (which == 0 ? minus.qs() : minus.ps())(k) -= h;
          const cplx fd = (hamiltonian_value(j, x, plus, sp) - hamiltonian_value(j, x, minus, sp)) / (2 * h);
          const cplx ad = which == 0 ? -field.dp[j - 1](k) : field.dq[j - 1](k);
          ad_fd = std::max(ad_fd, std::abs(fd - ad) / std::max(1.0, std::abs(ad)));
        }
      }
    }
  }
  const auto [a, b] = staircase_ends(N);
  const int K = N * (L - 1);
  const PhasePoint start(L, N, random_cvector(rng, K, 0.3), random_cvector(rng, K, 0.3));
  const double ftol = 1e-12;
  const auto r1 = staircase(start, a, b, sp, true, ftol);
  const auto r2 = staircase(start, a, b, sp, false, ftol);
  const double stair = std::max(max_abs(r1.qs() - r2.qs()), max_abs(r1.ps() - r2.ps()));
  const auto back = flow(b, a, flow(a, b, start, sp, ftol), sp, ftol);
  const double trip = std::max(max_abs(back.qs() - start.qs()), max_abs(back.ps() - start.ps()));

  Report r{"hamiltonian-check"};
  r.params = io::to_json(sp);
  r.result = {{"samples", samples}, {"start", io::to_json(start)}, {"end", io::to_json(r1)}};
  r.checks.push_back({"ad_vs_fd", ad_fd, tol_or(c, 1e-6)});
  r.checks.push_back({"staircase_order", stair, tol_or(c, 1e-7)});
  r.checks.push_back({"round_trip", trip, tol_or(c, 1e-7)});
  render(r, c.format, out);
  return r.pass() ? 0 : 1;
}

int cmd_lax(const Common& c, int z_samples, bool dump, std::ostream& out) {
  const SystemParams sp = resolve_system(c.po, true);
  const int L = sp.L();
  const int N = sp.N();
  std::mt19937_64 rng(c.po.seed);
  const int K = N * (L - 1);
  const PhasePoint pt(L, N, random_cvector(rng, K), random_cvector(rng, K));
  std::vector<cplx> gauge(L - 1);
  for (auto& g : gauge) g = cplx(1.0, 0.0) + random_cvector(rng, 1, 0.4)(0);
  const auto x = chamber_point(rng, N);
  const auto bc = qp_to_bc(pt, sp, gauge, x);
  const auto fd = build_A_from_bc(bc, sp);

  Report r{"lax-check"};
  r.params = io::to_json(sp);
  r.checks.push_back({"riemann_scheme", riemann_scheme_residual(fd, sp), tol_or(c, 1e-10)});
  r.checks.push_back({"trace_identities", trace_identity_residual(bc, sp), tol_or(c, 1e-12)});
  if (dump) {
    json res = json::array();
    for (const auto& A : fd.residues) res.push_back(io::to_json(A));
    r.result["residues"] = res;
    r.result["residue_infinity"] = io::to_json(fd.residue_infinity());
  }

  const bool reducible = check_reducibility(sp).reducible;
  r.result["reducible"] = reducible;
  if (reducible) {
    const HGParams hp = map_system_to_hg(sp);
    const auto y = evaluate_solution(holomorphic_solution(hp, c.degree), L, x);
    const ReducedState rs = pfaffian_to_reduced(x, y, sp);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<cplx> zs;
    for (int k = 0; k < z_samples; ++k) zs.emplace_back(u(rng), u(rng));
    double zc = 0.0;
    for (const cplx& z : zs)
      for (int i = 1; i <= N; ++i) zc = std::max(zc, zero_curvature_residual(i, rs, sp, z));
    auto d = reduced_rhs(rs, sp);
    d.df[0] += 0.1;
    double neg = 0.0;
    for (const cplx& z : zs) neg = std::max(neg, zero_curvature_matrix(1, rs, d, sp, z).cwiseAbs().maxCoeff());
    r.checks.push_back({"reduced_zero_curvature", zc, tol_or(c, 1e-10)});
    r.checks.push_back({"negative_control", neg, 1e-3, false});
    if (dump) {
      json red = json::array();
      for (const auto& A : build_reduced(rs, sp).residues) red.push_back(io::to_json(A));
      r.result["reduced_residues"] = red;
    }
  } else {
    r.text_lines.push_back("kappa_0 != sum theta_i: reduced checks skipped");
  }
  render(r, c.format, out);
  return r.pass() ? 0 : 1;
}

int cmd_verify(const Common& c, const std::vector<std::string>& xt, std::ostream& out) {
  const SystemParams sp = resolve_system(c.po, true);
  const auto x = point_arg(xt, sp.N(), "--x");
  const auto state = build_hg_solution(sp, x, c.degree);
  const auto res = hamiltonian_residual(state);
  Report r{"verify-theorem"};
  r.params = io::to_json(sp);
  r.result = {{"x", complex_list(x)}, {"degree", c.degree}, {"point", io::to_json(state.pt)}};
  const double tol = tol_or(c, 1e-8);
  r.checks.push_back({"q_residual", res.q_residual, tol});
  r.checks.push_back({"p_residual", res.p_residual, tol});
  render(r, c.format, out);
  return r.pass() ? 0 : 1;
}

struct ContOptions {
  bool all = false;
  int relation = 0;
  int slot = 1;
  int slot2 = 0;
};

int cmd_contiguity(const Common& c, const ContOptions& co, std::ostream& out) {
  const HGParams hp = resolve_hg(c.po);
  std::vector<ContiguityResult> rows;
  if (co.all || co.relation == 0) {
    rows = check_all_contiguity(hp, c.degree);
  } else {
    rows.push_back(check_contiguity(co.relation, hp, co.slot, c.degree, co.slot2));
  }
  Report r{"contiguity-check"};
  r.params = io::to_json(hp);
  r.result["degree"] = c.degree;
  r.result["rows"] = json::array();
  for (const auto& row : rows) {
    std::string name = "cont" + std::to_string(row.relation) + "[" + (row.relation == 1 || row.relation == 3 ||
                                                                           row.relation == 4 || row.relation == 5
                                                                       ? "n="
                                                                       : "i=") +
                       std::to_string(row.slot);
    if (row.relation == 6) name += ",j=" + std::to_string(row.slot2);
    name += "]";
    r.checks.push_back({name, row.max_rel, tol_or(c, 1e-12)});
    r.result["rows"].push_back({{"relation", row.relation},
                                {"slot", row.slot},
                                {"slot2", row.slot2},
                                {"compared_degree", row.compared_degree},
                                {"max_abs", row.max_abs},
                                {"max_rel", row.max_rel}});
  }
  render(r, c.format, out);
  return r.pass() ? 0 : 1;
}

}  // namespace

cplx parse_complex(const std::string& token) {
  static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex real_re("^([+-]?" + num + ")$");
  static const std::regex imag_re("^([+-]?)(" + num + ")?j$");
  static const std::regex both_re("^([+-]?" + num + ")([+-])(" + num + ")?j$");
  std::smatch m;
  if (std::regex_match(token, m, real_re)) return {std::stod(m[1]), 0.0};
  if (std::regex_match(token, m, both_re)) {
    const double im = m[3].matched ? std::stod(m[3]) : 1.0;
    return {std::stod(m[1]), m[2] == "-" ? -im : im};
  }
  if (std::regex_match(token, m, imag_re)) {
    const double im = m[2].matched ? std::stod(m[2]) : 1.0;
    return {0.0, m[1] == "-" ? -im : im};
  }
  throw Error(ErrorKind::InvalidArgument, "cannot parse complex number '" + token + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{std::string("hgflow: hypergeometric functions F_{L,N}, their Pfaffian system and the "
                           "Hamiltonian system H_{L,N}.\n") + kComplexHelp, "hgflow"};
  app.require_subcommand(1);

  Common common;
  EvalOptions eo;
  int samples = 0;
  int z_samples = 20;
  bool dump = false;
  std::string path_file;
  std::vector<std::string> xt;
  ContOptions co;
  std::function<int()> action;

  auto* eval = app.add_subcommand("eval", "value of F_{L,N} at x by series and/or quadrature");
  auto* pde = app.add_subcommand("pde-check", "annihilation of the series by the hypergeometric operators");
  auto* pfaff = app.add_subcommand("pfaffian-check", "scalar/matrix agreement, integrability, holomorphic solution");
  auto* cont = app.add_subcommand("continue", "continue the holomorphic solution along a path (CSV samples)");
  auto* ham = app.add_subcommand("hamiltonian-check", "forward-mode gradients and flow compatibility");
  auto* lax = app.add_subcommand("lax-check", "Riemann scheme, trace identities, reduced zero curvature");
  auto* verify = app.add_subcommand("verify-theorem", "canonical-equation residuals of the particular solution");
  auto* contig = app.add_subcommand("contiguity-check", "coefficientwise contiguity relations");

  add_common(eval, common, 80);
  eval->add_option("--x", eo.x, "evaluation point, N complex values")->required();
  eval->add_option("--method", eo.method, "series, integral or both")->check(CLI::IsMember({"series", "integral", "both"}));
  eval->add_option("--nodes", eo.nodes, "quadrature nodes per axis")->check(CLI::PositiveNumber);
  eval->add_flag("--dump-coefficients", eo.dump, "print CSV rows m_1,...,m_N,re,im instead");
  eval->callback([&] { action = [&] { return cmd_eval(common, eo, out); }; });

  add_common(pde, common, 20);
  pde->callback([&] { action = [&] { return cmd_pde(common, out); }; });

  add_common(pfaff, common, 60);
  pfaff->add_option("--samples", samples, "random points (default 100)")->check(CLI::NonNegativeNumber);
  pfaff->callback([&] {
    if (samples == 0) samples = 100;
    action = [&] { return cmd_pfaffian(common, samples, out); };
  });

  add_common(cont, common, 80);
  cont->add_option("--path", path_file, "JSON path file {\"waypoints\": [...]}")->required();
  cont->callback([&] { action = [&] { return cmd_continue(common, path_file, out); }; });

  add_common(ham, common, 0);
  ham->add_option("--samples", samples, "random points for the gradient check (default 50)")
      ->check(CLI::NonNegativeNumber);
  ham->callback([&] {
    if (samples == 0) samples = 50;
    action = [&] { return cmd_hamiltonian(common, samples, out); };
  });

  add_common(lax, common, 60);
  lax->add_option("--z-samples", z_samples, "spectral points for the zero-curvature check")
      ->check(CLI::PositiveNumber);
  lax->add_flag("--dump-matrices", dump, "include residue matrices in the JSON result");
  lax->callback([&] { action = [&] { return cmd_lax(common, z_samples, dump, out); }; });

  add_common(verify, common, 80);
  verify->add_option("--x", xt, "evaluation point, N complex values")->required();
  verify->callback([&] { action = [&] { return cmd_verify(common, xt, out); }; });

  add_common(contig, common, 20);
  contig->add_flag("--all", co.all, "every relation at every parameter slot (default)");
  contig->add_option("--relation", co.relation, "single relation 1..7")->check(CLI::Range(1, 7));
  contig->add_option("--slot", co.slot, "parameter slot n or i");
  contig->add_option("--slot2", co.slot2, "second beta index for relation 6");
  contig->callback([&] { action = [&] { return cmd_contiguity(common, co, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (common.degree_opt) common.degree = *common.degree_opt;
  try {
    return action();
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.kind() == ErrorKind::StepUnderflow ? 1 : 2;
  }
}

}  // namespace hgflow::cli
