#include "hgflow/json_io.hpp"

#include <fstream>

#include "hgflow/error.hpp"

namespace hgflow::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  bad("complex values must be numbers or [re, im] pairs");
}

json to_json(const std::vector<cplx>& v) {
  json out = json::array();
  for (const cplx& z : v) out.push_back(to_json(z));
  return out;
}

std::vector<cplx> complex_list_from_json(const json& j) {
  if (!j.is_array()) bad("expected an array of complex values");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(complex_from_json(e));
  return out;
}

json to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const SystemParams& sp) {
  auto list = [](std::span<const cplx> s) { return to_json(std::vector<cplx>(s.begin(), s.end())); };
  return {{"L", sp.L()}, {"N", sp.N()}, {"e", list(sp.es())}, {"kappa", list(sp.kappas())},
          {"theta", list(sp.thetas())}};
}

SystemParams system_params_from_json(const json& j) {
  return SystemParams(int_field(j, "L"), int_field(j, "N"), complex_list_from_json(field(j, "e")),
                      complex_list_from_json(field(j, "kappa")), complex_list_from_json(field(j, "theta")));
}

json to_json(const HGParams& hp) {
  auto list = [](std::span<const cplx> s) { return to_json(std::vector<cplx>(s.begin(), s.end())); };
  return {{"L", hp.L()}, {"N", hp.N()}, {"alpha", list(hp.alphas())}, {"beta", list(hp.betas())},
          {"gamma", list(hp.gammas())}};
}

HGParams hg_params_from_json(const json& j) {
  return HGParams(int_field(j, "L"), int_field(j, "N"), complex_list_from_json(field(j, "alpha")),
                  complex_list_from_json(field(j, "beta")), complex_list_from_json(field(j, "gamma")));
}

json to_json(const PhasePoint& pt) {
  json q = json::array();
  json p = json::array();
  for (int n = 1; n < pt.L(); ++n) {
    json qr = json::array();
    json pr = json::array();
    for (int i = 1; i <= pt.N(); ++i) {
      qr.push_back(to_json(pt.q(n, i)));
      pr.push_back(to_json(pt.p(n, i)));
    }
    q.push_back(std::move(qr));
    p.push_back(std::move(pr));
  }
  return {{"q", q}, {"p", p}};
}

PhasePoint phase_point_from_json(const json& j, int L, int N) {
  PhasePoint pt(L, N);
  for (const char* key : {"q", "p"}) {
    const json& a = field(j, key);
    if (!a.is_array() || static_cast<int>(a.size()) != L - 1) bad(std::string(key) + " must have L-1 rows");
    for (int n = 1; n < L; ++n) {
      const auto row = complex_list_from_json(a[n - 1]);
      if (static_cast<int>(row.size()) != N) bad(std::string(key) + " rows must have N entries");
      for (int i = 1; i <= N; ++i) (key[0] == 'q' ? pt.q(n, i) : pt.p(n, i)) = row[i - 1];
    }
  }
  return pt;
}

PathSpec path_from_json(const json& j) {
  PathSpec path;
  const json& w = field(j, "waypoints");
  if (!w.is_array() || w.empty()) bad("waypoints must be a non-empty array");
  for (const json& pt : w) path.waypoints.push_back(complex_list_from_json(pt));
  if (j.contains("clearance")) {
    if (!j["clearance"].is_number()) bad("clearance must be a number");
    path.clearance = j["clearance"].get<double>();
  }
  return path;
}

json to_json(const SolutionVector& y) {
  json out = json::array();
  for (Eigen::Index k = 0; k < y.vec().size(); ++k) out.push_back(to_json(y.vec()(k)));
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

}  // namespace hgflow::io
