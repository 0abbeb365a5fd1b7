#pragma once

// Coefficient files and JSON documents.
//
// Coefficient file: one coefficient per line, lowest degree first, as
// "re im" (or just "re"). Each token is a decimal string or an exact binary
// pair m*2^e. Blank lines and lines starting with '#' are skipped.

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "covering.hpp"
#include "driver.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "polynomial.hpp"

namespace quasiroots {

using json = nlohmann::ordered_json;

inline constexpr const char* kSolveSchema = "quasiroots.solve/1";
inline constexpr const char* kCoverSchema = "quasiroots.cover/1";
inline constexpr const char* kOracleSchema = "quasiroots.oracle/1";

inline Polynomial parse_coefficients(std::istream& in, Basis basis, Bits prec) {
  std::vector<BigComplex> c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string re, im, extra;
    ls >> re;
    ls >> im;
    if (ls >> extra) throw Error(ErrorKind::Input, "line " + std::to_string(lineno) + ": expected 're im'");
    try {
      BigFloat r = parse_real(re, prec);
      BigFloat i = im.empty() ? BigFloat(prec) : parse_real(im, prec);
      c.emplace_back(std::move(r), std::move(i));
    } catch (const std::exception& e) {
      throw Error(ErrorKind::Input, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (c.empty()) throw Error(ErrorKind::Input, "no coefficients");
  return Polynomial(std::move(c), basis);
}

inline Polynomial read_coefficients(const std::string& path, Basis basis, Bits prec) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Input, "cannot open '" + path + "'");
  return parse_coefficients(in, basis, prec);
}

// Exact pairs, so a written file reads back bit for bit.
inline std::string format_coefficients(const Polynomial& p, const std::string& header = {}) {
  std::ostringstream os;
  if (!header.empty()) os << "# " << header << "\n";
  for (const auto& a : p.coeffs()) os << to_exact_pair(a.re) << " " << to_exact_pair(a.im) << "\n";
  return os.str();
}

namespace detail {

inline std::string dec(const BigFloat& x, std::size_t digits) { return to_decimal(x, digits); }

inline std::string dec(long double x) {
  std::ostringstream os;
  os << std::setprecision(21) << x;
  return os.str();
}

inline json complex_json(const BigComplex& z, std::size_t digits) {
  return json{{"re", dec(z.re, digits)}, {"im", dec(z.im, digits)}};
}

inline json root_json(const CertifiedRoot& r, std::size_t digits) {
  json j = complex_json(r.point, digits);
  j["radius"] = dec(r.inclusion_radius);
  j["beta"] = dec(r.kdata.beta);
  j["K"] = dec(r.kdata.K);
  j["product"] = dec(r.kdata.product);
  j["source"] = json{{"disk", r.disk_index}, {"rotation", r.rotation_index}, {"root", r.root_index}};
  return j;
}

}  // namespace detail

inline json params_json(const SolverParams& sp) {
  return json{{"d", sp.d},
              {"kappa", detail::dec(sp.kappa)},
              {"tau", detail::dec(sp.tau)},
              {"P", sp.P},
              {"s", detail::dec(sp.s)},
              {"m", sp.m},
              {"c", detail::dec(sp.c)},
              {"W", sp.W}};
}

inline json report_json(const SolveReport& r, Basis basis, Domain domain) {
  const std::size_t digits = decimal_digits_for(r.params.W);
  json j;
  j["schema"] = kSolveSchema;
  j["basis"] = basis == Basis::Hyperbolic ? "hyperbolic" : "elliptic";
  j["domain"] = to_string(domain);
  j["case"] = to_string(r.kind);
  j["kappa_used"] = detail::dec(r.kappa_used);
  j["attempts"] = r.attempts;
  json pj = params_json(r.params);
  pj["N"] = r.N;
  pj["disks"] = r.disks;
  pj["models"] = r.total_models;
  pj["direct"] = r.direct;
  j["params"] = std::move(pj);
  json roots = json::array();
  for (const auto& x : r.roots) roots.push_back(detail::root_json(x, digits));
  j["roots"] = std::move(roots);
  json boundary = json::array();
  for (const auto& x : r.boundary) boundary.push_back(detail::root_json(x, digits));
  j["boundary"] = std::move(boundary);
  json rej = json::array();
  for (const auto& x : r.rejections)
    rej.push_back(json{{"cause", x.cause},
                       {"re", detail::dec(x.point.real())},
                       {"im", detail::dec(x.point.imag())},
                       {"disk", x.disk_index},
                       {"rotation", x.rotation_index},
                       {"boundary", x.boundary}});
  j["rejections"] = std::move(rej);
  j["timings"] = json{{"A", detail::dec(r.timings.a)},
                      {"B", detail::dec(r.timings.b)},
                      {"C", detail::dec(r.timings.c)},
                      {"certify", detail::dec(r.timings.certify)}};
  const auto& v = r.validation;
  json vj{{"valid", v.valid},
          {"all_certified", v.all_certified},
          {"separated", v.separated},
          {"count", v.count},
          {"min_separation", detail::dec(v.min_separation)},
          {"causes", v.causes}};
  if (v.expected) vj["expected"] = *v.expected;
  j["validation"] = std::move(vj);
  j["discarded"] = r.discarded;
  j["log"] = r.log;
  return j;
}

inline json cover_json(const CoverScheme& cs) {
  json j;
  j["schema"] = kCoverSchema;
  j["case"] = to_string(cs.kind);
  j["d"] = cs.d;
  j["tau"] = detail::dec(cs.tau);
  j["N"] = cs.N;
  j["direct"] = cs.direct;
  j["sectors"] = cs.sectors;
  j["total_models"] = cs.total_models();
  json disks = json::array();
  for (std::size_t n = 0; n < cs.disks.size(); ++n)
    disks.push_back(json{{"gamma", detail::dec(cs.disks[n].center)},
                         {"rho", detail::dec(cs.disks[n].radius)},
                         {"M", cs.rotations[n]}});
  j["disks"] = std::move(disks);
  return j;
}

inline json oracle_json(const Polynomial& p, const OracleResult& o, std::optional<long double> kappa_estimate) {
  const std::size_t digits = decimal_digits_for(o.precision / 4);
  json j;
  j["schema"] = kOracleSchema;
  j["basis"] = p.basis() == Basis::Hyperbolic ? "hyperbolic" : "elliptic";
  j["d"] = p.degree();
  j["precision"] = o.precision;
  json roots = json::array();
  for (const auto& z : o.roots) roots.push_back(detail::complex_json(z, digits));
  j["roots"] = std::move(roots);
  j["residual_bound"] = detail::dec(o.residual_bound);
  j["sum_residual"] = detail::dec(o.sum_residual);
  j["product_residual"] = detail::dec(o.product_residual);
  j["agreement"] = detail::dec(o.agreement);
  if (kappa_estimate) j["kappa_estimate"] = detail::dec(*kappa_estimate);
  return j;
}

// Oracle input document: {"basis": ..., "coefficients": [["re","im"], ...]}
// with string entries in the coefficient-file token syntax.
inline Polynomial polynomial_from_json(const json& j, Bits prec) {
  if (!j.contains("basis") || !j.contains("coefficients")) throw Error(ErrorKind::Input, "need 'basis' and 'coefficients'");
  const Basis basis = parse_basis(j.at("basis").get<std::string>());
  std::vector<BigComplex> c;
  for (const auto& e : j.at("coefficients")) {
    auto tok = [&](const json& t) { return t.is_string() ? t.get<std::string>() : t.dump(); };
    try {
      if (e.is_array()) {
        if (e.empty() || e.size() > 2) throw Error(ErrorKind::Input, "coefficient must be [re] or [re, im]");
        c.emplace_back(parse_real(tok(e[0]), prec), e.size() == 2 ? parse_real(tok(e[1]), prec) : BigFloat(prec));
      } else {
        c.emplace_back(parse_real(tok(e), prec), BigFloat(prec));
      }
    } catch (const std::invalid_argument& ex) {
      throw Error(ErrorKind::Input, ex.what());
    }
  }
  if (c.empty()) throw Error(ErrorKind::Input, "no coefficients");
  return Polynomial(std::move(c), basis);
}

}  // namespace quasiroots
