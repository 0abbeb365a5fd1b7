// quasiroots command line: solve, dump-cover, oracle, gen, bench.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quasiroots/covering.hpp"
#include "quasiroots/driver.hpp"
#include "quasiroots/io.hpp"
#include "quasiroots/oracle.hpp"
#include "quasiroots/parallel.hpp"
#include "quasiroots/params.hpp"

namespace qr = quasiroots;

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qr::Error(qr::ErrorKind::Input, "cannot write '" + path + "'");
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qr::Error(qr::ErrorKind::Input, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

qr::CoverCase parse_case(const std::string& s) {
  for (auto c : {qr::CoverCase::HypReal, qr::CoverCase::HypDisk, qr::CoverCase::EllReal, qr::CoverCase::EllDisk})
    if (s == qr::to_string(c)) return c;
  throw qr::Error(qr::ErrorKind::Input, "unknown case '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified polynomial root finder on [0,1] and the unit disk"};
  app.require_subcommand(1);
  int threads = qr::default_threads();

  // solve
  auto* solve = app.add_subcommand("solve", "certify all roots of a polynomial in a domain");
  std::string basis = "hyperbolic", domain = "interval", input, out = "-";
  std::optional<double> kappa;
  std::optional<long> precision;
  bool adaptive = false;
  solve->add_option("--basis", basis, "hyperbolic or elliptic")->check(CLI::IsMember({"hyperbolic", "elliptic"}));
  solve->add_option("--domain", domain, "interval, disk, real-line or plane")
      ->check(CLI::IsMember({"interval", "disk", "real-line", "plane"}));
  solve->add_option("--kappa", kappa, "condition bound (clamped to at least 64)");
  solve->add_flag("--adaptive", adaptive, "double kappa until validation passes");
  solve->add_option("--input", input, "coefficient file")->required();
  solve->add_option("--out", out, "JSON report path ('-' for stdout)");
  solve->add_option("--precision-bits", precision, "working precision override");
  solve->add_option("--threads", threads, "worker threads (default: QUASIROOTS_THREADS or hardware)");

  // dump-cover
  auto* dump = app.add_subcommand("dump-cover", "print the covering scheme as JSON");
  std::string dcase = "hyperbolic-real";
  int dd = 1000;
  double dtau = 30;
  std::optional<double> dkappa;
  dump->add_option("--case", dcase, "hyperbolic-real, hyperbolic-disk, elliptic-real or elliptic-disk");
  dump->add_option("--degree", dd, "degree d")->check(CLI::PositiveNumber);
  dump->add_option("--tau", dtau, "tau (ignored when --kappa is given)");
  dump->add_option("--kappa", dkappa, "derive tau from d and kappa");
  dump->add_option("--out", out, "JSON path ('-' for stdout)");

  // oracle
  auto* orc = app.add_subcommand("oracle", "reference roots by multiprecision Aberth iteration");
  std::string oinput, ofile_basis = "hyperbolic", okind;
  int odeg = 0, ogrid = 0;
  unsigned long long oseed = 1;
  long obits = 128;
  orc->add_option("--input", oinput, "JSON {basis, coefficients} or a coefficient file");
  orc->add_option("--basis", ofile_basis, "basis of a coefficient-file input")
      ->check(CLI::IsMember({"hyperbolic", "elliptic"}));
  orc->add_option("--kind", okind, "generate instead: kostlan or hyperbolic-gaussian");
  orc->add_option("--degree", odeg, "degree for --kind");
  orc->add_option("--seed", oseed, "seed for --kind");
  orc->add_option("--bits", obits, "target agreement W (the iteration runs at 4W)");
  orc->add_option("--condition-grid", ogrid, "also estimate kappa on this grid (0: skip)");
  orc->add_option("--out", out, "JSON path ('-' for stdout)");

  // gen
  auto* gen = app.add_subcommand("gen", "write a seeded random polynomial as a coefficient file");
  std::string gkind = "kostlan";
  int gdeg = 64;
  unsigned long long gseed = 1;
  gen->add_option("--kind", gkind, "kostlan or hyperbolic-gaussian")
      ->check(CLI::IsMember({"kostlan", "hyperbolic-gaussian"}));
  gen->add_option("--degree", gdeg, "degree")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gseed, "seed");
  gen->add_option("--out", out, "output path ('-' for stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "time seeded solves and report scaling ratios as CSV");
  std::vector<int> sizes{128, 256, 512, 1024};
  int trials = 1;
  std::string bkind = "kostlan", bdomain = "disk";
  std::optional<double> bkappa;
  bool badaptive = false;
  unsigned long long bseed = 1;
  bench->add_option("--sizes", sizes, "sorted degrees")->delimiter(',');
  bench->add_option("--trials", trials, "instances per size")->check(CLI::PositiveNumber);
  bench->add_option("--kind", bkind, "kostlan or hyperbolic-gaussian")
      ->check(CLI::IsMember({"kostlan", "hyperbolic-gaussian"}));
  bench->add_option("--domain", bdomain, "interval or disk")->check(CLI::IsMember({"interval", "disk"}));
  bench->add_option("--kappa", bkappa, "fixed kappa");
  bench->add_flag("--adaptive", badaptive, "adaptive kappa");
  bench->add_option("--seed", bseed, "base seed");
  bench->add_option("--threads", threads, "worker threads");
  bench->add_option("--out", out, "CSV path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const qr::Bits parse_bits = precision ? static_cast<qr::Bits>(*precision) : qr::Bits{128};
      const qr::Polynomial p = qr::read_coefficients(input, qr::parse_basis(basis), parse_bits);
      qr::SolveRequest req;
      req.domain = qr::parse_domain(domain);
      if (kappa) req.kappa = static_cast<long double>(*kappa);
      if (precision) req.precision = static_cast<qr::Bits>(*precision);
      req.adaptive = adaptive;
      req.threads = threads;
      const qr::SolveReport r = qr::solve(p, req);
      write_text(out, qr::report_json(r, p.basis(), req.domain).dump(2) + "\n");
      std::fprintf(stderr, "%zu certified root(s), %zu boundary, validation %s\n", r.roots.size(), r.boundary.size(),
                   r.validation.valid ? "passed" : "failed");
      return r.validation.valid ? 0 : 1;
    }
    if (*dump) {
      long double tau = dtau;
      if (dkappa) tau = qr::make_params(dd, *dkappa, 1).tau;
      write_text(out, qr::cover_json(qr::build_cover(parse_case(dcase), dd, tau)).dump(2) + "\n");
      return 0;
    }
    if (*orc) {
      qr::Polynomial p;
      if (!okind.empty()) {
        p = qr::generate_ensemble(qr::parse_ensemble(okind), odeg, oseed);
      } else if (!oinput.empty()) {
        const std::string text = read_text(oinput);
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{')
          p = qr::polynomial_from_json(qr::json::parse(text), static_cast<qr::Bits>(obits));
        else {
          std::istringstream in(text);
          p = qr::parse_coefficients(in, qr::parse_basis(ofile_basis), static_cast<qr::Bits>(obits));
        }
      } else {
        throw qr::Error(qr::ErrorKind::Input, "oracle needs --input or --kind");
      }
      const qr::OracleResult o = qr::reference_roots(p, static_cast<qr::Bits>(obits));
      std::optional<long double> kest;
      if (ogrid > 0) {
        const bool ell = p.basis() == qr::Basis::Elliptic;
        kest = qr::reference_condition(p, ell ? qr::CoverCase::EllDisk : qr::CoverCase::HypDisk, ogrid);
      }
      write_text(out, qr::oracle_json(p, o, kest).dump(2) + "\n");
      return 0;
    }
    if (*gen) {
      const auto kind = qr::parse_ensemble(gkind);
      const qr::Polynomial p = qr::generate_ensemble(kind, gdeg, gseed);
      std::ostringstream h;
      h << qr::to_string(kind) << " degree " << gdeg << " seed " << gseed << " basis "
        << (p.basis() == qr::Basis::Elliptic ? "elliptic" : "hyperbolic");
      write_text(out, qr::format_coefficients(p, h.str()));
      return 0;
    }
    if (*bench) {
      std::optional<long double> k;
      if (bkappa) k = static_cast<long double>(*bkappa);
      const qr::BenchReport br = qr::benchmark(sizes, trials, qr::parse_ensemble(bkind), qr::parse_domain(bdomain), k,
                                               badaptive, threads, bseed);
      write_text(out, br.csv());
      for (const auto& w : br.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      return 0;
    }
  } catch (const qr::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
