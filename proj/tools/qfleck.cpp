// qfleck: compute alternating q-binomial class sums over Z[zeta_2c][q],
// predict and extract their cyclotomic factors, and machine-verify the
// congruence and identity families at desk scale.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "qfleck/cyclotomic.hpp"
#include "qfleck/flecksums.hpp"
#include "qfleck/format.hpp"
#include "qfleck/verify.hpp"

namespace {

using namespace qfleck;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Range grammar: comma-separated entries, each "a" or "a..b" (inclusive).
std::vector<unsigned> parse_range_list(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw CLI::ValidationError("ranges", "empty range entry");
    const auto dots = part.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(static_cast<unsigned>(std::stoul(part)));
      } else {
        unsigned lo = static_cast<unsigned>(std::stoul(part.substr(0, dots)));
        unsigned hi = static_cast<unsigned>(std::stoul(part.substr(dots + 2)));
        if (hi < lo) throw CLI::ValidationError("ranges", "descending range " + part);
        for (unsigned v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::invalid_argument&) {
      throw CLI::ValidationError("ranges", "bad range entry '" + part + "'");
    } catch (const std::out_of_range&) {
      throw CLI::ValidationError("ranges", "range entry out of range: " + part);
    }
  }
  if (out.empty()) throw CLI::ValidationError("ranges", "empty range list");
  return out;
}

std::string cyclo_text(const std::map<unsigned, unsigned>& exps) {
  if (exps.empty()) return "1";
  std::string out;
  bool first = true;
  for (const auto& [m, e] : exps) {
    if (!first) out += "*";
    out += "Phi_" + std::to_string(m) + "^" + std::to_string(e);
    first = false;
  }
  return out;
}

std::string factor_report_text(const FactorReport& r) {
  std::ostringstream os;
  os << "unit=" << (r.unit < 0 ? "-1" : "+1") << " qpower=" << r.qpower
     << " cyclo=" << cyclo_text(r.cyclo_exponents) << " residual="
     << (r.residual_is_integer ? to_string(r.residual)
                               : to_string(r.residual_cyc));
  if (!r.predicted.empty()) os << " predicted=" << cyclo_text(r.predicted);
  return os.str();
}

nlohmann::json factor_report_json(const FactorReport& r) {
  nlohmann::json cyclo = nlohmann::json::object();
  for (const auto& [m, e] : r.cyclo_exponents) cyclo[std::to_string(m)] = e;
  nlohmann::json predicted = nlohmann::json::object();
  for (const auto& [m, e] : r.predicted) predicted[std::to_string(m)] = e;
  return {{"unit", r.unit},
          {"qpower", r.qpower},
          {"cyclo_exponents", cyclo},
          {"residual", r.residual_is_integer ? to_string(r.residual)
                                             : to_string(r.residual_cyc)},
          {"predicted", predicted}};
}

struct GridFlags {
  std::string cs, ks, ls, ds, zs, degps;
  unsigned n_span = 0, n_cap = 0, n_max = 0, seed = 0;
  std::uint64_t cap = 0;
  bool cap_set = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--c", cs, "c values (range grammar: a..b, comma lists)");
    cmd->add_option("--k", ks, "odd k values");
    cmd->add_option("--l", ls, "derivative orders");
    cmd->add_option("--d", ds, "extra multiplicities d");
    cmd->add_option("--z", zs, "q-power weights z");
    cmd->add_option("--degP", degps, "degrees of the random weight P");
    cmd->add_option("--n-span", n_span, "n sweeps threshold..threshold+span");
    cmd->add_option("--n-cap", n_cap, "skip cases with n above this cap");
    cmd->add_option("--n-max", n_max, "n bound for full-range checks");
    cmd->add_option("--seed", seed, "seed for the random weight P");
    cmd->add_option("--cap", cap, "deterministic case cap (0 = unlimited)")
        ->each([this](const std::string&) { cap_set = true; });
  }

  SweepGrid to_grid(bool exhaustive, unsigned threads) const {
    SweepGrid g;
    if (!cs.empty()) g.cs = parse_range_list(cs);
    if (!ks.empty()) g.ks = parse_range_list(ks);
    if (!ls.empty()) g.ls = parse_range_list(ls);
    if (!ds.empty()) g.ds = parse_range_list(ds);
    if (!zs.empty()) g.zs = parse_range_list(zs);
    if (!degps.empty()) g.degPs = parse_range_list(degps);
    if (n_span) g.n_span = n_span;
    if (n_cap) g.n_cap = n_cap;
    if (n_max) g.n_max = n_max;
    if (seed) g.seed = seed;
    g.case_cap = cap_set ? cap : (exhaustive ? 0 : 50000);
    g.threads = threads;
    return g;
  }
};

int print_report(const VerifyReport& report, bool json, bool verbose) {
  if (json) {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    report.print(std::cout, verbose);
  }
  return report.pass() ? kExitPass : kExitFail;
}

int run_table1(bool json) {
  Table1Result result = table1_report();
  if (json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const Table1Row& row : result.rows) {
      rows.push_back({{"c", row.c},
                      {"j", row.j},
                      {"n", row.n},
                      {"report", factor_report_json(row.report)},
                      {"expected_residual", row.expected_residual},
                      {"match", row.match}});
    }
    nlohmann::json out = result.report.to_json();
    out["rows"] = rows;
    std::cout << out.dump(2) << "\n";
  } else {
    for (const Table1Row& row : result.rows) {
      std::cout << "c=" << row.c << " j=" << row.j << " n=" << row.n << " "
                << factor_report_text(row.report) << " "
                << (row.match ? "MATCH" : "MISMATCH (expected " +
                                              row.expected_residual + ")")
                << "\n";
    }
    result.report.print(std::cout);
  }
  return result.report.pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact alternating q-binomial sums over Z[zeta_2c][q]: values, "
      "cyclotomic factor predictions, and congruence verifiers"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand

  bool json = false, exhaustive = false, verbose = false;
  unsigned threads = 0;
  app.add_flag("--json", json, "emit machine-readable JSON");
  app.add_flag("--exhaustive", exhaustive, "run full grids (no case cap)");
  app.add_flag("--verbose", verbose, "print every failure and note");
  app.add_option("--threads", threads,
                 "worker threads for sweeps (default: QFLECK_THREADS or all cores)");

  // qbinom
  auto* sc_qbinom = app.add_subcommand("qbinom", "print a Gaussian binomial");
  unsigned qb_n = 0, qb_l = 0;
  long qb_m = 0;
  sc_qbinom->add_option("n", qb_n, "row")->required();
  sc_qbinom->add_option("m", qb_m, "column")->required();
  sc_qbinom->add_option("--deriv", qb_l, "formal derivative order");

  // sum
  auto* sc_sum = app.add_subcommand(
      "sum", "evaluate a full or class-restricted alternating sum");
  unsigned s_c = 1, s_l = 0, s_z = 0, s_n = 0;
  int s_j = -1;
  std::string s_p = "1";
  bool s_factored = false;
  sc_sum->add_option("--c", s_c, "modulus c (zeta_2c weights)")->required();
  sc_sum->add_option("--j", s_j, "class 0 <= j < c; omit for the full sum");
  sc_sum->add_option("--l", s_l, "derivative order");
  sc_sum->add_option("--z", s_z, "q-power weight");
  sc_sum->add_option("--n", s_n, "row n")->required();
  sc_sum->add_option("--P", s_p, "weight polynomial in x (z for zeta)");
  sc_sum->add_flag("--factored", s_factored, "also print the factor report");

  // factor
  auto* sc_factor = app.add_subcommand(
      "factor", "strip unit, q-power and cyclotomic factors from a polynomial");
  std::string f_text;
  unsigned f_c = 0;
  sc_factor->add_option("poly", f_text, "polynomial text in q")->required();
  sc_factor->add_option("--c", f_c,
                        "parse zeta coefficients in Z[zeta_2c] (0 = integers)");

  // verify
  auto* sc_verify = app.add_subcommand("verify", "run a named checker");
  std::string v_id;
  sc_verify->add_option("check", v_id, "checker id")->required();
  GridFlags v_grid;
  v_grid.attach(sc_verify);
  unsigned v_pmax = 7;
  sc_verify->add_option("--p-max", v_pmax, "largest prime for prime-indexed checks");

  // table1
  app.add_subcommand("table1", "recompute the bundled reference rows");

  // sharpness
  auto* sc_sharp = app.add_subcommand(
      "sharpness", "scan classes for exact predicted multiplicities");
  unsigned sh_pmax = 7, sh_nmax = 50;
  sc_sharp->add_option("--p-max", sh_pmax, "largest prime");
  sc_sharp->add_option("--n-max", sh_nmax, "largest n (exhaustive: 100)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (threads > 0) set_default_thread_count(threads);

  try {
    if (sc_qbinom->parsed()) {
      std::cout << to_string(qbinom_deriv(qb_n, qb_m, qb_l)) << "\n";
      return kExitPass;
    }

    if (sc_sum->parsed()) {
      if (s_j >= 0 && static_cast<unsigned>(s_j) >= s_c) {
        std::cerr << "error: --j must satisfy 0 <= j < c\n";
        return kExitUsage;
      }
      RingCtxPtr ctx = ctx_new(s_c);
      XPoly P;
      try {
        P = parse_cycpoly(s_p, ctx, 'x');
      } catch (const ParseError& e) {
        std::cerr << "error: bad --P: " << e.what() << "\n";
        return kExitUsage;
      }
      SumSpec spec{s_c, s_l, s_z, s_n, P,
                   s_j >= 0 ? std::optional<unsigned>(static_cast<unsigned>(s_j))
                            : std::nullopt};
      CycPoly value = spec.class_j ? fleck_sum(spec) : q_sum(spec);
      bool integral = true;
      BigPoly int_value;
      try {
        int_value = cpoly_to_bigpoly(value);
      } catch (const NotRational&) {
        integral = false;
      }
      const std::string value_text =
          integral ? to_string(int_value) : to_string(value);
      nlohmann::json out{{"spec", spec_to_json(spec)}, {"value", value_text}};
      if (s_factored) {
        const unsigned degp =
            P.is_zero_poly() ? 0 : static_cast<unsigned>(*P.degree());
        auto predicted = predicted_exponents(s_c, s_l, degp, s_n);
        if (value.is_zero_poly()) {
          if (json) {
            out["factor_report"] = nullptr;
            std::cout << out.dump(2) << "\n";
          } else {
            std::cout << value_text << "\n"
                      << "factor report: zero sum\n";
          }
          return kExitPass;
        }
        FactorReport fr = integral ? factor_report(int_value, predicted)
                                   : factor_report(value, predicted);
        if (json) {
          out["factor_report"] = factor_report_json(fr);
          std::cout << out.dump(2) << "\n";
        } else {
          std::cout << value_text << "\n" << factor_report_text(fr) << "\n";
        }
        return kExitPass;
      }
      if (json) {
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << value_text << "\n";
      }
      return kExitPass;
    }

    if (sc_factor->parsed()) {
      FactorReport fr;
      try {
        if (f_c == 0) {
          fr = factor_report(parse_bigpoly(f_text));
        } else {
          fr = factor_report(parse_cycpoly(f_text, ctx_new(f_c)));
        }
      } catch (const ParseError& e) {
        std::cerr << "error: bad polynomial: " << e.what() << "\n";
        return kExitUsage;
      } catch (const ZeroPolynomial&) {
        std::cerr << "error: cannot factor the zero polynomial\n";
        return kExitUsage;
      }
      if (json) {
        std::cout << factor_report_json(fr).dump(2) << "\n";
      } else {
        std::cout << factor_report_text(fr) << "\n";
      }
      return kExitPass;
    }

    if (sc_verify->parsed()) {
      const SweepGrid grid = v_grid.to_grid(exhaustive, threads);
      if (v_id == "main") return print_report(check_theorem_main(grid), json, verbose);
      if (v_id == "fleck") return print_report(check_theorem_fleck(grid), json, verbose);
      if (v_id == "prop") return print_report(check_prop_restated(grid), json, verbose);
      if (v_id == "gaussian") {
        return print_report(check_gaussian(grid.n_max), json, verbose);
      }
      if (v_id == "euler") {
        return print_report(check_euler(v_grid.n_max ? v_grid.n_max : 15), json,
                            verbose);
      }
      if (v_id == "altpoly") {
        return print_report(
            check_alt_poly(v_grid.n_max ? v_grid.n_max : 15, 5, grid.seed), json,
            verbose);
      }
      if (v_id == "recursions") {
        IdentityGrid ig;
        ig.seed = grid.seed;
        return print_report(check_recursions(ig), json, verbose);
      }
      if (v_id == "qlucas") {
        return print_report(
            check_q_lucas(v_pmax, v_grid.n_max ? v_grid.n_max : 40), json,
            verbose);
      }
      if (v_id == "integer") {
        IntegerGrid ig;
        return print_report(check_integer_congruences(ig), json, verbose);
      }
      if (v_id == "residuals") {
        return print_report(check_residual_family(3, 24, 40), json, verbose);
      }
      if (v_id == "table1") return run_table1(json);
      if (v_id == "sharpness") {
        return print_report(
            sharpness_scan(v_pmax, exhaustive ? 100 : (v_grid.n_max ? v_grid.n_max : 50),
                           threads),
            json, verbose);
      }
      std::cerr << "error: unknown check '" << v_id
                << "' (try: main fleck prop gaussian euler altpoly recursions "
                   "qlucas integer residuals table1 sharpness)\n";
      return kExitUsage;
    }

    if (app.get_subcommand("table1")->parsed()) {
      return run_table1(json);
    }

    if (sc_sharp->parsed()) {
      return print_report(
          sharpness_scan(sh_pmax, exhaustive ? std::max(100u, sh_nmax) : sh_nmax,
                         threads),
          json, verbose);
    }
  } catch (const NotDivisible& e) {
    std::cerr << "error: a certified divisibility failed: " << e.what() << "\n";
    return kExitFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitPass;
}
