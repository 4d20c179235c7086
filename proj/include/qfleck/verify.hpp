#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "qfleck/flecksums.hpp"

namespace qfleck {

// Sweep for the divisibility theorems: every combination of the listed
// parameter values, with k restricted to odd entries and n running from the
// hypothesis threshold (deg(P) + 2(l+d) + 1)kc up to threshold + n_span,
// capped at n_cap. Cases just below the threshold are enumerated as
// informational records, never as failures: the statements are
// one-directional.
struct SweepGrid {
  std::vector<unsigned> cs{1, 2, 3, 4};
  std::vector<unsigned> ks{1, 3};
  std::vector<unsigned> ls{0, 1};
  std::vector<unsigned> ds{0, 1};
  std::vector<unsigned> zs{0, 1};
  std::vector<unsigned> degPs{0, 1};
  unsigned n_span = 4;
  unsigned n_cap = 60;
  unsigned n_max = 40;   // plain 0..n_max sweep for the product-divisibility check
  unsigned seed = 20240915;
  bool with_classes = false;
  bool probe_below_threshold = true;
  std::uint64_t case_cap = 0;  // 0 = unlimited; truncation is deterministic
  unsigned threads = 0;        // 0 = library default

  nlohmann::json to_json() const;
};

// Grids for the exact-identity suite; defaults match the library's test
// budget at desk scale.
struct IdentityGrid {
  unsigned pascal_n_max = 30;
  unsigned ratio_n_max = 30;
  unsigned rowdiv_n_max = 60;
  unsigned twostep_c_max = 4, twostep_degp_max = 2, twostep_n_max = 20;
  unsigned zstep_c_max = 4, zstep_z_max = 3, zstep_n_max = 16,
           zstep_degp_max = 2;
  unsigned deriv_c_max = 4, deriv_l_max = 2, deriv_z_max = 2, deriv_n_max = 12,
           deriv_degp_max = 1;
  unsigned chu_c_max = 4, chu_n_max = 12, chu_degp_max = 1;
  unsigned filter_c_max = 4, filter_n_max = 14, filter_degp_max = 1,
           filter_z_max = 1, filter_l_max = 1;
  unsigned seed = 7321;

  nlohmann::json to_json() const;
};

// Grids for the integer congruence families.
struct IntegerGrid {
  std::vector<unsigned> fleck_primes{2, 3, 5, 7};
  unsigned fleck_n_max = 60;
  std::vector<unsigned> sun_weisman_primes{2, 3, 5};
  unsigned sun_weisman_alpha_max = 2;
  unsigned sun_weisman_n_max = 60;
  unsigned forced_alpha_max = 3;
  unsigned forced_n_max = 64;

  nlohmann::json to_json() const;
};

struct CaseRecord {
  nlohmann::json spec;
  std::string required;
  std::string observed;
};

struct VerifyReport {
  std::string check_id;
  nlohmann::json grid;
  std::uint64_t cases_run = 0;
  std::vector<CaseRecord> failures;
  std::uint64_t informational = 0;
  std::vector<std::string> notes;
  double elapsed_ms = 0.0;

  bool pass() const { return failures.empty(); }
  nlohmann::json to_json() const;
  void print(std::ostream& os, bool verbose = false) const;
};

// Full-sum divisibility: Phi_kc-valuation of Q >= d + 1 on every case at or
// above the hypothesis threshold.
VerifyReport check_theorem_main(const SweepGrid& grid);

// Same sweep for the class-restricted alternating sums, all 0 <= j < c.
VerifyReport check_theorem_fleck(const SweepGrid& grid);

// The predicted cyclotomic product divides every sum (full and class
// restricted) for all n <= grid.n_max, sub-threshold included.
VerifyReport check_prop_restated(const SweepGrid& grid);

// Full alternating sum at c=1 equals the closed product form.
VerifyReport check_gaussian(unsigned n_max);

// Alternating moment sums: 0 below the diagonal, (-1)^n n! on it.
VerifyReport check_euler(unsigned n_max);

// Alternating sums weighted by random integer polynomials of low degree
// vanish.
VerifyReport check_alt_poly(unsigned n_max, unsigned polys_per_n,
                            unsigned seed);

// The exact-identity suite: Pascal step, row ratio, row divisibility, the
// two-step n-recursion, the z-step relation, the derivative transfer
// relation with its q-power divisibility claims, the double-sum expansion,
// and the roots-of-unity filter.
VerifyReport check_recursions(const IdentityGrid& grid);

// Fleck / Weisman / Sun / half-alternating / forced-alternating integer
// congruences, exponents clamped at zero where the formulas go negative.
VerifyReport check_integer_congruences(const IntegerGrid& grid);

// Base-p digit reduction of q-binomials modulo Phi_p.
VerifyReport check_q_lucas(unsigned p_max, unsigned n_max);

// Residual closed form at c=1 and the alpha/beta-weighted recursion.
VerifyReport check_residual_family(unsigned c_max, unsigned recursion_n_max,
                                   unsigned closed_form_n_max);

struct Table1Row {
  unsigned c = 0, j = 0, n = 0;
  FactorReport report;
  std::string computed_residual;
  std::string expected_residual;
  bool match = false;
};

struct Table1Result {
  VerifyReport report;
  std::vector<Table1Row> rows;
};

// Recomputes the three bundled reference rows and compares residuals (up to
// unit and q-power) against the embedded golden polynomials.
Table1Result table1_report();

// Golden texts for the reference rows, in parser-ready polynomial form.
struct Table1Golden {
  unsigned c, j, n;
  std::vector<std::string> residual_factors;
};
const std::vector<Table1Golden>& table1_golden();

// For every prime p <= p_max and p <= n <= n_max, scans all classes j for one
// whose observed Phi_{p^t} multiplicities equal the predicted values for
// every applicable t (those with p^(t-1) odd). A missing witness is a
// failure; the witness sets land in the notes.
VerifyReport sharpness_scan(unsigned p_max, unsigned n_max,
                            unsigned threads = 0);

// Sweep worker count: explicit value > env QFLECK_THREADS > hardware.
unsigned default_thread_count();
void set_default_thread_count(unsigned n);

nlohmann::json spec_to_json(const SumSpec& spec);

}  // namespace qfleck
