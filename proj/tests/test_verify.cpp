#include <doctest.h>

#include <sstream>

#include "qfleck/format.hpp"
#include "qfleck/verify.hpp"

using namespace qfleck;

namespace {

SweepGrid small_grid() {
  SweepGrid g;
  g.cs = {1, 2};
  g.ks = {1};
  g.ls = {0};
  g.ds = {0, 1};
  g.zs = {0};
  g.degPs = {0};
  g.n_span = 2;
  g.n_cap = 20;
  g.n_max = 12;
  g.threads = 2;
  return g;
}

}  // namespace

TEST_CASE("theorem sweeps pass on a small grid") {
  VerifyReport main_report = check_theorem_main(small_grid());
  CHECK(main_report.pass());
  CHECK(main_report.cases_run > 0);

  VerifyReport fleck_report = check_theorem_fleck(small_grid());
  CHECK(fleck_report.pass());
  CHECK(fleck_report.cases_run > main_report.cases_run);
}

TEST_CASE("sweeps are deterministic") {
  VerifyReport a = check_theorem_main(small_grid());
  VerifyReport b = check_theorem_main(small_grid());
  nlohmann::json ja = a.to_json();
  nlohmann::json jb = b.to_json();
  ja.erase("elapsed_ms");
  jb.erase("elapsed_ms");
  CHECK(ja == jb);
}

TEST_CASE("even k entries are skipped") {
  SweepGrid g = small_grid();
  g.ks = {2};
  VerifyReport r = check_theorem_main(g);
  CHECK(r.cases_run == 0);
}

TEST_CASE("case cap truncates deterministically") {
  SweepGrid g = small_grid();
  VerifyReport full = check_theorem_main(g);
  g.case_cap = 5;
  g.probe_below_threshold = false;
  VerifyReport capped = check_theorem_main(g);
  CHECK(capped.cases_run == 5);
  CHECK(capped.pass());
  CHECK(full.pass());
}

TEST_CASE("product divisibility check") {
  SweepGrid g = small_grid();
  g.n_max = 14;
  VerifyReport r = check_prop_restated(g);
  CHECK(r.pass());
  CHECK(r.cases_run > 0);
}

TEST_CASE("gaussian / euler / altpoly") {
  CHECK(check_gaussian(20).pass());
  CHECK(check_euler(10).pass());
  CHECK(check_alt_poly(10, 3, 42).pass());
}

TEST_CASE("q-lucas check") { CHECK(check_q_lucas(5, 16).pass()); }

TEST_CASE("identity suite on a reduced grid") {
  IdentityGrid g;
  g.pascal_n_max = 12;
  g.ratio_n_max = 12;
  g.rowdiv_n_max = 16;
  g.twostep_c_max = 3;
  g.twostep_n_max = 10;
  g.zstep_c_max = 2;
  g.zstep_n_max = 8;
  g.zstep_z_max = 2;
  g.deriv_c_max = 2;
  g.deriv_n_max = 8;
  g.chu_c_max = 2;
  g.chu_n_max = 8;
  g.filter_c_max = 3;
  g.filter_n_max = 8;
  VerifyReport r = check_recursions(g);
  CHECK(r.pass());
  CHECK(r.cases_run > 0);
}

TEST_CASE("integer congruences on a reduced grid") {
  IntegerGrid g;
  g.fleck_n_max = 24;
  g.sun_weisman_n_max = 24;
  g.forced_n_max = 24;
  VerifyReport r = check_integer_congruences(g);
  CHECK(r.pass());
}

TEST_CASE("residual family") {
  VerifyReport r = check_residual_family(2, 12, 16);
  CHECK(r.pass());
}

TEST_CASE("table1 rows match the golden residuals") {
  Table1Result t = table1_report();
  CHECK(t.report.pass());
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0].report.cyclo_exponents ==
        std::map<unsigned, unsigned>{{3, 1}, {8, 1}});
  CHECK(t.rows[0].report.unit == -1);
  CHECK(t.rows[1].report.cyclo_exponents ==
        std::map<unsigned, unsigned>{{5, 2}, {15, 1}});
  CHECK(t.rows[1].report.unit == 1);
  CHECK(t.rows[2].report.cyclo_exponents ==
        std::map<unsigned, unsigned>{{7, 2}, {11, 1}, {21, 1}, {22, 1}, {23, 1}});
  for (const Table1Row& row : t.rows) {
    CHECK(row.match);
    CHECK(row.report.qpower == 0);
  }
  // predicted exponents never exceed the observed ones
  for (const Table1Row& row : t.rows) {
    for (const auto& [m, e] : row.report.predicted) {
      auto it = row.report.cyclo_exponents.find(m);
      REQUIRE(it != row.report.cyclo_exponents.end());
      CHECK(it->second >= e);
    }
  }
}

TEST_CASE("sharpness scan on a small window") {
  VerifyReport r = sharpness_scan(3, 12, 2);
  CHECK(r.pass());
  CHECK(r.cases_run > 0);
  CHECK(!r.notes.empty());
}

TEST_CASE("report json shape") {
  VerifyReport r = check_gaussian(6);
  nlohmann::json j = r.to_json();
  CHECK(j["version"] == 1);
  CHECK(j["check_id"] == "gaussian");
  CHECK(j.contains("grid"));
  CHECK(j.contains("cases_run"));
  CHECK(j["failures"].is_array());
  CHECK(j.contains("elapsed_ms"));

  std::ostringstream os;
  r.print(os);
  CHECK(os.str().find("PASS gaussian") != std::string::npos);
}
