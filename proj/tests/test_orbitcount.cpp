#include <doctest.h>

#include "orbitzeta/orbitcount.hpp"

#include <cmath>

using namespace oz;

namespace {

// Independent oracle: li(x) = gamma + log|log x| + sum (log x)^n / (n n!).
double li_series_oracle(double x) {
  const double gamma = 0.57721566490153286;
  double lx = std::log(x);
  double sum = 0.0, term = 1.0;
  for (int n = 1; n < 500; ++n) {
    term *= lx / n;
    sum += term / n;
    if (std::abs(term / n) < 1e-18 * (1 + std::abs(sum)) && n > 10) break;
  }
  return gamma + std::log(std::abs(lx)) + sum;
}
double li_oracle(double y) { return li_series_oracle(y) - li_series_oracle(2.0); }
}

TEST_CASE("logarithmic integral basics") {
  CHECK(li(2.0) == 0.0);
  CHECK(li(1.5) < 0.0);
  CHECK_THROWS_AS(li(1.0), Error);
  CHECK_THROWS_AS(li(0.0), Error);
  CHECK_THROWS_AS(li(-3.0), Error);
  // signed convention below 1: Li(y) = li(y) - li(2) via the principal value
  CHECK(li(0.5) == doctest::Approx(li_oracle(0.5)).epsilon(1e-9));
}

TEST_CASE("quadrature agrees with the series oracle") {
  for (double y : {3.0, 10.0, 100.0, 12345.0}) {
    CHECK(li(y) == doctest::Approx(li_oracle(y)).epsilon(1e-9));
  }
  // two quadrature tolerances agree
  CHECK(std::abs(li(10.0, 1e-6) - li(10.0, 1e-11)) < 1e-7);
  CHECK(li(10.0, 1e-11) == doctest::Approx(li_oracle(10.0)).epsilon(1e-10));
}

TEST_CASE("li asymptotics: Li(y) log(y)/y tends to 1") {
  double s0 = std::log(4.0);
  for (double T : {20.0, 30.0}) {
    double y = std::exp(s0 * T);
    double ratio = li(y) * (s0 * T) / y;
    CHECK(std::abs(ratio - 1.0) < 0.10);
  }
}

TEST_CASE("pi_T counts weighted orbits with the completeness guard") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential one = Potential::constant(rule, 1.0);
  auto records = primitive_orbits(rule, 6, one);
  CHECK(pi_T(records, 0.5, 6, 1.0) == 0);
  CHECK(pi_T(records, 1.0, 6, 1.0) == 5);   // ties count (closed inequality)
  CHECK(pi_T(records, 3.0, 6, 1.0) == 31);  // 5 + 6 + 20
  CHECK(pi_T(records, 6.5, 6, 1.0) == 965);
  try {
    pi_T(records, 7.0, 6, 1.0);
    FAIL("expected guard violation");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("T < 7") != std::string::npos);
  }
}

TEST_CASE("weight rescaling: pi_{c phi}(cT) = pi_phi(T)") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential one = Potential::constant(rule, 1.0);
  Potential two = Potential::constant(rule, 2.0);
  auto r1 = primitive_orbits(rule, 5, one);
  auto r2 = primitive_orbits(rule, 5, two);
  for (double T : {1.0, 2.5, 4.0, 5.5}) {
    CHECK(pi_T(r1, T, 5, 1.0) == pi_T(r2, 2 * T, 5, 2.0));
  }
}

TEST_CASE("counting table for the constant potential trends toward 1") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential one = Potential::constant(rule, 1.0);
  CohomologyVerdict verdict = cohomology_test(rule, one, 4);
  REQUIRE(verdict.constant);
  CountingTable table = pot_table(rule, one, {5.0, 6.0}, 6, verdict);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].piT == 295);
  CHECK(table.rows[1].piT == 965);
  CHECK(table.s0 == doctest::Approx(std::log(4.0)).epsilon(1e-9));
  for (const auto& row : table.rows) {
    CHECK(row.ratio > 0.7);
    CHECK(row.ratio < 1.2);
  }
  CHECK(std::abs(table.rows[1].ratio - 1.0) <= std::abs(table.rows[0].ratio - 1.0));
  // pi is nondecreasing
  CHECK(table.rows[0].piT <= table.rows[1].piT);
}

TEST_CASE("empty grid gives an empty table") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential one = Potential::constant(rule, 1.0);
  CohomologyVerdict verdict;
  verdict.constant = true;
  verdict.k_value = 1.0;
  CountingTable table = pot_table(rule, one, {}, 4, verdict);
  CHECK(table.rows.empty());
}

TEST_CASE("svg chart is generated as text") {
  CountingTable table;
  table.rows = {{10.0, 100, 95.0, 100.0 / 95.0}, {11.0, 380, 370.0, 380.0 / 370.0}};
  std::string svg = counting_table_svg(table);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}
