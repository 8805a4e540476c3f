#include <doctest.h>

#include "orbitzeta/potential.hpp"
#include "orbitzeta/thermo.hpp"
#include "orbitzeta/transfer.hpp"

#include <cmath>

using namespace oz;

namespace {
std::string data_path(const std::string& name) { return std::string(ORBITZETA_DATA_DIR) + "/" + name; }
const double kLog4 = std::log(4.0);
}

TEST_CASE("birkhoff sums") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential c = Potential::constant(rule, 2.5);
  std::vector<int> word{rule.tile("F00"), rule.tile("F11"), rule.tile("F11")};
  CHECK(birkhoff_sum(rule, c, word, 3) == doctest::Approx(7.5));
  CHECK(birkhoff_sum(rule, c, word, 0) == 0.0);
  Potential pot = Potential::from_file(rule, data_path("pot_k1_mild.json"));
  std::vector<int> per2{rule.tile("F00"), rule.tile("F11")};
  CHECK(birkhoff_sum(rule, pot, per2, 2, /*wrap=*/true) == doctest::Approx(1.05 + 0.93));
  CHECK_THROWS_AS(birkhoff_sum(rule, pot, {rule.tile("F00")}, 2, /*wrap=*/false), Error);
}

TEST_CASE("transfer matrix entries") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential pot = Potential::from_file(rule, data_path("pot_k1_mild.json"));
  BlockSystem bs = higher_block(tile_shift(rule), 1);
  auto w = bind_tile_weights(rule, bs, pot);
  Eigen::MatrixXd b0 = transfer_matrix<double>(bs.system, w, 0.0);
  Eigen::MatrixXd b1 = transfer_matrix<double>(bs.system, w, 1.0);
  for (int i = 0; i < bs.size(); ++i)
    for (int j = 0; j < bs.size(); ++j) {
      if (bs.system.has_arc(i, j)) {
        CHECK(b0(i, j) == 1.0);
        CHECK(b1(i, j) == doctest::Approx(std::exp(-w[i])).epsilon(1e-14));
      } else {
        CHECK(b0(i, j) == 0.0);
        CHECK(b1(i, j) == 0.0);
      }
    }
}

TEST_CASE("pressure of the constant potential") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential one = Potential::constant(rule, 1.0);
  PressureReport p0 = pressure(rule, one, 0.0, PressureMethod::spectral);
  CHECK(p0.value == doctest::Approx(kLog4).epsilon(1e-12));
  CHECK(p0.residual < 1e-12);
  for (double t : {0.3, 1.0, 2.7}) {
    CHECK(pressure(rule, one, t, PressureMethod::spectral).value ==
          doctest::Approx(kLog4 - t).epsilon(1e-11));
    CHECK(pressure(rule, one, t, PressureMethod::periodic_sum, 12).value ==
          doctest::Approx(kLog4 - t).epsilon(1e-11));
    CHECK(pressure(rule, one, t, PressureMethod::preimage_sum, 12).value ==
          doctest::Approx(kLog4 - t).epsilon(1e-11));
  }
}

TEST_CASE("spectral and periodic-sum pressures agree for a non-constant potential") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential pot = Potential::from_file(rule, data_path("pot_k1_mild.json"));
  double ps = pressure(rule, pot, 1.0, PressureMethod::spectral).value;
  double pp = pressure(rule, pot, 1.0, PressureMethod::periodic_sum, 12).value;
  CHECK(std::abs(ps - pp) < 1e-3);
}

TEST_CASE("spectral pressure refuses non-mixing shifts") {
  SubdivisionRule rule = builtin::pillow2x2();
  TransitionSystem edges = edge_shift(rule);
  std::vector<double> w(edges.size(), 1.0);
  CHECK_THROWS_AS(pressure(edges, w, 0.0, PressureMethod::spectral), Error);
}

TEST_CASE("s0 for constant potentials") {
  SubdivisionRule rule = builtin::pillow2x2();
  CHECK(std::abs(solve_s0(rule, Potential::constant(rule, 1.0)) - kLog4) < 1e-9);
  for (double c : {0.5, 2.0, 3.25}) {
    CHECK(std::abs(solve_s0(rule, Potential::constant(rule, c)) - kLog4 / c) < 1e-9);
  }
}

TEST_CASE("s0 brackets a sign change") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential pot = Potential::from_file(rule, data_path("pot_k1_skew.json"));
  double s0 = solve_s0(rule, pot);
  BlockSystem bs = higher_block(tile_shift(rule), 1);
  auto w = bind_tile_weights(rule, bs, pot);
  auto p_at = [&](double t) {
    std::vector<double> psi(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) psi[i] = -t * w[i];
    return pressure_of_weights(bs.system, psi);
  };
  CHECK(p_at(s0 - 1e-6) > 0);
  CHECK(p_at(s0 + 1e-6) < 0);
}

TEST_CASE("eventual positivity via the minimum cycle mean") {
  SubdivisionRule rule = builtin::pillow2x2();
  CHECK(eventually_positive(rule, Potential::constant(rule, 1.0)).positive);
  CHECK(eventually_positive(rule, Potential::from_file(rule, data_path("pot_k1_mild.json"))).positive);

  // A zero-sum cycle: the color-stable tile F00 carries a self-loop.
  std::map<std::string, double> vals;
  for (const auto& t : rule.one_tiles) vals[t.id] = 1.0;
  vals["F00"] = 0.0;
  auto r = eventually_positive(rule, Potential(1, vals));
  CHECK_FALSE(r.positive);
  CHECK(r.min_cycle_mean == doctest::Approx(0.0));
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->mean == doctest::Approx(0.0));

  // Strongly negative value on a fixed state: witness mean -10.
  vals["F00"] = -10.0;
  auto r2 = eventually_positive(rule, Potential(1, vals));
  CHECK_FALSE(r2.positive);
  CHECK(r2.min_cycle_mean == doctest::Approx(-10.0));
  REQUIRE(r2.witness.has_value());
  CHECK(r2.witness->mean == doctest::Approx(r2.min_cycle_mean));
  CHECK(r2.witness->states.size() == 1);
}

TEST_CASE("solve_s0 rejects non-eventually-positive potentials") {
  SubdivisionRule rule = builtin::pillow2x2();
  std::map<std::string, double> vals;
  for (const auto& t : rule.one_tiles) vals[t.id] = 1.0;
  vals["F00"] = -10.0;
  try {
    solve_s0(rule, Potential(1, vals));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("eventually positive") != std::string::npos);
  }
}

TEST_CASE("equilibrium measure of a constant potential is the Parry measure") {
  SubdivisionRule rule = builtin::pillow2x2();
  MarkovMeasure mm = equilibrium_measure(rule, Potential::constant(rule, 1.0), 0.7);
  REQUIRE(mm.stationary.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(mm.stationary[i] == doctest::Approx(0.125).epsilon(1e-10));
  for (int i = 0; i < 8; ++i) {
    double rowsum = mm.kernel.row(i).sum();
    CHECK(rowsum == doctest::Approx(1.0).epsilon(1e-12));
  }
  // stationarity residual
  Eigen::VectorXd pi = mm.stationary;
  Eigen::VectorXd piP = mm.kernel.transpose() * pi;
  CHECK((piP - pi).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("variational identity at the equilibrium measure") {
  SubdivisionRule rule = builtin::pillow2x2();
  for (const char* name : {"pot_k1_mild.json", "pot_k1_skew.json", "pot_k2_mild.json"}) {
    Potential pot = Potential::from_file(rule, data_path(name));
    double t = 1.1;
    MarkovMeasure mm = equilibrium_measure(rule, pot, t);
    BlockSystem bs = higher_block(tile_shift(rule), pot.k());
    auto w = bind_tile_weights(rule, bs, pot);
    double integral = 0.0;
    for (int i = 0; i < bs.size(); ++i) integral += mm.stationary[i] * (-t * w[i]);
    CHECK(std::abs(mm.entropy + integral - mm.pressure) < 1e-8);
    Eigen::VectorXd piP = mm.kernel.transpose() * mm.stationary;
    CHECK((piP - mm.stationary).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("pressure derivative checks") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential zero = Potential::constant(rule, 0.0);
  Potential one = Potential::constant(rule, 1.0);
  // constants shift the pressure linearly
  auto d1 = pressure_derivative_check(rule, one, zero, 0.4, 1e-4);
  CHECK(d1.finite_difference == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d1.integral == doctest::Approx(1.0).epsilon(1e-12));
  // d/dt P(-t phi) = -int phi < 0 for positive phi
  Potential minus_one = Potential::constant(rule, -1.0);
  auto d2 = pressure_derivative_check(rule, minus_one, zero, 1.0, 1e-4);
  CHECK(d2.finite_difference == doctest::Approx(-1.0).epsilon(1e-9));
  // a non-constant direction
  Potential gamma = Potential::from_file(rule, data_path("pot_k1_mild.json"));
  Potential base = Potential::from_file(rule, data_path("pot_k1_skew.json"));
  auto d3 = pressure_derivative_check(rule, gamma, base, 0.2, 1e-4);
  CHECK(d3.discrepancy < 1e-6);
}

TEST_CASE("boundary pressures for the zero potential") {
  SubdivisionRule rule = builtin::pillow2x2();
  BoundaryPressures bp = boundary_pressures(rule, Potential::constant(rule, 0.0), 1.0);
  CHECK(std::abs(bp.tile - kLog4) < 1e-10);
  CHECK(std::abs(bp.edge_black - std::log(2.0)) < 1e-10);
  CHECK(std::abs(bp.edge_white - std::log(2.0)) < 1e-10);
  CHECK(std::abs(bp.edge_color - std::log(2.0)) < 1e-10);
  CHECK(std::abs(bp.vertex) < 1e-10);
  CHECK(bp.tile - bp.edge_black > 0.5);
  CHECK(bp.factor_invariance_gap < 1e-10);
}

TEST_CASE("boundary pressure gap is strictly positive for all shipped potentials") {
  SubdivisionRule rule = builtin::pillow2x2();
  for (const char* name :
       {"pot_k1_mild.json", "pot_k1_skew.json", "pot_k2_mild.json", "pot_k3_nli.json"}) {
    Potential pot = Potential::from_file(rule, data_path(name));
    BoundaryPressures bp = boundary_pressures(rule, pot, 1.0);
    CHECK(bp.tile > bp.edge_black);
    CHECK(bp.tile > bp.edge_white);
    CHECK(bp.tile > bp.edge_color);
    CHECK(bp.tile > bp.vertex);
    CHECK(bp.factor_invariance_gap < 1e-10);
  }
}

TEST_CASE("temporal distance vanishes in the degenerate directions") {
  SubdivisionRule rule = builtin::pillow2x2();
  int F00 = rule.tile("F00"), F11 = rule.tile("F11"), F10 = rule.tile("F10");
  std::vector<int> xi(6, F00), eta(6, F11);
  std::vector<int> x{F00, F00, F00}, y{F00, F11, F00}, z{F00, F10, rule.tile("G11")};

  Potential c = Potential::constant(rule, 3.7);
  CHECK(temporal_distance(rule, c, xi, eta, x, y, 6) == 0.0);

  Potential k3 = Potential::from_file(rule, data_path("pot_k3_nli.json"));
  CHECK(temporal_distance(rule, k3, xi, xi, x, y, 6) == 0.0);  // xi = eta
  CHECK(temporal_distance(rule, k3, xi, eta, x, x, 6) == 0.0);  // x = y

  // difference identity: Delta(x,y) = Delta(z,y) - Delta(z,x), exact
  double dxy = delta_sum(rule, k3, xi, x, y, 6);
  double dzy = delta_sum(rule, k3, xi, z, y, 6);
  double dzx = delta_sum(rule, k3, xi, z, x, 6);
  CHECK(dxy == doctest::Approx(dzy - dzx).epsilon(1e-14));
}

TEST_CASE("temporal distance is nonzero for the shipped level-3 potential") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential k3 = Potential::from_file(rule, data_path("pot_k3_nli.json"));
  int F00 = rule.tile("F00"), F11 = rule.tile("F11");
  std::vector<int> xi(6, F00), eta(6, F11);
  std::vector<int> x{F00, F00, F00}, y{F00, F11, F00};
  double v = temporal_distance(rule, k3, xi, eta, x, y, 6);
  // phi(F00F00F00) - phi(F00F00F11) - phi(F11F00F00) + phi(F11F00F11)
  CHECK(v == doctest::Approx(0.920 - 1.036 - 0.826 + 0.930).epsilon(1e-12));
  CHECK(std::abs(v) > 1e-3);
  // deeper truncation does not change the exact value (tail vanishes)
  CHECK(temporal_distance(rule, k3, xi, eta, x, y, 3) == doctest::Approx(v).epsilon(1e-14));
}

TEST_CASE("temporal distance preconditions") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential k3 = Potential::from_file(rule, data_path("pot_k3_nli.json"));
  int F00 = rule.tile("F00"), F10 = rule.tile("F10");
  std::vector<int> xi(6, F00);
  std::vector<int> eta(6, F10);  // image color black != white
  std::vector<int> x{F00, F00, F00};
  CHECK_THROWS_AS(temporal_distance(rule, k3, xi, eta, x, x, 4), Error);
  std::vector<int> y{F10, F00, F00};  // different first letter
  CHECK_THROWS_AS(temporal_distance(rule, k3, xi, xi, x, y, 4), Error);
}

TEST_CASE("cohomology screen") {
  SubdivisionRule rule = builtin::pillow2x2();
  auto v1 = cohomology_test(rule, Potential::constant(rule, 2.25), 5);
  CHECK(v1.constant);
  CHECK(v1.k_value == doctest::Approx(2.25).epsilon(1e-13));

  // two fixed states with different values witness at period 1
  std::map<std::string, double> vals;
  for (const auto& t : rule.one_tiles) vals[t.id] = 1.0;
  vals["F11"] = 2.0;
  auto v2 = cohomology_test(rule, Potential(1, vals), 3);
  CHECK_FALSE(v2.constant);
  REQUIRE(v2.witness_low.has_value());
  REQUIRE(v2.witness_high.has_value());
  CHECK(v2.witness_low->weight / v2.witness_low->period == doctest::Approx(1.0));
  CHECK(v2.witness_high->weight / v2.witness_high->period == doctest::Approx(2.0));
  CHECK(v2.witness_high->period == 1);

  auto v3 = cohomology_test(rule, Potential::from_file(rule, data_path("pot_k1_skew.json")), 6);
  CHECK_FALSE(v3.constant);
  REQUIRE(v3.witness_low.has_value());
  CHECK(v3.witness_low->weight / v3.witness_low->period <
        v3.witness_high->weight / v3.witness_high->period);
}

TEST_CASE("t -> P(-t phi) is strictly decreasing on a grid") {
  SubdivisionRule rule = builtin::pillow2x2();
  for (const char* name : {"pot_k1_mild.json", "pot_k1_skew.json"}) {
    Potential pot = Potential::from_file(rule, data_path(name));
    double prev = std::numeric_limits<double>::infinity();
    for (double t = -1.0; t <= 3.0; t += 0.25) {
      double p = pressure(rule, pot, t, PressureMethod::spectral).value;
      CHECK(p < prev);
      prev = p;
    }
  }
}

TEST_CASE("equilibrium kernel is supported exactly on the transition relation") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential pot = Potential::from_file(rule, data_path("pot_k1_mild.json"));
  MarkovMeasure mm = equilibrium_measure(rule, pot, 0.8);
  BlockSystem bs = higher_block(tile_shift(rule), 1);
  for (int i = 0; i < bs.size(); ++i)
    for (int j = 0; j < bs.size(); ++j) {
      if (bs.system.has_arc(i, j))
        CHECK(mm.kernel(i, j) > 0.0);
      else
        CHECK(mm.kernel(i, j) == 0.0);
    }
}
