#pragma once

#include "orbitzeta/periodic.hpp"
#include "orbitzeta/potential.hpp"
#include "orbitzeta/thermo.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace oz {

// Eulerian logarithmic integral: integral from 2 to y of du/log u, signed for
// y in (0,1) by the principal-value convention. y = 1 is a domain error.
double li(double y, double tol = 1e-10);

// card{tau : l_phi(tau) <= T} over complete records. The completeness guard
// T < (min window value) * (n_max + 1) must hold; throws with the safe range
// otherwise.
std::int64_t pi_T(const std::vector<OrbitRecord>& records, double T, int n_max,
                  double min_value);

struct CountingRow {
  double T = 0.0;
  std::int64_t piT = 0;
  double li_value = 0.0;  // comparison column
  double ratio = 0.0;
};

struct CountingTable {
  std::vector<CountingRow> rows;
  double s0 = 0.0;
  bool cohomologous_constant = false;
  double constant_c = 0.0;
};

// Builds the counting table against Li(e^{s0 T}); when the cohomology verdict
// is a constant c the comparison column carries the constant-case factor
// s0 c e^{s0 c} / (e^{s0 c} - 1).
CountingTable pot_table(const SubdivisionRule& rule, const Potential& pot,
                        const std::vector<double>& T_grid, int n_max,
                        const CohomologyVerdict& verdict,
                        std::uint64_t cap = 400'000'000);

// Plain-text SVG line chart of the ratio column.
std::string counting_table_svg(const CountingTable& table);

}  // namespace oz
