#include "orbitzeta/orbitcount.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oz {

namespace {

// Integrand of Li after the substitution u = log t.
double expu_over_u(double u) { return std::exp(u) / u; }

double simpson(double a, double b) {
  double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (expu_over_u(a) + 4.0 * expu_over_u(m) + expu_over_u(b));
}

double adaptive(double a, double b, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double left = simpson(a, m);
  double right = simpson(m, b);
  double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) < 15.0 * tol) return left + right + diff / 15.0;
  return adaptive(a, m, left, 0.5 * tol, depth - 1) + adaptive(m, b, right, 0.5 * tol, depth - 1);
}

// li(x) = gamma + log|log x| + sum_{n>=1} (log x)^n / (n n!), valid on (0,1)
// and (1, infinity).
double li_series(double x) {
  constexpr double euler_gamma = 0.57721566490153286060651209008240243;
  double lx = std::log(x);
  double sum = 0.0;
  double term = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= lx / n;
    double add = term / n;
    sum += add;
    if (std::abs(add) < 1e-17 * (1.0 + std::abs(sum)) && n > 8) break;
  }
  return euler_gamma + std::log(std::abs(lx)) + sum;
}

}  // namespace

double li(double y, double tol) {
  if (!(y > 0)) throw Error("li: argument must be positive");
  if (y == 1.0) throw Error("li: divergent at y = 1");
  if (y == 2.0) return 0.0;
  if (y > 1.0) {
    double a = std::log(2.0);
    double b = std::log(y);
    double sign = 1.0;
    if (b < a) {
      std::swap(a, b);
      sign = -1.0;
    }
    double rough = simpson(a, b);
    double eff = std::max(tol, 5e-14 * std::abs(rough));
    return sign * adaptive(a, b, rough, eff, 60);
  }
  // Principal-value convention through the y = 1 singularity.
  return li_series(y) - li_series(2.0);
}

std::int64_t pi_T(const std::vector<OrbitRecord>& records, double T, int n_max,
                  double min_value) {
  double safe = min_value * (n_max + 1);
  if (!(T < safe))
    throw Error("pi_T completeness guard violated: records are complete only for T < " +
                fmt12(safe) + " (min window value " + fmt12(min_value) + ", n_max " +
                std::to_string(n_max) + ")");
  std::int64_t count = 0;
  for (const auto& r : records)
    if (r.weight <= T) ++count;
  return count;
}

CountingTable pot_table(const SubdivisionRule& rule, const Potential& pot,
                        const std::vector<double>& T_grid, int n_max,
                        const CohomologyVerdict& verdict, std::uint64_t cap) {
  CountingTable table;
  table.cohomologous_constant = verdict.constant;
  table.constant_c = verdict.constant ? verdict.k_value : 0.0;
  if (T_grid.empty()) return table;

  table.s0 = solve_s0(rule, pot);
  double min_value = pot.min_value();
  double safe = min_value * (n_max + 1);
  for (double T : T_grid)
    if (!(T < safe))
      throw Error("pot_table completeness guard violated: T = " + fmt12(T) +
                  " is outside the safe range T < " + fmt12(safe));

  std::vector<std::int64_t> counts(T_grid.size(), 0);
  for_each_primitive_orbit(rule, n_max, pot, [&](const OrbitRecord& r) {
    for (std::size_t g = 0; g < T_grid.size(); ++g)
      if (r.weight <= T_grid[g]) ++counts[g];
  }, cap);

  double factor = 1.0;
  if (verdict.constant) {
    double sc = table.s0 * verdict.k_value;
    factor = sc * std::exp(sc) / (std::exp(sc) - 1.0);
  }
  for (std::size_t g = 0; g < T_grid.size(); ++g) {
    CountingRow row;
    row.T = T_grid[g];
    row.piT = counts[g];
    row.li_value = factor * li(std::exp(table.s0 * T_grid[g]));
    row.ratio = row.li_value != 0.0 ? static_cast<double>(row.piT) / row.li_value : 0.0;
    table.rows.push_back(row);
  }
  return table;
}

std::string counting_table_svg(const CountingTable& table) {
  const int w = 640, h = 400, pad = 50;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  if (!table.rows.empty()) {
    double tmin = table.rows.front().T, tmax = table.rows.back().T;
    double rmin = table.rows.front().ratio, rmax = rmin;
    for (const auto& r : table.rows) {
      rmin = std::min(rmin, r.ratio);
      rmax = std::max(rmax, r.ratio);
    }
    rmin = std::min(rmin, 1.0) - 0.05;
    rmax = std::max(rmax, 1.0) + 0.05;
    auto px = [&](double T) {
      return tmax > tmin ? pad + (T - tmin) / (tmax - tmin) * (w - 2 * pad) : w / 2.0;
    };
    auto py = [&](double r) { return h - pad - (r - rmin) / (rmax - rmin) * (h - 2 * pad); };
    os << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << w - pad << "\" y2=\""
       << h - pad << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << h - pad
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << pad << "\" y1=\"" << py(1.0) << "\" x2=\"" << w - pad << "\" y2=\""
       << py(1.0) << "\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (const auto& r : table.rows) os << fmt12(px(r.T)) << "," << fmt12(py(r.ratio)) << " ";
    os << "\"/>\n";
    for (const auto& r : table.rows)
      os << "<circle cx=\"" << fmt12(px(r.T)) << "\" cy=\"" << fmt12(py(r.ratio))
         << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace oz
