// Command-line front end: rule ingestion, one subcommand per analysis,
// deterministic CSV emission, and a machine-readable run manifest.

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitzeta/curve.hpp"
#include "orbitzeta/em.hpp"
#include "orbitzeta/orbitcount.hpp"
#include "orbitzeta/periodic.hpp"
#include "orbitzeta/potential.hpp"
#include "orbitzeta/subdivision.hpp"
#include "orbitzeta/thermo.hpp"
#include "orbitzeta/zeta.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct RunContext {
  std::string rule_path;
  std::string rule_text;
  oz::SubdivisionRule rule;
  std::string out_prefix;
  std::string subcommand;
  json parameters;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw oz::Error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void load_rule(RunContext& cx) {
  cx.rule_text = read_file(cx.rule_path);
  cx.rule = oz::parse_rule(cx.rule_text);
}

oz::Potential load_potential(const RunContext& cx, const std::string& path) {
  if (path.empty()) return oz::Potential::constant(cx.rule, 1.0);
  return oz::Potential::from_file(cx.rule, path);
}

void write_text(RunContext& cx, const std::string& suffix, const std::string& content) {
  std::string path = cx.out_prefix + suffix;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw oz::Error("cannot write output file '" + path + "'");
  out << content;
  cx.outputs.push_back(path);
}

void write_manifest(RunContext& cx) {
  json j;
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(oz::fnv1a64(cx.rule_text.data(), cx.rule_text.size())));
  j["rule_file"] = cx.rule_path;
  j["rule_hash_fnv1a64"] = hash;
  j["subcommand"] = cx.subcommand;
  j["parameters"] = cx.parameters;
  j["tool_version"] = ORBITZETA_VERSION;
  j["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - cx.started)
                     .count();
  j["outputs"] = cx.outputs;
  std::string path = cx.out_prefix + ".manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw oz::Error("cannot write manifest '" + path + "'");
  out << j.dump(2) << "\n";
}

// Parses either a single number or "start:end:count".
std::vector<double> parse_axis(const std::string& text) {
  auto c1 = text.find(':');
  if (c1 == std::string::npos) return {std::stod(text)};
  auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw oz::Error("axis syntax is value or start:end:count");
  double a = std::stod(text.substr(0, c1));
  double b = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  int count = std::stoi(text.substr(c2 + 1));
  if (count < 1) throw oz::Error("axis count must be >= 1");
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

const char* kind_name(oz::PeriodicClass::Kind k) {
  switch (k) {
    case oz::PeriodicClass::Kind::interior: return "interior";
    case oz::PeriodicClass::Kind::curve_nonvertex: return "curve";
    case oz::PeriodicClass::Kind::postcritical: return "postcritical";
  }
  return "?";
}

// ---- subcommand bodies -----------------------------------------------------

int cmd_validate(RunContext& cx) {
  oz::ValidationReport rep = oz::validate_rule(cx.rule);
  std::cout << rep.to_text();
  json j;
  j["valid"] = rep.ok();
  j["joins_opposite_sides"] = rep.any_tile_joins_opposite_sides;
  j["violations"] = json::array();
  for (const auto& v : rep.violations)
    j["violations"].push_back({{"invariant", v.invariant}, {"detail", v.detail}});
  write_text(cx, ".report.json", j.dump(2) + "\n");
  write_manifest(cx);
  return rep.ok() ? kExitOk : kExitDomain;
}

int cmd_identity(RunContext& cx, int n_max) {
  std::ostringstream csv;
  csv << "n,lhs,rhs,equal\n";
  bool all_equal = true;
  for (int n = 1; n <= n_max; ++n) {
    oz::AggregateIdentity id = oz::aggregate_identity(cx.rule, n);
    csv << n << "," << id.lhs.str() << "," << id.rhs.str() << "," << (id.equal ? "true" : "false")
        << "\n";
    all_equal = all_equal && id.equal;
  }
  write_text(cx, ".csv", csv.str());
  write_manifest(cx);
  std::cout << (all_equal ? "counting identity holds for n = 1.." + std::to_string(n_max)
                          : "counting identity VIOLATED")
            << "\n";
  return all_equal ? kExitOk : kExitDomain;
}

int cmd_pressure(RunContext& cx, const std::string& pot_path, double t, const std::string& method,
                 int n) {
  oz::Potential pot = load_potential(cx, pot_path);
  oz::PressureMethod pm;
  if (method == "spectral")
    pm = oz::PressureMethod::spectral;
  else if (method == "periodic")
    pm = oz::PressureMethod::periodic_sum;
  else if (method == "preimage")
    pm = oz::PressureMethod::preimage_sum;
  else
    throw oz::Error("unknown method '" + method + "' (spectral|periodic|preimage)");
  oz::PressureReport rep = oz::pressure(cx.rule, pot, t, pm, n);
  std::ostringstream csv;
  csv << "method,t,value,n,residual\n";
  csv << method << "," << oz::fmt12(t) << "," << oz::fmt12(rep.value) << "," << rep.n << ","
      << oz::fmt12(rep.residual) << "\n";
  write_text(cx, ".csv", csv.str());
  write_manifest(cx);
  std::cout << "P = " << oz::fmt12(rep.value) << "\n";
  return kExitOk;
}

int cmd_s0(RunContext& cx, const std::string& pot_path) {
  oz::Potential pot = load_potential(cx, pot_path);
  double s0 = oz::solve_s0(cx.rule, pot);
  std::ostringstream csv;
  csv << "s0\n" << oz::fmt12(s0) << "\n";
  write_text(cx, ".csv", csv.str());
  write_manifest(cx);
  std::cout << oz::fmt12(s0) << "\n";
  return kExitOk;
}

int cmd_zeta(RunContext& cx, const std::string& pot_path, const std::string& sre,
             const std::string& sim, int N) {
  oz::Potential pot = load_potential(cx, pot_path);
  oz::FactorSystems fs = oz::build_factor_systems(cx.rule, pot);
  std::ostringstream csv;
  csv << "re_s,im_s,abs_truncated,arg_truncated,abs_determinant,arg_determinant,tail_bound\n";
  for (double re : parse_axis(sre))
    for (double im : parse_axis(sim)) {
      oz::Complex s{re, im};
      oz::SeriesValue zt = oz::zeta_truncated(fs.tile, s, N);
      std::string det_abs = "pole", det_arg = "pole";
      oz::Complex det = oz::zeta_determinant_det(fs.tile, s);
      if (std::abs(det) >= 1e-13) {
        oz::Complex zd = 1.0 / det;
        det_abs = oz::fmt12(std::abs(zd));
        det_arg = oz::fmt12(std::arg(zd));
      }
      csv << oz::fmt12(re) << "," << oz::fmt12(im) << "," << oz::fmt12(std::abs(zt.value)) << ","
          << oz::fmt12(std::arg(zt.value)) << "," << det_abs << "," << det_arg << ","
          << (zt.tail_bound ? oz::fmt12(*zt.tail_bound) : std::string("unavailable")) << "\n";
    }
  write_text(cx, ".csv", csv.str());
  write_manifest(cx);
  return kExitOk;
}

int cmd_dirichlet(RunContext& cx, const std::string& pot_path, const std::string& sre,
                  const std::string& sim, int N, std::uint64_t cap) {
  oz::Potential pot = load_potential(cx, pot_path);
  std::ostringstream csv;
  csv << "re_s,im_s,abs_value,arg_value,tail_bound,product_residual\n";
  for (double re : parse_axis(sre))
    for (double im : parse_axis(sim)) {
      oz::Complex s{re, im};
      oz::SeriesValue d = oz::dirichlet_truncated(cx.rule, pot, s, N, cap);
      double residual = oz::product_identity_residual(cx.rule, pot, s, N);
      csv << oz::fmt12(re) << "," << oz::fmt12(im) << "," << oz::fmt12(std::abs(d.value)) << ","
          << oz::fmt12(std::arg(d.value)) << ","
          << (d.tail_bound ? oz::fmt12(*d.tail_bound) : std::string("unavailable")) << ","
          << oz::fmt12(residual) << "\n";
    }
  write_text(cx, ".csv", csv.str());
  write_manifest(cx);
  return kExitOk;
}

int cmd_orbits(RunContext& cx, const std::string& pot_path, int n_max, std::uint64_t cap) {
  oz::Potential pot = load_potential(cx, pot_path);
  auto records = oz::primitive_orbits(cx.rule, n_max, pot, cap);
  std::ostringstream csv;
  csv << "period,kind,address,weight,degree\n";
  for (const auto& r : records)
    csv << r.period << "," << kind_name(r.kind) << "," << r.address << "," << oz::fmt12(r.weight)
        << "," << r.degree << "\n";
  write_text(cx, ".csv", csv.str());
  write_manifest(cx);
  std::cout << records.size() << " primitive orbits up to period " << n_max << "\n";
  return kExitOk;
}

int cmd_pot(RunContext& cx, const std::string& pot_path, const std::string& grid_text, int n_max,
            bool svg, std::uint64_t cap) {
  oz::Potential pot = load_potential(cx, pot_path);
  std::vector<double> grid = parse_grid(grid_text);
  oz::CohomologyVerdict verdict = oz::cohomology_test(cx.rule, pot, std::min(n_max, 8));
  oz::CountingTable table = oz::pot_table(cx.rule, pot, grid, n_max, verdict, cap);
  std::ostringstream csv;
  csv << "T,piT,li,ratio\n";
  for (const auto& row : table.rows)
    csv << oz::fmt12(row.T) << "," << row.piT << "," << oz::fmt12(row.li_value) << ","
        << oz::fmt12(row.ratio) << "\n";
  write_text(cx, ".csv", csv.str());
  if (svg) write_text(cx, ".svg", oz::counting_table_svg(table));
  write_manifest(cx);
  std::cout << "s0 = " << oz::fmt12(table.s0)
            << (table.cohomologous_constant
                    ? " (cohomologous to the constant " + oz::fmt12(table.constant_c) + ")"
                    : " (not cohomologous to a constant)")
            << "\n";
  return kExitOk;
}

int cmd_em(RunContext& cx, int m, int trials, int n_max, std::uint64_t seed) {
  oz::EmReport report = oz::check_Em_bound(cx.rule, m, trials, n_max, seed);
  std::ostringstream csv;
  csv << "trial,n,cardinality,bound,ratio,within_bound,matches\n";
  for (std::size_t i = 0; i < report.trials.size(); ++i) {
    const auto& t = report.trials[i];
    csv << i << "," << t.n << "," << t.cardinality << "," << oz::fmt12(t.bound) << ","
        << oz::fmt12(t.ratio) << "," << (t.within_bound ? "true" : "false") << ","
        << (t.recursion_matches_direct ? "true" : "false") << "\n";
  }
  write_text(cx, ".csv", csv.str());
  write_manifest(cx);
  std::cout << "max ratio " << oz::fmt12(report.max_ratio) << " over " << trials << " trials\n";
  if (!report.all_within_bound) {
    std::cerr << "cardinality bound violated\n";
    return kExitDomain;
  }
  if (!report.all_match) {
    std::cerr << "recursive and direct preimage sets disagree\n";
    return kExitDomain;
  }
  return kExitOk;
}

int cmd_cohomology(RunContext& cx, const std::string& pot_path, int n_max) {
  oz::Potential pot = load_potential(cx, pot_path);
  oz::CohomologyVerdict verdict = oz::cohomology_test(cx.rule, pot, n_max);
  std::ostringstream csv;
  if (verdict.constant) {
    csv << "verdict,K\nconstant," << oz::fmt12(verdict.k_value) << "\n";
    std::cout << "constant orbit means, K = " << oz::fmt12(verdict.k_value) << "\n";
  } else {
    csv << "verdict,period,address,weight,mean\n";
    for (const auto* w : {&*verdict.witness_low, &*verdict.witness_high})
      csv << "witness," << w->period << "," << w->address << "," << oz::fmt12(w->weight) << ","
          << oz::fmt12(w->weight / w->period) << "\n";
    std::cout << "not cohomologous to a constant; witness orbit means "
              << oz::fmt12(verdict.witness_low->weight / verdict.witness_low->period) << " vs "
              << oz::fmt12(verdict.witness_high->weight / verdict.witness_high->period) << "\n";
  }
  write_text(cx, ".csv", csv.str());
  write_manifest(cx);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic dynamics of subdivision rules: shifts, pressure, zeta functions, and "
               "prime orbit counts"};
  app.require_subcommand(1);

  RunContext cx;
  std::string pot_path, method = "spectral", sre = "2.0", sim = "0.0", grid = "";
  int n_max = 8, n = 12, N = 12, m = 14, trials = 200;
  double t = 1.0;
  std::uint64_t cap = 100'000'000, seed = 12345;
  bool svg = false;

  auto add_common = [&](CLI::App* sub, bool needs_potential) {
    sub->add_option("--rule", cx.rule_path, "rule JSON file")->required();
    sub->add_option("--out", cx.out_prefix, "output file prefix");
    if (needs_potential)
      sub->add_option("--potential", pot_path, "potential JSON file (default: constant 1)");
  };

  CLI::App* validate = app.add_subcommand("validate", "check every rule invariant");
  add_common(validate, false);

  CLI::App* identity = app.add_subcommand("identity", "exact counting identity per n");
  add_common(identity, false);
  identity->add_option("--n-max", n_max, "largest n");

  CLI::App* pressure = app.add_subcommand("pressure", "topological pressure of -t*phi");
  add_common(pressure, true);
  pressure->add_option("--t", t, "parameter t");
  pressure->add_option("--method", method, "spectral|periodic|preimage");
  pressure->add_option("--n", n, "truncation for the sum methods");

  CLI::App* s0 = app.add_subcommand("s0", "critical exponent: P(-s0*phi) = 0");
  add_common(s0, true);

  CLI::App* zeta = app.add_subcommand("zeta", "tile-shift zeta, truncated and determinant forms");
  add_common(zeta, true);
  zeta->add_option("--s-re", sre, "Re(s), value or start:end:count");
  zeta->add_option("--s-im", sim, "Im(s), value or start:end:count");
  zeta->add_option("--N", N, "series truncation");

  CLI::App* dirichlet = app.add_subcommand("dirichlet", "degree-weighted Dirichlet series");
  add_common(dirichlet, true);
  dirichlet->add_option("--s-re", sre, "Re(s), value or start:end:count");
  dirichlet->add_option("--s-im", sim, "Im(s), value or start:end:count");
  dirichlet->add_option("--N", N, "series truncation");
  dirichlet->add_option("--cap", cap, "enumeration budget");

  CLI::App* orbits = app.add_subcommand("orbits", "primitive periodic orbit table");
  add_common(orbits, true);
  orbits->add_option("--n-max", n_max, "largest period");
  orbits->add_option("--cap", cap, "enumeration budget");

  CLI::App* pot = app.add_subcommand("pot", "prime orbit counts against Li(e^{s0 T})");
  add_common(pot, true);
  pot->add_option("--T-grid", grid, "comma-separated T values")->required();
  pot->add_option("--n-max", n_max, "largest period enumerated");
  pot->add_flag("--svg", svg, "also emit an SVG ratio chart");
  pot->add_option("--cap", cap, "enumeration budget");

  int em_n = 28;
  CLI::App* em = app.add_subcommand("em", "curve preimage sets and their cardinality bound");
  add_common(em, false);
  em->add_option("--m", m, "edge-pair level (>= 14)");
  em->add_option("--trials", trials, "number of random itineraries");
  em->add_option("--n", em_n, "largest itinerary length");
  em->add_option("--seed", seed, "RNG seed");

  CLI::App* cohomology = app.add_subcommand("cohomology", "constant-orbit-mean screen");
  add_common(cohomology, true);
  cohomology->add_option("--n-max", n_max, "largest period");
  cohomology->add_option("--cap", cap, "enumeration budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  cx.subcommand = sub->get_name();
  if (cx.out_prefix.empty()) cx.out_prefix = cx.subcommand + "_out";

  try {
    load_rule(cx);
  } catch (const oz::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    json& p = cx.parameters;
    if (cx.subcommand == "validate") return cmd_validate(cx);
    if (cx.subcommand == "identity") {
      p["n_max"] = n_max;
      return cmd_identity(cx, n_max);
    }
    if (cx.subcommand == "pressure") {
      p["potential"] = pot_path;
      p["t"] = t;
      p["method"] = method;
      p["n"] = n;
      return cmd_pressure(cx, pot_path, t, method, n);
    }
    if (cx.subcommand == "s0") {
      p["potential"] = pot_path;
      return cmd_s0(cx, pot_path);
    }
    if (cx.subcommand == "zeta") {
      p["potential"] = pot_path;
      p["s_re"] = sre;
      p["s_im"] = sim;
      p["N"] = N;
      return cmd_zeta(cx, pot_path, sre, sim, N);
    }
    if (cx.subcommand == "dirichlet") {
      p["potential"] = pot_path;
      p["s_re"] = sre;
      p["s_im"] = sim;
      p["N"] = N;
      return cmd_dirichlet(cx, pot_path, sre, sim, N, cap);
    }
    if (cx.subcommand == "orbits") {
      p["potential"] = pot_path;
      p["n_max"] = n_max;
      return cmd_orbits(cx, pot_path, n_max, cap);
    }
    if (cx.subcommand == "pot") {
      p["potential"] = pot_path;
      p["T_grid"] = grid;
      p["n_max"] = n_max;
      return cmd_pot(cx, pot_path, grid, n_max, svg, cap);
    }
    if (cx.subcommand == "em") {
      p["m"] = m;
      p["trials"] = trials;
      p["n_max"] = em_n;
      p["seed"] = seed;
      return cmd_em(cx, m, trials, em_n, seed);
    }
    if (cx.subcommand == "cohomology") {
      p["potential"] = pot_path;
      p["n_max"] = n_max;
      return cmd_cohomology(cx, pot_path, n_max);
    }
  } catch (const oz::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
