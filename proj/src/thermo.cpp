#include "orbitzeta/thermo.hpp"

#include "orbitzeta/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

namespace oz {

namespace {

struct BoundSystems {
  BlockSystem blocks;
  std::vector<double> weights;
};

BoundSystems bind_tile(const SubdivisionRule& rule, const Potential& pot) {
  BoundSystems out;
  out.blocks = higher_block(tile_shift(rule), pot.k());
  out.weights = bind_tile_weights(rule, out.blocks, pot);
  return out;
}

}  // namespace

PressureReport pressure(const TransitionSystem& ts, const std::vector<double>& weights, double t,
                        PressureMethod method, int n) {
  if (static_cast<int>(weights.size()) != ts.size())
    throw Error("pressure: weight vector does not match the system");
  PressureReport rep;
  rep.method = method;
  switch (method) {
    case PressureMethod::spectral: {
      if (!is_mixing(ts)) throw Error("spectral pressure requires a topologically mixing shift");
      Eigen::MatrixXd b = transfer_matrix<double>(ts, weights, t);
      PerronResult pr = power_iteration(b);
      rep.value = std::log(pr.rho);
      rep.residual = pr.residual;
      rep.n = pr.iterations;
      break;
    }
    case PressureMethod::periodic_sum: {
      if (n < 2) throw Error("periodic-sum pressure needs n >= 2");
      Eigen::MatrixXd b = transfer_matrix<double>(ts, weights, t);
      auto traces = trace_powers(b, n);
      if (!(traces[n - 1] > 0)) throw Error("periodic-sum pressure: no closed walks at this n");
      rep.value = std::log(traces[n - 1]) / n;
      double prev = std::log(traces[n - 2]) / (n - 1);
      rep.residual = std::abs(rep.value - prev);
      rep.n = n;
      break;
    }
    case PressureMethod::preimage_sum: {
      if (n < 2) throw Error("preimage-sum pressure needs n >= 2");
      Eigen::MatrixXd b = transfer_matrix<double>(ts, weights, t);
      // (1^T B^n)_{s0}: all n-step symbolic preimages of the base state
      // (index 0), each weighted by exp(-t S_n phi).
      Eigen::VectorXd u = Eigen::VectorXd::Ones(ts.size());
      Eigen::VectorXd uprev = u;
      for (int i = 0; i < n; ++i) {
        if (i + 1 == n) uprev = u;
        u = (b.transpose() * u).eval();
      }
      if (!(u[0] > 0)) throw Error("preimage-sum pressure: base state unreachable at this n");
      rep.value = std::log(u[0]) / n;
      rep.residual = std::abs(rep.value - std::log(uprev[0]) / (n - 1));
      rep.n = n;
      break;
    }
  }
  return rep;
}

PressureReport pressure(const SubdivisionRule& rule, const Potential& pot, double t,
                        PressureMethod method, int n) {
  BoundSystems bs = bind_tile(rule, pot);
  return pressure(bs.blocks.system, bs.weights, t, method, n);
}

double pressure_of_weights(const TransitionSystem& ts, const std::vector<double>& psi) {
  const int n = ts.size();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double w = std::exp(psi[i]);
    for (int j : ts.succ[i]) b(i, j) = w;
  }
  return std::log(spectral_radius(b));
}

double solve_s0(const SubdivisionRule& rule, const Potential& pot, double tol) {
  EventuallyPositiveResult ep = eventually_positive(rule, pot);
  if (!ep.positive)
    throw Error("potential is not eventually positive (minimum cycle mean " +
                fmt12(ep.min_cycle_mean) + " <= 0); s0 is undefined");
  BoundSystems bs = bind_tile(rule, pot);
  auto pressure_at = [&](double t) {
    std::vector<double> psi(bs.weights.size());
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = -t * bs.weights[i];
    return pressure_of_weights(bs.blocks.system, psi);
  };
  double lo = 0.0;
  double p_lo = pressure_at(lo);
  if (!(p_lo > 0)) throw Error("P(f, 0) = h_top must be positive");
  double hi = 1.0;
  int guard = 0;
  while (pressure_at(hi) >= 0) {
    hi *= 2;
    if (++guard > 60) throw Error("s0 bracket did not close");
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double p = pressure_at(mid);
    if (std::abs(p) < tol) return mid;
    if (p > 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// ---- Karp minimum cycle mean with witness ----------------------------------

namespace {

struct SccDecomposition {
  std::vector<int> comp;
  int count = 0;
};

SccDecomposition scc(const TransitionSystem& ts) {
  const int n = ts.size();
  SccDecomposition out;
  out.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
  std::vector<int> stck;
  int next_index = 0;
  struct Frame {
    int v;
    std::size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stck.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < ts.succ[f.v].size()) {
        int w = ts.succ[f.v][f.child++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stck.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            int w = stck.back();
            stck.pop_back();
            on_stack[w] = 0;
            out.comp[w] = out.count;
            if (w == f.v) break;
          }
          ++out.count;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return out;
}

}  // namespace

EventuallyPositiveResult eventually_positive(const SubdivisionRule& rule, const Potential& pot) {
  BoundSystems bs = bind_tile(rule, pot);
  const TransitionSystem& ts = bs.blocks.system;
  const std::vector<double>& w = bs.weights;  // weight of the arc (i -> j) is w[i]
  const int n = ts.size();

  SccDecomposition sc = scc(ts);
  EventuallyPositiveResult out;
  out.min_cycle_mean = std::numeric_limits<double>::infinity();
  int best_comp = -1;

  for (int c = 0; c < sc.count; ++c) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (sc.comp[i] == c) members.push_back(i);
    if (members.size() == 1 && !ts.has_arc(members[0], members[0])) continue;
    const int m = static_cast<int>(members.size());
    std::vector<int> local(n, -1);
    for (int i = 0; i < m; ++i) local[members[i]] = i;
    const double inf = std::numeric_limits<double>::infinity();
    // Karp: d[k][v] = min weight of a k-arc walk ending at v inside the SCC.
    std::vector<std::vector<double>> d(m + 1, std::vector<double>(m, inf));
    for (int v = 0; v < m; ++v) d[0][v] = 0.0;
    for (int k = 1; k <= m; ++k)
      for (int u = 0; u < m; ++u) {
        if (d[k - 1][u] == inf) continue;
        for (int j : ts.succ[members[u]]) {
          int v = local[j];
          if (v < 0) continue;
          d[k][v] = std::min(d[k][v], d[k - 1][u] + w[members[u]]);
        }
      }
    double mu = inf;
    for (int v = 0; v < m; ++v) {
      if (d[m][v] == inf) continue;
      double worst = -inf;
      for (int k = 0; k < m; ++k) {
        if (d[k][v] == inf) continue;
        worst = std::max(worst, (d[m][v] - d[k][v]) / (m - k));
      }
      mu = std::min(mu, worst);
    }
    if (mu < out.min_cycle_mean) {
      out.min_cycle_mean = mu;
      best_comp = c;
    }
  }
  if (best_comp < 0) throw Error("shift has no cycles; minimum cycle mean undefined");
  out.positive = out.min_cycle_mean > 0;
  if (out.positive) return out;

  // Witness: after reweighting by -mu the minimum cycle mean is zero, so a
  // zero-mean cycle lies in the tight-arc subgraph of Bellman-Ford
  // distances inside the minimizing component.
  const double mu = out.min_cycle_mean;
  std::vector<int> members;
  for (int i = 0; i < n; ++i)
    if (sc.comp[i] == best_comp) members.push_back(i);
  const int m = static_cast<int>(members.size());
  std::vector<int> local(n, -1);
  for (int i = 0; i < m; ++i) local[members[i]] = i;
  std::vector<double> dist(m, 0.0);
  for (int round = 0; round < m; ++round)
    for (int u = 0; u < m; ++u)
      for (int j : ts.succ[members[u]]) {
        int v = local[j];
        if (v < 0) continue;
        dist[v] = std::min(dist[v], dist[u] + (w[members[u]] - mu));
      }
  double scale = 1.0;
  for (int u = 0; u < m; ++u) scale = std::max(scale, std::abs(w[members[u]]));
  const double eps = 1e-9 * scale;
  std::vector<int> state(m, 0), parent(m, -1);
  CycleWitness witness;
  std::function<bool(int)> dfs = [&](int u) -> bool {
    state[u] = 1;
    for (int j : ts.succ[members[u]]) {
      int v = local[j];
      if (v < 0) continue;
      if (dist[u] + (w[members[u]] - mu) > dist[v] + eps) continue;
      if (state[v] == 1) {
        std::vector<int> cyc{members[v]};
        int cur = u;
        while (cur != v) {
          cyc.push_back(members[cur]);
          cur = parent[cur];
        }
        std::reverse(cyc.begin() + 1, cyc.end());
        witness.states = cyc;
        return true;
      }
      if (state[v] == 0) {
        parent[v] = u;
        if (dfs(v)) return true;
      }
    }
    state[u] = 2;
    return false;
  };
  for (int u = 0; u < m && witness.states.empty(); ++u)
    if (state[u] == 0) dfs(u);
  if (!witness.states.empty()) {
    double sum = 0.0;
    for (int s : witness.states) sum += w[s];
    witness.mean = sum / static_cast<double>(witness.states.size());
    out.witness = std::move(witness);
  }
  return out;
}

// ---- equilibrium measures ----------------------------------------------------

MarkovMeasure equilibrium_measure_weights(const TransitionSystem& ts,
                                          const std::vector<double>& psi) {
  if (!is_mixing(ts)) throw Error("equilibrium measure requires a topologically mixing shift");
  const int n = ts.size();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double w = std::exp(psi[i]);
    for (int j : ts.succ[i]) b(i, j) = w;
  }
  PerronResult right = power_iteration(b);
  PerronResult left = power_iteration(b.transpose());
  MarkovMeasure mm;
  mm.rho = right.rho;
  mm.pressure = std::log(right.rho);
  Eigen::VectorXd r = right.right;
  Eigen::VectorXd l = left.right;
  l /= l.dot(r);
  mm.kernel = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j : ts.succ[i]) mm.kernel(i, j) = b(i, j) * r[j] / (mm.rho * r[i]);
  mm.stationary = Eigen::VectorXd(n);
  for (int i = 0; i < n; ++i) mm.stationary[i] = l[i] * r[i];
  mm.stationary /= mm.stationary.sum();
  double h = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j : ts.succ[i]) {
      double p = mm.kernel(i, j);
      if (p > 0) h -= mm.stationary[i] * p * std::log(p);
    }
  mm.entropy = h;
  return mm;
}

MarkovMeasure equilibrium_measure(const SubdivisionRule& rule, const Potential& pot, double t) {
  BoundSystems bs = bind_tile(rule, pot);
  std::vector<double> psi(bs.weights.size());
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = -t * bs.weights[i];
  return equilibrium_measure_weights(bs.blocks.system, psi);
}

DerivativeCheck pressure_derivative_check(const SubdivisionRule& rule, const Potential& gamma,
                                          const Potential& base, double t0, double h) {
  if (gamma.k() != base.k()) throw Error("derivative check: potentials on different block levels");
  if (!(h > 0)) throw Error("derivative check: h must be positive");
  BoundSystems bs = bind_tile(rule, base);
  std::vector<double> g = bind_tile_weights(rule, bs.blocks, gamma);
  auto p_at = [&](double t) {
    std::vector<double> psi(bs.weights.size());
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = bs.weights[i] + t * g[i];
    return pressure_of_weights(bs.blocks.system, psi);
  };
  DerivativeCheck out;
  out.finite_difference = (p_at(t0 + h) - p_at(t0 - h)) / (2 * h);
  std::vector<double> psi0(bs.weights.size());
  for (std::size_t i = 0; i < psi0.size(); ++i) psi0[i] = bs.weights[i] + t0 * g[i];
  MarkovMeasure mm = equilibrium_measure_weights(bs.blocks.system, psi0);
  double integral = 0.0;
  for (int i = 0; i < bs.blocks.size(); ++i) integral += mm.stationary[i] * g[i];
  out.integral = integral;
  out.discrepancy = std::abs(out.finite_difference - out.integral);
  return out;
}

// ---- boundary pressures --------------------------------------------------------

BoundaryPressures boundary_pressures(const SubdivisionRule& rule, const Potential& pot, double t) {
  BoundaryPressures out;
  auto logrho = [&](const TransitionSystem& ts, const std::vector<double>& w) {
    std::vector<double> psi(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) psi[i] = -t * w[i];
    return pressure_of_weights(ts, psi);
  };

  BoundSystems tile = bind_tile(rule, pot);
  out.tile = logrho(tile.blocks.system, tile.weights);

  TransitionSystem edge_base = edge_shift(rule);
  BlockSystem edge_blocks = higher_block(edge_base, pot.k());
  std::vector<double> wb = bind_edge_weights(rule, edge_base, edge_blocks, pot, Color::black);
  std::vector<double> ww = bind_edge_weights(rule, edge_base, edge_blocks, pot, Color::white);
  out.edge_black = logrho(edge_blocks.system, wb);
  out.edge_white = logrho(edge_blocks.system, ww);

  TransitionSystem par_base = edge_color_shift(rule);
  BlockSystem par_blocks = higher_block(par_base, pot.k());
  std::vector<double> wpar = bind_edge_color_weights(rule, par_base, par_blocks, pot);
  out.edge_color = logrho(par_blocks.system, wpar);

  TransitionSystem verts = vertex_system(rule);
  std::vector<double> wv = bind_vertex_weights(rule, verts, pot);
  out.vertex = logrho(verts, wv);

  // Bounded-to-one factor invariance: pulling the black-side edge potential
  // back through the color-forgetting map leaves the pressure unchanged.
  {
    std::map<std::vector<int>, int> edge_index;
    for (int b = 0; b < edge_blocks.size(); ++b) edge_index[edge_blocks.words[b]] = b;
    std::vector<int> proj = color_forgetting_map(par_base, edge_base);
    std::vector<double> pulled(par_blocks.size());
    for (int b = 0; b < par_blocks.size(); ++b) {
      std::vector<int> ew(par_blocks.words[b].size());
      for (std::size_t i = 0; i < ew.size(); ++i) ew[i] = proj[par_blocks.words[b][i]];
      pulled[b] = wb[edge_index.at(ew)];
    }
    double p_pulled = logrho(par_blocks.system, pulled);
    out.factor_invariance_gap = std::abs(p_pulled - out.edge_black);
  }
  return out;
}

// ---- temporal distance -----------------------------------------------------------

namespace {

void check_backward_admissible(const SubdivisionRule& rule, const std::vector<int>& xi) {
  if (xi.empty()) throw Error("temporal distance: empty backward word");
  for (std::size_t i = 0; i + 1 < xi.size(); ++i)
    if (rule.one_tiles[xi[i + 1]].image_color != rule.one_tiles[xi[i]].host_color)
      throw Error("temporal distance: backward word is not admissible");
}

}  // namespace

double delta_sum(const SubdivisionRule& rule, const Potential& pot, const std::vector<int>& xi,
                 const std::vector<int>& x_word, const std::vector<int>& y_word, int depth) {
  check_backward_admissible(rule, xi);
  if (x_word.empty() || y_word.empty()) throw Error("temporal distance: empty forward address");
  if (!tile_word_admissible(rule, x_word) || !tile_word_admissible(rule, y_word))
    throw Error("temporal distance: inadmissible forward address");
  if (x_word[0] != y_word[0])
    throw Error("temporal distance: addresses do not share a common 1-tile");
  if (rule.one_tiles[xi[0]].image_color != rule.one_tiles[x_word[0]].host_color)
    throw Error("temporal distance: addresses do not lie in the image of the backward word");
  if (static_cast<int>(xi.size()) < depth)
    throw Error("temporal distance: backward word shorter than the requested depth");
  const int k = pot.k();
  if (static_cast<int>(x_word.size()) < k - 1 || static_cast<int>(y_word.size()) < k - 1)
    throw Error("temporal distance: forward addresses need at least k-1 letters");

  auto window_value = [&](const std::vector<int>& fw, int i) {
    // The i-th backward image of the point has the address
    // (xi_{-i}, ..., xi_0, fw_0, fw_1, ...).
    std::string key;
    for (int j = 0; j < k; ++j) {
      int letter = (j <= i) ? xi[i - j] : fw[j - i - 1];
      if (j) key += "-";
      key += rule.one_tiles[letter].id;
    }
    return pot.value_of(key);
  };
  double s = 0.0;
  for (int i = 0; i < depth; ++i) s += window_value(x_word, i) - window_value(y_word, i);
  return s;
}

double temporal_distance(const SubdivisionRule& rule, const Potential& pot,
                         const std::vector<int>& xi, const std::vector<int>& eta,
                         const std::vector<int>& x_word, const std::vector<int>& y_word,
                         int depth) {
  check_backward_admissible(rule, xi);
  check_backward_admissible(rule, eta);
  if (rule.one_tiles[xi[0]].image_color != rule.one_tiles[eta[0]].image_color)
    throw Error("temporal distance: backward words have different image colors");
  return delta_sum(rule, pot, xi, x_word, y_word, depth) -
         delta_sum(rule, pot, eta, x_word, y_word, depth);
}

// ---- cohomology screen --------------------------------------------------------------

CohomologyVerdict cohomology_test(const SubdivisionRule& rule, const Potential& pot, int n_max,
                                  double tol) {
  CohomologyVerdict verdict;
  bool first = true;
  OrbitRecord lo, hi;
  double lo_mean = 0, hi_mean = 0;
  for_each_primitive_orbit(rule, n_max, pot, [&](const OrbitRecord& r) {
    double mean = r.weight / r.period;
    if (first || mean < lo_mean) {
      lo = r;
      lo_mean = mean;
    }
    if (first || mean > hi_mean) {
      hi = r;
      hi_mean = mean;
    }
    first = false;
  });
  if (first) throw Error("cohomology test: no orbits up to n_max");
  if (hi_mean - lo_mean <= tol) {
    verdict.constant = true;
    verdict.k_value = lo_mean;
  } else {
    verdict.constant = false;
    verdict.witness_low = lo;
    verdict.witness_high = hi;
  }
  return verdict;
}

}  // namespace oz
