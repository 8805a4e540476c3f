#include "orbitzeta/zeta.hpp"

#include "orbitzeta/transfer.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace oz {

namespace {

using MatC = DenseMatrix<Complex>;

MatC complex_transfer(const WeightedSystem& ws, Complex s) {
  return transfer_matrix<Complex>(ws.system, ws.weights, s);
}

// exp(sum tail) majorant for |zeta - truncation| when rho(B(Re s)) < 1.
std::optional<double> tail_log_bound(const WeightedSystem& ws, Complex s, int N) {
  Eigen::MatrixXd br = transfer_matrix<double>(ws.system, ws.weights, s.real());
  double rho = spectral_radius(br);
  if (!(rho < 1.0)) return std::nullopt;
  double S = static_cast<double>(ws.system.size());
  return S * std::pow(rho, N + 1) / ((N + 1) * (1.0 - rho));
}

}  // namespace

FactorSystems build_factor_systems(const SubdivisionRule& rule, const Potential& pot) {
  FactorSystems fs;
  const int k = pot.k();

  BlockSystem tiles = higher_block(tile_shift(rule), k);
  fs.tile.weights = bind_tile_weights(rule, tiles, pot);
  fs.tile.system = std::move(tiles.system);

  TransitionSystem par_base = edge_color_shift(rule);
  BlockSystem par = higher_block(par_base, k);
  fs.edge_color.weights = bind_edge_color_weights(rule, par_base, par, pot);
  fs.edge_color.system = std::move(par.system);

  TransitionSystem edge_base = edge_shift(rule);
  BlockSystem edges = higher_block(edge_base, k);
  fs.edge.weights = bind_edge_weights(rule, edge_base, edges, pot, Color::black);
  fs.edge.system = std::move(edges.system);

  TransitionSystem verts = vertex_system(rule);
  fs.vertex.weights = bind_vertex_weights(rule, verts, pot);
  fs.vertex.system = std::move(verts);

  return fs;
}

SeriesValue zeta_truncated(const WeightedSystem& ws, Complex s, int N) {
  if (N < 1) throw Error("zeta_truncated: N must be >= 1");
  MatC b = complex_transfer(ws, s);
  Complex logsum = 0.0;
  MatC p = b;
  logsum += p.trace();
  for (int n = 2; n <= N; ++n) {
    p = (p * b).eval();
    logsum += p.trace() / static_cast<double>(n);
  }
  SeriesValue out;
  out.s = s;
  out.truncation = N;
  out.value = std::exp(logsum);
  if (auto tl = tail_log_bound(ws, s, N)) out.tail_bound = std::abs(out.value) * (std::exp(*tl) - 1.0);
  return out;
}

Complex zeta_determinant_det(const WeightedSystem& ws, Complex s) {
  MatC b = complex_transfer(ws, s);
  MatC m = MatC::Identity(b.rows(), b.cols()) - b;
  return m.partialPivLu().determinant();
}

Complex zeta_determinant(const WeightedSystem& ws, Complex s) {
  MatC b = complex_transfer(ws, s);
  MatC m = MatC::Identity(b.rows(), b.cols()) - b;
  Complex det = m.partialPivLu().determinant();
  if (std::abs(det) < 1e-13 * m.norm())
    throw Error("zeta determinant: pole signalled, det(I - B(s)) = " + fmt12(det));
  return 1.0 / det;
}

// ---- Dirichlet series over geometric periodic points -------------------------

namespace {

unsigned __int128 pack_word(const std::vector<int>& w) {
  unsigned __int128 key = 1;
  for (int x : w) key = (key << 6) | static_cast<unsigned>(x);
  return key;
}

struct PackHash {
  std::size_t operator()(unsigned __int128 v) const {
    return std::size_t(v ^ (v >> 64) * 1099511628211ull);
  }
};

struct DirichletContext {
  TransitionSystem tiles, edges, par, verts;
  std::vector<int> h;
  std::vector<std::vector<int>> periodic_vertices;
  // block systems + weights for the restricted vertex bookkeeping
  BlockSystem tile_blocks, edge_blocks, par_blocks;
  std::vector<double> w_tile, w_edge, w_par;
};

DirichletContext make_dcx(const SubdivisionRule& rule, const Potential& pot) {
  DirichletContext cx;
  cx.tiles = tile_shift(rule);
  cx.edges = edge_shift(rule);
  cx.par = edge_color_shift(rule);
  cx.verts = vertex_system(rule);
  cx.h = h_map(rule, cx.par, cx.tiles);
  for (int s = 0; s < cx.verts.size(); ++s) {
    int v = cx.verts.vertex_of_state[s];
    std::vector<int> orbit{v};
    int cur = rule.vertex_image(v);
    bool periodic = cur == v;
    while (!periodic && orbit.size() <= rule.one_vertices.size()) {
      orbit.push_back(cur);
      cur = rule.vertex_image(cur);
      periodic = cur == v;
    }
    if (periodic) cx.periodic_vertices.push_back(orbit);
  }
  cx.tile_blocks = higher_block(cx.tiles, pot.k());
  cx.edge_blocks = higher_block(cx.edges, pot.k());
  cx.par_blocks = higher_block(cx.par, pot.k());
  cx.w_tile = bind_tile_weights(rule, cx.tile_blocks, pot);
  cx.w_edge = bind_edge_weights(rule, cx.edges, cx.edge_blocks, pot, Color::black);
  cx.w_par = bind_edge_color_weights(rule, cx.par, cx.par_blocks, pot);
  return cx;
}

bool edge_incident(const SubdivisionRule& rule, int edge, int vertex) {
  const auto& e = rule.one_edges[edge];
  const std::string& id = rule.one_vertices[vertex].id;
  return e.endpoints[0] == id || e.endpoints[1] == id;
}

bool word_codes_vertex(const SubdivisionRule& rule, const DirichletContext& cx,
                       const std::vector<int>& word, bool tile_word, int n) {
  for (const auto& orbit : cx.periodic_vertices) {
    int p = static_cast<int>(orbit.size());
    if (n % p != 0) continue;
    bool all = true;
    for (int i = 0; i < n && all; ++i) {
      int v = orbit[i % p];
      if (tile_word) {
        if (!rule.tile_contains_vertex(cx.tiles.tile_of_state[word[i]], v)) all = false;
      } else {
        if (!edge_incident(rule, cx.edges.edge_of_state[word[i]], v)) all = false;
      }
    }
    if (all) return true;
  }
  return false;
}

// Weighted count of fixed block-walks whose base letters satisfy the
// per-position mask: sum over Fix(sigma^n) of prod exp(-s * w(state)).
Complex masked_weighted_fixed_sum(const BlockSystem& bs, const std::vector<double>& w, Complex s,
                                  const std::vector<std::vector<char>>& letter_mask) {
  const int n = static_cast<int>(letter_mask.size());
  const int S = bs.size();
  // Positional admissibility of a block state: all k letters allowed.
  std::vector<std::vector<char>> allow(n, std::vector<char>(S, 0));
  const int k = bs.k;
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < S; ++b) {
      bool ok = true;
      for (int j = 0; j < k && ok; ++j)
        if (!letter_mask[(i + j) % n][bs.words[b][j]]) ok = false;
      allow[i][b] = ok;
    }
  std::vector<Complex> weight(S);
  for (int b = 0; b < S; ++b) weight[b] = std::exp(-s * w[b]);

  Complex total = 0.0;
  std::vector<Complex> cur(S), next(S);
  for (int start = 0; start < S; ++start) {
    if (!allow[0][start]) continue;
    std::fill(cur.begin(), cur.end(), Complex(0));
    cur[start] = 1.0;
    for (int step = 1; step <= n; ++step) {
      std::fill(next.begin(), next.end(), Complex(0));
      for (int i = 0; i < S; ++i) {
        if (cur[i] == Complex(0)) continue;
        Complex wprod = cur[i] * weight[i];
        for (int j : bs.system.succ[i]) {
          if (step == n ? (j == start) : static_cast<bool>(allow[step][j])) next[j] += wprod;
        }
      }
      std::swap(cur, next);
    }
    total += cur[start];
  }
  return total;
}

}  // namespace

std::vector<Complex> dirichlet_terms(const SubdivisionRule& rule, const Potential& pot, Complex s,
                                     int N, std::uint64_t cap) {
  DirichletContext cx = make_dcx(rule, pot);
  WindowTable table(rule, pot);
  const int k = pot.k();

  std::vector<Complex> terms(N + 1, Complex(0));
  std::vector<int> window(k);
  for (int n = 1; n <= N; ++n) {
    Complex term = 0.0;

    // Curve points: fixed edge words not coding a vertex, valued through the
    // black-side lift restarted at each shift position.
    for_each_fixed_word(cx.edges, n, [&](const std::vector<int>& w) {
      if (word_codes_vertex(rule, cx, w, false, n)) return;
      std::vector<int> cells(n);
      for (int i = 0; i < n; ++i) cells[i] = cx.edges.edge_of_state[w[i]];
      term += std::exp(-s * orbit_weight_edge(rule, pot, cells));
    }, cap);

    // Interior points: fixed tile words minus h-images minus vertex-coding.
    std::unordered_set<unsigned __int128, PackHash> h_images;
    for_each_fixed_word(cx.par, n, [&](const std::vector<int>& w) {
      std::vector<int> img(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) img[i] = cx.h[w[i]];
      h_images.insert(pack_word(img));
    }, cap);
    for_each_fixed_word(cx.tiles, n, [&](const std::vector<int>& w) {
      if (h_images.count(pack_word(w))) return;
      if (word_codes_vertex(rule, cx, w, true, n)) return;
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) window[j] = cx.tiles.tile_of_state[w[(i + j) % n]];
        sum += table.value(window.data());
      }
      term += std::exp(-s * sum);
    }, cap);

    // Periodic postcritical vertices: the counting identity's bookkeeping,
    // with the same induced potentials as the factor systems.
    for (const auto& orbit : cx.periodic_vertices) {
      int p = static_cast<int>(orbit.size());
      if (n % p != 0) continue;
      std::vector<std::vector<char>> tile_mask(n, std::vector<char>(cx.tiles.size(), 0));
      std::vector<std::vector<char>> edge_mask(n, std::vector<char>(cx.edges.size(), 0));
      std::vector<std::vector<char>> par_mask(n, std::vector<char>(cx.par.size(), 0));
      for (int i = 0; i < n; ++i) {
        int v = orbit[i % p];
        for (int st = 0; st < cx.tiles.size(); ++st)
          tile_mask[i][st] = rule.tile_contains_vertex(cx.tiles.tile_of_state[st], v);
        for (int st = 0; st < cx.edges.size(); ++st)
          edge_mask[i][st] = edge_incident(rule, cx.edges.edge_of_state[st], v);
        for (int st = 0; st < cx.par.size(); ++st)
          par_mask[i][st] = edge_incident(rule, cx.par.edge_of_state[st], v);
      }
      Complex s_tile = masked_weighted_fixed_sum(cx.tile_blocks, cx.w_tile, s, tile_mask);
      Complex s_edge = masked_weighted_fixed_sum(cx.edge_blocks, cx.w_edge, s, edge_mask);
      Complex s_par = masked_weighted_fixed_sum(cx.par_blocks, cx.w_par, s, par_mask);
      double sv = 0.0;
      for (int i = 0; i < n; ++i) sv += vertex_value(rule, pot, orbit[i % p]);
      term += s_tile - s_par + s_edge + std::exp(-s * sv);
    }

    terms[n] = term;
  }
  return std::vector<Complex>(terms.begin() + 1, terms.end());
}

SeriesValue dirichlet_truncated(const SubdivisionRule& rule, const Potential& pot, Complex s,
                                int N, std::uint64_t cap) {
  auto terms = dirichlet_terms(rule, pot, s, N, cap);
  Complex logsum = 0.0;
  for (int n = 1; n <= N; ++n) logsum += terms[n - 1] / static_cast<double>(n);
  SeriesValue out;
  out.s = s;
  out.truncation = N;
  out.value = std::exp(logsum);
  // Geometric majorant via the weighted count 1 + deg^n and the minimum
  // window value.
  double q = rule.degree * std::exp(-s.real() * pot.min_value());
  if (q < 1.0) {
    double tail = 2.0 * std::pow(q, N + 1) / ((N + 1) * (1.0 - q));
    out.tail_bound = std::abs(out.value) * (std::exp(tail) - 1.0);
  }
  return out;
}

Complex euler_product(const std::vector<OrbitRecord>& records, OrbitCoefficient coeff, Complex s,
                      int period_max) {
  Complex value = 1.0;
  for (const auto& r : records) {
    if (r.period > period_max) continue;
    double w = coeff == OrbitCoefficient::degree ? static_cast<double>(r.degree) : 1.0;
    Complex base = w * std::exp(-s * r.weight);
    if (std::abs(base) >= 1.0)
      throw Error("euler product diverges: a factor base has modulus " + fmt12(std::abs(base)));
    value *= 1.0 / (1.0 - base);
  }
  return value;
}

double product_identity_residual(const SubdivisionRule& rule, const Potential& pot, Complex s,
                                 int N) {
  FactorSystems fs = build_factor_systems(rule, pot);
  SeriesValue d = dirichlet_truncated(rule, pot, s, N);
  Complex z_tile = zeta_truncated(fs.tile, s, N).value;
  Complex z_edge = zeta_truncated(fs.edge, s, N).value;
  Complex z_vert = zeta_truncated(fs.vertex, s, N).value;
  Complex z_par = zeta_truncated(fs.edge_color, s, N).value;
  Complex product = z_tile * z_edge * z_vert / z_par;
  return std::abs(d.value - product);
}

}  // namespace oz
