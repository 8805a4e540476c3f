#include "orbitzeta/periodic.hpp"

#include "orbitzeta/potential.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_set>

namespace oz {

namespace {

// B[r][j]: a path of length r from j to target exists.
std::vector<std::vector<char>> back_reach(const TransitionSystem& ts, int n, int target) {
  std::vector<std::vector<char>> b(n + 1, std::vector<char>(ts.size(), 0));
  b[0][target] = 1;
  for (int r = 1; r <= n; ++r)
    for (int j = 0; j < ts.size(); ++j) {
      for (int l : ts.succ[j])
        if (b[r - 1][l]) {
          b[r][j] = 1;
          break;
        }
    }
  return b;
}

}  // namespace

void for_each_fixed_word_from(const TransitionSystem& ts, int n, int start,
                              const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> word(n);
  {
    auto b = back_reach(ts, n, start);
    if (!b[n][start]) return;
    word[0] = start;
    // Iterative DFS over successor choices.
    std::vector<int> choice(n, 0);
    int depth = 1;
    while (depth > 0) {
      if (depth == n) {
        fn(word);
        --depth;
        if (depth == 0) break;
        ++choice[depth];
        continue;
      }
      const auto& succ = ts.succ[word[depth - 1]];
      bool advanced = false;
      for (int& c = choice[depth]; c < static_cast<int>(succ.size()); ++c) {
        int s = succ[c];
        if (!b[n - depth - 1 + 1][s]) continue;  // need path of length n-depth from s to start
        word[depth] = s;
        ++depth;
        if (depth < n) choice[depth] = 0;
        advanced = true;
        break;
      }
      if (!advanced) {
        --depth;
        if (depth == 0) break;
        ++choice[depth];
      }
    }
  }
}

namespace {

void for_each_start_range(const TransitionSystem& ts, int n, int begin, int step,
                          const std::function<void(const std::vector<int>&)>& fn) {
  for (int start = begin; start < ts.size(); start += step)
    for_each_fixed_word_from(ts, n, start, fn);
}

}  // namespace

void for_each_fixed_word(const TransitionSystem& ts, int n,
                         const std::function<void(const std::vector<int>&)>& fn,
                         std::uint64_t cap) {
  if (n < 1) throw Error("fixed_words: n must be >= 1");
  BigInt estimate = count_fixed(ts, n);
  if (estimate > BigInt(cap))
    throw Error("fixed-word enumeration budget exceeded: estimated " + estimate.str() +
                " words at n = " + std::to_string(n) + ", cap " + std::to_string(cap));
  for (int start = 0; start < ts.size(); ++start) for_each_fixed_word_from(ts, n, start, fn);
}

std::vector<std::vector<int>> fixed_words(const TransitionSystem& ts, int n, std::uint64_t cap) {
  std::vector<std::vector<int>> out;
  for_each_fixed_word(ts, n, [&](const std::vector<int>& w) { out.push_back(w); }, cap);
  return out;
}

bool is_canonical_rotation(const std::vector<int>& word, const std::vector<int>& rank) {
  const int n = static_cast<int>(word.size());
  for (int r = 1; r < n; ++r) {
    for (int i = 0; i < n; ++i) {
      int a = rank[word[i]];
      int b = rank[word[(i + r) % n]];
      if (b < a) return false;  // rotation r is strictly smaller
      if (b > a) break;
    }
  }
  return true;
}

bool is_primitive_word(const std::vector<int>& word) {
  const int n = static_cast<int>(word.size());
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (int i = 0; i < n && periodic; ++i)
      if (word[i] != word[i % d]) periodic = false;
    if (periodic) return false;
  }
  return true;
}

namespace {

// Orbit of a vertex under the vertex map; empty if v is not periodic.
std::vector<int> vertex_orbit_if_periodic(const SubdivisionRule& rule, int v) {
  std::vector<int> orbit{v};
  int cur = v;
  for (std::size_t i = 0; i <= rule.one_vertices.size(); ++i) {
    cur = rule.vertex_image(cur);
    if (cur == v) return orbit;
    orbit.push_back(cur);
  }
  return {};
}

std::vector<int> orbit_positions(const SubdivisionRule& rule, int v, int n) {
  std::vector<int> out(n);
  int cur = v;
  for (int i = 0; i < n; ++i) {
    out[i] = cur;
    cur = rule.vertex_image(cur);
  }
  return out;
}

bool edge_incident_to_vertex(const SubdivisionRule& rule, int edge, int vertex) {
  const auto& e = rule.one_edges[edge];
  const std::string& id = rule.one_vertices[vertex].id;
  return e.endpoints[0] == id || e.endpoints[1] == id;
}

BigInt masked_fixed_count(const TransitionSystem& ts, const std::vector<std::vector<char>>& masks) {
  const int n = static_cast<int>(masks.size());
  const int s = ts.size();
  BigInt total = 0;
  std::vector<BigInt> cur(s), next(s);
  for (int start = 0; start < s; ++start) {
    if (!masks[0][start]) continue;
    std::fill(cur.begin(), cur.end(), BigInt(0));
    cur[start] = 1;
    for (int step = 1; step <= n; ++step) {
      std::fill(next.begin(), next.end(), BigInt(0));
      const auto& mask = masks[step % n];
      for (int i = 0; i < s; ++i) {
        if (cur[i] == 0) continue;
        for (int j : ts.succ[i]) {
          if (step == n ? (j == start) : static_cast<bool>(mask[j])) next[j] += cur[i];
        }
      }
      std::swap(cur, next);
    }
    total += cur[start];
  }
  return total;
}

}  // namespace

MCounts vertex_M_counts(const SubdivisionRule& rule, int vertex, int n) {
  if (!rule.one_vertices[vertex].is_postcritical)
    throw Error("vertex_M_counts: " + rule.one_vertices[vertex].id + " is not postcritical");
  auto orbit = orbit_positions(rule, vertex, n);
  if (rule.vertex_image(orbit.back()) != vertex)
    throw Error("vertex " + rule.one_vertices[vertex].id + " is not periodic with period dividing " +
                std::to_string(n));

  TransitionSystem tiles = tile_shift(rule);
  TransitionSystem edges = edge_shift(rule);
  TransitionSystem par = edge_color_shift(rule);

  auto tile_masks = [&]() {
    std::vector<std::vector<char>> m(n, std::vector<char>(tiles.size(), 0));
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < tiles.size(); ++s)
        m[i][s] = rule.tile_contains_vertex(tiles.tile_of_state[s], orbit[i]);
    return m;
  };
  auto edge_masks = [&](const TransitionSystem& ts) {
    std::vector<std::vector<char>> m(n, std::vector<char>(ts.size(), 0));
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < ts.size(); ++s)
        m[i][s] = edge_incident_to_vertex(rule, ts.edge_of_state[s], orbit[i]);
    return m;
  };

  MCounts out;
  out.m_tile = masked_fixed_count(tiles, tile_masks());
  out.m_edge = masked_fixed_count(edges, edge_masks(edges));
  out.m_edge_color = masked_fixed_count(par, edge_masks(par));
  out.m_vertex = 1;
  int deg = 1;
  for (int v : orbit) deg *= vertex_local_degree(rule, v);
  out.local_degree = deg;
  return out;
}

AggregateIdentity aggregate_identity(const SubdivisionRule& rule, int n) {
  if (n < 1) throw Error("aggregate_identity: n must be >= 1");
  AggregateIdentity out;
  BigInt t_tile = count_fixed(tile_shift(rule), n);
  BigInt t_par = count_fixed(edge_color_shift(rule), n);
  BigInt t_edge = count_fixed(edge_shift(rule), n);
  BigInt t_vert = count_fixed(vertex_system(rule), n);
  out.lhs = t_tile - t_par + t_edge + t_vert;
  out.rhs = 1 + ipow(BigInt(rule.degree), static_cast<unsigned>(n));
  out.equal = out.lhs == out.rhs;
  return out;
}

namespace {

struct ClassifyContext {
  TransitionSystem tiles, edges, par, verts;
  std::vector<int> h;  // par state -> tile state
  std::vector<std::vector<int>> periodic_vertices;  // orbits starting at each periodic post
};

ClassifyContext make_context(const SubdivisionRule& rule) {
  ClassifyContext cx;
  cx.tiles = tile_shift(rule);
  cx.edges = edge_shift(rule);
  cx.par = edge_color_shift(rule);
  cx.verts = vertex_system(rule);
  cx.h = h_map(rule, cx.par, cx.tiles);
  for (int s = 0; s < cx.verts.size(); ++s) {
    int v = cx.verts.vertex_of_state[s];
    auto orbit = vertex_orbit_if_periodic(rule, v);
    if (!orbit.empty()) cx.periodic_vertices.push_back(orbit);
  }
  return cx;
}

// Fixed tile/edge words coding a periodic vertex are exactly the words whose
// letters are incident to the vertex orbit position-wise.
bool word_codes_vertex(const SubdivisionRule& rule, const ClassifyContext& cx,
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
        if (!edge_incident_to_vertex(rule, cx.edges.edge_of_state[word[i]], v)) all = false;
      }
    }
    if (all) return true;
  }
  return false;
}

// Exact 6-bit packing of words with letters < 64 and length <= 21.
unsigned __int128 pack_word(const std::vector<int>& w) {
  unsigned __int128 key = 1;  // leading sentinel keeps lengths distinct
  for (int x : w) key = (key << 6) | static_cast<unsigned>(x);
  return key;
}

struct PackHash {
  std::size_t operator()(unsigned __int128 v) const {
    return std::size_t(v ^ (v >> 64) * 1099511628211ull);
  }
};

int rotation_period(const std::vector<int>& w) {
  const int n = static_cast<int>(w.size());
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (w[i] != w[i % d]) ok = false;
    if (ok) return d;
  }
  return n;
}

}  // namespace

std::vector<PeriodicClass> classify_periodic_points(const SubdivisionRule& rule, int n,
                                                    std::uint64_t cap) {
  ClassifyContext cx = make_context(rule);
  std::vector<PeriodicClass> out;

  // Postcritical classes.
  for (const auto& orbit : cx.periodic_vertices) {
    int p = static_cast<int>(orbit.size());
    if (n % p != 0) continue;
    PeriodicClass c;
    c.kind = PeriodicClass::Kind::postcritical;
    c.vertex = orbit[0];
    c.period = p;
    std::int64_t deg = 1;
    for (int i = 0; i < n; ++i) deg *= vertex_local_degree(rule, orbit[i % p]);
    c.degree = deg;
    out.push_back(std::move(c));
  }

  // Curve classes: fixed edge words not coding a vertex.
  for_each_fixed_word(cx.edges, n, [&](const std::vector<int>& w) {
    if (word_codes_vertex(rule, cx, w, /*tile_word=*/false, n)) return;
    PeriodicClass c;
    c.kind = PeriodicClass::Kind::curve_nonvertex;
    c.address.kind = CellWord::Kind::edge;
    c.address.letters.reserve(w.size());
    for (int s : w) c.address.letters.push_back(cx.edges.edge_of_state[s]);
    c.period = rotation_period(w);
    c.degree = 1;
    out.push_back(std::move(c));
  }, cap);

  // Interior classes: fixed tile words minus h-images minus vertex-incident.
  std::unordered_set<unsigned __int128, PackHash> h_images;
  for_each_fixed_word(cx.par, n, [&](const std::vector<int>& w) {
    std::vector<int> img(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) img[i] = cx.h[w[i]];
    h_images.insert(pack_word(img));
  }, cap);
  for_each_fixed_word(cx.tiles, n, [&](const std::vector<int>& w) {
    if (h_images.count(pack_word(w))) return;
    if (word_codes_vertex(rule, cx, w, /*tile_word=*/true, n)) return;
    PeriodicClass c;
    c.kind = PeriodicClass::Kind::interior;
    c.address.kind = CellWord::Kind::tile;
    c.address.letters.reserve(w.size());
    for (int s : w) c.address.letters.push_back(cx.tiles.tile_of_state[s]);
    c.period = rotation_period(w);
    c.degree = 1;
    out.push_back(std::move(c));
  }, cap);

  return out;
}

void for_each_primitive_orbit(const SubdivisionRule& rule, int n_max, const Potential& pot,
                              const std::function<void(const OrbitRecord&)>& fn,
                              std::uint64_t cap) {
  ClassifyContext cx = make_context(rule);
  WindowTable table(rule, pot);
  const int k = pot.k();

  // Budget estimate across all n.
  BigInt total = 0;
  for (int n = 1; n <= n_max; ++n) total += count_fixed(cx.tiles, n);
  if (total > BigInt(cap))
    throw Error("orbit enumeration budget exceeded: estimated " + total.str() +
                " fixed tile words up to n_max = " + std::to_string(n_max));

  std::vector<int> tile_rank(cx.tiles.size()), edge_rank(cx.edges.size());
  {
    auto ranks = [](const TransitionSystem& ts, std::vector<int>& rank) {
      std::vector<int> order(ts.size());
      for (int i = 0; i < ts.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return ts.state_ids[a] < ts.state_ids[b]; });
      for (int i = 0; i < ts.size(); ++i) rank[order[i]] = i;
    };
    ranks(cx.tiles, tile_rank);
    ranks(cx.edges, edge_rank);
  }

  // Postcritical orbits (exact periods).
  for (const auto& orbit : cx.periodic_vertices) {
    int p = static_cast<int>(orbit.size());
    if (p > n_max) continue;
    OrbitRecord rec;
    rec.kind = PeriodicClass::Kind::postcritical;
    rec.period = p;
    // Canonical representative: rotate to the lexicographically smallest id.
    int best = 0;
    for (int i = 1; i < p; ++i)
      if (rule.one_vertices[orbit[i]].id < rule.one_vertices[orbit[best]].id) best = i;
    std::vector<int> rot(p);
    for (int i = 0; i < p; ++i) rot[i] = orbit[(best + i) % p];
    rec.address = rule.one_vertices[rot[0]].id;
    for (int i = 1; i < p; ++i) rec.address += "-" + rule.one_vertices[rot[i]].id;
    rec.weight = orbit_weight_vertex(rule, pot, rot);
    std::int64_t deg = 1;
    for (int v : rot) deg *= vertex_local_degree(rule, v);
    rec.degree = deg;
    fn(rec);
  }

  std::vector<int> cells;
  for (int n = 1; n <= n_max; ++n) {
    // Curve orbits.
    for_each_fixed_word(cx.edges, n, [&](const std::vector<int>& w) {
      if (!is_canonical_rotation(w, edge_rank) || !is_primitive_word(w)) return;
      if (word_codes_vertex(rule, cx, w, false, n)) return;
      OrbitRecord rec;
      rec.kind = PeriodicClass::Kind::curve_nonvertex;
      rec.period = n;
      cells.clear();
      for (int s : w) cells.push_back(cx.edges.edge_of_state[s]);
      rec.address = rule.one_edges[cells[0]].id;
      for (std::size_t i = 1; i < cells.size(); ++i) rec.address += "-" + rule.one_edges[cells[i]].id;
      rec.weight = orbit_weight_edge(rule, pot, cells);
      rec.degree = 1;
      fn(rec);
    }, cap);

    // Interior orbits: partitioned by first letter across worker threads;
    // the callback is serialized, so consumers only need commutativity.
    std::unordered_set<unsigned __int128, PackHash> h_images;
    for_each_fixed_word(cx.par, n, [&](const std::vector<int>& w) {
      std::vector<int> img(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) img[i] = cx.h[w[i]];
      h_images.insert(pack_word(img));
    }, cap);
    {
      BigInt est = count_fixed(cx.tiles, n);
      if (est > BigInt(cap))
        throw Error("fixed-word enumeration budget exceeded: estimated " + est.str() +
                    " words at n = " + std::to_string(n) + ", cap " + std::to_string(cap));
    }
    const int workers = std::min(thread_cap(), cx.tiles.size());
    std::mutex emit_mutex;
    auto run_starts = [&](int begin, int step) {
      std::vector<int> win(k);
      for_each_start_range(cx.tiles, n, begin, step, [&](const std::vector<int>& w) {
        if (!is_canonical_rotation(w, tile_rank) || !is_primitive_word(w)) return;
        if (h_images.count(pack_word(w))) return;
        if (word_codes_vertex(rule, cx, w, true, n)) return;
        OrbitRecord rec;
        rec.kind = PeriodicClass::Kind::interior;
        rec.period = n;
        double weight = 0.0;
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < k; ++j) win[j] = cx.tiles.tile_of_state[w[(i + j) % n]];
          weight += table.value(win.data());
        }
        rec.weight = weight;
        rec.degree = 1;
        rec.address = cx.tiles.state_ids[w[0]];
        for (int i = 1; i < n; ++i) rec.address += "-" + cx.tiles.state_ids[w[i]];
        std::scoped_lock lock(emit_mutex);
        fn(rec);
      });
    };
    if (workers <= 1) {
      run_starts(0, 1);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(workers);
      for (int t = 0; t < workers; ++t)
        pool.emplace_back([&, t]() {
          try {
            run_starts(t, workers);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      for (auto& th : pool) th.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
  }
}

std::vector<OrbitRecord> primitive_orbits(const SubdivisionRule& rule, int n_max,
                                          const Potential& pot, std::uint64_t cap) {
  std::vector<OrbitRecord> out;
  for_each_primitive_orbit(rule, n_max, pot, [&](const OrbitRecord& r) { out.push_back(r); }, cap);
  std::sort(out.begin(), out.end(), [](const OrbitRecord& a, const OrbitRecord& b) {
    if (a.period != b.period) return a.period < b.period;
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    return a.address < b.address;
  });
  return out;
}

}  // namespace oz
