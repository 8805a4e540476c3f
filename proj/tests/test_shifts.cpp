#include <doctest.h>

#include "orbitzeta/curve.hpp"
#include "orbitzeta/periodic.hpp"
#include "orbitzeta/shifts.hpp"
#include "orbitzeta/subdivision.hpp"

#include <set>

using namespace oz;

TEST_CASE("tile shift of pillow2x2: 8 states, all row sums = degree") {
  SubdivisionRule rule = builtin::pillow2x2();
  TransitionSystem ts = tile_shift(rule);
  CHECK(ts.size() == 8);
  for (int i = 0; i < ts.size(); ++i) CHECK(ts.succ[i].size() == 4);
  CHECK(count_fixed(ts, 1) == 4);
  CHECK(count_fixed(ts, 2) == 16);
}

TEST_CASE("row-sum law holds for both shipped rules") {
  for (auto rule : {builtin::pillow2x2(), builtin::pillowrot()}) {
    TransitionSystem ts = tile_shift(rule);
    for (int i = 0; i < ts.size(); ++i)
      CHECK(static_cast<int>(ts.succ[i].size()) == rule.degree);
  }
}

TEST_CASE("a degree-2 checkerboard yields 4 states with row sums 2") {
  // Only the tile colors matter for the tile shift.
  SubdivisionRule rule;
  rule.degree = 2;
  rule.one_tiles = {{"T0", Color::white, Color::white, {}},
                    {"T1", Color::black, Color::white, {}},
                    {"T2", Color::white, Color::black, {}},
                    {"T3", Color::black, Color::black, {}}};
  TransitionSystem ts = tile_shift(rule);
  CHECK(ts.size() == 4);
  for (int i = 0; i < ts.size(); ++i) CHECK(ts.succ[i].size() == 2);
}

TEST_CASE("edge shift of pillow2x2: 8 states, row sums 2, trace 4") {
  SubdivisionRule rule = builtin::pillow2x2();
  TransitionSystem ts = edge_shift(rule);
  CHECK(ts.size() == 8);
  for (int i = 0; i < ts.size(); ++i) {
    CHECK(ts.succ[i].size() == 2);
    CHECK(!ts.succ[i].empty());  // every state has a successor
  }
  CHECK(count_fixed(ts, 1) == 4);
  CHECK(count_fixed(ts, 2) == 8);
}

TEST_CASE("edge-color shift: 16 states, deterministic color propagation") {
  SubdivisionRule rule = builtin::pillow2x2();
  TransitionSystem par = edge_color_shift(rule);
  TransitionSystem edges = edge_shift(rule);
  CHECK(par.size() == 16);
  CHECK(count_fixed(par, 1) == 4);
  CHECK(count_fixed(par, 2) == 8);

  // At most one successor per target edge: colors propagate deterministically.
  for (int i = 0; i < par.size(); ++i) {
    std::set<int> target_edges;
    for (int j : par.succ[i]) {
      CHECK(target_edges.insert(par.edge_of_state[j]).second);
    }
  }

  // Letter-wise color forgetting is a 2-to-1 surjection commuting with the
  // shifts: every parallel arc projects to an edge arc, and each edge state
  // has exactly two preimages.
  std::vector<int> proj = color_forgetting_map(par, edges);
  std::vector<int> fiber(edges.size(), 0);
  for (int i = 0; i < par.size(); ++i) {
    REQUIRE(proj[i] >= 0);
    ++fiber[proj[i]];
  }
  for (int c : fiber) CHECK(c == 2);
  for (int i = 0; i < par.size(); ++i)
    for (int j : par.succ[i]) CHECK(edges.has_arc(proj[i], proj[j]));
  // Conversely every edge arc lifts: count lifted arcs.
  int par_arcs = 0, edge_arcs = 0;
  for (int i = 0; i < par.size(); ++i) par_arcs += static_cast<int>(par.succ[i].size());
  for (int i = 0; i < edges.size(); ++i) edge_arcs += static_cast<int>(edges.succ[i].size());
  CHECK(par_arcs == 2 * edge_arcs);
}

TEST_CASE("vertex system of pillow2x2 is the functional graph onto A") {
  SubdivisionRule rule = builtin::pillow2x2();
  TransitionSystem ts = vertex_system(rule);
  CHECK(ts.size() == 4);
  for (int i = 0; i < ts.size(); ++i) REQUIRE(ts.succ[i].size() == 1);
  for (int n = 1; n <= 8; ++n) CHECK(count_fixed(ts, n) == 1);
}

TEST_CASE("higher_block k=1 is an isomorphic copy") {
  SubdivisionRule rule = builtin::pillow2x2();
  TransitionSystem ts = tile_shift(rule);
  BlockSystem bs = higher_block(ts, 1);
  CHECK(bs.size() == ts.size());
  for (int n = 1; n <= 6; ++n) CHECK(count_fixed(bs, n) == count_fixed(ts, n));
}

TEST_CASE("higher_block k=2 has 32 states and conjugate traces") {
  SubdivisionRule rule = builtin::pillow2x2();
  TransitionSystem ts = tile_shift(rule);
  BlockSystem bs = higher_block(ts, 2);
  CHECK(bs.size() == 32);
  for (int n = 1; n <= 8; ++n) CHECK(count_fixed(bs, n) == count_fixed(ts, n));
  BlockSystem b3 = higher_block(ts, 3);
  CHECK(b3.size() == 128);
  for (int n = 2; n <= 6; ++n) CHECK(count_fixed(b3, n) == count_fixed(ts, n));
  CHECK_THROWS_AS(higher_block(ts, 0), Error);
}

TEST_CASE("is_mixing") {
  SubdivisionRule rule = builtin::pillow2x2();
  CHECK(is_mixing(tile_shift(rule)));
  CHECK_FALSE(is_mixing(vertex_system(rule)));
  // a permutation matrix is never mixing
  TransitionSystem perm;
  perm.kind = ShiftKind::tile;
  perm.state_ids = {"p0", "p1", "p2"};
  perm.succ = {{1}, {2}, {0}};
  CHECK_FALSE(is_mixing(perm, 64));
  // edge shift of pillow2x2 is reducible, not mixing
  CHECK_FALSE(is_mixing(edge_shift(rule)));
}

TEST_CASE("count_fixed obeys the state-count bound and matches enumeration") {
  SubdivisionRule rule = builtin::pillow2x2();
  for (const TransitionSystem& ts :
       {tile_shift(rule), edge_shift(rule), edge_color_shift(rule), vertex_system(rule)}) {
    for (int n = 1; n <= 10; ++n) {
      BigInt bound = ipow(BigInt(ts.size()), static_cast<unsigned>(n));
      CHECK(count_fixed(ts, n) <= bound);
    }
    // cross-oracle: explicit enumeration of fixed words for n <= 6
    for (int n = 1; n <= 6; ++n) {
      std::uint64_t cnt = 0;
      for_each_fixed_word(ts, n, [&](const std::vector<int>& w) {
        REQUIRE(static_cast<int>(w.size()) == n);
        // wrap-around admissibility
        REQUIRE(ts.has_arc(w[n - 1], w[0]));
        for (int i = 0; i + 1 < n; ++i) REQUIRE(ts.has_arc(w[i], w[i + 1]));
        ++cnt;
      });
      CHECK(BigInt(cnt) == count_fixed(ts, n));
    }
  }
}

TEST_CASE("count_words matches the cell counts") {
  SubdivisionRule rule = builtin::pillow2x2();
  TransitionSystem ts = tile_shift(rule);
  // card X^n = 2 deg^n realized as admissible word counts
  CHECK(count_words(ts, 1) == 8);
  CHECK(count_words(ts, 2) == 32);
  CHECK(count_words(ts, 3) == 128);
}

TEST_CASE("h map sends parallel states to side tiles") {
  SubdivisionRule rule = builtin::pillow2x2();
  TransitionSystem par = edge_color_shift(rule);
  TransitionSystem tiles = tile_shift(rule);
  std::vector<int> h = h_map(rule, par, tiles);
  for (int i = 0; i < par.size(); ++i) {
    int tile = tiles.tile_of_state[h[i]];
    // the side tile contains the edge and has the right host color
    CHECK(rule.one_tiles[tile].host_color == par.color_of_state[i]);
    const auto& be = rule.tile_boundary_edges[tile];
    CHECK(std::find(be.begin(), be.end(), par.edge_of_state[i]) != be.end());
    // h carries arcs to arcs (admissibility of h-images)
    for (int j : par.succ[i]) CHECK(tiles.has_arc(h[i], h[j]));
  }
  // spot values from the construction
  int a1b = -1;
  for (int i = 0; i < par.size(); ++i)
    if (par.state_ids[i] == "a1|black") a1b = i;
  REQUIRE(a1b >= 0);
  CHECK(tiles.state_ids[h[a1b]] == "G20");
}

TEST_CASE("on-curve edge word counts match the curve refinement") {
  for (auto rule : {builtin::pillow2x2(), builtin::pillowrot()}) {
    TransitionSystem edges = edge_shift(rule);
    CurveRefinement cr(rule, 8);
    for (int n = 1; n <= 8; ++n) CHECK(count_words(edges, n) == BigInt(cr.arc_count(n)));
  }
}
