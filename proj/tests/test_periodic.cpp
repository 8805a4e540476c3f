#include <doctest.h>

#include "orbitzeta/periodic.hpp"
#include "orbitzeta/potential.hpp"
#include "orbitzeta/shifts.hpp"
#include "orbitzeta/subdivision.hpp"

#include <map>
#include <set>

using namespace oz;

TEST_CASE("fixed tile words at n=1 are the color-stable tiles") {
  SubdivisionRule rule = builtin::pillow2x2();
  TransitionSystem ts = tile_shift(rule);
  auto words = fixed_words(ts, 1);
  REQUIRE(words.size() == 4);
  std::set<std::string> ids;
  for (const auto& w : words) ids.insert(ts.state_ids[w[0]]);
  CHECK(ids == std::set<std::string>{"F00", "F11", "G20", "G11"});
  for (const auto& w : words) {
    int tile = ts.tile_of_state[w[0]];
    CHECK(rule.one_tiles[tile].image_color == rule.one_tiles[tile].host_color);
  }
}

TEST_CASE("fixed edge words at n=1 match trace(A_edge)") {
  SubdivisionRule rule = builtin::pillow2x2();
  TransitionSystem ts = edge_shift(rule);
  auto words = fixed_words(ts, 1);
  CHECK(BigInt(words.size()) == count_fixed(ts, 1));
  std::set<std::string> ids;
  for (const auto& w : words) ids.insert(ts.state_ids[w[0]]);
  CHECK(ids == std::set<std::string>{"a1", "a2", "d1", "d2"});
}

TEST_CASE("enumeration refuses over budget with the estimate") {
  SubdivisionRule rule = builtin::pillow2x2();
  TransitionSystem ts = tile_shift(rule);
  try {
    fixed_words(ts, 10, 100);
    FAIL("expected budget error");
  } catch (const Error& e) {
    std::string what = e.what();
    CHECK(what.find("budget") != std::string::npos);
    CHECK(what.find("1048576") != std::string::npos);  // 4^10
  }
}

TEST_CASE("vertex M-counts at the pillow2x2 fixed corner: orientation-preserving case") {
  SubdivisionRule rule = builtin::pillow2x2();
  MCounts mc = vertex_M_counts(rule, rule.vertex("A"), 1);
  CHECK(mc.m_tile == 2);
  CHECK(mc.m_edge_color == 4);
  CHECK(mc.m_edge == 2);
  CHECK(mc.m_vertex == 1);
  CHECK(mc.local_degree == 1);
  // pointwise identity
  CHECK(mc.m_tile - mc.m_edge_color + mc.m_edge + mc.m_vertex == BigInt(mc.local_degree));
}

TEST_CASE("vertex M-counts at the pillowrot fixed corner: orientation-reversing case") {
  SubdivisionRule rule = builtin::pillowrot();
  MCounts mc = vertex_M_counts(rule, rule.vertex("A"), 1);
  CHECK(mc.m_tile == 0);
  CHECK(mc.m_edge_color == 0);
  CHECK(mc.m_edge == 0);
  CHECK(mc.m_vertex == 1);
  CHECK(mc.local_degree == 1);
}

TEST_CASE("pointwise identity holds at the corner for all n <= 8 on both rules") {
  for (auto rule : {builtin::pillow2x2(), builtin::pillowrot()}) {
    for (int n = 1; n <= 8; ++n) {
      MCounts mc = vertex_M_counts(rule, rule.vertex("A"), n);
      CHECK(mc.m_tile - mc.m_edge_color + mc.m_edge + mc.m_vertex == BigInt(mc.local_degree));
    }
  }
}

TEST_CASE("non-periodic vertices are rejected") {
  SubdivisionRule rule = builtin::pillow2x2();
  CHECK_THROWS_AS(vertex_M_counts(rule, rule.vertex("B"), 3), Error);
}

TEST_CASE("aggregate identity: exact for n = 1..8 on both rules") {
  for (auto rule : {builtin::pillow2x2(), builtin::pillowrot()}) {
    for (int n = 1; n <= 8; ++n) {
      AggregateIdentity id = aggregate_identity(rule, n);
      CHECK(id.equal);
      CHECK(id.rhs == 1 + ipow(BigInt(4), static_cast<unsigned>(n)));
    }
  }
}

TEST_CASE("classification at n=1 on pillow2x2: five degree-1 classes") {
  SubdivisionRule rule = builtin::pillow2x2();
  auto classes = classify_periodic_points(rule, 1);
  REQUIRE(classes.size() == 5);
  int interior = 0, curve = 0, post = 0;
  for (const auto& c : classes) {
    CHECK(c.degree == 1);
    CHECK(c.period == 1);
    switch (c.kind) {
      case PeriodicClass::Kind::interior: {
        ++interior;
        int t = c.address.letters[0];
        CHECK(rule.one_tiles[t].image_color == rule.one_tiles[t].host_color);
        break;
      }
      case PeriodicClass::Kind::curve_nonvertex:
        ++curve;
        break;
      case PeriodicClass::Kind::postcritical:
        ++post;
        CHECK(rule.one_vertices[c.vertex].id == "A");
        break;
    }
  }
  CHECK(interior == 2);
  CHECK(curve == 2);
  CHECK(post == 1);
}

TEST_CASE("classification is a degree-weighted partition: sum = 1 + 4^n") {
  for (auto rule : {builtin::pillow2x2(), builtin::pillowrot()}) {
    for (int n = 1; n <= 6; ++n) {
      auto classes = classify_periodic_points(rule, n);
      BigInt weighted = 0;
      std::set<std::string> seen;
      for (const auto& c : classes) {
        weighted += BigInt(c.degree);
        CHECK(n % c.period == 0);
        // no address duplicates
        std::string key = std::to_string(static_cast<int>(c.kind)) + ":";
        if (c.kind == PeriodicClass::Kind::postcritical)
          key += rule.one_vertices[c.vertex].id;
        else
          for (int l : c.address.letters) key += std::to_string(l) + "-";
        CHECK(seen.insert(key).second);
      }
      CHECK(weighted == 1 + ipow(BigInt(4), static_cast<unsigned>(n)));
    }
  }
}

TEST_CASE("primitive orbit counts match the exact-period numbers") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential one = Potential::constant(rule, 1.0);
  auto records = primitive_orbits(rule, 6, one);
  std::map<int, int> per_period;
  for (const auto& r : records) ++per_period[r.period];
  // card P(n, f) = (1/n) sum_{d|n} mu(n/d) (1 + 4^d) for the pillow map
  CHECK(per_period[1] == 5);
  CHECK(per_period[2] == 6);
  CHECK(per_period[3] == 20);
  CHECK(per_period[4] == 60);
  CHECK(per_period[5] == 204);
  CHECK(per_period[6] == 670);
  // weights of phi = 1 are the periods
  for (const auto& r : records) CHECK(r.weight == doctest::Approx(r.period).epsilon(1e-12));
  // primitivity: canonical addresses are their own minimal rotation
  for (const auto& r : records) CHECK(r.degree == 1);
}

TEST_CASE("orbit weight is rotation invariant") {
  SubdivisionRule rule = builtin::pillow2x2();
  std::map<std::string, double> vals;
  int i = 0;
  for (const auto& t : rule.one_tiles) vals[t.id] = 1.0 + 0.1 * (i++);
  Potential pot(1, vals);
  TransitionSystem ts = tile_shift(rule);
  for (const auto& w : fixed_words(ts, 4)) {
    std::vector<int> cells;
    for (int s : w) cells.push_back(ts.tile_of_state[s]);
    double base = orbit_weight_tile(rule, pot, cells);
    std::vector<int> rot(cells.begin() + 1, cells.end());
    rot.push_back(cells[0]);
    CHECK(orbit_weight_tile(rule, pot, rot) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("canonical-rotation and primitivity helpers") {
  std::vector<int> rank{0, 1, 2, 3};
  CHECK(is_canonical_rotation({0, 1, 0, 2}, rank));
  CHECK_FALSE(is_canonical_rotation({1, 0, 2, 0}, rank));
  CHECK(is_primitive_word({0, 1, 0, 2}));
  CHECK_FALSE(is_primitive_word({0, 1, 0, 1}));
}

TEST_CASE("curve classes balance tile against edge-color words (h-correspondence)") {
  // Away from the postcritical orbits the fixed tile words and fixed
  // edge-color words over curve points match up one to one, and each curve
  // class carries exactly one fixed edge word.
  for (auto rule : {builtin::pillow2x2(), builtin::pillowrot()}) {
    TransitionSystem tiles = tile_shift(rule);
    TransitionSystem edges = edge_shift(rule);
    TransitionSystem par = edge_color_shift(rule);
    for (int n = 1; n <= 6; ++n) {
      auto classes = classify_periodic_points(rule, n);
      BigInt interior = 0, curve = 0;
      BigInt m_tile_v = 0, m_par_v = 0, m_edge_v = 0;
      for (const auto& c : classes) {
        if (c.kind == PeriodicClass::Kind::interior) ++interior;
        if (c.kind == PeriodicClass::Kind::curve_nonvertex) ++curve;
        if (c.kind == PeriodicClass::Kind::postcritical) {
          MCounts mc = vertex_M_counts(rule, c.vertex, n);
          m_tile_v += mc.m_tile;
          m_par_v += mc.m_edge_color;
          m_edge_v += mc.m_edge;
        }
      }
      BigInt curve_tile_words = count_fixed(tiles, n) - interior - m_tile_v;
      BigInt curve_par_words = count_fixed(par, n) - m_par_v;
      CHECK(curve_tile_words == curve_par_words);
      // M_edge = 1 for each curve class
      CHECK(count_fixed(edges, n) - m_edge_v == curve);
    }
  }
}

TEST_CASE("orbit records are primitive and canonical") {
  SubdivisionRule rule = builtin::pillow2x2();
  Potential one = Potential::constant(rule, 1.0);
  for (const auto& r : primitive_orbits(rule, 6, one)) {
    if (r.kind == PeriodicClass::Kind::postcritical) continue;
    // split the dash-joined address back into letters
    std::vector<std::string> letters;
    std::string cur;
    for (char ch : r.address + "-") {
      if (ch == '-') {
        letters.push_back(cur);
        cur.clear();
      } else
        cur += ch;
    }
    REQUIRE(static_cast<int>(letters.size()) == r.period);
    for (int d = 1; d < r.period; ++d) {
      if (r.period % d != 0) continue;
      bool d_periodic = true;
      for (int i = 0; i < r.period && d_periodic; ++i)
        if (letters[i] != letters[i % d]) d_periodic = false;
      CHECK_FALSE(d_periodic);
    }
    for (int rot = 1; rot < r.period; ++rot) {
      std::string rotated;
      for (int i = 0; i < r.period; ++i) {
        if (i) rotated += "-";
        rotated += letters[(rot + i) % r.period];
      }
      CHECK(r.address <= rotated);
    }
  }
}
