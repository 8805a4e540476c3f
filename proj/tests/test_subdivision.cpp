#include <doctest.h>

#include "orbitzeta/curve.hpp"
#include "orbitzeta/subdivision.hpp"

#include <fstream>
#include <sstream>

using namespace oz;

namespace {
std::string data_path(const std::string& name) { return std::string(ORBITZETA_DATA_DIR) + "/" + name; }
}

TEST_CASE("pillow2x2 parses with the expected counts") {
  SubdivisionRule rule = builtin::pillow2x2();
  CHECK(rule.degree == 4);
  CHECK(rule.m() == 4);
  CHECK(rule.one_tiles.size() == 8);
  CHECK(rule.one_edges.size() == 16);
  CHECK(rule.one_vertices.size() == 10);
  CHECK(rule.curve_order.size() == 8);
}

TEST_CASE("rule file and builtin agree") {
  SubdivisionRule a = builtin::pillow2x2();
  SubdivisionRule b = parse_rule_file(data_path("pillow2x2.json"));
  CHECK(a.degree == b.degree);
  CHECK(a.zero.post == b.zero.post);
  REQUIRE(a.one_tiles.size() == b.one_tiles.size());
  for (std::size_t i = 0; i < a.one_tiles.size(); ++i) {
    CHECK(a.one_tiles[i].id == b.one_tiles[i].id);
    CHECK(a.one_tiles[i].image_color == b.one_tiles[i].image_color);
    CHECK(a.one_tiles[i].boundary == b.one_tiles[i].boundary);
  }
  REQUIRE(a.one_edges.size() == b.one_edges.size());
  for (std::size_t i = 0; i < a.one_edges.size(); ++i) {
    CHECK(a.one_edges[i].id == b.one_edges[i].id);
    CHECK(a.one_edges[i].image_zero_edge == b.one_edges[i].image_zero_edge);
    CHECK(a.one_edges[i].orientation_preserving == b.one_edges[i].orientation_preserving);
  }
}

TEST_CASE("dangling references are parse errors naming the path") {
  std::string text = builtin::pillow2x2_json();
  auto pos = text.find("\"MAB\", \"Zf\"");  // fzs endpoints
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 5, "\"Mxx\"");
  try {
    parse_rule(text);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    std::string what = e.what();
    CHECK(what.find("parse error") != std::string::npos);
    CHECK(what.find("Mxx") != std::string::npos);
  }
}

TEST_CASE("empty document is a parse error") {
  CHECK_THROWS_AS(parse_rule("{}"), Error);
  CHECK_THROWS_AS(parse_rule(""), Error);
}

TEST_CASE("pillow2x2 validates cleanly") {
  SubdivisionRule rule = builtin::pillow2x2();
  ValidationReport rep = validate_rule(rule);
  for (const auto& v : rep.violations) {
    CAPTURE(v.invariant);
    CAPTURE(v.detail);
    CHECK(false);
  }
  CHECK(rep.ok());
  CHECK_FALSE(rep.any_tile_joins_opposite_sides);
}

TEST_CASE("pillowrot validates cleanly") {
  SubdivisionRule rule = builtin::pillowrot();
  ValidationReport rep = validate_rule(rule);
  for (const auto& v : rep.violations) {
    CAPTURE(v.invariant);
    CAPTURE(v.detail);
    CHECK(false);
  }
  CHECK(rep.ok());
}

TEST_CASE("flipping an image color trips the opposite-color invariant") {
  SubdivisionRule rule = builtin::pillow2x2();
  rule.one_tiles[rule.tile("F00")].image_color = Color::black;
  ValidationReport rep = validate_rule(rule);
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.invariant == "opposite-color-adjacency") found = true;
  CHECK(found);
}

TEST_CASE("a fifth boundary edge trips the m-gon invariant") {
  std::string text = builtin::pillow2x2_json();
  const std::string needle = "[\"a1\", \"MAB\", \"fzs\", \"Zf\", \"fzw\", \"MDA\", \"d2\", \"A\"]";
  auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, needle.size(),
               "[\"a1\", \"MAB\", \"fzs\", \"Zf\", \"fzw\", \"MDA\", \"d2\", \"A\", \"a2\", \"B\"]");
  SubdivisionRule rule = parse_rule(text);
  ValidationReport rep = validate_rule(rule);
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.invariant == "m-gon") found = true;
  CHECK(found);
}

TEST_CASE("validation is idempotent") {
  SubdivisionRule rule = builtin::pillow2x2();
  rule.one_tiles[0].image_color = opposite(rule.one_tiles[0].image_color);
  ValidationReport a = validate_rule(rule);
  ValidationReport b = validate_rule(rule);
  REQUIRE(a.violations.size() == b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    CHECK(a.violations[i].invariant == b.violations[i].invariant);
    CHECK(a.violations[i].detail == b.violations[i].detail);
  }
}

TEST_CASE("vertex local degrees on pillow2x2") {
  SubdivisionRule rule = builtin::pillow2x2();
  CHECK(vertex_local_degree(rule, rule.vertex("Zf")) == 2);   // face center
  CHECK(vertex_local_degree(rule, rule.vertex("Zb")) == 2);
  CHECK(vertex_local_degree(rule, rule.vertex("A")) == 1);    // postcritical corner
  CHECK(vertex_local_degree(rule, rule.vertex("MAB")) == 2);  // edge midpoint
  for (std::size_t v = 0; v < rule.one_vertices.size(); ++v)
    if (rule.vertex_tiles[v].size() == 2) CHECK(vertex_local_degree(rule, static_cast<int>(v)) == 1);
}

TEST_CASE("word_cell_degree multiplies local degrees along the itinerary") {
  SubdivisionRule rule = builtin::pillow2x2();
  CellWord empty;
  empty.kind = CellWord::Kind::tile;
  CHECK(word_cell_degree(rule, empty, {rule.vertex("A")}) == 1);
  CHECK(word_cell_degree(rule, empty, {rule.vertex("Zf"), rule.vertex("C")}) == 2);
  CHECK(word_cell_degree(rule, empty, {rule.vertex("B"), rule.vertex("A"), rule.vertex("A")}) == 1);
  CHECK_THROWS_AS(word_cell_degree(rule, empty, {rule.vertex("Zf"), rule.vertex("B")}), Error);
}

TEST_CASE("joins_opposite_sides is false for every pillow2x2 1-tile") {
  SubdivisionRule rule = builtin::pillow2x2();
  for (std::size_t t = 0; t < rule.one_tiles.size(); ++t) {
    CellWord w;
    w.kind = CellWord::Kind::tile;
    w.letters = {static_cast<int>(t)};
    CHECK_FALSE(joins_opposite_sides(rule, w));
  }
}

TEST_CASE("joins_opposite_sides is false for admissible length-2 pillow words") {
  SubdivisionRule rule = builtin::pillow2x2();
  int checked = 0;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      if (rule.one_tiles[a].image_color != rule.one_tiles[b].host_color) continue;
      CellWord w;
      w.kind = CellWord::Kind::tile;
      w.letters = {a, b};
      CHECK_FALSE(joins_opposite_sides(rule, w));
      ++checked;
    }
  CHECK(checked == 32);
}

TEST_CASE("a tile meeting two opposite 0-edges joins opposite sides") {
  // Injected instance: rewire F11's boundary so the data names a tile that
  // touches both EAB (via a2) and ECD (via c1).
  SubdivisionRule rule = builtin::pillow2x2();
  int f11 = rule.tile("F11");
  rule.tile_boundary_edges[f11][1] = rule.edge("a2");  // replace b2
  CellWord w;
  w.kind = CellWord::Kind::tile;
  w.letters = {f11};
  CHECK(joins_opposite_sides(rule, w));
}

TEST_CASE("joins_opposite_sides rejects the empty word") {
  SubdivisionRule rule = builtin::pillow2x2();
  CellWord w;
  w.kind = CellWord::Kind::tile;
  CHECK_THROWS_AS(joins_opposite_sides(rule, w), Error);
}

TEST_CASE("curve refinement indexing round-trips and counts") {
  SubdivisionRule rule = builtin::pillow2x2();
  CurveRefinement cr(rule, 8);
  CHECK(cr.arc_count(1) == 8);
  CHECK(cr.arc_count(2) == 16);
  CHECK(cr.arc_count(5) == 8 * 16);
  for (int level : {1, 2, 3, 5}) {
    for (std::int64_t i = 0; i < cr.arc_count(level); ++i) {
      auto w = cr.arc_word(level, i);
      CHECK(cr.arc_index(w) == i);
      REQUIRE(static_cast<int>(w.size()) == level);
      for (int j = 0; j + 1 < level; ++j) {
        int img = rule.zero_edge_index.at(rule.one_edges[w[j]].image_zero_edge);
        CHECK(cr.zero_edge_of_edge(w[j + 1]) == img);
      }
    }
  }
}

TEST_CASE("curve forward map inverts preimages") {
  SubdivisionRule rule = builtin::pillow2x2();
  CurveRefinement cr(rule, 8);
  for (int level : {2, 3, 4}) {
    for (std::int64_t k = 0; k < cr.arc_count(level); ++k) {
      CurveVertex v{level, k};
      CurveVertex fv = cr.map_forward(v);
      auto pre = cr.preimages(fv);
      bool found = false;
      for (const auto& p : pre)
        if (p == v) found = true;
      CHECK(found);
    }
  }
  for (std::int64_t k = 0; k < cr.arc_count(3); ++k) {
    CurveVertex v{3, k};
    auto zs = cr.zero_edges_at(v);
    bool in_image = false;
    for (int z : zs)
      if (rule.zero.zero_edges[z] == "EAB" || rule.zero.zero_edges[z] == "EDA") in_image = true;
    auto pre = cr.preimages(v);
    if (in_image && zs.size() == 1)
      CHECK(pre.size() == 4);
    else if (!in_image)
      CHECK(pre.empty());
  }
}
