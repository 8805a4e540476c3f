#pragma once

#include "orbitzeta/common.hpp"

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace oz {

enum class Color : std::uint8_t { black = 0, white = 1 };

inline Color opposite(Color c) { return c == Color::black ? Color::white : Color::black; }
const char* to_string(Color c);
Color color_from_string(const std::string& s);

struct ZeroComplex {
  // Postcritical vertices in their cyclic order along the invariant curve.
  std::vector<std::string> post;
  // zero_edges[i] joins post[i] and post[(i+1) mod m].
  std::vector<std::string> zero_edges;

  int m() const { return static_cast<int>(post.size()); }
};

struct TileRec {
  std::string id;
  Color image_color;  // color of f(X), a 0-tile
  Color host_color;   // color of the 0-tile containing X
  // Cyclic alternating boundary list e0,v0,e1,v1,... of length 2m.
  // Edge at slot 2j joins the vertices at slots 2j-1 (cyclic) and 2j+1.
  std::vector<std::string> boundary;
};

struct EdgeRec {
  std::string id;
  std::array<std::string, 2> endpoints;
  bool on_curve = false;
  std::string image_zero_edge;
  // For on-curve edges: whether f maps the edge onto its image 0-edge
  // respecting the orientation of the curve. Ignored otherwise.
  bool orientation_preserving = true;
};

struct VertexRec {
  std::string id;
  std::string image;  // a postcritical one_vertex id
  bool is_postcritical = false;
};

// The finite combinatorial description of (f, C): the level-1 complex over
// the two-tile level-0 complex plus the cellular action of f.
struct SubdivisionRule {
  int degree = 0;
  ZeroComplex zero;
  std::vector<TileRec> one_tiles;
  std::vector<EdgeRec> one_edges;
  std::vector<VertexRec> one_vertices;
  std::vector<std::string> curve_order;  // on-curve 1-edge ids in cyclic order

  // --- derived indexes, filled by parse_rule ---
  std::unordered_map<std::string, int> tile_index;
  std::unordered_map<std::string, int> edge_index;
  std::unordered_map<std::string, int> vertex_index;
  std::unordered_map<std::string, int> zero_edge_index;
  std::unordered_map<std::string, int> post_index;  // into zero.post

  std::vector<std::vector<int>> tile_boundary_edges;     // per tile, m edges
  std::vector<std::vector<int>> tile_boundary_vertices;  // per tile, m vertices
  std::vector<std::vector<int>> edge_tiles;              // per edge, incident tiles
  std::vector<std::vector<int>> vertex_tiles;            // per vertex, incident tiles
  std::vector<int> curve_pos;                            // per edge, position in curve_order or -1
  std::vector<int> curve_edge;                           // curve_order as edge indices

  int m() const { return zero.m(); }
  int tile(const std::string& id) const;
  int edge(const std::string& id) const;
  int vertex(const std::string& id) const;

  bool tile_contains_vertex(int tile, int vertex) const;
  // Image of a 1-vertex as an index into one_vertices (always postcritical).
  int vertex_image(int v) const;
  // Index into zero.post of a postcritical 1-vertex, or -1.
  int post_of_vertex(int v) const;
  // The unique 1-tile X^1(e, c) with e on-curve, e subseteq X, host color c.
  int tile_of_edge_side(int edge, Color host) const;
};

// kind=tile words run over 1-tile ids, kind=edge words over on-curve 1-edge
// ids; letters are indices into one_tiles / one_edges.
struct CellWord {
  enum class Kind { tile, edge };
  Kind kind = Kind::tile;
  std::vector<int> letters;

  std::size_t size() const { return letters.size(); }
};

struct Violation {
  std::string invariant;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  // Informational, not a violation: whether some level-1 tile word joins
  // opposite sides of the curve.
  bool any_tile_joins_opposite_sides = false;

  bool ok() const { return violations.empty(); }
  std::string to_text() const;
};

SubdivisionRule parse_rule(const std::string& json_text);
SubdivisionRule parse_rule_file(const std::string& path);

ValidationReport validate_rule(const SubdivisionRule& rule);

// (number of 1-tiles containing v) / 2; throws on odd flower size.
int vertex_local_degree(const SubdivisionRule& rule, int vertex);

// deg_{f^n} along a vertex itinerary (v, f(v), ..., f^{n-1}(v)) given as
// 1-vertex indices. If word is nonempty it must have the same length and
// each itinerary vertex must be incident to the matching tile letter.
int word_cell_degree(const SubdivisionRule& rule, const CellWord& word,
                     const std::vector<int>& itinerary);

// True iff the n-tile named by an admissible tile word meets two disjoint
// 0-edges (m >= 4) or all three 0-edges (m == 3).
bool joins_opposite_sides(const SubdivisionRule& rule, const CellWord& word);

// Admissibility of tile words: f(w_i) contains w_{i+1}, i.e. the image color
// of w_i equals the host color of w_{i+1}.
bool tile_word_admissible(const SubdivisionRule& rule, const std::vector<int>& letters);

namespace builtin {
// Degree-4 Lattes map from multiplication by 2 on the (2,2,2,2) pillow,
// post f = the four corners, C = the pillow equator, each face cut 2x2.
const std::string& pillow2x2_json();
SubdivisionRule pillow2x2();
// Same complex with the quarter-turn twist map (multiplication by 2i); its
// fixed corner reverses the orientation of the curve.
const std::string& pillowrot_json();
SubdivisionRule pillowrot();
}  // namespace builtin

}  // namespace oz
