#pragma once

#include "orbitzeta/subdivision.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace oz {

// Containing 0-edge per 1-edge index (-1 for edges off the curve), derived
// from curve_order and the postcritical corners along it.
std::vector<int> curve_zero_edge_assignment(const SubdivisionRule& rule);

// A vertex of the level-L refinement of the invariant curve, addressed by its
// cyclic position: index k names the common endpoint of the level-L arcs k-1
// and k. Arcs at level L are admissible on-curve edge words of length L in
// their cyclic order along C; cells are never materialized.
struct CurveVertex {
  int level = 0;
  std::int64_t index = 0;

  friend bool operator==(const CurveVertex&, const CurveVertex&) = default;
  friend auto operator<=>(const CurveVertex&, const CurveVertex&) = default;
};

class CurveRefinement {
public:
  // max_level bounds the depth of index tables; indices are int64, so the
  // total arc count at max_level must stay below 2^62.
  CurveRefinement(const SubdivisionRule& rule, int max_level);

  const SubdivisionRule& rule() const { return *rule_; }
  int max_level() const { return max_level_; }

  // Number of level-L arcs (= on-curve L-edges).
  std::int64_t arc_count(int level) const;

  // Arc word (1-edge indices) from a cyclic arc index and back.
  std::vector<int> arc_word(int level, std::int64_t index) const;
  std::int64_t arc_index(const std::vector<int>& word) const;

  // Level-1 arc index of an on-curve 1-edge.
  std::int64_t arc_of_edge(int edge_idx) const;
  // Containing 0-edge of an on-curve 1-edge.
  int zero_edge_of_edge(int edge_idx) const;

  // Index at `level` of the leftmost level-`level` arc inside arc
  // (arc_level, arc_index).
  std::int64_t arc_block_start(int arc_level, std::int64_t arc_index, int level) const;
  // Number of level-`level` arcs inside a level-`arc_level` arc whose last
  // letter (a 1-edge index) is `last_letter`.
  std::int64_t arc_block_len(int arc_level, int last_letter, int level) const;
  // (start, len) of the level-`level` arc block refining a whole 0-edge.
  std::pair<std::int64_t, std::int64_t> zero_edge_block(int zero, int level) const;

  CurveVertex arc_left_vertex(int level, std::int64_t index) const;
  CurveVertex arc_right_vertex(int level, std::int64_t index) const;

  // Re-addresses a vertex at a deeper level (every level-L vertex is a
  // level-L' vertex for L' >= L).
  CurveVertex raise(const CurveVertex& v, int level) const;
  // Whether a vertex already exists at a coarser level; if so returns its
  // address there.
  bool is_vertex_of_level(const CurveVertex& v, int level, CurveVertex* out = nullptr) const;

  // f maps level-L vertices (L >= 2) to level-(L-1) vertices.
  CurveVertex map_forward(const CurveVertex& v) const;
  // All level-(L+1) vertices on C mapping to v under f|_C (v at level >= 1).
  std::vector<CurveVertex> preimages(const CurveVertex& v) const;

  // Membership of a vertex (level >= arc_level) in the closed arc.
  bool vertex_in_closed_arc(const CurveVertex& v, int arc_level, std::int64_t arc_index) const;

  // The level-`level` arc whose closure contains v, v not its right endpoint.
  std::int64_t containing_arc(const CurveVertex& v, int level) const;

  // Containing 0-edge(s): two for postcritical corners, one otherwise.
  std::vector<int> zero_edges_at(const CurveVertex& v) const;

  // Position of the corner post[i] at a level.
  std::int64_t post_position(int post, int level) const;

private:
  const SubdivisionRule* rule_;
  int max_level_;
  int nc_;

  // count_[L][p]: number of admissible on-curve words of length L starting at
  // normalized position p; offset_[L] cumulative with offset_[L][nc] = total.
  std::vector<std::vector<std::int64_t>> count_;
  std::vector<std::vector<std::int64_t>> offset_;
  std::vector<std::int64_t> total_;

  std::vector<int> run_start_, run_len_;   // per 0-edge, normalized positions
  std::vector<int> zero_of_pos_;           // per normalized position
  std::vector<int> norm_to_edge_;          // normalized position -> edge index
  std::vector<int> edge_pos_to_norm_;      // edge index -> normalized position
  std::vector<int> post_pos_level1_;

  bool preserves(int pos) const;
  int image_zero(int pos) const;
  std::int64_t index_of_pos_word(const std::vector<int>& w, std::size_t at) const;
  void pos_word_of_index(int level, std::int64_t k, std::vector<int>& out) const;
};

}  // namespace oz
