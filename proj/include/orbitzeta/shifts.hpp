#pragma once

#include "orbitzeta/common.hpp"
#include "orbitzeta/subdivision.hpp"

#include <string>
#include <vector>

namespace oz {

enum class ShiftKind { tile, edge, edge_color, vertex };

// A finite-state shift: states with descriptors plus a sparse boolean
// transition relation held as successor lists.
struct TransitionSystem {
  ShiftKind kind = ShiftKind::tile;
  std::vector<std::string> state_ids;
  std::vector<std::vector<int>> succ;

  // Payloads; which ones are filled depends on kind.
  std::vector<int> tile_of_state;    // kind=tile
  std::vector<int> edge_of_state;    // kind=edge, edge_color
  std::vector<Color> color_of_state; // kind=edge_color
  std::vector<int> vertex_of_state;  // kind=vertex

  int size() const { return static_cast<int>(state_ids.size()); }
  bool has_arc(int a, int b) const;
};

// States = 1-tiles; A(X, X') = 1 iff f(X) contains X', i.e. the image color
// of X is the host color of X'.
TransitionSystem tile_shift(const SubdivisionRule& rule);

// States = on-curve 1-edges; A(e1, e2) = 1 iff f(e1) contains e2.
TransitionSystem edge_shift(const SubdivisionRule& rule);

// States = (on-curve 1-edge, color) pairs with the two-condition relation on
// both the edges and the side tiles X^1(e, c).
TransitionSystem edge_color_shift(const SubdivisionRule& rule);

// States = postcritical vertices with the functional relation v -> f(v).
TransitionSystem vertex_system(const SubdivisionRule& rule);

// Higher-block presentation: states are admissible k-words of the base,
// transitions by (k-1)-overlap.
struct BlockSystem {
  TransitionSystem system;
  int k = 1;
  ShiftKind base_kind = ShiftKind::tile;
  std::vector<std::vector<int>> words;  // base-state letters per block state
  std::vector<int> base_letter;         // first letter per block state

  int size() const { return system.size(); }
};

BlockSystem higher_block(const TransitionSystem& ts, int k);

// True iff some power n <= horizon of the matrix is entrywise positive.
// horizon < 0 picks the default (card states)^2.
bool is_mixing(const TransitionSystem& ts, int horizon = -1);

// trace(A^n) in exact integer arithmetic = card Fix(sigma^n); computed by
// closed-walk dynamic programming over (state, remaining length).
BigInt count_fixed(const TransitionSystem& ts, int n);
BigInt count_fixed(const BlockSystem& bs, int n);

// Number of admissible words of length n (exact).
BigInt count_words(const TransitionSystem& ts, int n);

// Letter-wise color-forgetting map between the edge_color and edge shifts:
// state index in edge_color -> state index in edge.
std::vector<int> color_forgetting_map(const TransitionSystem& par, const TransitionSystem& edge);

// The h-map: an edge_color state (e, c) -> the tile X^1(e, c). Applied
// letter-wise it carries admissible edge_color words to admissible tile words.
std::vector<int> h_map(const SubdivisionRule& rule, const TransitionSystem& par,
                       const TransitionSystem& tiles);

// Deterministic color propagation: the color following (e, c) when stepping
// to any successor edge.
Color propagate_color(const SubdivisionRule& rule, int edge, Color c);

// Lift of an edge word to the edge_color shift with initial color c0, mapped
// through h to a tile word. `extra` extends the (periodic) edge word
// cyclically so the result has word.size() + extra letters.
std::vector<int> h_lift_tile_word(const SubdivisionRule& rule, const std::vector<int>& edge_word,
                                  Color c0, int extra = 0);

}  // namespace oz
