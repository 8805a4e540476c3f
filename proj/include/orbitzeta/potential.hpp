#pragma once

#include "orbitzeta/common.hpp"
#include "orbitzeta/shifts.hpp"
#include "orbitzeta/subdivision.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace oz {

// A locally constant weight: one real value per admissible level-k word of
// the tile shift. Values are keyed by dash-joined tile ids.
class Potential {
public:
  Potential() = default;
  Potential(int k, std::map<std::string, double> values);

  static Potential constant(const SubdivisionRule& rule, double c);
  static Potential from_json(const SubdivisionRule& rule, const std::string& json_text);
  static Potential from_file(const SubdivisionRule& rule, const std::string& path);

  int k() const { return k_; }
  const std::map<std::string, double>& values() const { return values_; }

  // Value of the k-window starting at position `at` of a tile-letter word;
  // wraps cyclically when wrap is set. Throws on missing windows.
  double window_value(const SubdivisionRule& rule, const std::vector<int>& tile_word,
                      std::size_t at, bool wrap) const;

  double value_of(const std::string& key) const;
  double min_value() const;

  std::string to_json() const;

private:
  int k_ = 1;
  std::map<std::string, double> values_;
};

// S_n phi along a tile word; wrap=false requires length >= n + k - 1.
double birkhoff_sum(const SubdivisionRule& rule, const Potential& pot,
                    const std::vector<int>& tile_word, int n, bool wrap = false);

// Per-state weights for a block system of the tile shift at level pot.k().
std::vector<double> bind_tile_weights(const SubdivisionRule& rule, const BlockSystem& tile_blocks,
                                      const Potential& pot);

// Induced weight on edge_color k-blocks: phi of the h-image tile window.
std::vector<double> bind_edge_color_weights(const SubdivisionRule& rule,
                                            const TransitionSystem& par,
                                            const BlockSystem& par_blocks, const Potential& pot);

// Induced weight on edge k-blocks: phi of the h-image of the side-c0 lift.
std::vector<double> bind_edge_weights(const SubdivisionRule& rule, const TransitionSystem& edge_base,
                                      const BlockSystem& edge_blocks, const Potential& pot, Color c0);

// Packed-window lookup for hot loops: maps a k-window of tile indices to its
// potential value without string keys.
class WindowTable {
public:
  WindowTable(const SubdivisionRule& rule, const Potential& pot);
  double value(const int* letters) const;
  int k() const { return k_; }

private:
  std::uint64_t pack(const int* letters) const;
  int k_ = 1;
  std::unordered_map<std::uint64_t, double> values_;
};

// Induced value at a postcritical vertex: phi of the h-window along the
// canonical outgoing edge chain at the vertex (black side).
double vertex_value(const SubdivisionRule& rule, const Potential& pot, int vertex);
std::vector<double> bind_vertex_weights(const SubdivisionRule& rule, const TransitionSystem& verts,
                                        const Potential& pot);

// Weighted length of a periodic orbit address in the convention matching the
// class kind (tile window / edge black-side lift / vertex chain).
double orbit_weight_tile(const SubdivisionRule& rule, const Potential& pot,
                         const std::vector<int>& word);
double orbit_weight_edge(const SubdivisionRule& rule, const Potential& pot,
                         const std::vector<int>& edge_word);
double orbit_weight_vertex(const SubdivisionRule& rule, const Potential& pot,
                           const std::vector<int>& vertex_orbit);

}  // namespace oz
