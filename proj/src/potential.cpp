#include "orbitzeta/potential.hpp"

#include "orbitzeta/curve.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace oz {

Potential::Potential(int k, std::map<std::string, double> values) : k_(k), values_(std::move(values)) {
  if (k_ < 1) throw Error("potential block level k must be >= 1");
}

Potential Potential::constant(const SubdivisionRule& rule, double c) {
  std::map<std::string, double> v;
  for (const auto& t : rule.one_tiles) v[t.id] = c;
  return Potential(1, std::move(v));
}

Potential Potential::from_json(const SubdivisionRule& rule, const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw Error(std::string("potential: not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("k") || !doc["k"].is_number_integer())
    throw Error("potential: missing integer key 'k'");
  int k = doc["k"].get<int>();
  std::map<std::string, double> values;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() == "k") continue;
    if (!it.value().is_number()) throw Error("potential: value of '" + it.key() + "' is not a number");
    values[it.key()] = it.value().get<double>();
  }
  Potential pot(k, std::move(values));
  // Every admissible k-word must carry a value.
  std::function<void(std::vector<int>&)> walk = [&](std::vector<int>& w) {
    if (static_cast<int>(w.size()) == k) {
      std::string key = rule.one_tiles[w[0]].id;
      for (std::size_t i = 1; i < w.size(); ++i) key += "-" + rule.one_tiles[w[i]].id;
      if (!pot.values_.count(key)) throw Error("potential: missing value for admissible word '" + key + "'");
      return;
    }
    for (std::size_t t = 0; t < rule.one_tiles.size(); ++t) {
      if (!w.empty() &&
          rule.one_tiles[w.back()].image_color != rule.one_tiles[t].host_color)
        continue;
      w.push_back(static_cast<int>(t));
      walk(w);
      w.pop_back();
    }
  };
  std::vector<int> w;
  walk(w);
  return pot;
}

Potential Potential::from_file(const SubdivisionRule& rule, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open potential file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(rule, ss.str());
}

double Potential::value_of(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw Error("potential: no value for word '" + key + "'");
  return it->second;
}

double Potential::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [k, v] : values_) m = std::min(m, v);
  return m;
}

double Potential::window_value(const SubdivisionRule& rule, const std::vector<int>& tile_word,
                               std::size_t at, bool wrap) const {
  const std::size_t n = tile_word.size();
  std::string key;
  for (int j = 0; j < k_; ++j) {
    std::size_t idx = at + j;
    if (wrap)
      idx %= n;
    else if (idx >= n)
      throw Error("word too short for a level-" + std::to_string(k_) + " window");
    if (j) key += "-";
    key += rule.one_tiles[tile_word[idx]].id;
  }
  return value_of(key);
}

std::string Potential::to_json() const {
  nlohmann::json j;
  j["k"] = k_;
  for (const auto& [key, v] : values_) j[key] = v;
  return j.dump(2);
}

double birkhoff_sum(const SubdivisionRule& rule, const Potential& pot,
                    const std::vector<int>& tile_word, int n, bool wrap) {
  if (n < 0) throw Error("birkhoff_sum: n must be >= 0");
  if (n == 0) return 0.0;
  if (!wrap && tile_word.size() < static_cast<std::size_t>(n + pot.k() - 1))
    throw Error("birkhoff_sum: word too short and non-periodic");
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += pot.window_value(rule, tile_word, i, wrap);
  return s;
}

// ---- packed-window lookup -------------------------------------------------

WindowTable::WindowTable(const SubdivisionRule& rule, const Potential& pot) : k_(pot.k()) {
  if (rule.one_tiles.size() > 63) throw Error("window table supports at most 63 tiles");
  std::function<void(std::vector<int>&)> walk = [&](std::vector<int>& w) {
    if (static_cast<int>(w.size()) == k_) {
      std::string key = rule.one_tiles[w[0]].id;
      for (std::size_t i = 1; i < w.size(); ++i) key += "-" + rule.one_tiles[w[i]].id;
      values_[pack(w.data())] = pot.value_of(key);
      return;
    }
    for (std::size_t t = 0; t < rule.one_tiles.size(); ++t) {
      if (!w.empty() && rule.one_tiles[w.back()].image_color != rule.one_tiles[t].host_color)
        continue;
      w.push_back(static_cast<int>(t));
      walk(w);
      w.pop_back();
    }
  };
  std::vector<int> w;
  walk(w);
}

std::uint64_t WindowTable::pack(const int* letters) const {
  std::uint64_t key = 0;
  for (int j = 0; j < k_; ++j) key = (key << 6) | static_cast<std::uint64_t>(letters[j]);
  return key;
}

double WindowTable::value(const int* letters) const {
  auto it = values_.find(pack(letters));
  if (it == values_.end()) throw Error("window table: inadmissible window");
  return it->second;
}

// ---- induced weights ------------------------------------------------------

std::vector<double> bind_tile_weights(const SubdivisionRule& rule, const BlockSystem& tile_blocks,
                                      const Potential& pot) {
  if (tile_blocks.k != pot.k()) throw Error("block level does not match the potential");
  std::vector<double> out(tile_blocks.size());
  for (int b = 0; b < tile_blocks.size(); ++b) {
    std::string key;
    for (std::size_t j = 0; j < tile_blocks.words[b].size(); ++j) {
      if (j) key += "-";
      key += rule.one_tiles[tile_blocks.words[b][j]].id;
    }
    out[b] = pot.value_of(key);
  }
  return out;
}

std::vector<double> bind_edge_color_weights(const SubdivisionRule& rule,
                                            const TransitionSystem& par,
                                            const BlockSystem& par_blocks, const Potential& pot) {
  if (par_blocks.k != pot.k()) throw Error("block level does not match the potential");
  std::vector<double> out(par_blocks.size());
  for (int b = 0; b < par_blocks.size(); ++b) {
    std::string key;
    for (std::size_t j = 0; j < par_blocks.words[b].size(); ++j) {
      int st = par_blocks.words[b][j];
      int tile = rule.tile_of_edge_side(par.edge_of_state[st], par.color_of_state[st]);
      if (j) key += "-";
      key += rule.one_tiles[tile].id;
    }
    out[b] = pot.value_of(key);
  }
  return out;
}

std::vector<double> bind_edge_weights(const SubdivisionRule& rule, const TransitionSystem& edge_base,
                                      const BlockSystem& edge_blocks, const Potential& pot,
                                      Color c0) {
  if (edge_blocks.k != pot.k()) throw Error("block level does not match the potential");
  std::vector<double> out(edge_blocks.size());
  for (int b = 0; b < edge_blocks.size(); ++b) {
    std::string key;
    Color c = c0;
    for (std::size_t j = 0; j < edge_blocks.words[b].size(); ++j) {
      int e = edge_base.edge_of_state[edge_blocks.words[b][j]];
      int tile = rule.tile_of_edge_side(e, c);
      c = propagate_color(rule, e, c);
      if (j) key += "-";
      key += rule.one_tiles[tile].id;
    }
    out[b] = pot.value_of(key);
  }
  return out;
}

namespace {

// Canonical outgoing on-curve edge at a postcritical vertex: the unique
// on-curve 1-edge whose curve-forward start is the vertex.
int outgoing_curve_edge(const SubdivisionRule& rule, int vertex) {
  const int nc = static_cast<int>(rule.curve_edge.size());
  for (int j = 0; j < nc; ++j) {
    int e = rule.curve_edge[j];
    const auto& a = rule.one_edges[e];
    const auto& prev = rule.one_edges[rule.curve_edge[(j + nc - 1) % nc]];
    const std::string& start =
        (a.endpoints[0] == prev.endpoints[0] || a.endpoints[0] == prev.endpoints[1])
            ? a.endpoints[0]
            : a.endpoints[1];
    if (start == rule.one_vertices[vertex].id) return e;
  }
  throw Error("vertex " + rule.one_vertices[vertex].id + " is not on the curve");
}

}  // namespace

double vertex_value(const SubdivisionRule& rule, const Potential& pot, int vertex) {
  // Admissible edge chain: start with the outgoing edge at v, then at each
  // step take the refinement edge of the current image 0-edge that is
  // incident to the image vertex.
  const int k = pot.k();
  const std::vector<int> zero_of = curve_zero_edge_assignment(rule);
  std::vector<int> chain;
  chain.reserve(k);
  int v = vertex;
  int e = outgoing_curve_edge(rule, v);
  chain.push_back(e);
  for (int j = 1; j < k; ++j) {
    v = rule.vertex_image(v);
    int img_zero = rule.zero_edge_index.at(rule.one_edges[e].image_zero_edge);
    int found = -1;
    for (int cand : rule.curve_edge) {
      if (zero_of[cand] != img_zero) continue;
      if (rule.one_edges[cand].endpoints[0] == rule.one_vertices[v].id ||
          rule.one_edges[cand].endpoints[1] == rule.one_vertices[v].id) {
        found = cand;
        break;
      }
    }
    if (found < 0) throw Error("no refinement edge at the image vertex");
    e = found;
    chain.push_back(e);
  }
  std::vector<int> tiles = h_lift_tile_word(rule, chain, Color::black, 0);
  std::string key;
  for (std::size_t j = 0; j < tiles.size(); ++j) {
    if (j) key += "-";
    key += rule.one_tiles[tiles[j]].id;
  }
  return pot.value_of(key);
}

std::vector<double> bind_vertex_weights(const SubdivisionRule& rule, const TransitionSystem& verts,
                                        const Potential& pot) {
  std::vector<double> out(verts.size());
  for (int i = 0; i < verts.size(); ++i)
    out[i] = vertex_value(rule, pot, verts.vertex_of_state[i]);
  return out;
}

double orbit_weight_tile(const SubdivisionRule& rule, const Potential& pot,
                         const std::vector<int>& word) {
  return birkhoff_sum(rule, pot, word, static_cast<int>(word.size()), /*wrap=*/true);
}

double orbit_weight_edge(const SubdivisionRule& rule, const Potential& pot,
                         const std::vector<int>& edge_word) {
  const int n = static_cast<int>(edge_word.size());
  const int k = pot.k();
  double s = 0.0;
  std::vector<int> rotated(edge_word.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rotated[j] = edge_word[(i + j) % n];
    std::vector<int> tiles = h_lift_tile_word(rule, rotated, Color::black, std::max(0, k - n));
    std::string key;
    for (int j = 0; j < k; ++j) {
      if (j) key += "-";
      key += rule.one_tiles[tiles[j]].id;
    }
    s += pot.value_of(key);
  }
  return s;
}

double orbit_weight_vertex(const SubdivisionRule& rule, const Potential& pot,
                           const std::vector<int>& vertex_orbit) {
  double s = 0.0;
  for (int v : vertex_orbit) s += vertex_value(rule, pot, v);
  return s;
}

}  // namespace oz
