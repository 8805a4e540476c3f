#include "orbitzeta/shifts.hpp"

#include "orbitzeta/curve.hpp"

#include <algorithm>
#include <map>

namespace oz {

bool TransitionSystem::has_arc(int a, int b) const {
  const auto& s = succ[a];
  return std::find(s.begin(), s.end(), b) != s.end();
}

TransitionSystem tile_shift(const SubdivisionRule& rule) {
  TransitionSystem ts;
  ts.kind = ShiftKind::tile;
  const int n = static_cast<int>(rule.one_tiles.size());
  ts.state_ids.reserve(n);
  ts.tile_of_state.resize(n);
  for (int i = 0; i < n; ++i) {
    ts.state_ids.push_back(rule.one_tiles[i].id);
    ts.tile_of_state[i] = i;
  }
  ts.succ.assign(n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rule.one_tiles[i].image_color == rule.one_tiles[j].host_color) ts.succ[i].push_back(j);
  return ts;
}

TransitionSystem edge_shift(const SubdivisionRule& rule) {
  TransitionSystem ts;
  ts.kind = ShiftKind::edge;
  std::vector<int> zero_of = curve_zero_edge_assignment(rule);
  for (int e : rule.curve_edge) {
    ts.state_ids.push_back(rule.one_edges[e].id);
    ts.edge_of_state.push_back(e);
  }
  const int n = ts.size();
  ts.succ.assign(n, {});
  for (int i = 0; i < n; ++i) {
    int img = rule.zero_edge_index.at(rule.one_edges[ts.edge_of_state[i]].image_zero_edge);
    for (int j = 0; j < n; ++j)
      if (zero_of[ts.edge_of_state[j]] == img) ts.succ[i].push_back(j);
  }
  return ts;
}

TransitionSystem edge_color_shift(const SubdivisionRule& rule) {
  TransitionSystem base = edge_shift(rule);
  TransitionSystem ts;
  ts.kind = ShiftKind::edge_color;
  const int ne = base.size();
  for (int i = 0; i < ne; ++i)
    for (Color c : {Color::black, Color::white}) {
      ts.state_ids.push_back(base.state_ids[i] + "|" + to_string(c));
      ts.edge_of_state.push_back(base.edge_of_state[i]);
      ts.color_of_state.push_back(c);
    }
  const int n = ts.size();
  ts.succ.assign(n, {});
  for (int i = 0; i < n; ++i) {
    int e1 = ts.edge_of_state[i];
    Color next = propagate_color(rule, e1, ts.color_of_state[i]);
    for (int j = 0; j < n; ++j) {
      if (ts.color_of_state[j] != next) continue;
      // f(e1) contains e2 iff the base relation holds.
      int bi = i / 2, bj = j / 2;
      if (base.has_arc(bi, bj)) ts.succ[i].push_back(j);
    }
  }
  return ts;
}

Color propagate_color(const SubdivisionRule& rule, int edge, Color c) {
  // f(X^1(e, c)) is the 0-tile of that side tile's image color; the successor
  // side tile must be hosted in it.
  return rule.one_tiles[rule.tile_of_edge_side(edge, c)].image_color;
}

TransitionSystem vertex_system(const SubdivisionRule& rule) {
  TransitionSystem ts;
  ts.kind = ShiftKind::vertex;
  for (const auto& p : rule.zero.post) {
    ts.state_ids.push_back(p);
    ts.vertex_of_state.push_back(rule.vertex_index.at(p));
  }
  const int n = ts.size();
  ts.succ.assign(n, {});
  for (int i = 0; i < n; ++i) {
    int img = rule.vertex_image(ts.vertex_of_state[i]);
    for (int j = 0; j < n; ++j)
      if (ts.vertex_of_state[j] == img) ts.succ[i].push_back(j);
  }
  return ts;
}

BlockSystem higher_block(const TransitionSystem& ts, int k) {
  if (k < 1) throw Error("higher_block: k must be >= 1");
  BlockSystem bs;
  bs.k = k;
  bs.base_kind = ts.kind;

  // Enumerate admissible k-words depth-first in state order.
  std::vector<int> word;
  std::map<std::vector<int>, int> index;
  std::function<void()> grow = [&]() {
    if (static_cast<int>(word.size()) == k) {
      index.emplace(word, 0);
      return;
    }
    if (word.empty()) {
      for (int s = 0; s < ts.size(); ++s) {
        word.push_back(s);
        grow();
        word.pop_back();
      }
    } else {
      for (int s : ts.succ[word.back()]) {
        word.push_back(s);
        grow();
        word.pop_back();
      }
    }
  };
  grow();

  int n = 0;
  for (auto& [w, idx] : index) idx = n++;
  bs.words.resize(n);
  bs.base_letter.resize(n);
  bs.system.kind = ts.kind;
  bs.system.state_ids.resize(n);
  bs.system.succ.assign(n, {});
  for (const auto& [w, idx] : index) {
    bs.words[idx] = w;
    bs.base_letter[idx] = w.front();
    std::string id = ts.state_ids[w[0]];
    for (int i = 1; i < k; ++i) id += "-" + ts.state_ids[w[i]];
    bs.system.state_ids[idx] = id;
  }
  for (const auto& [w, idx] : index) {
    if (k == 1) {
      for (int s : ts.succ[w[0]]) bs.system.succ[idx].push_back(index.at({s}));
      continue;
    }
    std::vector<int> next(w.begin() + 1, w.end());
    next.push_back(0);
    for (int s : ts.succ[w.back()]) {
      next.back() = s;
      auto it = index.find(next);
      if (it != index.end()) bs.system.succ[idx].push_back(it->second);
    }
  }
  return bs;
}

bool is_mixing(const TransitionSystem& ts, int horizon) {
  const int n = ts.size();
  if (n == 0) return false;
  if (horizon < 0) horizon = n * n;
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j : ts.succ[i]) reach[i][j] = true;
  auto all_positive = [&]() {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!reach[i][j]) return false;
    return true;
  };
  for (int p = 1; p <= horizon; ++p) {
    if (all_positive()) return true;
    if (p == horizon) break;
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][j])
          for (int l : ts.succ[j]) next[i][l] = true;
    reach = std::move(next);
  }
  return false;
}

BigInt count_fixed(const TransitionSystem& ts, int n) {
  if (n < 1) throw Error("count_fixed: n must be >= 1");
  const int s = ts.size();
  // Closed walks of length n from each start state, DP over remaining length.
  BigInt total = 0;
  std::vector<BigInt> cur(s), next(s);
  for (int start = 0; start < s; ++start) {
    std::fill(cur.begin(), cur.end(), BigInt(0));
    cur[start] = 1;
    for (int step = 0; step < n; ++step) {
      std::fill(next.begin(), next.end(), BigInt(0));
      for (int i = 0; i < s; ++i) {
        if (cur[i] == 0) continue;
        for (int j : ts.succ[i]) next[j] += cur[i];
      }
      std::swap(cur, next);
    }
    total += cur[start];
  }
  return total;
}

BigInt count_fixed(const BlockSystem& bs, int n) { return count_fixed(bs.system, n); }

BigInt count_words(const TransitionSystem& ts, int n) {
  if (n < 1) throw Error("count_words: n must be >= 1");
  const int s = ts.size();
  std::vector<BigInt> cur(s, BigInt(1)), next(s);
  for (int step = 1; step < n; ++step) {
    std::fill(next.begin(), next.end(), BigInt(0));
    for (int i = 0; i < s; ++i)
      for (int j : ts.succ[i]) next[i] += cur[j];
    std::swap(cur, next);
  }
  BigInt total = 0;
  for (int i = 0; i < s; ++i) total += cur[i];
  return total;
}

std::vector<int> color_forgetting_map(const TransitionSystem& par, const TransitionSystem& edge) {
  std::vector<int> out(par.size(), -1);
  for (int i = 0; i < par.size(); ++i)
    for (int j = 0; j < edge.size(); ++j)
      if (edge.edge_of_state[j] == par.edge_of_state[i]) out[i] = j;
  return out;
}

std::vector<int> h_map(const SubdivisionRule& rule, const TransitionSystem& par,
                       const TransitionSystem& tiles) {
  std::vector<int> out(par.size(), -1);
  std::vector<int> tile_state_of(rule.one_tiles.size(), -1);
  for (int t = 0; t < tiles.size(); ++t) tile_state_of[tiles.tile_of_state[t]] = t;
  for (int i = 0; i < par.size(); ++i)
    out[i] = tile_state_of[rule.tile_of_edge_side(par.edge_of_state[i], par.color_of_state[i])];
  return out;
}

std::vector<int> h_lift_tile_word(const SubdivisionRule& rule, const std::vector<int>& edge_word,
                                  Color c0, int extra) {
  if (edge_word.empty()) throw Error("h_lift_tile_word: empty edge word");
  std::vector<int> out;
  out.reserve(edge_word.size() + extra);
  Color c = c0;
  const std::size_t n = edge_word.size();
  for (std::size_t i = 0; i < n + static_cast<std::size_t>(extra); ++i) {
    int e = edge_word[i % n];
    out.push_back(rule.tile_of_edge_side(e, c));
    c = propagate_color(rule, e, c);
  }
  return out;
}

}  // namespace oz
