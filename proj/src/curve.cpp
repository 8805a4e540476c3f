#include "orbitzeta/curve.hpp"

#include <algorithm>

namespace oz {

namespace {
constexpr std::int64_t kIndexCap = std::int64_t(1) << 62;
}

std::vector<int> curve_zero_edge_assignment(const SubdivisionRule& rule) {
  CurveRefinement cr(rule, 1);
  std::vector<int> out(rule.one_edges.size(), -1);
  for (std::size_t e = 0; e < rule.one_edges.size(); ++e)
    if (rule.one_edges[e].on_curve) out[e] = cr.zero_edge_of_edge(static_cast<int>(e));
  return out;
}

CurveRefinement::CurveRefinement(const SubdivisionRule& rule, int max_level)
    : rule_(&rule), max_level_(std::max(max_level, 1)) {
  nc_ = static_cast<int>(rule.curve_edge.size());
  if (nc_ < 2) throw Error("curve machinery needs at least two on-curve 1-edges");

  // Shared endpoint after each curve position.
  std::vector<int> vertex_after(nc_, -1);
  for (int j = 0; j < nc_; ++j) {
    const auto& a = rule.one_edges[rule.curve_edge[j]];
    const auto& b = rule.one_edges[rule.curve_edge[(j + 1) % nc_]];
    for (int k = 0; k < 2; ++k)
      if (a.endpoints[0] == b.endpoints[k] || a.endpoints[1] == b.endpoints[k]) {
        const std::string& shared = (a.endpoints[0] == b.endpoints[k]) ? a.endpoints[0] : a.endpoints[1];
        vertex_after[j] = rule.vertex_index.at(shared);
      }
    if (vertex_after[j] < 0)
      throw Error("curve_order is not a chain: edges " + a.id + ", " + b.id + " share no endpoint");
  }

  // Rotate so position 0 starts at post[0]; then no 0-edge run wraps.
  int rot = -1;
  for (int j = 0; j < nc_; ++j) {
    int v = vertex_after[(j + nc_ - 1) % nc_];
    if (rule.one_vertices[v].id == rule.zero.post[0]) rot = j;
  }
  if (rot < 0) throw Error("curve_order does not pass through post[0]");

  // zero_of_pos_ in normalized positions, via the post corners encountered.
  zero_of_pos_.assign(nc_, -1);
  run_start_.assign(rule.m(), -1);
  run_len_.assign(rule.m(), 0);
  {
    int current = 0;  // normalized position 0 begins zero_edges[0]
    run_start_[0] = 0;
    for (int p = 0; p < nc_; ++p) {
      zero_of_pos_[p] = current;
      ++run_len_[current];
      int v = vertex_after[(rot + p) % nc_];
      if (rule.one_vertices[v].is_postcritical && p + 1 < nc_) {
        int post = rule.post_index.at(rule.one_vertices[v].id);
        // The run after corner post[i] is zero_edges[i].
        current = post;
        if (run_start_[current] >= 0)
          throw Error("0-edge runs along the curve are not contiguous");
        run_start_[current] = p + 1;
      }
    }
    for (int z = 0; z < rule.m(); ++z)
      if (run_start_[z] < 0 || run_len_[z] == 0)
        throw Error("0-edge " + rule.zero.zero_edges[z] + " has no on-curve refinement run");
  }

  norm_to_edge_.resize(nc_);
  edge_pos_to_norm_.assign(rule.one_edges.size(), -1);
  for (int p = 0; p < nc_; ++p) {
    int e = rule.curve_edge[(rot + p) % nc_];
    norm_to_edge_[p] = e;
    edge_pos_to_norm_[e] = p;
  }

  post_pos_level1_.assign(rule.m(), 0);
  for (int i = 0; i < rule.m(); ++i) post_pos_level1_[i] = run_start_[i];

  // count_[L][p] for L = 1..max_level+1.
  count_.assign(max_level_ + 2, std::vector<std::int64_t>(nc_, 0));
  offset_.assign(max_level_ + 2, std::vector<std::int64_t>(nc_ + 1, 0));
  total_.assign(max_level_ + 2, 0);
  for (int p = 0; p < nc_; ++p) count_[1][p] = 1;
  for (int L = 2; L <= max_level_ + 1; ++L) {
    for (int p = 0; p < nc_; ++p) {
      int z = rule.zero_edge_index.at(rule.one_edges[norm_to_edge_[p]].image_zero_edge);
      __int128 sum = 0;
      for (int j = 0; j < run_len_[z]; ++j) sum += count_[L - 1][run_start_[z] + j];
      if (sum > kIndexCap) throw Error("curve refinement too deep for 64-bit indexing");
      count_[L][p] = static_cast<std::int64_t>(sum);
    }
  }
  for (int L = 1; L <= max_level_ + 1; ++L) {
    __int128 acc = 0;
    for (int p = 0; p < nc_; ++p) {
      offset_[L][p] = static_cast<std::int64_t>(acc);
      acc += count_[L][p];
      if (acc > kIndexCap) throw Error("curve refinement too deep for 64-bit indexing");
    }
    offset_[L][nc_] = static_cast<std::int64_t>(acc);
    total_[L] = static_cast<std::int64_t>(acc);
  }
}

std::int64_t CurveRefinement::arc_count(int level) const {
  if (level < 1 || level > max_level_ + 1) throw Error("arc_count: level out of range");
  return total_[level];
}

std::int64_t CurveRefinement::arc_of_edge(int edge_idx) const {
  int p = edge_pos_to_norm_.at(edge_idx);
  if (p < 0) throw Error("arc_of_edge: edge is not on the curve");
  return p;
}

int CurveRefinement::zero_edge_of_edge(int edge_idx) const {
  return zero_of_pos_[static_cast<int>(arc_of_edge(edge_idx))];
}

std::pair<std::int64_t, std::int64_t> CurveRefinement::zero_edge_block(int zero, int level) const {
  std::int64_t s = offset_[level][run_start_[zero]];
  std::int64_t len = offset_[level][run_start_[zero] + run_len_[zero]] - s;
  return {s, len};
}

bool CurveRefinement::preserves(int pos) const {
  return rule_->one_edges[norm_to_edge_[pos]].orientation_preserving;
}

int CurveRefinement::image_zero(int pos) const {
  return rule_->zero_edge_index.at(rule_->one_edges[norm_to_edge_[pos]].image_zero_edge);
}

std::int64_t CurveRefinement::index_of_pos_word(const std::vector<int>& w, std::size_t at) const {
  const int L = static_cast<int>(w.size() - at);
  if (L == 1) return offset_[1][w[at]];
  std::int64_t sub = index_of_pos_word(w, at + 1);
  int z = image_zero(w[at]);
  std::int64_t q = sub - offset_[L - 1][run_start_[z]];
  if (q < 0 || q >= count_[L][w[at]])
    throw Error("inadmissible curve word: letter does not refine the image 0-edge");
  std::int64_t pos = preserves(w[at]) ? q : count_[L][w[at]] - 1 - q;
  return offset_[L][w[at]] + pos;
}

void CurveRefinement::pos_word_of_index(int level, std::int64_t k, std::vector<int>& out) const {
  // Find the position block containing k.
  int lo = 0, hi = nc_ - 1;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (offset_[level][mid] <= k)
      lo = mid;
    else
      hi = mid - 1;
  }
  out.push_back(lo);
  if (level == 1) return;
  std::int64_t rel = k - offset_[level][lo];
  std::int64_t q = preserves(lo) ? rel : count_[level][lo] - 1 - rel;
  int z = image_zero(lo);
  pos_word_of_index(level - 1, offset_[level - 1][run_start_[z]] + q, out);
}

std::vector<int> CurveRefinement::arc_word(int level, std::int64_t index) const {
  if (level < 1 || level > max_level_ + 1 || index < 0 || index >= total_[level])
    throw Error("arc_word: out of range");
  std::vector<int> pos;
  pos.reserve(level);
  pos_word_of_index(level, index, pos);
  std::vector<int> out;
  out.reserve(level);
  for (int p : pos) out.push_back(norm_to_edge_[p]);
  return out;
}

std::int64_t CurveRefinement::arc_index(const std::vector<int>& word) const {
  if (word.empty() || static_cast<int>(word.size()) > max_level_ + 1)
    throw Error("arc_index: word length out of range");
  std::vector<int> pos;
  pos.reserve(word.size());
  for (int e : word) {
    if (e < 0 || e >= static_cast<int>(edge_pos_to_norm_.size()) || edge_pos_to_norm_[e] < 0)
      throw Error("arc_index: letter is not an on-curve 1-edge");
    pos.push_back(edge_pos_to_norm_[e]);
  }
  return index_of_pos_word(pos, 0);
}

std::int64_t CurveRefinement::arc_block_start(int arc_level, std::int64_t arc_index, int level) const {
  if (level < arc_level) throw Error("arc_block_start: level below the arc's level");
  if (level > max_level_ + 1) throw Error("arc_block_start: level out of range");
  std::vector<int> pos;
  pos.reserve(level);
  pos_word_of_index(arc_level, arc_index, pos);
  // The curve-forward order of the children of cell(w) is the run order of
  // f(w_last) flipped by the orientation parity of the whole word.
  bool flip = false;
  for (int p : pos) flip ^= !preserves(p);
  while (static_cast<int>(pos.size()) < level) {
    int z = image_zero(pos.back());
    int child = flip ? run_start_[z] + run_len_[z] - 1 : run_start_[z];
    pos.push_back(child);
    flip ^= !preserves(child);
  }
  return index_of_pos_word(pos, 0);
}

std::int64_t CurveRefinement::arc_block_len(int arc_level, int last_letter, int level) const {
  int p = edge_pos_to_norm_.at(last_letter);
  if (p < 0) throw Error("arc_block_len: letter is not on the curve");
  int j = level - arc_level + 1;
  if (j < 1 || j > max_level_ + 1) throw Error("arc_block_len: level out of range");
  return count_[j][p];
}

CurveVertex CurveRefinement::arc_left_vertex(int level, std::int64_t index) const {
  return {level, index};
}

CurveVertex CurveRefinement::arc_right_vertex(int level, std::int64_t index) const {
  return {level, (index + 1) % total_[level]};
}

CurveVertex CurveRefinement::raise(const CurveVertex& v, int level) const {
  if (level == v.level) return v;
  if (level < v.level) throw Error("raise: target level below the vertex level");
  return {level, arc_block_start(v.level, v.index, level)};
}

bool CurveRefinement::is_vertex_of_level(const CurveVertex& v, int level, CurveVertex* out) const {
  if (level > v.level) throw Error("is_vertex_of_level: level above the vertex level");
  std::int64_t j = containing_arc(v, level);
  if (arc_block_start(level, j, v.level) != v.index) return false;
  if (out) *out = {level, j};
  return true;
}

std::int64_t CurveRefinement::containing_arc(const CurveVertex& v, int level) const {
  if (level > v.level) throw Error("containing_arc: level above the vertex level");
  std::int64_t lo = 0, hi = total_[level] - 1;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (arc_block_start(level, mid, v.level) <= v.index)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

CurveVertex CurveRefinement::map_forward(const CurveVertex& v) const {
  if (v.level < 2) throw Error("map_forward: vertex level must be >= 2");
  std::vector<int> pos;
  pos.reserve(v.level);
  pos_word_of_index(v.level, v.index, pos);
  std::vector<int> tail(pos.begin() + 1, pos.end());
  std::int64_t i1 = index_of_pos_word(tail, 0);
  if (preserves(pos[0])) return {v.level - 1, i1};
  return {v.level - 1, (i1 + 1) % total_[v.level - 1]};
}

std::vector<CurveVertex> CurveRefinement::preimages(const CurveVertex& v) const {
  const int L = v.level;
  if (L < 1 || L + 1 > max_level_ + 1) throw Error("preimages: level out of range");
  const std::int64_t N = total_[L];
  const std::int64_t Np1 = total_[L + 1];
  std::vector<CurveVertex> out;
  for (int p = 0; p < nc_; ++p) {
    int z = image_zero(p);
    std::int64_t S = offset_[L][run_start_[z]];
    std::int64_t len = offset_[L][run_start_[z] + run_len_[z]] - S;
    std::int64_t d = ((v.index - S) % N + N) % N;
    if (d > len) continue;
    std::int64_t S1 = offset_[L + 1][p];
    std::int64_t idx = preserves(p) ? (S1 + d) : (S1 + (len - d));
    out.push_back({L + 1, idx % Np1});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool CurveRefinement::vertex_in_closed_arc(const CurveVertex& v, int arc_level,
                                           std::int64_t arc_index) const {
  std::int64_t S = arc_block_start(arc_level, arc_index, v.level);
  std::vector<int> pos;
  pos_word_of_index(arc_level, arc_index, pos);
  std::int64_t len = count_[v.level - arc_level + 1][pos.back()];
  std::int64_t N = total_[v.level];
  std::int64_t d = ((v.index - S) % N + N) % N;
  return d <= len;
}

std::vector<int> CurveRefinement::zero_edges_at(const CurveVertex& v) const {
  std::int64_t p1 = containing_arc(v, 1);  // level-1 arc index == normalized position
  int p = static_cast<int>(p1);
  int z = zero_of_pos_[p];
  if (p == run_start_[z] && arc_block_start(1, p1, v.level) == v.index) {
    int zprev = zero_of_pos_[(p + nc_ - 1) % nc_];
    return {zprev, z};
  }
  return {z};
}

std::int64_t CurveRefinement::post_position(int post, int level) const {
  return arc_block_start(1, run_start_[post], level);
}

}  // namespace oz
