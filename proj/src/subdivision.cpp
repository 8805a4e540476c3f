#include "orbitzeta/subdivision.hpp"

#include "orbitzeta/curve.hpp"

#include <json.hpp>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace oz {

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string fmt12(Complex z) { return fmt12(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt12(std::abs(z.imag())) + "i"; }

int thread_cap() {
  static const int cap = [] {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("ORBITZETA_THREADS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v >= 1 && v < hw) hw = static_cast<int>(v);
    }
    return hw;
  }();
  return cap;
}

std::uint64_t fnv1a64(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

const char* to_string(Color c) { return c == Color::black ? "black" : "white"; }

Color color_from_string(const std::string& s) {
  if (s == "black") return Color::black;
  if (s == "white") return Color::white;
  throw Error("invalid color '" + s + "' (expected \"black\" or \"white\")");
}

int SubdivisionRule::tile(const std::string& id) const {
  auto it = tile_index.find(id);
  if (it == tile_index.end()) throw Error("unknown one_tile id '" + id + "'");
  return it->second;
}

int SubdivisionRule::edge(const std::string& id) const {
  auto it = edge_index.find(id);
  if (it == edge_index.end()) throw Error("unknown one_edge id '" + id + "'");
  return it->second;
}

int SubdivisionRule::vertex(const std::string& id) const {
  auto it = vertex_index.find(id);
  if (it == vertex_index.end()) throw Error("unknown one_vertex id '" + id + "'");
  return it->second;
}

bool SubdivisionRule::tile_contains_vertex(int tile, int vertex) const {
  const auto& vs = tile_boundary_vertices[tile];
  return std::find(vs.begin(), vs.end(), vertex) != vs.end();
}

int SubdivisionRule::vertex_image(int v) const {
  return vertex_index.at(one_vertices[v].image);
}

int SubdivisionRule::post_of_vertex(int v) const {
  auto it = post_index.find(one_vertices[v].id);
  return it == post_index.end() ? -1 : it->second;
}

int SubdivisionRule::tile_of_edge_side(int edge, Color host) const {
  for (int t : edge_tiles[edge])
    if (one_tiles[t].host_color == host) return t;
  throw Error("no side tile X^1(" + one_edges[edge].id + ", " + to_string(host) + ")");
}

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) {
  throw Error("parse error at " + path + ": " + msg);
}

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) parse_fail(path + "." + key, "missing required field");
  return j.at(key);
}

std::string need_string(const json& j, const char* key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_string()) parse_fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

bool need_bool(const json& j, const char* key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_boolean()) parse_fail(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

std::vector<std::string> need_string_array(const json& j, const char* key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_array()) parse_fail(path + "." + key, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) parse_fail(path + "." + key + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

}  // namespace

SubdivisionRule parse_rule(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const std::exception& e) {
    throw Error(std::string("parse error at $: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("$", "expected a JSON object");

  SubdivisionRule r;
  {
    const json& d = need(doc, "degree", "$");
    if (!d.is_number_integer() || d.get<int>() < 2) parse_fail("$.degree", "expected an integer >= 2");
    r.degree = d.get<int>();
  }
  r.zero.post = need_string_array(doc, "post", "$");
  r.zero.zero_edges = need_string_array(doc, "zero_edges", "$");
  r.curve_order = need_string_array(doc, "curve_order", "$");

  const json& jverts = need(doc, "one_vertices", "$");
  if (!jverts.is_array()) parse_fail("$.one_vertices", "expected an array");
  for (std::size_t i = 0; i < jverts.size(); ++i) {
    const std::string path = "$.one_vertices[" + std::to_string(i) + "]";
    VertexRec v;
    v.id = need_string(jverts[i], "id", path);
    v.image = need_string(jverts[i], "image", path);
    v.is_postcritical = need_bool(jverts[i], "is_postcritical", path);
    if (r.vertex_index.count(v.id)) parse_fail(path + ".id", "duplicate one_vertex id '" + v.id + "'");
    r.vertex_index[v.id] = static_cast<int>(r.one_vertices.size());
    r.one_vertices.push_back(std::move(v));
  }

  const json& jedges = need(doc, "one_edges", "$");
  if (!jedges.is_array()) parse_fail("$.one_edges", "expected an array");
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const std::string path = "$.one_edges[" + std::to_string(i) + "]";
    EdgeRec e;
    e.id = need_string(jedges[i], "id", path);
    auto eps = need_string_array(jedges[i], "endpoints", path);
    if (eps.size() != 2) parse_fail(path + ".endpoints", "expected exactly 2 endpoints");
    e.endpoints = {eps[0], eps[1]};
    e.on_curve = need_bool(jedges[i], "on_curve", path);
    e.image_zero_edge = need_string(jedges[i], "image_zero_edge", path);
    e.orientation_preserving = need_bool(jedges[i], "orientation_preserving", path);
    if (r.edge_index.count(e.id)) parse_fail(path + ".id", "duplicate one_edge id '" + e.id + "'");
    r.edge_index[e.id] = static_cast<int>(r.one_edges.size());
    r.one_edges.push_back(std::move(e));
  }

  const json& jtiles = need(doc, "one_tiles", "$");
  if (!jtiles.is_array()) parse_fail("$.one_tiles", "expected an array");
  for (std::size_t i = 0; i < jtiles.size(); ++i) {
    const std::string path = "$.one_tiles[" + std::to_string(i) + "]";
    TileRec t;
    t.id = need_string(jtiles[i], "id", path);
    try {
      t.image_color = color_from_string(need_string(jtiles[i], "image_color", path));
      t.host_color = color_from_string(need_string(jtiles[i], "host_color", path));
    } catch (const Error& e) {
      parse_fail(path, e.what());
    }
    t.boundary = need_string_array(jtiles[i], "boundary", path);
    if (r.tile_index.count(t.id)) parse_fail(path + ".id", "duplicate one_tile id '" + t.id + "'");
    r.tile_index[t.id] = static_cast<int>(r.one_tiles.size());
    r.one_tiles.push_back(std::move(t));
  }

  // Resolve id references; a dangling id is a parse (schema) error.
  for (std::size_t i = 0; i < r.zero.post.size(); ++i)
    if (!r.vertex_index.count(r.zero.post[i]))
      parse_fail("$.post[" + std::to_string(i) + "]", "unknown one_vertex id '" + r.zero.post[i] + "'");
  for (std::size_t i = 0; i < r.zero.zero_edges.size(); ++i) {
    const std::string& id = r.zero.zero_edges[i];
    if (r.zero_edge_index.count(id))
      parse_fail("$.zero_edges[" + std::to_string(i) + "]", "duplicate zero_edge id '" + id + "'");
    r.zero_edge_index[id] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < r.zero.post.size(); ++i) r.post_index[r.zero.post[i]] = static_cast<int>(i);

  for (std::size_t i = 0; i < r.one_vertices.size(); ++i)
    if (!r.vertex_index.count(r.one_vertices[i].image))
      parse_fail("$.one_vertices[" + std::to_string(i) + "].image",
                 "unknown one_vertex id '" + r.one_vertices[i].image + "'");

  for (std::size_t i = 0; i < r.one_edges.size(); ++i) {
    const auto& e = r.one_edges[i];
    const std::string path = "$.one_edges[" + std::to_string(i) + "]";
    for (int k = 0; k < 2; ++k)
      if (!r.vertex_index.count(e.endpoints[k]))
        parse_fail(path + ".endpoints[" + std::to_string(k) + "]",
                   "unknown one_vertex id '" + e.endpoints[k] + "'");
    if (!r.zero_edge_index.count(e.image_zero_edge))
      parse_fail(path + ".image_zero_edge", "unknown zero_edge id '" + e.image_zero_edge + "'");
  }

  r.tile_boundary_edges.resize(r.one_tiles.size());
  r.tile_boundary_vertices.resize(r.one_tiles.size());
  for (std::size_t i = 0; i < r.one_tiles.size(); ++i) {
    const auto& t = r.one_tiles[i];
    const std::string path = "$.one_tiles[" + std::to_string(i) + "].boundary";
    if (t.boundary.size() % 2 != 0) parse_fail(path, "expected an even alternating edge/vertex list");
    for (std::size_t j = 0; j < t.boundary.size(); ++j) {
      const std::string& id = t.boundary[j];
      const std::string at = path + "[" + std::to_string(j) + "]";
      if (j % 2 == 0) {
        if (!r.edge_index.count(id)) parse_fail(at, "unknown one_edge id '" + id + "'");
        r.tile_boundary_edges[i].push_back(r.edge_index[id]);
      } else {
        if (!r.vertex_index.count(id)) parse_fail(at, "unknown one_vertex id '" + id + "'");
        r.tile_boundary_vertices[i].push_back(r.vertex_index[id]);
      }
    }
  }

  r.curve_edge.clear();
  for (std::size_t i = 0; i < r.curve_order.size(); ++i) {
    const std::string& id = r.curve_order[i];
    if (!r.edge_index.count(id))
      parse_fail("$.curve_order[" + std::to_string(i) + "]", "unknown one_edge id '" + id + "'");
    r.curve_edge.push_back(r.edge_index[id]);
  }

  r.edge_tiles.assign(r.one_edges.size(), {});
  for (std::size_t t = 0; t < r.one_tiles.size(); ++t)
    for (int e : r.tile_boundary_edges[t]) r.edge_tiles[e].push_back(static_cast<int>(t));

  r.vertex_tiles.assign(r.one_vertices.size(), {});
  for (std::size_t t = 0; t < r.one_tiles.size(); ++t)
    for (int v : r.tile_boundary_vertices[t]) r.vertex_tiles[v].push_back(static_cast<int>(t));

  r.curve_pos.assign(r.one_edges.size(), -1);
  for (std::size_t i = 0; i < r.curve_edge.size(); ++i) r.curve_pos[r.curve_edge[i]] = static_cast<int>(i);

  if (r.zero.post.empty()) parse_fail("$.post", "missing required sections");
  return r;
}

SubdivisionRule parse_rule_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open rule file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_rule(ss.str());
}

namespace {

void check(ValidationReport& rep, bool ok, const std::string& invariant, const std::string& detail) {
  if (!ok) rep.violations.push_back({invariant, detail});
}

}  // namespace

ValidationReport validate_rule(const SubdivisionRule& rule) {
  ValidationReport rep;
  const int m = rule.m();
  const int deg = rule.degree;

  check(rep, m >= 3, "post-count", "card(post f) = " + std::to_string(m) + " < 3");
  check(rep, static_cast<int>(rule.zero.zero_edges.size()) == m, "zero-complex",
        "number of 0-edges differs from number of 0-vertices");
  check(rep, static_cast<int>(rule.one_tiles.size()) == 2 * deg, "cell-count-tiles",
        "card(one_tiles) = " + std::to_string(rule.one_tiles.size()) + ", expected 2*degree = " +
            std::to_string(2 * deg));
  check(rep, static_cast<int>(rule.one_edges.size()) == m * deg, "cell-count-edges",
        "card(one_edges) = " + std::to_string(rule.one_edges.size()) + ", expected m*degree = " +
            std::to_string(m * deg));

  // Every 1-tile boundary is an m-gon consistent with the edge endpoints.
  for (std::size_t t = 0; t < rule.one_tiles.size(); ++t) {
    const auto& tile = rule.one_tiles[t];
    const auto& be = rule.tile_boundary_edges[t];
    const auto& bv = rule.tile_boundary_vertices[t];
    if (static_cast<int>(be.size()) != m || static_cast<int>(bv.size()) != m) {
      check(rep, false, "m-gon",
            "tile " + tile.id + " boundary has " + std::to_string(be.size()) + " edges, expected m = " +
                std::to_string(m));
      continue;
    }
    for (int j = 0; j < m; ++j) {
      int e = be[j];
      int v_next = bv[j];
      int v_prev = bv[(j + m - 1) % m];
      const auto& ep = rule.one_edges[e].endpoints;
      std::set<std::string> got{ep[0], ep[1]};
      std::set<std::string> want{rule.one_vertices[v_prev].id, rule.one_vertices[v_next].id};
      check(rep, got == want, "boundary-endpoints",
            "tile " + tile.id + " boundary edge " + rule.one_edges[e].id +
                " does not join its neighboring boundary vertices");
    }
  }

  // Each 1-edge on the boundary of exactly two tiles, opposite image colors;
  // on-curve edges separate hosts, interior edges do not.
  for (std::size_t e = 0; e < rule.one_edges.size(); ++e) {
    const auto& ts = rule.edge_tiles[e];
    if (ts.size() != 2) {
      check(rep, false, "edge-two-tiles",
            "edge " + rule.one_edges[e].id + " lies on " + std::to_string(ts.size()) +
                " tile boundaries, expected 2");
      continue;
    }
    check(rep, rule.one_tiles[ts[0]].image_color != rule.one_tiles[ts[1]].image_color,
          "opposite-color-adjacency",
          "tiles " + rule.one_tiles[ts[0]].id + ", " + rule.one_tiles[ts[1]].id + " adjacent along " +
              rule.one_edges[e].id + " share image color");
    bool hosts_differ = rule.one_tiles[ts[0]].host_color != rule.one_tiles[ts[1]].host_color;
    if (rule.one_edges[e].on_curve)
      check(rep, hosts_differ, "curve-edge-sides",
            "on-curve edge " + rule.one_edges[e].id + " must separate the two 0-tiles");
    else
      check(rep, !hosts_differ, "interior-edge-sides",
            "interior edge " + rule.one_edges[e].id + " must lie inside one 0-tile");
  }

  // Flower parity: every vertex meets an even, positive number of tiles.
  for (std::size_t v = 0; v < rule.one_vertices.size(); ++v) {
    std::size_t cnt = rule.vertex_tiles[v].size();
    check(rep, cnt > 0 && cnt % 2 == 0, "flower-parity",
          "vertex " + rule.one_vertices[v].id + " meets " + std::to_string(cnt) + " tiles");
  }

  // Vertex map: images are postcritical; local degrees sum to deg f over the
  // preimages of each 0-vertex.
  for (std::size_t v = 0; v < rule.one_vertices.size(); ++v) {
    const auto& vr = rule.one_vertices[v];
    int iv = rule.vertex_index.at(vr.image);
    check(rep, rule.one_vertices[iv].is_postcritical, "vertex-image-postcritical",
          "image of " + vr.id + " is not postcritical");
    check(rep, vr.is_postcritical == (rule.post_index.count(vr.id) > 0), "postcritical-flag",
          "is_postcritical flag of " + vr.id + " disagrees with the post list");
  }
  for (const auto& p : rule.zero.post) {
    int sum = 0;
    for (std::size_t v = 0; v < rule.one_vertices.size(); ++v)
      if (rule.one_vertices[v].image == p && rule.vertex_tiles[v].size() % 2 == 0 &&
          !rule.vertex_tiles[v].empty())
        sum += static_cast<int>(rule.vertex_tiles[v].size()) / 2;
    check(rep, sum == deg, "local-degree-sum",
          "local degrees over f^-1(" + p + ") sum to " + std::to_string(sum) + ", expected deg f = " +
              std::to_string(deg));
  }

  // Euler characteristic of the level-1 complex.
  {
    long chi = static_cast<long>(rule.one_vertices.size()) - static_cast<long>(rule.one_edges.size()) +
               static_cast<long>(rule.one_tiles.size());
    check(rep, chi == 2, "euler-characteristic", "V - E + F = " + std::to_string(chi) + ", expected 2");
  }

  // Curve tiling: curve_order lists exactly the on-curve edges, consecutive
  // edges share an endpoint, posts appear in their cyclic order, 0-edge
  // refinements are contiguous runs, and orientation flags agree with the
  // vertex map.
  {
    std::set<int> in_order(rule.curve_edge.begin(), rule.curve_edge.end());
    bool cover_ok = in_order.size() == rule.curve_edge.size();
    for (std::size_t e = 0; e < rule.one_edges.size(); ++e) {
      bool want = rule.one_edges[e].on_curve;
      bool got = in_order.count(static_cast<int>(e)) > 0;
      if (want != got) cover_ok = false;
    }
    check(rep, cover_ok, "curve-cover", "curve_order must list each on-curve edge exactly once");

    const int nc = static_cast<int>(rule.curve_edge.size());
    if (cover_ok && nc >= 2) {
      // Walk the curve, orienting each edge by the shared endpoints.
      std::vector<int> vertex_after(nc, -1);
      bool chain_ok = true;
      for (int j = 0; j < nc; ++j) {
        const auto& a = rule.one_edges[rule.curve_edge[j]];
        const auto& b = rule.one_edges[rule.curve_edge[(j + 1) % nc]];
        std::set<std::string> sa{a.endpoints[0], a.endpoints[1]};
        int shared = -1;
        for (int k = 0; k < 2; ++k)
          if (sa.count(b.endpoints[k])) shared = rule.vertex_index.at(b.endpoints[k]);
        if (shared < 0) {
          chain_ok = false;
          check(rep, false, "curve-chain",
                "curve_order edges " + a.id + ", " + b.id + " share no endpoint");
        }
        vertex_after[j] = shared;
      }
      if (chain_ok) {
        // Posts in cyclic order, runs contiguous.
        std::vector<int> post_positions;
        for (int j = 0; j < nc; ++j)
          if (vertex_after[j] >= 0 && rule.one_vertices[vertex_after[j]].is_postcritical)
            post_positions.push_back(j);
        check(rep, static_cast<int>(post_positions.size()) == m, "curve-posts",
              "curve passes through " + std::to_string(post_positions.size()) +
                  " postcritical vertices, expected m = " + std::to_string(m));
        if (static_cast<int>(post_positions.size()) == m) {
          // The post after position post_positions[i] begins a 0-edge run.
          int start_post = rule.post_index.at(rule.one_vertices[vertex_after[post_positions[0]]].id);
          for (int i = 0; i < m; ++i) {
            int expect = (start_post + i) % m;
            int got = rule.post_index.at(
                rule.one_vertices[vertex_after[post_positions[i % m]]].id);
            check(rep, got == expect, "curve-post-order",
                  "postcritical vertices do not occur along the curve in their cyclic order");
          }
          // Each run refines the 0-edge between consecutive posts; check the
          // edges' image structure and orientation flags.
          for (int i = 0; i < m; ++i) {
            int run_begin = (post_positions[(i + m - 1) % m] + 1) % nc;
            int run_end = post_positions[i];  // inclusive
            int pos = run_begin;
            int prev_vertex = vertex_after[(run_begin + nc - 1) % nc];
            while (true) {
              int e = rule.curve_edge[pos];
              const auto& er = rule.one_edges[e];
              int start_v = prev_vertex;
              int end_v = vertex_after[pos];
              int img_zero = rule.zero_edge_index.at(er.image_zero_edge);
              int img_start_post = img_zero;
              int img_end_post = (img_zero + 1) % m;
              const std::string img_start_id = rule.zero.post[img_start_post];
              const std::string img_end_id = rule.zero.post[img_end_post];
              const std::string f_start = rule.one_vertices[rule.vertex_index.at(
                  rule.one_vertices[start_v].image)].id;
              const std::string f_end = rule.one_vertices[rule.vertex_index.at(
                  rule.one_vertices[end_v].image)].id;
              bool pres_ok = f_start == img_start_id && f_end == img_end_id;
              bool rev_ok = f_start == img_end_id && f_end == img_start_id;
              if (er.orientation_preserving)
                check(rep, pres_ok, "curve-orientation",
                      "edge " + er.id + " flagged orientation-preserving but its endpoint images do "
                      "not traverse " + er.image_zero_edge + " forward");
              else
                check(rep, rev_ok, "curve-orientation",
                      "edge " + er.id + " flagged orientation-reversing but its endpoint images do "
                      "not traverse " + er.image_zero_edge + " backward");
              prev_vertex = end_v;
              if (pos == run_end) break;
              pos = (pos + 1) % nc;
            }
          }
        }
      }
    }
  }

  // No-joining condition, reported but not failed on.
  if (rep.ok()) {
    for (std::size_t t = 0; t < rule.one_tiles.size() && !rep.any_tile_joins_opposite_sides; ++t) {
      CellWord w;
      w.kind = CellWord::Kind::tile;
      w.letters = {static_cast<int>(t)};
      try {
        if (joins_opposite_sides(rule, w)) rep.any_tile_joins_opposite_sides = true;
      } catch (const Error&) {
        // curve machinery unavailable; already reported above
      }
    }
  }

  return rep;
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  if (ok()) {
    os << "valid: all invariants hold\n";
  } else {
    for (const auto& v : violations) os << "violated [" << v.invariant << "]: " << v.detail << "\n";
  }
  os << "note: level-1 joins-opposite-sides = " << (any_tile_joins_opposite_sides ? "yes" : "no")
     << "\n";
  return os.str();
}

int vertex_local_degree(const SubdivisionRule& rule, int vertex) {
  std::size_t cnt = rule.vertex_tiles[vertex].size();
  if (cnt == 0 || cnt % 2 != 0)
    throw Error("invalid rule: vertex " + rule.one_vertices[vertex].id + " has flower size " +
                std::to_string(cnt));
  return static_cast<int>(cnt / 2);
}

int word_cell_degree(const SubdivisionRule& rule, const CellWord& word,
                     const std::vector<int>& itinerary) {
  if (itinerary.empty()) throw Error("empty vertex itinerary");
  for (std::size_t i = 0; i + 1 < itinerary.size(); ++i) {
    if (rule.vertex_image(itinerary[i]) != itinerary[i + 1])
      throw Error("itinerary inconsistent with the rule's vertex map at step " + std::to_string(i));
  }
  if (!word.letters.empty()) {
    if (word.kind != CellWord::Kind::tile || word.letters.size() != itinerary.size())
      throw Error("word/itinerary mismatch");
    for (std::size_t i = 0; i < itinerary.size(); ++i)
      if (!rule.tile_contains_vertex(word.letters[i], itinerary[i]))
        throw Error("itinerary vertex not incident to the tile word at step " + std::to_string(i));
  }
  int deg = 1;
  for (int v : itinerary) deg *= vertex_local_degree(rule, v);
  return deg;
}

bool tile_word_admissible(const SubdivisionRule& rule, const std::vector<int>& letters) {
  for (std::size_t i = 0; i + 1 < letters.size(); ++i)
    if (rule.one_tiles[letters[i]].image_color != rule.one_tiles[letters[i + 1]].host_color)
      return false;
  return true;
}

bool joins_opposite_sides(const SubdivisionRule& rule, const CellWord& word) {
  if (word.kind != CellWord::Kind::tile) throw Error("joins_opposite_sides expects a tile word");
  if (word.letters.empty()) throw Error("empty word names no cell");
  if (!tile_word_admissible(rule, word.letters)) throw Error("inadmissible tile word");
  const int n = static_cast<int>(word.letters.size());
  const int m = rule.m();
  const int nc = static_cast<int>(rule.curve_edge.size());

  CurveRefinement cr(rule, n + 1);

  // Level-1 curve vertex per on-curve 1-vertex.
  std::vector<int> vloc_level(rule.one_vertices.size(), -1);
  std::vector<std::int64_t> vloc_index(rule.one_vertices.size(), -1);
  for (int j = 0; j < nc; ++j) {
    int e = rule.curve_edge[j];
    const auto& a = rule.one_edges[e];
    const auto& b = rule.one_edges[rule.curve_edge[(j + 1) % nc]];
    const std::string& shared =
        (a.endpoints[0] == b.endpoints[0] || a.endpoints[0] == b.endpoints[1]) ? a.endpoints[0]
                                                                               : a.endpoints[1];
    int v = rule.vertex_index.at(shared);
    CurveVertex cv = cr.arc_right_vertex(1, cr.arc_of_edge(e));
    vloc_level[v] = 1;
    vloc_index[v] = cv.index;
  }

  // Trace of the cell on C: a set of level-`level` arcs plus isolated
  // vertices, built by pulling back through the letters right to left.
  std::vector<std::int64_t> arcs;
  std::vector<CurveVertex> pts;
  {
    int tile = word.letters[n - 1];
    for (int e : rule.tile_boundary_edges[tile])
      if (rule.one_edges[e].on_curve) arcs.push_back(cr.arc_of_edge(e));
    for (int v : rule.tile_boundary_vertices[tile])
      if (vloc_level[v] == 1) pts.push_back({1, vloc_index[v]});
  }

  auto dedupe_arcs = [](std::vector<std::int64_t>& a) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  };
  auto dedupe_pts = [&](std::vector<CurveVertex>& p, int level) {
    for (auto& q : p) q = cr.raise(q, level);
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
  };

  for (int step = 1; step < n; ++step) {
    const int level = step;
    const int tile = word.letters[n - 1 - step];
    const std::int64_t N = cr.arc_count(level);
    const std::int64_t Np1 = cr.arc_count(level + 1);
    std::vector<std::int64_t> na;
    std::vector<CurveVertex> np;

    dedupe_pts(pts, level);

    for (int e : rule.tile_boundary_edges[tile]) {
      if (!rule.one_edges[e].on_curve) continue;
      int img = rule.zero_edge_index.at(rule.one_edges[e].image_zero_edge);
      auto [S, len] = cr.zero_edge_block(img, level);
      std::int64_t S1 = cr.arc_block_start(1, cr.arc_of_edge(e), level + 1);
      bool pres = rule.one_edges[e].orientation_preserving;
      auto pull = [&](std::int64_t vidx) {
        std::int64_t q = ((vidx - S) % N + N) % N;
        return pres ? (S1 + q) % Np1 : (S1 + (len - q)) % Np1;
      };
      for (std::int64_t a : arcs) {
        std::int64_t off = ((a - S) % N + N) % N;
        if (off < len) na.push_back(pres ? pull(a) : pull((a + 1) % N));
      }
      for (const auto& p : pts) {
        std::int64_t off = ((p.index - S) % N + N) % N;
        if (off <= len) np.push_back({level + 1, pull(p.index)});
      }
    }
    // On-curve boundary vertices of this letter whose image lies in the trace.
    for (int v : rule.tile_boundary_vertices[tile]) {
      if (vloc_level[v] < 0) continue;
      int post = rule.post_of_vertex(rule.vertex_image(v));
      if (post < 0) continue;
      CurveVertex target{level, cr.post_position(post, level)};
      bool inside = false;
      for (std::int64_t a : arcs) {
        std::int64_t off = ((target.index - a) % N + N) % N;
        if (off <= 1) inside = true;
      }
      for (const auto& p : pts)
        if (p == target) inside = true;
      if (inside) np.push_back(cr.raise({1, vloc_index[v]}, level + 1));
    }
    dedupe_arcs(na);
    arcs = std::move(na);
    pts = std::move(np);
  }

  std::set<int> met;
  for (std::int64_t a : arcs) {
    met.insert(cr.zero_edge_of_edge(cr.arc_word(n, a)[0]));
    for (int z : cr.zero_edges_at(cr.arc_left_vertex(n, a))) met.insert(z);
    for (int z : cr.zero_edges_at(cr.arc_right_vertex(n, a))) met.insert(z);
  }
  dedupe_pts(pts, n);
  for (const auto& p : pts)
    for (int z : cr.zero_edges_at(p)) met.insert(z);

  if (m == 3) return met.size() == 3;
  for (int a : met)
    for (int b : met) {
      if (a == b) continue;
      int d = std::abs(a - b) % m;
      if (d != 1 && d != m - 1) return true;
    }
  return false;
}

}  // namespace oz
