#include "orbitzeta/subdivision.hpp"

namespace oz::builtin {

const std::string& pillow2x2_json() {
  static const std::string text = R"ozjson(
{
  "degree": 4,
  "post": ["A", "B", "C", "D"],
  "zero_edges": ["EAB", "EBC", "ECD", "EDA"],
  "one_tiles": [
    {"id": "F00", "image_color": "white", "host_color": "white",
     "boundary": ["a1", "MAB", "fzs", "Zf", "fzw", "MDA", "d2", "A"]},
    {"id": "F10", "image_color": "black", "host_color": "white",
     "boundary": ["a2", "B", "b1", "MBC", "fze", "Zf", "fzs", "MAB"]},
    {"id": "F01", "image_color": "black", "host_color": "white",
     "boundary": ["fzw", "Zf", "fzn", "MCD", "c2", "D", "d1", "MDA"]},
    {"id": "F11", "image_color": "white", "host_color": "white",
     "boundary": ["fze", "MBC", "b2", "C", "c1", "MCD", "fzn", "Zf"]},
    {"id": "G10", "image_color": "white", "host_color": "black",
     "boundary": ["a2", "MAB", "bzs", "Zb", "bze", "MBC", "b1", "B"]},
    {"id": "G20", "image_color": "black", "host_color": "black",
     "boundary": ["a1", "A", "d2", "MDA", "bzw", "Zb", "bzs", "MAB"]},
    {"id": "G11", "image_color": "black", "host_color": "black",
     "boundary": ["b2", "MBC", "bze", "Zb", "bzn", "MCD", "c1", "C"]},
    {"id": "G21", "image_color": "white", "host_color": "black",
     "boundary": ["bzn", "Zb", "bzw", "MDA", "d1", "D", "c2", "MCD"]}
  ],
  "one_edges": [
    {"id": "a1", "endpoints": ["A", "MAB"], "on_curve": true, "image_zero_edge": "EAB", "orientation_preserving": true},
    {"id": "a2", "endpoints": ["MAB", "B"], "on_curve": true, "image_zero_edge": "EAB", "orientation_preserving": false},
    {"id": "b1", "endpoints": ["B", "MBC"], "on_curve": true, "image_zero_edge": "EDA", "orientation_preserving": false},
    {"id": "b2", "endpoints": ["MBC", "C"], "on_curve": true, "image_zero_edge": "EDA", "orientation_preserving": true},
    {"id": "c1", "endpoints": ["C", "MCD"], "on_curve": true, "image_zero_edge": "EAB", "orientation_preserving": true},
    {"id": "c2", "endpoints": ["MCD", "D"], "on_curve": true, "image_zero_edge": "EAB", "orientation_preserving": false},
    {"id": "d1", "endpoints": ["D", "MDA"], "on_curve": true, "image_zero_edge": "EDA", "orientation_preserving": false},
    {"id": "d2", "endpoints": ["MDA", "A"], "on_curve": true, "image_zero_edge": "EDA", "orientation_preserving": true},
    {"id": "fzs", "endpoints": ["MAB", "Zf"], "on_curve": false, "image_zero_edge": "EBC", "orientation_preserving": true},
    {"id": "fze", "endpoints": ["MBC", "Zf"], "on_curve": false, "image_zero_edge": "ECD", "orientation_preserving": true},
    {"id": "fzn", "endpoints": ["MCD", "Zf"], "on_curve": false, "image_zero_edge": "EBC", "orientation_preserving": true},
    {"id": "fzw", "endpoints": ["MDA", "Zf"], "on_curve": false, "image_zero_edge": "ECD", "orientation_preserving": true},
    {"id": "bzs", "endpoints": ["MAB", "Zb"], "on_curve": false, "image_zero_edge": "EBC", "orientation_preserving": true},
    {"id": "bze", "endpoints": ["MBC", "Zb"], "on_curve": false, "image_zero_edge": "ECD", "orientation_preserving": true},
    {"id": "bzn", "endpoints": ["MCD", "Zb"], "on_curve": false, "image_zero_edge": "EBC", "orientation_preserving": true},
    {"id": "bzw", "endpoints": ["MDA", "Zb"], "on_curve": false, "image_zero_edge": "ECD", "orientation_preserving": true}
  ],
  "one_vertices": [
    {"id": "A", "image": "A", "is_postcritical": true},
    {"id": "B", "image": "A", "is_postcritical": true},
    {"id": "C", "image": "A", "is_postcritical": true},
    {"id": "D", "image": "A", "is_postcritical": true},
    {"id": "MAB", "image": "B", "is_postcritical": false},
    {"id": "MBC", "image": "D", "is_postcritical": false},
    {"id": "MCD", "image": "B", "is_postcritical": false},
    {"id": "MDA", "image": "D", "is_postcritical": false},
    {"id": "Zf", "image": "C", "is_postcritical": false},
    {"id": "Zb", "image": "C", "is_postcritical": false}
  ],
  "curve_order": ["a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"]
}
)ozjson";
  return text;
}

SubdivisionRule pillow2x2() { return parse_rule(pillow2x2_json()); }

const std::string& pillowrot_json() {
  static const std::string text = R"ozjson(
{
  "degree": 4,
  "post": ["A", "B", "C", "D"],
  "zero_edges": ["EAB", "EBC", "ECD", "EDA"],
  "one_tiles": [
    {"id": "F00", "image_color": "black", "host_color": "white",
     "boundary": ["a1", "MAB", "fzs", "Zf", "fzw", "MDA", "d2", "A"]},
    {"id": "F10", "image_color": "white", "host_color": "white",
     "boundary": ["a2", "B", "b1", "MBC", "fze", "Zf", "fzs", "MAB"]},
    {"id": "F01", "image_color": "white", "host_color": "white",
     "boundary": ["fzw", "Zf", "fzn", "MCD", "c2", "D", "d1", "MDA"]},
    {"id": "F11", "image_color": "black", "host_color": "white",
     "boundary": ["fze", "MBC", "b2", "C", "c1", "MCD", "fzn", "Zf"]},
    {"id": "G10", "image_color": "black", "host_color": "black",
     "boundary": ["a2", "MAB", "bzs", "Zb", "bze", "MBC", "b1", "B"]},
    {"id": "G20", "image_color": "white", "host_color": "black",
     "boundary": ["a1", "A", "d2", "MDA", "bzw", "Zb", "bzs", "MAB"]},
    {"id": "G11", "image_color": "white", "host_color": "black",
     "boundary": ["b2", "MBC", "bze", "Zb", "bzn", "MCD", "c1", "C"]},
    {"id": "G21", "image_color": "black", "host_color": "black",
     "boundary": ["bzn", "Zb", "bzw", "MDA", "d1", "D", "c2", "MCD"]}
  ],
  "one_edges": [
    {"id": "a1", "endpoints": ["A", "MAB"], "on_curve": true, "image_zero_edge": "EDA", "orientation_preserving": false},
    {"id": "a2", "endpoints": ["MAB", "B"], "on_curve": true, "image_zero_edge": "EDA", "orientation_preserving": true},
    {"id": "b1", "endpoints": ["B", "MBC"], "on_curve": true, "image_zero_edge": "EAB", "orientation_preserving": true},
    {"id": "b2", "endpoints": ["MBC", "C"], "on_curve": true, "image_zero_edge": "EAB", "orientation_preserving": false},
    {"id": "c1", "endpoints": ["C", "MCD"], "on_curve": true, "image_zero_edge": "EDA", "orientation_preserving": false},
    {"id": "c2", "endpoints": ["MCD", "D"], "on_curve": true, "image_zero_edge": "EDA", "orientation_preserving": true},
    {"id": "d1", "endpoints": ["D", "MDA"], "on_curve": true, "image_zero_edge": "EAB", "orientation_preserving": true},
    {"id": "d2", "endpoints": ["MDA", "A"], "on_curve": true, "image_zero_edge": "EAB", "orientation_preserving": false},
    {"id": "fzs", "endpoints": ["MAB", "Zf"], "on_curve": false, "image_zero_edge": "ECD", "orientation_preserving": true},
    {"id": "fze", "endpoints": ["MBC", "Zf"], "on_curve": false, "image_zero_edge": "EBC", "orientation_preserving": true},
    {"id": "fzn", "endpoints": ["MCD", "Zf"], "on_curve": false, "image_zero_edge": "ECD", "orientation_preserving": true},
    {"id": "fzw", "endpoints": ["MDA", "Zf"], "on_curve": false, "image_zero_edge": "EBC", "orientation_preserving": true},
    {"id": "bzs", "endpoints": ["MAB", "Zb"], "on_curve": false, "image_zero_edge": "ECD", "orientation_preserving": true},
    {"id": "bze", "endpoints": ["MBC", "Zb"], "on_curve": false, "image_zero_edge": "EBC", "orientation_preserving": true},
    {"id": "bzn", "endpoints": ["MCD", "Zb"], "on_curve": false, "image_zero_edge": "ECD", "orientation_preserving": true},
    {"id": "bzw", "endpoints": ["MDA", "Zb"], "on_curve": false, "image_zero_edge": "EBC", "orientation_preserving": true}
  ],
  "one_vertices": [
    {"id": "A", "image": "A", "is_postcritical": true},
    {"id": "B", "image": "A", "is_postcritical": true},
    {"id": "C", "image": "A", "is_postcritical": true},
    {"id": "D", "image": "A", "is_postcritical": true},
    {"id": "MAB", "image": "D", "is_postcritical": false},
    {"id": "MBC", "image": "B", "is_postcritical": false},
    {"id": "MCD", "image": "D", "is_postcritical": false},
    {"id": "MDA", "image": "B", "is_postcritical": false},
    {"id": "Zf", "image": "C", "is_postcritical": false},
    {"id": "Zb", "image": "C", "is_postcritical": false}
  ],
  "curve_order": ["a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"]
}
)ozjson";
  return text;
}

SubdivisionRule pillowrot() { return parse_rule(pillowrot_json()); }

}  // namespace oz::builtin
