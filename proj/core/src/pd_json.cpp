#include "braidkh/pd_json.hpp"

#include <istream>
#include <iterator>
#include <numeric>

#include "braidkh/errors.hpp"
#include "json.hpp"

namespace braidkh {

namespace {

using nlohmann::json;

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string("expected integer for ") + what);
  return j.get<int>();
}

Port as_port(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw ParseError(std::string(what) + " must be [crossing, slot]");
  return Port{as_int(j[0], what), as_int(j[1], what)};
}

// Face walk on not-yet-validated data; mirrors Diagram::next_on_face.
int next_side(const std::vector<Crossing>& xs, const std::vector<Edge>& es, int code) {
  const SideRef s = SideRef::decode(code);
  const Edge& e = es[s.edge];
  if (e.is_free_loop()) return code;
  const Port at = s.side == Side::Left ? e.head : e.tail;
  const int slot = (at.slot + 3) & 3;
  const int next = xs[at.crossing].edges[slot];
  return es[next].tail == Port{at.crossing, slot} ? SideRef{next, Side::Left}.encode()
                                                 : SideRef{next, Side::Right}.encode();
}

}  // namespace

Diagram parse_pd(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("PD document must be a JSON object");
  if (!doc.contains("crossings") || !doc.contains("edges"))
    throw ParseError("PD document needs \"crossings\" and \"edges\"");
  if (!doc.contains("outer_face")) throw ParseError("missing outer_face marker");

  const json& jc = doc["crossings"];
  const json& je = doc["edges"];
  if (!jc.is_array() || !je.is_array()) throw ParseError("crossings and edges must be arrays");
  const int n = static_cast<int>(jc.size());
  const int m = static_cast<int>(je.size());

  std::vector<Crossing> crossings(n);
  std::vector<std::array<int, 4>> rotation(n);
  std::vector<char> have_crossing(n, 0);
  for (const json& x : jc) {
    const int id = as_int(x.at("id"), "crossing id");
    if (id < 0 || id >= n || have_crossing[id]) throw ParseError("crossing ids must be 0..n-1");
    have_crossing[id] = 1;
    crossings[id].sign = as_int(x.at("sign"), "sign");
    if (crossings[id].sign != 1 && crossings[id].sign != -1)
      throw ParseError("crossing sign must be +1 or -1");
    const json& rot = x.at("rotation");
    if (!rot.is_array() || rot.size() != 4) throw ParseError("rotation must list 4 edge ends");
    for (int s = 0; s < 4; ++s) {
      rotation[id][s] = as_int(rot[s], "rotation entry");
      if (rotation[id][s] < 0 || rotation[id][s] >= 2 * m)
        throw ParseError("rotation references a missing edge");
      crossings[id].edges[s] = rotation[id][s] / 2;
    }
  }

  std::vector<Edge> edges(m);
  std::vector<char> have_edge(m, 0);
  int explicit_faces = 0;
  for (const json& y : je) {
    const int id = as_int(y.at("id"), "edge id");
    if (id < 0 || id >= m || have_edge[id]) throw ParseError("edge ids must be 0..m-1");
    have_edge[id] = 1;
    Edge& e = edges[id];
    if (y.value("free", false)) {
      e.tail = e.head = Port{};
    } else {
      e.tail = as_port(y.at("from"), "from");
      e.head = as_port(y.at("to"), "to");
      for (const Port& p : {e.tail, e.head})
        if (p.crossing < 0 || p.crossing >= n || p.slot < 0 || p.slot > 3)
          throw ParseError("edge " + std::to_string(id) + " endpoint out of range");
    }
    const bool has_l = y.contains("left"), has_r = y.contains("right");
    if (has_l != has_r) throw ParseError("edge " + std::to_string(id) + " gives only one face");
    if (has_l) {
      e.left_face = as_int(y["left"], "left");
      e.right_face = as_int(y["right"], "right");
      ++explicit_faces;
    }
    if (y.contains("breaks")) e.breaks = as_int(y["breaks"], "breaks");
    if (y.contains("closure")) e.closure = as_int(y["closure"], "closure");
  }

  // Rotation and endpoint lists must describe the same incidences.
  bool decorated = false;
  for (const Edge& e : edges) decorated = decorated || e.breaks != 0;
  std::vector<char> end_used(2 * m, 0);
  for (int c = 0; c < n; ++c) {
    int incoming = 0;
    std::array<bool, 4> in{};
    for (int s = 0; s < 4; ++s) {
      const int ref = rotation[c][s];
      if (end_used[ref]++)
        throw OrientationError("edge end " + std::to_string(ref) + " appears twice in rotations");
      const Edge& e = edges[ref / 2];
      const Port expect = (ref & 1) ? e.head : e.tail;
      if (!(expect == Port{c, s}))
        throw ParseError("rotation of crossing " + std::to_string(c) +
                         " disagrees with edge endpoint lists");
      in[s] = (ref & 1) != 0;
      incoming += in[s];
    }
    if (decorated) continue;
    if (incoming != 2 || !in[0] || in[2] || in[1] == in[3])
      throw OrientationError("edge ends at crossing " + std::to_string(c) +
                             " do not alternate under/over with two in and two out");
    if (in[3] != (crossings[c].sign > 0))
      throw OrientationError("sign of crossing " + std::to_string(c) +
                             " disagrees with its over-strand direction");
  }
  for (int e = 0; e < m; ++e) {
    if (edges[e].is_free_loop()) continue;
    if (!end_used[2 * e] || !end_used[2 * e + 1])
      throw ParseError("edge " + std::to_string(e) + " missing from crossing rotations");
  }

  if (explicit_faces != 0 && explicit_faces != m)
    throw ParseError("face ids must be given for all edges or none");
  if (explicit_faces == 0 && m > 0) {
    // Derive faces from the rotation system; only valid for connected maps.
    std::vector<int> comp(n + m);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
      while (comp[x] != x) x = comp[x] = comp[comp[x]];
      return x;
    };
    int nodes = 0;
    for (int e = 0; e < m; ++e) {
      if (edges[e].is_free_loop()) {
        ++nodes;
        continue;
      }
      comp[find(edges[e].tail.crossing)] = find(edges[e].head.crossing);
    }
    for (int c = 0; c < n; ++c) nodes += find(c) == c;
    if (nodes > 1) throw ParseError("split diagram requires explicit per-edge face ids");
    std::vector<int> face(2 * m, -1);
    int next = 0;
    for (int code = 0; code < 2 * m; ++code) {
      if (face[code] >= 0) continue;
      for (int s = code; face[s] < 0; s = next_side(crossings, edges, s)) face[s] = next;
      ++next;
    }
    for (int e = 0; e < m; ++e) {
      edges[e].left_face = face[2 * e];
      edges[e].right_face = face[2 * e + 1];
    }
  }

  const json& outer = doc["outer_face"];
  if (!outer.is_array()) throw ParseError("outer_face must be a list of side references");
  int outer_face = 0;
  if (m > 0) {
    if (outer.empty()) throw ParseError("missing outer-face marker");
    outer_face = -1;
    for (const json& s : outer) {
      const int code = as_int(s, "outer_face entry");
      if (code < 0 || code >= 2 * m) throw ParseError("outer_face references a missing edge");
      const SideRef ref = SideRef::decode(code);
      const int f = edges[ref.edge].face(ref.side);
      if (outer_face >= 0 && f != outer_face)
        throw ParseError("outer_face sides belong to different faces");
      outer_face = f;
    }
  }
  bool closure = false;
  for (const Edge& e : edges) closure = closure || e.closure != 0;
  return Diagram(std::move(crossings), std::move(edges), outer_face, closure);
}

Diagram parse_pd(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_pd(text);
}

std::string to_pd_json(const Diagram& d, int indent) {
  json doc;
  doc["crossings"] = json::array();
  for (int c = 0; c < d.crossing_count(); ++c) {
    json rot = json::array();
    for (int s = 0; s < 4; ++s) rot.push_back(2 * d.edge_at(c, s) + (d.is_tail_at(c, s) ? 0 : 1));
    doc["crossings"].push_back({{"id", c}, {"sign", d.crossing(c).sign}, {"rotation", rot}});
  }
  doc["edges"] = json::array();
  json outer = json::array();
  for (int e = 0; e < d.edge_count(); ++e) {
    const Edge& ed = d.edge(e);
    json j = {{"id", e}};
    if (ed.is_free_loop()) {
      j["free"] = true;
    } else {
      j["from"] = {ed.tail.crossing, ed.tail.slot};
      j["to"] = {ed.head.crossing, ed.head.slot};
    }
    j["left"] = ed.left_face;
    j["right"] = ed.right_face;
    if (ed.breaks) j["breaks"] = ed.breaks;
    if (ed.closure) j["closure"] = ed.closure;
    doc["edges"].push_back(std::move(j));
    if (ed.left_face == d.outer_face()) outer.push_back(2 * e);
    if (ed.right_face == d.outer_face()) outer.push_back(2 * e + 1);
  }
  doc["outer_face"] = outer;
  return doc.dump(indent);
}

}  // namespace braidkh
