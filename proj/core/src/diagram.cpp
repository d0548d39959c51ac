#include "braidkh/diagram.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "braidkh/errors.hpp"

namespace braidkh {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Diagram::Diagram() = default;

Diagram::Diagram(std::vector<Crossing> crossings, std::vector<Edge> edges, int outer_face,
                 bool has_closure_arcs)
    : crossings_(std::move(crossings)),
      edges_(std::move(edges)),
      outer_face_(outer_face),
      has_closure_arcs_(has_closure_arcs) {
  canonicalise_faces();
  validate();
}

bool Diagram::has_breaks() const noexcept {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.breaks != 0; });
}

bool Diagram::is_tail_at(int c, int slot) const {
  const Edge& e = edges_[edge_at(c, slot)];
  return e.tail == Port{c, slot & 3};
}

SideRef Diagram::arrival_side(int c, int slot) const {
  const int e = edge_at(c, slot);
  return edges_[e].head == Port{c, slot & 3} ? SideRef{e, Side::Left} : SideRef{e, Side::Right};
}

int Diagram::corner_face(int c, int q) const {
  const SideRef s = arrival_side(c, (q + 1) & 3);
  return edges_[s.edge].face(s.side);
}

SideRef Diagram::next_on_face(SideRef s) const {
  const Edge& e = edges_[s.edge];
  if (e.is_free_loop()) return s;
  const Port at = s.side == Side::Left ? e.head : e.tail;
  const int slot = (at.slot + 3) & 3;
  const int next = edge_at(at.crossing, slot);
  return edges_[next].tail == Port{at.crossing, slot} ? SideRef{next, Side::Left}
                                                      : SideRef{next, Side::Right};
}

std::vector<std::vector<SideRef>> Diagram::boundary_cycles() const {
  std::vector<std::vector<SideRef>> cycles;
  std::vector<char> seen(2 * edges_.size(), 0);
  for (int code = 0; code < 2 * edge_count(); ++code) {
    if (seen[code]) continue;
    std::vector<SideRef> cycle;
    SideRef s = SideRef::decode(code);
    while (!seen[s.encode()]) {
      seen[s.encode()] = 1;
      cycle.push_back(s);
      s = next_on_face(s);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

int Diagram::component_count() const {
  // Nodes: crossings first, then one node per free loop.
  const int n = crossing_count();
  std::vector<int> loop_node(edges_.size(), -1);
  int nodes = n;
  for (int e = 0; e < edge_count(); ++e)
    if (edges_[e].is_free_loop()) loop_node[e] = nodes++;
  UnionFind uf(nodes);
  for (const Edge& e : edges_)
    if (!e.is_free_loop()) uf.unite(e.tail.crossing, e.head.crossing);
  int count = 0;
  for (int v = 0; v < nodes; ++v) count += uf.find(v) == v;
  return count;
}

void Diagram::canonicalise_faces() {
  std::vector<int> remap;
  auto touch = [&](int f) {
    if (f < 0) throw ParseError("negative face id " + std::to_string(f));
    if (f >= static_cast<int>(remap.size())) remap.resize(f + 1, -1);
  };
  for (const Edge& e : edges_) {
    touch(e.left_face);
    touch(e.right_face);
  }
  touch(outer_face_);
  int next = 0;
  for (const Edge& e : edges_) {
    if (remap[e.left_face] < 0) remap[e.left_face] = next++;
    if (remap[e.right_face] < 0) remap[e.right_face] = next++;
  }
  if (remap[outer_face_] < 0) remap[outer_face_] = next++;
  for (Edge& e : edges_) {
    e.left_face = remap[e.left_face];
    e.right_face = remap[e.right_face];
  }
  outer_face_ = remap[outer_face_];
  face_count_ = next;
}

void Diagram::validate() const {
  const int n = crossing_count();
  const int m = edge_count();
  for (int c = 0; c < n; ++c) {
    const Crossing& x = crossings_[c];
    if (x.sign != 1 && x.sign != -1)
      throw ParseError("crossing " + std::to_string(c) + " has sign other than +1/-1");
    for (int s = 0; s < 4; ++s) {
      const int e = x.edges[s];
      if (e < 0 || e >= m)
        throw ParseError("crossing " + std::to_string(c) + " slot " + std::to_string(s) +
                         " references missing edge");
      if (!(edges_[e].tail == Port{c, s}) && !(edges_[e].head == Port{c, s}))
        throw ParseError("edge " + std::to_string(e) + " does not end at crossing " +
                         std::to_string(c) + " slot " + std::to_string(s));
    }
  }
  for (int e = 0; e < m; ++e) {
    const Edge& ed = edges_[e];
    if (ed.breaks < 0) throw ParseError("negative break count on edge " + std::to_string(e));
    if (ed.is_free_loop()) {
      if (ed.head.crossing != kNoCrossing)
        throw ParseError("edge " + std::to_string(e) + " has only one endpoint");
      if (ed.breaks % 2 != 0)
        throw OrientationError("free loop " + std::to_string(e) + " has odd break count");
      continue;
    }
    for (const Port& p : {ed.tail, ed.head}) {
      if (p.crossing < 0 || p.crossing >= n || p.slot < 0 || p.slot > 3)
        throw ParseError("edge " + std::to_string(e) + " has an invalid endpoint");
      if (crossings_[p.crossing].edges[p.slot] != e)
        throw ParseError("edge " + std::to_string(e) + " endpoint not registered at crossing");
    }
    if (ed.tail == ed.head) throw ParseError("edge " + std::to_string(e) + " is degenerate");
    const int sign_t = crossings_[ed.tail.crossing].sign;
    const int sign_h = crossings_[ed.head.crossing].sign;
    const int mismatches = (slot_is_incoming(sign_t, ed.tail.slot) ? 1 : 0) +
                           (slot_is_incoming(sign_h, ed.head.slot) ? 0 : 1);
    if ((mismatches + ed.breaks) % 2 != 0)
      throw OrientationError("edge " + std::to_string(e) +
                             " runs against the crossing port orientation");
  }

  for (const auto& cycle : boundary_cycles()) {
    const int f = edges_[cycle.front().edge].face(cycle.front().side);
    for (const SideRef& s : cycle)
      if (edges_[s.edge].face(s.side) != f)
        throw NonPlanarError("face boundary through edge " + std::to_string(s.edge) +
                             " carries inconsistent face ids");
  }

  // Euler characteristic per component and globally.
  std::vector<int> loop_node(m, -1);
  int nodes = n;
  for (int e = 0; e < m; ++e)
    if (edges_[e].is_free_loop()) loop_node[e] = nodes++;
  UnionFind uf(nodes);
  auto node_of = [&](int e) {
    return edges_[e].is_free_loop() ? loop_node[e] : edges_[e].tail.crossing;
  };
  for (const Edge& e : edges_)
    if (!e.is_free_loop()) uf.unite(e.tail.crossing, e.head.crossing);
  std::vector<long> chi(nodes, 0);
  for (int v = 0; v < nodes; ++v) chi[uf.find(v)] += 1;
  for (int e = 0; e < m; ++e) chi[uf.find(node_of(e))] -= 1;
  for (const auto& cycle : boundary_cycles()) chi[uf.find(node_of(cycle.front().edge))] += 1;
  int components = 0;
  for (int v = 0; v < nodes; ++v) {
    if (uf.find(v) != v) continue;
    ++components;
    if (chi[v] != 2)
      throw NonPlanarError("component containing node " + std::to_string(v) +
                           " violates V - E + F = 2");
  }
  const long global = static_cast<long>(nodes) - m + face_count_;
  if (global != components + 1)
    throw NonPlanarError("face assignment violates V - E + F = C + 1");
  if (outer_face_ < 0 || outer_face_ >= face_count_) throw ParseError("outer face out of range");
}

BraidWord parse_braid_text(std::string_view text) {
  std::string buf(text);
  std::replace(buf.begin(), buf.end(), ',', ' ');
  std::istringstream in(buf);
  std::string tok;
  if (!(in >> tok) || (tok[0] != 'B' && tok[0] != 'b'))
    throw ParseError("braid word must start with Bk (strand count)");
  BraidWord w;
  auto parse_int = [](std::string_view s, int& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
  };
  if (!parse_int(std::string_view(tok).substr(1), w.strands) || w.strands < 0)
    throw ParseError("bad strand count '" + tok + "'");
  while (in >> tok) {
    int g = 0;
    if (!parse_int(tok, g)) throw ParseError("bad braid letter '" + tok + "'");
    if (g == 0 || std::abs(g) >= w.strands)
      throw ParseError("braid letter " + tok + " out of range for " + std::to_string(w.strands) + " strands");
    w.letters.push_back(g);
  }
  return w;
}

std::string to_string(const BraidWord& word) {
  std::string s = "B" + std::to_string(word.strands);
  for (int g : word.letters) s += " " + std::to_string(g);
  return s;
}

Diagram braid_closure(const BraidWord& word) {
  const int k = word.strands;
  if (k < 0) throw ParseError("negative strand count");
  if (k == 0) {
    if (!word.letters.empty()) throw ParseError("letters given for a 0-strand braid");
    return Diagram();
  }
  const int m = static_cast<int>(word.letters.size());
  for (int g : word.letters)
    if (g == 0 || std::abs(g) >= k)
      throw ParseError("braid letter " + std::to_string(g) + " out of range for " +
                       std::to_string(k) + " strands");

  // Faces: gap g lies between positions g and g+1 (gap 0 holds the braid axis,
  // gap k is the unbounded face). A gap with c crossings is cut into c faces.
  std::vector<std::vector<int>> gap_levels(k + 1);
  for (int t = 0; t < m; ++t) gap_levels[std::abs(word.letters[t])].push_back(t);
  std::vector<int> gap_base(k + 1);
  int faces = 0;
  for (int g = 0; g <= k; ++g) {
    gap_base[g] = faces;
    faces += std::max<int>(1, static_cast<int>(gap_levels[g].size()));
  }
  auto face_after = [&](int g, int level) {
    const auto& lv = gap_levels[g];
    if (lv.empty()) return gap_base[g];
    const int before = static_cast<int>(std::upper_bound(lv.begin(), lv.end(), level) - lv.begin());
    return gap_base[g] + before % static_cast<int>(lv.size());
  };

  struct Visit {
    int level, in_slot, out_slot;
  };
  std::vector<std::vector<Visit>> at_position(k + 1);
  std::vector<Crossing> crossings(m);
  for (int t = 0; t < m; ++t) {
    const int g = std::abs(word.letters[t]);
    const bool positive = word.letters[t] > 0;
    crossings[t].sign = positive ? 1 : -1;
    if (positive) {
      at_position[g].push_back({t, 0, 1});
      at_position[g + 1].push_back({t, 3, 2});
    } else {
      at_position[g].push_back({t, 1, 2});
      at_position[g + 1].push_back({t, 0, 3});
    }
  }

  std::vector<Edge> edges;
  for (int p = 1; p <= k; ++p) {
    const auto& visits = at_position[p];
    if (visits.empty()) {
      Edge e;
      e.left_face = face_after(p, -1);
      e.right_face = face_after(p - 1, -1);
      e.closure = 1;
      edges.push_back(e);
      continue;
    }
    const int r = static_cast<int>(visits.size());
    for (int j = 0; j < r; ++j) {
      const Visit& from = visits[j];
      const Visit& to = visits[(j + 1) % r];
      Edge e;
      e.tail = Port{from.level, from.out_slot};
      e.head = Port{to.level, to.in_slot};
      e.left_face = face_after(p, from.level);
      e.right_face = face_after(p - 1, from.level);
      e.closure = j == r - 1 ? 1 : 0;
      const int id = static_cast<int>(edges.size());
      crossings[from.level].edges[from.out_slot] = id;
      crossings[to.level].edges[to.in_slot] = id;
      edges.push_back(e);
    }
  }
  return Diagram(std::move(crossings), std::move(edges), gap_base[k], true);
}

Diagram parse_braid_word(std::string_view text) { return braid_closure(parse_braid_text(text)); }

int writhe(const Diagram& d) {
  int w = 0;
  for (const Crossing& c : d.crossings()) w += c.sign;
  return w;
}

Diagram reverse_orientation(const Diagram& d) {
  auto flip = [](Port p) {
    if (p.crossing != kNoCrossing) p.slot = (p.slot + 2) & 3;
    return p;
  };
  std::vector<Crossing> crossings = d.crossings();
  for (Crossing& c : crossings) std::rotate(c.edges.begin(), c.edges.begin() + 2, c.edges.end());
  std::vector<Edge> edges = d.edges();
  for (Edge& e : edges) {
    const Port t = e.tail;
    e.tail = flip(e.head);
    e.head = flip(t);
    std::swap(e.left_face, e.right_face);
  }
  return Diagram(std::move(crossings), std::move(edges), d.outer_face(), d.has_closure_arcs());
}

}  // namespace braidkh
