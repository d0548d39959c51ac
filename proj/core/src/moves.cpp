#include "braidkh/moves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "braidkh/errors.hpp"
#include "detail/splice.hpp"
#include "json.hpp"

namespace braidkh {

namespace {

constexpr std::array<std::pair<MoveKind, std::string_view>, 12> kNames{{
    {MoveKind::IIa_insert, "IIa_insert"},
    {MoveKind::IIa_remove, "IIa_remove"},
    {MoveKind::IIIa, "IIIa"},
    {MoveKind::IIIb, "IIIb"},
    {MoveKind::IIIc, "IIIc"},
    {MoveKind::IIId, "IIId"},
    {MoveKind::IIIe, "IIIe"},
    {MoveKind::IIIf, "IIIf"},
    {MoveKind::IIIg, "IIIg"},
    {MoveKind::IIIh, "IIIh"},
    {MoveKind::RI_insert, "RI_insert"},
    {MoveKind::IIb_insert, "IIb_insert"},
}};

bool is_three(MoveKind k) { return k >= MoveKind::IIIa && k <= MoveKind::IIIh; }

// One ray at a crossing under construction: the edge leaving in that
// direction, whether it flows into the crossing, and which strand it is on.
struct Ray {
  int edge = 0;
  bool incoming = false;
  int strand = 0;
};

class Builder {
 public:
  explicit Builder(const Diagram& d)
      : xs_(d.crossings()),
        es_(d.edges()),
        outer_(d.outer_face()),
        next_face_(d.face_count()),
        dead_x_(xs_.size(), 0),
        dead_e_(es_.size(), 0) {
    for (Edge& e : es_) e.closure = 0;
  }

  int new_face() { return next_face_++; }
  int add_crossing() {
    xs_.emplace_back();
    dead_x_.push_back(0);
    return static_cast<int>(xs_.size()) - 1;
  }
  int add_edge() {
    es_.emplace_back();
    dead_e_.push_back(0);
    return static_cast<int>(es_.size()) - 1;
  }
  Edge& edge(int e) { return es_[e]; }
  void kill_crossing(int c) { dead_x_[c] = 1; }

  // Reconnects one end of an edge to an existing port.
  void attach(int e, Port p, bool head) {
    (head ? es_[e].head : es_[e].tail) = p;
    if (p.crossing != kNoCrossing) xs_[p.crossing].edges[p.slot] = e;
  }

  // Rays in counterclockwise order; slot 0 goes to the incoming under ray.
  void place(int c, const std::array<Ray, 4>& rays, int over_strand) {
    int r0 = -1;
    for (int i = 0; i < 4; ++i)
      if (rays[i].strand != over_strand && rays[i].incoming) r0 = i;
    if (r0 < 0) throw std::logic_error("crossing without an incoming under-strand");
    for (int i = 0; i < 4; ++i) {
      const int slot = (i - r0 + 4) & 3;
      xs_[c].edges[slot] = rays[i].edge;
      (rays[i].incoming ? es_[rays[i].edge].head : es_[rays[i].edge].tail) = Port{c, slot};
      if (rays[i].strand == over_strand && rays[i].incoming) xs_[c].sign = slot == 3 ? 1 : -1;
    }
  }

  Diagram build() {
    std::vector<int> xmap(xs_.size(), -1), emap(es_.size(), -1);
    std::vector<Crossing> xs;
    std::vector<Edge> es;
    for (std::size_t c = 0; c < xs_.size(); ++c)
      if (!dead_x_[c]) {
        xmap[c] = static_cast<int>(xs.size());
        xs.push_back(xs_[c]);
      }
    for (std::size_t e = 0; e < es_.size(); ++e)
      if (!dead_e_[e]) {
        emap[e] = static_cast<int>(es.size());
        es.push_back(es_[e]);
      }
    for (Crossing& x : xs)
      for (int& e : x.edges) e = emap[e];
    for (Edge& e : es)
      for (Port* p : {&e.tail, &e.head})
        if (p->crossing != kNoCrossing) p->crossing = xmap[p->crossing];
    return Diagram(std::move(xs), std::move(es), outer_, false);
  }

 private:
  std::vector<Crossing> xs_;
  std::vector<Edge> es_;
  int outer_;
  int next_face_;
  std::vector<char> dead_x_, dead_e_;
};

void require_plain(const Diagram& d) {
  if (d.has_breaks()) throw UnsupportedError("moves are defined on undecorated diagrams only");
}

std::vector<SideRef> cycle_from(const Diagram& d, SideRef s) {
  std::vector<SideRef> cyc{s};
  for (SideRef t = d.next_on_face(s); !(t == s); t = d.next_on_face(t)) cyc.push_back(t);
  return cyc;
}

int sides_on_face(const Diagram& d, int f) {
  int count = 0;
  for (const Edge& e : d.edges()) count += (e.left_face == f) + (e.right_face == f);
  return count;
}

Port arrival_port(const Diagram& d, SideRef s) {
  const Edge& e = d.edge(s.edge);
  return s.side == Side::Left ? e.head : e.tail;
}

// ---------------------------------------------------------------- II moves

struct Bigon {
  int x, y, e1, e2, face;
};

std::optional<Bigon> bigon_at(const Diagram& d, SideRef s) {
  if (s.edge < 0 || s.edge >= d.edge_count()) return std::nullopt;
  const int f = d.edge(s.edge).face(s.side);
  const auto cyc = cycle_from(d, s);
  if (cyc.size() != 2 || sides_on_face(d, f) != 2) return std::nullopt;
  const Edge& a = d.edge(cyc[0].edge);
  const Edge& b = d.edge(cyc[1].edge);
  if (cyc[0].edge == cyc[1].edge || a.is_free_loop() || b.is_free_loop()) return std::nullopt;
  if (a.tail.crossing != b.tail.crossing || a.head.crossing != b.head.crossing) return std::nullopt;
  if (a.tail.crossing == a.head.crossing) return std::nullopt;
  // The same strand must be on top at both ends.
  if ((a.tail.slot & 1) != (a.head.slot & 1)) return std::nullopt;
  return Bigon{a.tail.crossing, a.head.crossing, cyc[0].edge, cyc[1].edge, f};
}

int opposite_corner(const Diagram& d, int x, const Bigon& g) {
  for (int q = 0; q < 4; ++q) {
    const int u = d.edge_at(x, q), v = d.edge_at(x, q + 1);
    if (((u == g.e1 && v == g.e2) || (u == g.e2 && v == g.e1)) && d.corner_face(x, q) == g.face)
      return d.corner_face(x, q + 2);
  }
  throw std::logic_error("bigon corner not found");
}

Diagram remove_bigon(const Diagram& d, const Bigon& g) {
  const std::array<int, 4> straight{2, 3, 0, 1};
  return detail::splice_out(d, {detail::Cut{g.x, straight}, detail::Cut{g.y, straight}},
                            {{g.face, opposite_corner(d, g.x, g)}, {g.face, opposite_corner(d, g.y, g)}},
                            false, {g.e1, g.e2});
}

bool finger_valid(const Diagram& d, SideRef a, SideRef b) {
  if (a.edge < 0 || b.edge < 0 || a.edge >= d.edge_count() || b.edge >= d.edge_count()) return false;
  return a.edge != b.edge && d.edge(a.edge).face(a.side) == d.edge(b.edge).face(b.side);
}

// Pushes a finger of strand A across strand B through their common face f.
// Picture: A on the west of f, B on the east, finger crossing B at x (south)
// and y (north). A flows north iff f is on its right, B iff f is on its left.
Diagram finger(const Diagram& d, SideRef sa, SideRef sb, bool a_over) {
  const int ea = sa.edge, eb = sb.edge;
  const Edge A = d.edge(ea), B = d.edge(eb);
  const int f = A.face(sa.side);
  const int h = A.face(sa.side == Side::Left ? Side::Right : Side::Left);
  const int g = B.face(sb.side == Side::Left ? Side::Right : Side::Left);
  const bool a_north = sa.side == Side::Right;
  const bool b_north = sb.side == Side::Left;

  Builder bld(d);
  const int bigon = bld.new_face();
  int f_low = f, f_high = f;
  const auto cyc = cycle_from(d, sa);
  auto pos_b = std::find(cyc.begin(), cyc.end(), sb);
  if (pos_b != cyc.end()) {
    // The finger cuts f in two; the boundary walked from sb back to sa is the north part.
    f_high = bld.new_face();
    for (auto it = pos_b + 1; it != cyc.end(); ++it) {
      Edge& e = bld.edge(it->edge);
      (it->side == Side::Left ? e.left_face : e.right_face) = f_high;
    }
  }

  const int x = bld.add_crossing(), y = bld.add_crossing();
  auto faces = [](bool north, int west, int east) {
    return north ? std::pair{west, east} : std::pair{east, west};
  };
  auto set_faces = [&](int e, std::pair<int, int> lr) {
    bld.edge(e).left_face = lr.first;
    bld.edge(e).right_face = lr.second;
  };

  // Pieces south, mid, north; a free loop has a single outer piece.
  struct Pieces {
    int south, mid, north;
  };
  auto cut = [&](int e, const Edge& orig, bool north, int west_s, int east_s, int west_m, int east_m,
                 int west_n, int east_n) {
    Pieces p{e, bld.add_edge(), orig.is_free_loop() ? e : bld.add_edge()};
    bld.edge(p.south).breaks = 0;
    set_faces(p.south, faces(north, west_s, east_s));
    set_faces(p.mid, faces(north, west_m, east_m));
    if (p.north != p.south) {
      set_faces(p.north, faces(north, west_n, east_n));
      // South piece keeps the southern original end, north piece the northern one.
      if (north) {
        bld.attach(p.south, orig.tail, false);
        bld.attach(p.north, orig.head, true);
      } else {
        bld.attach(p.north, orig.tail, false);
        bld.attach(p.south, orig.head, true);
      }
    }
    return p;
  };
  const Pieces pa = cut(ea, A, a_north, h, f_low, bigon, g, h, f_high);
  const Pieces pb = cut(eb, B, b_north, f_low, g, h, bigon, f_high, g);

  bld.place(x, {Ray{pa.mid, !a_north, 0}, Ray{pb.mid, !b_north, 1}, Ray{pa.south, a_north, 0},
                Ray{pb.south, b_north, 1}},
            a_over ? 0 : 1);
  bld.place(y, {Ray{pa.mid, a_north, 0}, Ray{pb.north, !b_north, 1}, Ray{pa.north, !a_north, 0},
                Ray{pb.mid, b_north, 1}},
            a_over ? 0 : 1);
  return bld.build();
}

// ------------------------------------------------------------------ curls

Diagram curl(const Diagram& d, SideRef s, int sign) {
  const Edge orig = d.edge(s.edge);
  const int L = orig.left_face, R = orig.right_face;
  for (int over : {0, 1}) {
    Builder bld(d);
    const int m = bld.new_face();
    const int x = bld.add_crossing();
    const int e1 = s.edge;
    const int loop = bld.add_edge();
    const int e2 = orig.is_free_loop() ? e1 : bld.add_edge();
    if (!orig.is_free_loop()) {
      bld.attach(e2, orig.head, true);
      bld.edge(e2).left_face = L;
      bld.edge(e2).right_face = R;
    }
    if (s.side == Side::Left) {
      bld.edge(loop).left_face = m;
      bld.edge(loop).right_face = L;
      bld.place(x, {Ray{loop, false, 0}, Ray{loop, true, 1}, Ray{e1, true, 0}, Ray{e2, false, 1}}, over);
    } else {
      bld.edge(loop).left_face = R;
      bld.edge(loop).right_face = m;
      bld.place(x, {Ray{e2, false, 1}, Ray{e1, true, 0}, Ray{loop, true, 1}, Ray{loop, false, 0}}, over);
    }
    Diagram out = bld.build();
    if (out.crossing(out.crossing_count() - 1).sign == sign) return out;
  }
  throw std::logic_error("no curl of the requested sign");
}

// ---------------------------------------------------------------- III moves

// Triangle face with boundary walk s0, s1, s2. v[k] is the crossing at the
// end of s[k], reached at slot p[k]. Its two other slots p+1, p+2 are the
// external ends E[2k], E[2k+1], counterclockwise around the triangle. Line a
// joins E[a] and E[a+3]: line 0 runs along s1, line 1 along s0, line 2 along s2.
struct Triangle {
  std::array<SideRef, 3> side;
  std::array<int, 3> v{}, p{};
  std::array<Port, 6> ext;
  std::array<int, 6> region{};  // F[i] lies between E[i] and E[i+1]
  std::array<bool, 3> forward{};  // line a flows from E[a] to E[a+3]
  std::array<std::array<bool, 3>, 3> over{};
  int face = 0;
  MoveKind kind = MoveKind::IIIa;
};

constexpr std::array<int, 3> kLineOfSide{1, 0, 2};

std::optional<Triangle> triangle_at(const Diagram& d, SideRef s) {
  if (s.edge < 0 || s.edge >= d.edge_count()) return std::nullopt;
  Triangle t;
  t.face = d.edge(s.edge).face(s.side);
  if (t.face == d.outer_face()) return std::nullopt;
  const auto cyc = cycle_from(d, s);
  if (cyc.size() != 3 || sides_on_face(d, t.face) != 3) return std::nullopt;
  for (int k = 0; k < 3; ++k) {
    t.side[k] = cyc[k];
    if (d.edge(cyc[k].edge).is_free_loop()) return std::nullopt;
    const Port at = arrival_port(d, cyc[k]);
    t.v[k] = at.crossing;
    t.p[k] = at.slot;
  }
  if (t.v[0] == t.v[1] || t.v[1] == t.v[2] || t.v[0] == t.v[2]) return std::nullopt;
  if (cyc[0].edge == cyc[1].edge || cyc[1].edge == cyc[2].edge || cyc[0].edge == cyc[2].edge)
    return std::nullopt;

  for (int k = 0; k < 3; ++k) {
    t.ext[2 * k] = Port{t.v[k], (t.p[k] + 1) & 3};
    t.ext[2 * k + 1] = Port{t.v[k], (t.p[k] + 2) & 3};
    t.region[2 * k] = d.corner_face(t.v[k], t.p[k] + 1);
    t.region[2 * k + 1] = d.corner_face(t.v[k], t.p[k] + 2);
    const int here = kLineOfSide[k], next = kLineOfSide[(k + 1) % 3];
    const bool here_over = (t.p[k] & 1) != 0;
    t.over[here][next] = here_over;
    t.over[next][here] = !here_over;
  }
  for (int a = 0; a < 3; ++a) t.forward[a] = !d.is_tail_at(t.ext[a].crossing, t.ext[a].slot);

  // Heights: a valid move needs one line above both others.
  std::array<int, 3> height{};
  for (int a = 0; a < 3; ++a) height[a] = 2 - (t.over[a][(a + 1) % 3] + t.over[a][(a + 2) % 3]);
  std::array<int, 3> sorted = height;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) return std::nullopt;

  const bool all_left = std::all_of(cyc.begin(), cyc.end(), [](SideRef x) { return x.side == Side::Left; });
  const bool all_right = std::all_of(cyc.begin(), cyc.end(), [](SideRef x) { return x.side == Side::Right; });
  if (all_left || all_right) {
    std::array<int, 3> seq{};
    for (int k = 0; k < 3; ++k) seq[k] = height[kLineOfSide[k]];
    const bool rotation = (seq[1] - seq[0] + 3) % 3 == 1;
    t.kind = rotation == all_left ? MoveKind::IIIg : MoveKind::IIIh;
    return t;
  }

  // Non-cyclic: the odd side joins the source and sink vertices.
  int odd_side = 0;
  for (int k = 0; k < 3; ++k)
    if (cyc[k].side != cyc[(k + 1) % 3].side && cyc[k].side != cyc[(k + 2) % 3].side) odd_side = k;
  const int odd = kLineOfSide[odd_side];
  auto incoming_slot = [&](int line, int k) {
    // Slot of `line` at v[k] where it flows in.
    const int s0 = kLineOfSide[k] == line ? t.p[k] : (t.p[k] + 3) & 3;
    return d.is_tail_at(t.v[k], s0) ? (s0 + 2) & 3 : s0;
  };
  int from_right = -1, from_left = -1;
  for (int k = 0; k < 3; ++k) {
    const int l1 = kLineOfSide[k], l2 = kLineOfSide[(k + 1) % 3];
    if (l1 != odd && l2 != odd) continue;
    const int other = l1 == odd ? l2 : l1;
    const bool right = incoming_slot(other, k) == ((incoming_slot(odd, k) + 1) & 3);
    (right ? from_right : from_left) = other;
  }
  if (from_right < 0 || from_left < 0) return std::nullopt;
  // Heights of (odd, from-right, from-left) as a permutation of (top, middle, bottom).
  static constexpr std::array<std::array<int, 3>, 6> kTable{{
      {1, 2, 0}, {1, 0, 2}, {0, 1, 2}, {0, 2, 1}, {2, 1, 0}, {2, 0, 1},
  }};
  const std::array<int, 3> key{height[odd], height[from_right], height[from_left]};
  const auto it = std::find(kTable.begin(), kTable.end(), key);
  t.kind = static_cast<MoveKind>(static_cast<int>(MoveKind::IIIa) + (it - kTable.begin()));
  return t;
}

struct Vec {
  double x = 0, y = 0;
};
Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
Vec operator*(double k, Vec a) { return {k * a.x, k * a.y}; }
double cross(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }

// Three straight lines near the unit disk's centre, line a entering near the
// boundary point at angle 60a degrees and leaving at the antipode.
struct Model {
  std::array<Vec, 3> u, n;
  double delta;

  explicit Model(double dl) : delta(dl) {
    for (int a = 0; a < 3; ++a) {
      const double th = M_PI / 3 * a;
      u[a] = {-std::cos(th), -std::sin(th)};
      n[a] = {-u[a].y, u[a].x};
    }
  }
  Vec at(int a, double t) const { return delta * n[a] + t * u[a]; }
  double param(int a, int b) const {
    return cross(delta * (n[b] - n[a]), u[b]) / cross(u[a], u[b]);
  }
  int signature(Vec q) const {
    int sig = 0;
    for (int b = 0; b < 3; ++b)
      if (cross(u[b], q - delta * n[b]) > 0) sig |= 1 << b;
    return sig;
  }
  int triangle_signature() const {
    Vec c;
    for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) c = c + (1.0 / 3) * at(a, param(a, b));
    return signature(c);
  }
  int region_signature(int i) const {
    const double th = M_PI / 3 * i + M_PI / 6;
    return signature({0.95 * std::cos(th), 0.95 * std::sin(th)});
  }
};

Diagram flip_triangle(const Diagram& d, const Triangle& t) {
  // Pick the model in which F[0] sits across a side of the triangle: the
  // opposite of the current picture, where F[0] faces a vertex.
  Model model(0.1);
  if (std::popcount(static_cast<unsigned>(model.region_signature(0) ^ model.triangle_signature())) != 1)
    model = Model(-0.1);
  const int tri_sig = model.triangle_signature();
  std::array<int, 6> region_sig{};
  for (int i = 0; i < 6; ++i) region_sig[i] = model.region_signature(i);

  Builder bld(d);
  for (int k = 0; k < 3; ++k) bld.kill_crossing(t.v[k]);
  std::array<int, 6> ext_edge{};
  for (int i = 0; i < 6; ++i) ext_edge[i] = d.edge_at(t.ext[i].crossing, t.ext[i].slot);
  std::array<int, 3> inner{};
  for (int k = 0; k < 3; ++k) inner[kLineOfSide[k]] = t.side[k].edge;

  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  std::array<int, 3> node{};
  for (int q = 0; q < 3; ++q) node[q] = bld.add_crossing();

  auto face_at = [&](Vec q) {
    const int sig = model.signature(q);
    if (sig == tri_sig) return t.face;
    for (int i = 0; i < 6; ++i)
      if (region_sig[i] == sig) return t.region[i];
    throw std::logic_error("sample point outside the model regions");
  };

  for (int a = 0; a < 3; ++a) {
    // Crossings on line a ordered from E[a] towards E[a+3].
    std::array<std::pair<double, int>, 2> on{};
    int c = 0;
    for (int q = 0; q < 3; ++q) {
      const auto [x, y] = pairs[q];
      if (x == a) on[c++] = {model.param(a, y), q};
      if (y == a) on[c++] = {model.param(a, x), q};
    }
    std::sort(on.begin(), on.end());
    const Vec mid = 0.5 * (model.at(a, on[0].first) + model.at(a, on[1].first));
    const Vec dir = t.forward[a] ? model.u[a] : -1.0 * model.u[a];
    const Vec left{-dir.y, dir.x};
    Edge& e = bld.edge(inner[a]);
    e.left_face = face_at(mid + 0.01 * left);
    e.right_face = face_at(mid - 0.01 * left);
    e.breaks = 0;
  }

  for (int q = 0; q < 3; ++q) {
    const auto [a, b] = pairs[q];
    std::vector<std::pair<double, Ray>> rays;
    for (int line : {a, b}) {
      const int other = line == a ? b : a;
      const double here = model.param(line, other);
      const int third = 3 - a - b;
      const bool first = here < model.param(line, third);
      const int before = first ? ext_edge[line] : inner[line];
      const int after = first ? inner[line] : ext_edge[line + 3];
      const Vec back = -1.0 * model.u[line], ahead = model.u[line];
      rays.push_back({std::atan2(back.y, back.x), Ray{before, t.forward[line], line}});
      rays.push_back({std::atan2(ahead.y, ahead.x), Ray{after, !t.forward[line], line}});
    }
    std::sort(rays.begin(), rays.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    std::array<Ray, 4> ccw{};
    for (int i = 0; i < 4; ++i) ccw[i] = rays[i].second;
    bld.place(node[q], ccw, t.over[a][b] ? a : b);
  }
  return bld.build();
}

MoveSite make_site(MoveKind k, std::vector<int> anchor, std::uint64_t fp) {
  return MoveSite{k, std::move(anchor), fp};
}

}  // namespace

std::string_view to_string(MoveKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  return "?";
}

MoveKind parse_move_kind(std::string_view s) {
  for (const auto& [kind, name] : kNames)
    if (name == s) return kind;
  throw ParseError("unknown move kind '" + std::string(s) + "'");
}

bool is_braid_like(MoveKind k) {
  return k != MoveKind::IIIg && k != MoveKind::IIIh && k != MoveKind::RI_insert && k != MoveKind::IIb_insert;
}

std::uint64_t fingerprint(const Diagram& d) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::int64_t v) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 1099511628211ull;
  };
  mix(d.crossing_count());
  mix(d.edge_count());
  mix(d.outer_face());
  for (const Crossing& c : d.crossings()) {
    mix(c.sign);
    for (int e : c.edges) mix(e);
  }
  for (const Edge& e : d.edges()) {
    for (int v : {e.tail.crossing, e.tail.slot, e.head.crossing, e.head.slot, e.left_face, e.right_face, e.breaks})
      mix(v);
  }
  return h | 1;
}

std::vector<MoveSite> find_sites(const Diagram& d, MoveKind kind) {
  std::vector<MoveSite> sites;
  if (d.has_breaks()) return sites;
  const std::uint64_t fp = fingerprint(d);
  const int m = d.edge_count();
  switch (kind) {
    case MoveKind::IIa_insert:
    case MoveKind::IIb_insert: {
      std::vector<std::vector<SideRef>> by_face(d.face_count());
      for (int code = 0; code < 2 * m; ++code) {
        const SideRef s = SideRef::decode(code);
        by_face[d.edge(s.edge).face(s.side)].push_back(s);
      }
      const bool coherent = kind == MoveKind::IIa_insert;
      for (const auto& sides : by_face)
        for (const SideRef& a : sides)
          for (const SideRef& b : sides) {
            if (a.edge == b.edge || (a.side != b.side) != coherent) continue;
            for (int over : {1, 0}) sites.push_back(make_site(kind, {a.encode(), b.encode(), over}, fp));
          }
      break;
    }
    case MoveKind::IIa_remove: {
      std::vector<char> seen(d.face_count(), 0);
      for (int code = 0; code < 2 * m; ++code) {
        const SideRef s = SideRef::decode(code);
        const int f = d.edge(s.edge).face(s.side);
        if (seen[f]) continue;
        if (bigon_at(d, s)) {
          seen[f] = 1;
          sites.push_back(make_site(kind, {code}, fp));
        }
      }
      break;
    }
    case MoveKind::RI_insert:
      for (int code = 0; code < 2 * m; ++code)
        for (int sign : {1, -1}) sites.push_back(make_site(kind, {code, sign}, fp));
      break;
    default: {
      std::vector<char> seen(d.face_count(), 0);
      for (int code = 0; code < 2 * m; ++code) {
        const SideRef s = SideRef::decode(code);
        const int f = d.edge(s.edge).face(s.side);
        if (seen[f]) continue;
        seen[f] = 1;
        auto t = triangle_at(d, s);
        if (t && t->kind == kind) sites.push_back(make_site(kind, {code}, fp));
      }
      break;
    }
  }
  return sites;
}

Diagram apply(const Diagram& d, const MoveSite& site) {
  require_plain(d);
  if (site.fingerprint != 0 && site.fingerprint != fingerprint(d))
    throw SiteInvalidError("site was found on a different diagram");
  const auto& a = site.anchor;
  auto side = [&](std::size_t i) {
    if (i >= a.size() || a[i] < 0 || a[i] >= 2 * d.edge_count())
      throw SiteInvalidError("anchor references a missing edge side");
    return SideRef::decode(a[i]);
  };
  auto need = [&](std::size_t n) {
    if (a.size() != n) throw SiteInvalidError("anchor has the wrong length for " + std::string(to_string(site.kind)));
  };
  switch (site.kind) {
    case MoveKind::IIa_insert:
    case MoveKind::IIb_insert: {
      need(3);
      const SideRef sa = side(0), sb = side(1);
      if (!finger_valid(d, sa, sb)) throw SiteInvalidError("anchor sides do not share a face");
      if ((sa.side != sb.side) != (site.kind == MoveKind::IIa_insert))
        throw SiteInvalidError("strand orientations do not match the move kind");
      return finger(d, sa, sb, a[2] != 0);
    }
    case MoveKind::IIa_remove: {
      need(1);
      auto g = bigon_at(d, side(0));
      if (!g) throw SiteInvalidError("anchor is not on a removable bigon");
      return remove_bigon(d, *g);
    }
    case MoveKind::RI_insert: {
      need(2);
      if (a[1] != 1 && a[1] != -1) throw SiteInvalidError("curl sign must be +1 or -1");
      return curl(d, side(0), a[1]);
    }
    default: {
      need(1);
      auto t = triangle_at(d, side(0));
      if (!t || t->kind != site.kind) throw SiteInvalidError("anchor is not on a matching triangle");
      return flip_triangle(d, *t);
    }
  }
}

std::pair<Diagram, Diagram> random_equivalent_pair(std::uint64_t seed, int n_moves, const BraidWord& base,
                                                   int max_crossings) {
  if (n_moves < 0) throw PreconditionError("negative move count");
  std::mt19937_64 rng(seed);
  const Diagram start = braid_closure(base);
  Diagram cur = start;
  static constexpr std::array<MoveKind, 8> kKinds{MoveKind::IIa_insert, MoveKind::IIa_remove,
                                                   MoveKind::IIIa,       MoveKind::IIIb,
                                                   MoveKind::IIIc,       MoveKind::IIId,
                                                   MoveKind::IIIe,       MoveKind::IIIf};
  for (int step = 0; step < n_moves; ++step) {
    std::vector<std::vector<MoveSite>> options;
    std::vector<double> weights;
    for (MoveKind k : kKinds) {
      if (k == MoveKind::IIa_insert && cur.crossing_count() + 2 > max_crossings) continue;
      auto sites = find_sites(cur, k);
      if (sites.empty()) continue;
      weights.push_back(is_three(k) ? 3.0 : k == MoveKind::IIa_remove ? 2.0 : 1.0);
      options.push_back(std::move(sites));
    }
    if (options.empty())
      throw GenerationError("no braid-like move applies after " + std::to_string(step) + " moves");
    std::discrete_distribution<std::size_t> pick_kind(weights.begin(), weights.end());
    const auto& sites = options[pick_kind(rng)];
    std::uniform_int_distribution<std::size_t> pick_site(0, sites.size() - 1);
    cur = apply(cur, sites[pick_site(rng)]);
  }
  return {start, cur};
}

Diagram figure4_family(int m) {
  if (m < 0) throw PreconditionError("family index must be non-negative");
  Diagram d = braid_closure(BraidWord{1, {}});
  for (int i = 0; i < m; ++i) {
    d = apply(d, MoveSite{MoveKind::RI_insert, {SideRef{0, Side::Left}.encode(), 1}, 0});
    d = apply(d, MoveSite{MoveKind::RI_insert, {SideRef{0, Side::Right}.encode(), -1}, 0});
  }
  return d;
}

std::vector<MoveSite> parse_move_script(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid move script: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("move script must be a JSON list");
  std::vector<MoveSite> out;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("kind") || !item.contains("anchor"))
      throw ParseError("move script entries need \"kind\" and \"anchor\"");
    MoveSite s;
    s.kind = parse_move_kind(item["kind"].get<std::string>());
    for (const auto& v : item["anchor"]) {
      if (!v.is_number_integer()) throw ParseError("anchor entries must be integers");
      s.anchor.push_back(v.get<int>());
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string move_script_json(const std::vector<MoveSite>& sites, int indent) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const MoveSite& s : sites) out.push_back({{"kind", to_string(s.kind)}, {"anchor", s.anchor}});
  return out.dump(indent);
}

}  // namespace braidkh
