#include "braidkh/states.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "braidkh/errors.hpp"

namespace braidkh {

Smoothing::Smoothing(int size, std::uint64_t bits) : size_(size), bits_(bits) {
  if (size < 0 || size > kMaxCrossings) throw PreconditionError("smoothing size out of range");
  if (size < 64 && (bits >> size) != 0) throw PreconditionError("smoothing has bits beyond its size");
}

Smoothing Smoothing::with(int v, Resolution r) const {
  if (v < 0 || v >= size_) throw PreconditionError("crossing index out of range");
  const std::uint64_t mask = std::uint64_t{1} << v;
  return Smoothing(size_, r == Resolution::AInverse ? (bits_ | mask) : (bits_ & ~mask));
}

int Smoothing::a_count() const noexcept { return size_ - std::popcount(bits_); }

int KauffmanState::d_count() const noexcept {
  return static_cast<int>(std::count_if(circles.begin(), circles.end(),
                                        [](const StateCircle& c) { return c.type == CircleType::D; }));
}

int KauffmanState::h_count() const noexcept {
  return static_cast<int>(circles.size()) - d_count();
}

int Configuration::circle_count() const noexcept {
  return static_cast<int>(std::count(canonical.begin(), canonical.end(), '('));
}

Configuration configuration_from_forest(const std::vector<int>& parent) {
  const int n = static_cast<int>(parent.size());
  std::vector<std::vector<int>> children(n);
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) (parent[i] < 0 ? roots : children[parent[i]]).push_back(i);

  // Post-order without recursion: process nodes so that children come first.
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> stack(roots.begin(), roots.end());
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int c : children[v]) stack.push_back(c);
  }
  std::vector<std::string> text(n);
  std::vector<std::string> parts;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    parts.clear();
    for (int c : children[v]) parts.push_back(std::move(text[c]));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (auto& p : parts) s += p;
    s += ')';
    text[v] = std::move(s);
  }
  parts.clear();
  for (int r : roots) parts.push_back(std::move(text[r]));
  std::sort(parts.begin(), parts.end());
  Configuration c;
  for (auto& p : parts) c.canonical += p;
  return c;
}

void check_cap(const Diagram& d, int cap) {
  const int limit = std::min(cap, kMaxCrossings);
  if (d.crossing_count() > limit) throw SizeCapError(d.crossing_count(), cap);
}

StateTracer::StateTracer(const Diagram& d) : d_(&d) {
  const int n = d.crossing_count();
  edge_.resize(n);
  tail_.resize(n);
  corner_.resize(n);
  sign_.resize(n);
  for (int c = 0; c < n; ++c) {
    sign_[c] = d.crossing(c).sign;
    for (int s = 0; s < 4; ++s) {
      edge_[c][s] = d.edge_at(c, s);
      tail_[c][s] = d.is_tail_at(c, s);
      corner_[c][s] = d.corner_face(c, s);
    }
  }
  region_.resize(d.face_count());
  entry_.resize(d.face_count());
  region_circles_.resize(d.face_count());
}

void StateTracer::trace(std::uint64_t bits, Result& out, bool with_nesting) const {
  const auto& edges = d_->edges();
  const int m = static_cast<int>(edges.size());
  out.circles = 0;
  out.circle_of_edge.assign(m, -1);
  out.break_points.clear();
  out.winding.clear();
  out.first_edge.clear();
  out.parent.clear();

  for (int e0 = 0; e0 < m; ++e0) {
    if (out.circle_of_edge[e0] >= 0) continue;
    const int c = out.circles++;
    int breaks = 0;
    int wind = 0;
    int e = e0;
    bool fwd = true;
    while (true) {
      const Edge& ed = edges[e];
      out.circle_of_edge[e] = c;
      breaks += ed.breaks;
      wind += fwd ? ed.closure : -ed.closure;
      if (ed.is_free_loop()) break;
      const Port at = fwd ? ed.head : ed.tail;
      const int x = at.crossing;
      const int bit = static_cast<int>((bits >> x) & 1);
      const int q = bit ? 3 - at.slot : at.slot ^ 1;
      if (bit == (sign_[x] > 0 ? 1 : 0)) ++breaks;
      const int next = edge_[x][q];
      if (next == e0) break;
      e = next;
      fwd = tail_[x][q];
    }
    out.break_points.push_back(breaks);
    out.winding.push_back(wind);
    out.first_edge.push_back(e0);
  }
  if (!with_nesting) return;

  // Regions of the smoothed picture are unions of diagram faces.
  const int f = d_->face_count();
  std::iota(region_.begin(), region_.end(), 0);
  auto find = [this](int x) {
    while (region_[x] != x) x = region_[x] = region_[region_[x]];
    return x;
  };
  for (std::size_t x = 0; x < corner_.size(); ++x) {
    const bool inverse = (bits >> x) & 1;
    const int a = corner_[x][inverse ? 0 : 1];
    const int b = corner_[x][inverse ? 2 : 3];
    region_[find(a)] = find(b);
  }
  for (int r = 0; r < f; ++r) region_circles_[r].clear();
  std::vector<std::array<int, 2>> sides(out.circles);
  for (int c = 0; c < out.circles; ++c) {
    const Edge& ed = edges[out.first_edge[c]];
    sides[c] = {find(ed.left_face), find(ed.right_face)};
    region_circles_[sides[c][0]].push_back(c);
    region_circles_[sides[c][1]].push_back(c);
  }
  // The circles cut the sphere into a tree of regions; root it at the outer one.
  out.parent.assign(out.circles, -2);
  std::vector<int> queue{find(d_->outer_face())};
  entry_[queue.front()] = -1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int r = queue[head];
    for (int c : region_circles_[r]) {
      if (out.parent[c] != -2) continue;
      out.parent[c] = entry_[r];
      const int inner = sides[c][0] == r ? sides[c][1] : sides[c][0];
      entry_[inner] = c;
      queue.push_back(inner);
    }
  }
}

Configuration h_configuration(const StateTracer::Result& r) {
  std::vector<int> h_index(r.circles, -1);
  int h = 0;
  for (int c = 0; c < r.circles; ++c)
    if (classify(r.break_points[c]) == CircleType::H) h_index[c] = h++;
  std::vector<int> parent(h, -1);
  for (int c = 0; c < r.circles; ++c) {
    if (h_index[c] < 0) continue;
    int p = r.parent[c];
    while (p >= 0 && h_index[p] < 0) p = r.parent[p];
    parent[h_index[c]] = p >= 0 ? h_index[p] : -1;
  }
  return configuration_from_forest(parent);
}

KauffmanState resolve(const Diagram& d, const Smoothing& m) {
  if (m.size() != d.crossing_count())
    throw PreconditionError("smoothing length " + std::to_string(m.size()) +
                            " does not match crossing count " +
                            std::to_string(d.crossing_count()));
  StateTracer tracer(d);
  StateTracer::Result r;
  tracer.trace(m.bits(), r);

  KauffmanState state;
  state.smoothing = m;
  state.circles.resize(r.circles);
  for (int c = 0; c < r.circles; ++c) {
    StateCircle& sc = state.circles[c];
    sc.id = c;
    sc.break_points = r.break_points[c];
    sc.type = classify(sc.break_points);
    sc.parent = r.parent[c];
    if (d.has_closure_arcs()) sc.winding = r.winding[c];
  }
  // Record the traversal of every circle.
  for (int c = 0; c < r.circles; ++c) {
    const int e0 = r.first_edge[c];
    int e = e0;
    bool fwd = true;
    auto& cycle = state.circles[c].edge_cycle;
    while (true) {
      cycle.push_back(EdgeStep{e, fwd});
      const Edge& ed = d.edge(e);
      if (ed.is_free_loop()) break;
      const Port at = fwd ? ed.head : ed.tail;
      const int q = m.at(at.crossing) == Resolution::AInverse ? 3 - at.slot : at.slot ^ 1;
      const int next = d.edge_at(at.crossing, q);
      if (next == e0) break;
      fwd = d.is_tail_at(at.crossing, q);
      e = next;
    }
  }
  return state;
}

int sigma(const Smoothing& m) { return m.a_count() - m.a_inverse_count(); }
int sigma(const KauffmanState& s) { return sigma(s.smoothing); }

Smoothing seifert_smoothing(const Diagram& d) {
  std::uint64_t bits = 0;
  for (int c = 0; c < d.crossing_count(); ++c)
    if (d.crossing(c).sign < 0) bits |= std::uint64_t{1} << c;
  return Smoothing(d.crossing_count(), bits);
}

KauffmanState seifert_state(const Diagram& d) { return resolve(d, seifert_smoothing(d)); }

Configuration configuration_of(const KauffmanState& s) {
  std::vector<int> h_index(s.circles.size(), -1);
  int h = 0;
  for (std::size_t c = 0; c < s.circles.size(); ++c)
    if (s.circles[c].type == CircleType::H) h_index[c] = h++;
  std::vector<int> parent(h, -1);
  for (std::size_t c = 0; c < s.circles.size(); ++c) {
    if (h_index[c] < 0) continue;
    int p = s.circles[c].parent;
    while (p >= 0 && h_index[p] < 0) p = s.circles[p].parent;
    parent[h_index[c]] = p >= 0 ? h_index[p] : -1;
  }
  return configuration_from_forest(parent);
}

void enumerate_states(const Diagram& d, const std::function<void(const KauffmanState&)>& visit,
                      int cap) {
  check_cap(d, cap);
  const int n = d.crossing_count();
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < total; ++bits) visit(resolve(d, Smoothing(n, bits)));
}

int winding_number(const Diagram& d, const StateCircle& c) {
  if (!d.has_closure_arcs())
    throw UnsupportedError("winding numbers need a diagram built from a braid word");
  int w = 0;
  for (const EdgeStep& s : c.edge_cycle) w += s.forward ? d.edge(s.edge).closure : -d.edge(s.edge).closure;
  return w;
}

}  // namespace braidkh
