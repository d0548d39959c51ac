#include "detail/splice.hpp"

#include <algorithm>
#include <numeric>

namespace braidkh::detail {

Diagram splice_out(const Diagram& d, const std::vector<Cut>& cuts,
                   const std::vector<std::pair<int, int>>& face_merges, bool keep_closure,
                   const std::vector<int>& face_blocked) {
  const int n = d.crossing_count();
  const int m = d.edge_count();
  std::vector<const Cut*> cut_at(n, nullptr);
  for (const Cut& c : cuts) cut_at.at(c.crossing) = &c;

  std::vector<int> face(d.face_count());
  std::iota(face.begin(), face.end(), 0);
  auto find = [&](int x) {
    while (face[x] != x) x = face[x] = face[face[x]];
    return x;
  };
  for (auto [a, b] : face_merges) face[find(a)] = find(b);

  std::vector<int> new_label(n, -1);
  int kept = 0;
  for (int c = 0; c < n; ++c)
    if (!cut_at[c]) new_label[c] = kept++;
  std::vector<Crossing> crossings(kept);
  for (int c = 0; c < n; ++c)
    if (!cut_at[c]) crossings[new_label[c]].sign = d.crossing(c).sign;

  // Step from piece (e, fwd) across its exit end; nullopt-like {-1} at a kept crossing.
  auto next = [&](EdgeStep s) -> EdgeStep {
    const Edge& ed = d.edge(s.edge);
    const Port p = s.forward ? ed.head : ed.tail;
    if (!cut_at[p.crossing]) return {-1, true};
    const int q = cut_at[p.crossing]->partner[p.slot];
    return {d.edge_at(p.crossing, q), d.is_tail_at(p.crossing, q)};
  };
  auto prev = [&](EdgeStep s) -> EdgeStep {
    const Edge& ed = d.edge(s.edge);
    const Port p = s.forward ? ed.tail : ed.head;
    if (!cut_at[p.crossing]) return {-1, true};
    const int q = cut_at[p.crossing]->partner[p.slot];
    return {d.edge_at(p.crossing, q), !d.is_tail_at(p.crossing, q)};
  };

  std::vector<Edge> edges;
  std::vector<char> used(m, 0);
  for (int e0 = 0; e0 < m; ++e0) {
    if (used[e0]) continue;
    const Edge& first = d.edge(e0);
    Edge out;
    out.left_face = find(first.left_face);
    out.right_face = find(first.right_face);
    const int id = static_cast<int>(edges.size());
    if (first.is_free_loop()) {
      used[e0] = 1;
      out.breaks = first.breaks;
      out.closure = keep_closure ? first.closure : 0;
      edges.push_back(out);
      continue;
    }

    // Walk back to the start of the chain, or detect that it closes up.
    EdgeStep start{e0, true};
    bool cycle = false;
    for (EdgeStep s = prev(start); s.edge >= 0; s = prev(s)) {
      if (s.edge == e0) {
        cycle = true;
        break;
      }
      start = s;
    }
    if (cycle) start = {e0, true};

    std::vector<EdgeStep> chain;
    for (EdgeStep s = start;;) {
      chain.push_back(s);
      used[s.edge] = 1;
      s = next(s);
      if (s.edge < 0 || (cycle && s.edge == e0)) break;
    }
    // The lowest piece fixes the direction; reverse the chain if needed.
    bool flip = false;
    for (const EdgeStep& s : chain)
      if (s.edge == e0) flip = !s.forward;
    if (flip) {
      std::reverse(chain.begin(), chain.end());
      for (EdgeStep& s : chain) s.forward = !s.forward;
    }

    for (const EdgeStep& s : chain) {
      if (std::find(face_blocked.begin(), face_blocked.end(), s.edge) != face_blocked.end()) continue;
      const Edge& ed = d.edge(s.edge);
      out.left_face = find(s.forward ? ed.left_face : ed.right_face);
      out.right_face = find(s.forward ? ed.right_face : ed.left_face);
      break;
    }

    // A join adds a break when it pairs two incoming or two outgoing ends;
    // stored edge directions are unreliable once edges carry breaks.
    int changes = 0;
    const std::size_t joins = cycle ? chain.size() : chain.size() - 1;
    for (std::size_t i = 0; i < joins; ++i) {
      const Edge& ed = d.edge(chain[i].edge);
      const Port p = chain[i].forward ? ed.head : ed.tail;
      const int sign = d.crossing(p.crossing).sign;
      changes += slot_is_incoming(sign, p.slot) == slot_is_incoming(sign, cut_at[p.crossing]->partner[p.slot]);
    }
    for (const EdgeStep& s : chain) {
      const Edge& ed = d.edge(s.edge);
      out.breaks += ed.breaks;
      if (keep_closure) out.closure += s.forward ? ed.closure : -ed.closure;
    }
    out.breaks += changes;

    if (!cycle) {
      const Edge& a = d.edge(chain.front().edge);
      const Edge& b = d.edge(chain.back().edge);
      const Port tail = chain.front().forward ? a.tail : a.head;
      const Port head = chain.back().forward ? b.head : b.tail;
      out.tail = Port{new_label[tail.crossing], tail.slot};
      out.head = Port{new_label[head.crossing], head.slot};
      crossings[out.tail.crossing].edges[out.tail.slot] = id;
      crossings[out.head.crossing].edges[out.head.slot] = id;
    }
    edges.push_back(out);
  }
  const bool closure = keep_closure && d.has_closure_arcs();
  return Diagram(std::move(crossings), std::move(edges), find(d.outer_face()), closure);
}

}  // namespace braidkh::detail
