#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include <boost/integer/common_factor.hpp>

namespace braidkh::oracle {

namespace {

int find(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

bool incoming(const Diagram& d, int c, int slot) { return !d.is_tail_at(c, slot); }

int writhe_of(const Diagram& d) {
  int w = 0;
  for (const Crossing& c : d.crossings()) w += c.sign;
  return w;
}

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

BigInt determinant(Matrix m) {
  const std::size_t n = m.size();
  BigInt det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      // Euclid on rows c and r until m[r][c] vanishes.
      while (m[r][c] != 0) {
        const BigInt q = m[c][c] / m[r][c];
        for (std::size_t k = c; k < n; ++k) m[c][k] -= q * m[r][k];
        std::swap(m[c], m[r]);
        det = -det;
      }
    }
    det *= m[c][c];
  }
  return det;
}

void choose(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Circles trace(const Diagram& d, std::uint64_t bits) {
  const int m = d.edge_count();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> breaks(m, 0);
  for (int e = 0; e < m; ++e) breaks[e] = d.edge(e).breaks;
  std::vector<std::pair<int, int>> arc_breaks;  // (edge, count) added per smoothing arc
  for (int c = 0; c < d.crossing_count(); ++c) {
    const bool inverse = (bits >> c) & 1;
    const std::array<std::pair<int, int>, 2> arcs =
        inverse ? std::array<std::pair<int, int>, 2>{{{0, 3}, {1, 2}}}
                : std::array<std::pair<int, int>, 2>{{{0, 1}, {2, 3}}};
    for (auto [p, q] : arcs) {
      const int a = d.edge_at(c, p), b = d.edge_at(c, q);
      parent[find(parent, a)] = find(parent, b);
      // The arc reverses orientation when both ends point in, or both out.
      if (incoming(d, c, p) == incoming(d, c, q)) arc_breaks.push_back({a, 1});
    }
  }
  Circles out;
  out.of_edge.assign(m, -1);
  std::map<int, int> id_of_root;
  for (int e = 0; e < m; ++e) {
    const int r = find(parent, e);
    auto [it, fresh] = id_of_root.try_emplace(r, out.count);
    if (fresh) {
      ++out.count;
      out.breaks.push_back(0);
      out.members.emplace_back();
    }
    out.of_edge[e] = it->second;
    out.members[it->second].push_back(e);
    out.breaks[it->second] += breaks[e];
  }
  for (auto [e, k] : arc_breaks) out.breaks[out.of_edge[e]] += k;
  return out;
}

std::array<int, 3> grading(const Diagram& d, const Circles& c, std::uint64_t bits, std::uint64_t minus) {
  const int n = d.crossing_count();
  const int sigma = n - 2 * std::popcount(bits);
  const int w = writhe_of(d);
  int td = 0, th = 0;
  for (int x = 0; x < c.count; ++x) {
    const int s = (minus >> x) & 1 ? -1 : 1;
    (c.is_d(x) ? td : th) += s;
  }
  return {(sigma - w) / 2, (sigma - 3 * w + 2 * td) / 2, th};
}

std::map<Gen, int> partial_by_incidence(const Diagram& d, Gen s, int v) {
  std::map<Gen, int> out;
  if ((s.bits >> v) & 1) return out;
  const std::uint64_t target = s.bits | (std::uint64_t{1} << v);
  const Circles from = trace(d, s.bits), to = trace(d, target);
  const auto g0 = grading(d, from, s.bits, s.minus);
  const int t = std::popcount(s.bits >> (v + 1));
  // Circles present in both smoothings.
  std::vector<int> same(to.count, -1);
  for (int a = 0; a < to.count; ++a)
    for (int b = 0; b < from.count; ++b)
      if (to.members[a] == from.members[b]) same[a] = b;
  for (std::uint64_t minus = 0; minus < (std::uint64_t{1} << to.count); ++minus) {
    bool ok = true;
    for (int a = 0; a < to.count && ok; ++a)
      if (same[a] >= 0 && (((minus >> a) & 1) != ((s.minus >> same[a]) & 1))) ok = false;
    if (!ok) continue;
    const auto g1 = grading(d, to, target, minus);
    if (g1[1] != g0[1] || g1[2] != g0[2]) continue;
    out[Gen{target, minus}] += t % 2 ? -1 : 1;
  }
  return out;
}

LaurentPoly kauffman(const Diagram& d) {
  const int n = d.crossing_count();
  const LaurentPoly delta = LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1);
  std::vector<LaurentPoly> delta_pow{LaurentPoly(1)};
  LaurentPoly sum;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    const int circles = trace(d, bits).count;
    while (static_cast<int>(delta_pow.size()) <= circles) delta_pow.push_back(delta_pow.back() * delta);
    sum += delta_pow[circles].shifted(n - 2 * std::popcount(bits));
  }
  return sum;
}

EulerPoly chain_euler(const Diagram& d) {
  const int n = d.crossing_count();
  EulerPoly e;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    const Circles c = trace(d, bits);
    for (std::uint64_t minus = 0; minus < (std::uint64_t{1} << c.count); ++minus) {
      const auto g = grading(d, c, bits, minus);
      e.add_term(2 * g[1], 2 * g[2], (g[0] + g[1] + g[2]) % 2 ? -1 : 1);
    }
  }
  return e;
}

HomologyTable homology(const Diagram& d) {
  const int n = d.crossing_count();
  using Key = std::array<int, 3>;
  std::map<Key, std::vector<Gen>> groups;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    const Circles c = trace(d, bits);
    for (std::uint64_t minus = 0; minus < (std::uint64_t{1} << c.count); ++minus)
      groups[grading(d, c, bits, minus)].push_back(Gen{bits, minus});
  }
  // Matrix of d out of degree key, rows indexed by the target group.
  auto matrix = [&](const Key& src) {
    const Key dst{src[0] - 1, src[1], src[2]};
    const auto& cols = groups[src];
    const auto& rows = groups[dst];
    std::map<Gen, std::size_t> row_of;
    for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
    Matrix m(rows.size(), std::vector<BigInt>(cols.size(), 0));
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (int v = 0; v < n; ++v)
        for (const auto& [g, coeff] : partial_by_incidence(d, cols[c], v)) m[row_of.at(g)][c] += coeff;
    return m;
  };
  HomologyTable table;
  const auto keys = [&] {
    std::vector<Key> k;
    for (const auto& [key, gens] : groups)
      if (!gens.empty()) k.push_back(key);
    return k;
  }();
  for (const Key& key : keys) {
    const Matrix out = matrix(key);
    const Matrix in = matrix(Key{key[0] + 1, key[1], key[2]});
    const std::size_t dim = groups[key].size();
    const std::size_t r_out = out.empty() ? 0 : bareiss_rank(out);
    const std::size_t r_in = in.empty() || in[0].empty() ? 0 : bareiss_rank(in);
    HomologyGroup h;
    h.betti = dim - r_out - r_in;
    if (r_in > 0)
      for (const BigInt& f : snf_elimination(in))
        if (f > 1) h.torsion.push_back(f);
    if (h.betti != 0 || !h.torsion.empty()) table[Tridegree{key[0], key[1], key[2]}] = h;
  }
  return table;
}

std::size_t bareiss_rank(Matrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

std::vector<BigInt> snf_by_minors(const Matrix& m) {
  std::vector<BigInt> out;
  if (m.empty() || m[0].empty()) return out;
  const std::size_t rows = m.size(), cols = m[0].size();
  BigInt prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    BigInt g = 0;
    choose(rows, k, [&](const std::vector<std::size_t>& ri) {
      choose(cols, k, [&](const std::vector<std::size_t>& ci) {
        Matrix sub(k, std::vector<BigInt>(k));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub[a][b] = m[ri[a]][ci[b]];
        g = boost::integer::gcd(g, abs_big(determinant(sub)));
      });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

std::vector<BigInt> snf_elimination(Matrix m) {
  std::vector<BigInt> diag;
  if (m.empty() || m[0].empty()) return diag;
  const std::size_t rows = m.size(), cols = m[0].size();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Any nonzero entry will do as a start; gcd steps shrink it.
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = t; r < rows && pr == rows; ++r)
      for (std::size_t c = t; c < cols; ++c)
        if (m[r][c] != 0) {
          pr = r;
          pc = c;
          break;
        }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = t + 1; r < rows; ++r)
        while (m[r][t] != 0) {
          // Reduce row r by the pivot row; swap only if a remainder is left.
          const BigInt q = m[r][t] / m[t][t];
          for (std::size_t c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
          if (m[r][t] != 0) std::swap(m[t], m[r]);
        }
      for (std::size_t c = t + 1; c < cols; ++c)
        while (m[t][c] != 0) {
          const BigInt q = m[t][c] / m[t][t];
          for (std::size_t r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
          if (m[t][c] != 0)
            for (std::size_t r = t; r < rows; ++r) std::swap(m[r][t], m[r][c]);
        }
      for (std::size_t r = t + 1; r < rows; ++r)
        if (m[r][t] != 0) clean = false;
      if (!clean) continue;
      // Pivot must divide the rest; otherwise fold an offending row in.
      for (std::size_t r = t + 1; r < rows && clean; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (m[r][c] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[r][k];
            clean = false;
            break;
          }
    }
    diag.push_back(abs_big(m[t][t]));
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

Diagram permute_crossings(const Diagram& d, const std::vector<int>& perm) {
  std::vector<Crossing> xs(d.crossing_count());
  for (int c = 0; c < d.crossing_count(); ++c) xs[perm[c]] = d.crossing(c);
  std::vector<Edge> es = d.edges();
  for (Edge& e : es)
    for (Port* p : {&e.tail, &e.head})
      if (p->crossing != kNoCrossing) p->crossing = perm[p->crossing];
  return Diagram(std::move(xs), std::move(es), d.outer_face(), d.has_closure_arcs());
}

bool isomorphic(const Diagram& a, const Diagram& b) {
  if (a.crossing_count() != b.crossing_count() || a.edge_count() != b.edge_count() ||
      a.face_count() != b.face_count())
    return false;
  const int m = a.edge_count(), n = a.crossing_count();
  std::vector<int> emap(m, -1), einv(m, -1), xmap(n, -1), xinv(n, -1);

  // Extends the map from edge ea -> eb over its connected component.
  auto grow = [&](int ea, int eb, std::vector<int>& touched_e, std::vector<int>& touched_x) {
    std::vector<std::pair<int, int>> stack{{ea, eb}};
    auto bind_edge = [&](int x, int y) {
      if (emap[x] == y && einv[y] == x) return true;
      if (emap[x] != -1 || einv[y] != -1) return false;
      emap[x] = y;
      einv[y] = x;
      touched_e.push_back(x);
      stack.push_back({x, y});
      return true;
    };
    if (emap[ea] != -1 || einv[eb] != -1) return false;
    emap[ea] = eb;
    einv[eb] = ea;
    touched_e.push_back(ea);
    while (!stack.empty()) {
      const auto [x, y] = stack.back();
      stack.pop_back();
      const Edge &ex = a.edge(x), &ey = b.edge(y);
      if (ex.is_free_loop() != ey.is_free_loop() || ex.breaks != ey.breaks) return false;
      if (ex.is_free_loop()) continue;
      for (auto [px, py] : {std::pair{ex.tail, ey.tail}, std::pair{ex.head, ey.head}}) {
        if (px.slot != py.slot) return false;
        if (xmap[px.crossing] == -1 && xinv[py.crossing] == -1) {
          if (a.crossing(px.crossing).sign != b.crossing(py.crossing).sign) return false;
          xmap[px.crossing] = py.crossing;
          xinv[py.crossing] = px.crossing;
          touched_x.push_back(px.crossing);
          for (int s = 0; s < 4; ++s)
            if (!bind_edge(a.edge_at(px.crossing, s), b.edge_at(py.crossing, s))) return false;
        } else if (xmap[px.crossing] != py.crossing) {
          return false;
        }
      }
    }
    return true;
  };

  auto faces_match = [&] {
    std::vector<int> fmap(a.face_count(), -1), finv(b.face_count(), -1);
    auto bind = [&](int x, int y) {
      if (fmap[x] == -1 && finv[y] == -1) {
        fmap[x] = y;
        finv[y] = x;
        return true;
      }
      return fmap[x] == y;
    };
    for (int e = 0; e < m; ++e) {
      if (!bind(a.edge(e).left_face, b.edge(emap[e]).left_face)) return false;
      if (!bind(a.edge(e).right_face, b.edge(emap[e]).right_face)) return false;
    }
    return m == 0 || fmap[a.outer_face()] == b.outer_face();
  };

  std::function<bool()> solve = [&]() -> bool {
    int ea = 0;
    while (ea < m && emap[ea] != -1) ++ea;
    if (ea == m) return faces_match();
    for (int eb = 0; eb < m; ++eb) {
      if (einv[eb] != -1) continue;
      std::vector<int> te, tx;
      if (grow(ea, eb, te, tx) && solve()) return true;
      for (int e : te) {
        einv[emap[e]] = -1;
        emap[e] = -1;
      }
      for (int x : tx) {
        xinv[xmap[x]] = -1;
        xmap[x] = -1;
      }
    }
    return false;
  };
  return solve();
}

}  // namespace braidkh::oracle
