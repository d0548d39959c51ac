#include "braidkh/complex.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "braidkh/errors.hpp"
#include "json.hpp"

namespace braidkh {

namespace {

constexpr std::uint64_t bit(int x) { return std::uint64_t{1} << x; }

std::uint64_t reverse_low_bits(std::uint64_t r, int width) {
  std::uint64_t out = 0;
  for (int b = 0; b < width; ++b)
    if ((r >> b) & 1) out |= bit(width - 1 - b);
  return out;
}

void sort_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return generator_less(a.state, b.state); });
}

// Adds `src` scaled by `sign` into `acc`, merging equal generators.
void add_into(std::vector<Term>& acc, const std::vector<Term>& src, int sign) {
  for (const Term& t : src) {
    auto it = std::find_if(acc.begin(), acc.end(), [&](const Term& a) { return a.state == t.state; });
    if (it == acc.end())
      acc.push_back(Term{t.state, sign * t.coeff});
    else
      it->coeff += sign * t.coeff;
  }
  acc.erase(std::remove_if(acc.begin(), acc.end(), [](const Term& a) { return a.coeff == 0; }), acc.end());
}

}  // namespace

bool generator_less(const EnhancedState& a, const EnhancedState& b) {
  if (a.smoothing.bits() != b.smoothing.bits()) return a.smoothing.bits() < b.smoothing.bits();
  const std::uint64_t diff = a.minus ^ b.minus;
  if (diff == 0) return false;
  return (a.minus & (diff & -diff)) == 0;
}

ChainComplex::ChainComplex(const Diagram& d, int cap) : d_(d), n_(d.crossing_count()), w_(braidkh::writhe(d)) {
  check_cap(d, cap);
  const std::uint64_t total = bit(n_);
  cube_.resize(total);
  position_.resize(total);
  StateTracer tracer(d);
  StateTracer::Result r;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    tracer.trace(bits, r, false);
    if (r.circles > 30) throw SizeCapError(r.circles, 30);
    ResolvedSmoothing& rs = cube_[bits];
    rs.circles = r.circles;
    rs.sigma = n_ - 2 * std::popcount(bits);
    rs.circle_of_edge = r.circle_of_edge;
    rs.first_edge = r.first_edge;
    rs.type.resize(r.circles);
    for (int c = 0; c < r.circles; ++c) rs.type[c] = classify(r.break_points[c]);
  }
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    const int c = cube_[bits].circles;
    position_[bits].resize(bit(c));
    for (std::uint64_t r2 = 0; r2 < bit(c); ++r2) {
      const EnhancedState s = make_state(bits, reverse_low_bits(r2, c));
      auto& group = groups_[s.grade];
      position_[bits][s.minus] = static_cast<int>(group.size());
      group.push_back(s);
      ++generators_;
    }
  }
}

Tridegree ChainComplex::grade(std::uint64_t bits, std::uint64_t minus) const {
  const ResolvedSmoothing& rs = cube_.at(bits);
  int tau_d = 0, tau_h = 0;
  for (int c = 0; c < rs.circles; ++c) {
    const int s = (minus >> c) & 1 ? -1 : 1;
    (rs.type[c] == CircleType::D ? tau_d : tau_h) += s;
  }
  return Tridegree{(rs.sigma - w_) / 2, (rs.sigma - 3 * w_ + 2 * tau_d) / 2, tau_h};
}

EnhancedState ChainComplex::make_state(std::uint64_t bits, std::uint64_t minus) const {
  return EnhancedState{Smoothing(n_, bits), minus, grade(bits, minus)};
}

int ChainComplex::index_of(const EnhancedState& s) const {
  return position_.at(s.smoothing.bits()).at(s.minus);
}

std::vector<Term> ChainComplex::partial_differential(const EnhancedState& s, int v) const {
  if (v < 0 || v >= n_) throw PreconditionError("crossing index out of range");
  const std::uint64_t bits = s.smoothing.bits();
  if (bits & bit(v)) throw PreconditionError("crossing " + std::to_string(v) + " is not A-smoothed");
  const std::uint64_t tbits = bits | bit(v);
  const ResolvedSmoothing& src = cube_[bits];
  const ResolvedSmoothing& dst = cube_[tbits];

  std::vector<int> at_src, at_dst;
  for (int q = 0; q < 4; ++q) {
    const int e = d_.edge_at(v, q);
    at_src.push_back(src.circle_of_edge[e]);
    at_dst.push_back(dst.circle_of_edge[e]);
  }
  for (auto* list : {&at_src, &at_dst}) {
    std::sort(list->begin(), list->end());
    list->erase(std::unique(list->begin(), list->end()), list->end());
  }

  // Circles away from v keep their labels.
  std::uint64_t base = 0;
  for (int c = 0; c < src.circles; ++c) {
    if (std::find(at_src.begin(), at_src.end(), c) != at_src.end()) continue;
    if ((s.minus >> c) & 1) base |= bit(dst.circle_of_edge[src.first_edge[c]]);
  }
  auto minus_of = [&](int c) { return ((s.minus >> c) & 1) != 0; };
  using CT = CircleType;
  std::vector<std::uint64_t> out;  // target minus-masks

  if (at_src.size() == 2 && at_dst.size() == 1) {
    const int a = at_src[0], b = at_src[1], m = at_dst[0];
    const CT ta = src.type[a], tb = src.type[b], tm = dst.type[m];
    const bool expect_d = ta == tb;
    if ((tm == CT::D) != expect_d) throw std::logic_error("merge produced a circle of the wrong type");
    if (ta == CT::D && tb == CT::D) {
      if (minus_of(a) && minus_of(b)) out.push_back(base | bit(m));
      else if (minus_of(a) != minus_of(b)) out.push_back(base);
    } else if (ta == CT::H && tb == CT::H) {
      if (minus_of(a) != minus_of(b)) out.push_back(base);
    } else {
      const int dc = ta == CT::D ? a : b, hc = ta == CT::D ? b : a;
      if (minus_of(dc)) out.push_back(minus_of(hc) ? base | bit(m) : base);
    }
  } else if (at_src.size() == 1 && at_dst.size() == 2) {
    const int a = at_src[0], b = at_dst[0], c = at_dst[1];
    const CT ta = src.type[a], tb = dst.type[b], tc = dst.type[c];
    if (ta == CT::D) {
      if (tb != tc) throw std::logic_error("d-circle split into circles of different types");
      if (minus_of(a)) {
        out.push_back(base | bit(c));
        out.push_back(base | bit(b));
      } else if (tb == CT::D) {
        out.push_back(base);
      }
    } else {
      if (tb == tc) throw std::logic_error("h-circle split into circles of equal types");
      const int hc = tb == CT::H ? b : c;
      out.push_back(minus_of(a) ? base | bit(hc) : base);
    }
  } else {
    throw std::logic_error("smoothing change at crossing " + std::to_string(v) +
                           " is neither a merge nor a split");
  }

  const int sign = std::popcount(bits >> (v + 1)) % 2 ? -1 : 1;
  std::vector<Term> terms;
  for (std::uint64_t mm : out) terms.push_back(Term{make_state(tbits, mm), sign});
  sort_terms(terms);
  return terms;
}

std::vector<Term> ChainComplex::differential(const EnhancedState& s) const {
  std::vector<Term> acc;
  for (int v = 0; v < n_; ++v)
    if (!(s.smoothing.bits() & bit(v))) add_into(acc, partial_differential(s, v), 1);
  sort_terms(acc);
  return acc;
}

int ChainComplex::incidence(const EnhancedState& s, const EnhancedState& t, int v) const {
  const std::uint64_t sb = s.smoothing.bits(), tb = t.smoothing.bits();
  if (v < 0 || v >= n_) return 0;
  if ((sb & bit(v)) || !(tb & bit(v))) return 0;
  if ((sb ^ tb) != bit(v)) return 0;
  // A circle is common when it survives with the same edge set.
  const ResolvedSmoothing& src = cube_[sb];
  const ResolvedSmoothing& dst = cube_[tb];
  for (int c = 0; c < src.circles; ++c) {
    const int c2 = dst.circle_of_edge[src.first_edge[c]];
    bool same = true;
    for (int e = 0; e < d_.edge_count() && same; ++e)
      same = (src.circle_of_edge[e] == c) == (dst.circle_of_edge[e] == c2);
    if (same && ((s.minus >> c) & 1) != ((t.minus >> c2) & 1)) return 0;
  }
  const Tridegree gs = grade(sb, s.minus), gt = grade(tb, t.minus);
  return gs.j == gt.j && gs.k == gt.k ? 1 : 0;
}

std::map<Tridegree, SparseMatrix> ChainComplex::differential_matrices() const {
  std::map<Tridegree, SparseMatrix> mats;
  for (const auto& [g, basis] : groups_) {
    const Tridegree target{g.i - 1, g.j, g.k};
    auto it = groups_.find(target);
    if (it == groups_.end()) continue;
    SparseMatrix m;
    m.rows = static_cast<int>(it->second.size());
    m.cols = static_cast<int>(basis.size());
    for (int col = 0; col < m.cols; ++col)
      for (const Term& t : differential(basis[col])) {
        if (!(t.state.grade == target)) throw std::logic_error("differential left its tridegree");
        m.entries.push_back(Triplet{index_of(t.state), col, t.coeff});
      }
    mats.emplace(g, std::move(m));
  }
  return mats;
}

std::map<Tridegree, std::vector<EnhancedState>> enhanced_states(const Diagram& d, int cap) {
  return ChainComplex(d, cap).groups();
}

std::map<Tridegree, SparseMatrix> differential_matrices(const Diagram& d, int cap) {
  return ChainComplex(d, cap).differential_matrices();
}

std::optional<Tridegree> check_d_squared(const std::map<Tridegree, SparseMatrix>& mats) {
  for (const auto& [g, m] : mats) {
    auto next = mats.find(Tridegree{g.i - 1, g.j, g.k});
    if (next == mats.end()) continue;
    // (next * m)[r][c] = sum_x next[r][x] m[x][c]
    std::vector<std::vector<std::pair<int, std::int64_t>>> by_row(m.rows);
    for (const Triplet& t : next->second.entries) by_row[t.col].emplace_back(t.row, t.value);
    std::map<std::pair<int, int>, std::int64_t> prod;
    for (const Triplet& t : m.entries)
      for (auto [r, v] : by_row[t.row]) prod[{r, t.col}] += v * t.value;
    for (const auto& [key, v] : prod)
      if (v != 0) return g;
  }
  return std::nullopt;
}

std::string to_string(const EnhancedState& s, const ChainComplex& c) {
  const ResolvedSmoothing& rs = c.smoothing(s.smoothing.bits());
  std::string out = "[";
  for (int v = 0; v < s.smoothing.size(); ++v) out += s.smoothing.at(v) == Resolution::A ? 'A' : 'B';
  out += "|";
  for (int x = 0; x < rs.circles; ++x) {
    out += rs.type[x] == CircleType::D ? 'd' : 'h';
    out += (s.minus >> x) & 1 ? '-' : '+';
  }
  out += "](" + std::to_string(s.grade.i) + "," + std::to_string(s.grade.j) + "," +
         std::to_string(s.grade.k) + ")";
  return out;
}

AnticommuteReport verify_anticommute(const ChainComplex& c) {
  AnticommuteReport report;
  const int n = c.diagram().crossing_count();
  for (const auto& [g, basis] : c.groups()) {
    for (const EnhancedState& s : basis) {
      const std::uint64_t bits = s.smoothing.bits();
      for (int u = 0; u < n; ++u) {
        if (bits & bit(u)) continue;
        const std::vector<Term> du = c.partial_differential(s, u);
        for (int v = u + 1; v < n; ++v) {
          if (bits & bit(v)) continue;
          const std::vector<Term> dv = c.partial_differential(s, v);
          std::vector<Term> sum;
          for (const Term& t : dv) {
            std::vector<Term> x = c.partial_differential(t.state, u);
            for (Term& y : x) y.coeff *= t.coeff;
            add_into(sum, x, 1);
          }
          for (const Term& t : du) {
            std::vector<Term> x = c.partial_differential(t.state, v);
            for (Term& y : x) y.coeff *= t.coeff;
            add_into(sum, x, 1);
          }
          ++report.pairs_checked;
          if (!sum.empty() && report.ok) {
            report.ok = false;
            report.witness = "generator " + to_string(s, c) + ", crossings " + std::to_string(u) +
                             " and " + std::to_string(v);
          }
        }
      }
    }
  }
  return report;
}

AnticommuteReport verify_anticommute(const Diagram& d, int cap) {
  return verify_anticommute(ChainComplex(d, cap));
}

std::string matrices_json(const std::map<Tridegree, SparseMatrix>& mats, int indent) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& [g, m] : mats) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    std::vector<Triplet> sorted = m.entries;
    std::sort(sorted.begin(), sorted.end(),
              [](const Triplet& a, const Triplet& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
    for (const Triplet& t : sorted) entries.push_back({t.row, t.col, t.value});
    out.push_back({{"i", g.i}, {"j", g.j}, {"k", g.k}, {"rows", m.rows}, {"cols", m.cols}, {"entries", entries}});
  }
  return out.dump(indent);
}

}  // namespace braidkh
