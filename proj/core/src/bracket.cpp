#include "braidkh/bracket.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "braidkh/errors.hpp"
#include "detail/splice.hpp"
#include "json.hpp"

namespace braidkh {

namespace {

// (sigma, d) -> number of states, per configuration.
using Histogram = std::unordered_map<std::string, std::map<std::pair<int, int>, std::uint64_t>>;

void accumulate(const StateTracer& tracer, int n, std::uint64_t lo, std::uint64_t hi, Histogram& out) {
  StateTracer::Result r;
  for (std::uint64_t bits = lo; bits < hi; ++bits) {
    tracer.trace(bits, r);
    int d = 0;
    for (int c = 0; c < r.circles; ++c) d += classify(r.break_points[c]) == CircleType::D;
    const int s = n - 2 * std::popcount(bits);
    ++out[h_configuration(r).canonical][{s, d}];
  }
}

}  // namespace

LaurentPoly BracketElement::coefficient(const std::string& config) const {
  auto it = terms_.find(config);
  return it == terms_.end() ? LaurentPoly() : it->second;
}

void BracketElement::add(const std::string& config, const LaurentPoly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(config, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BracketElement& BracketElement::operator+=(const BracketElement& o) {
  for (const auto& [c, p] : o.terms_) add(c, p);
  return *this;
}

BracketElement BracketElement::scaled(const LaurentPoly& p) const {
  BracketElement r;
  for (const auto& [c, q] : terms_) r.add(c, q * p);
  return r;
}

std::string BracketElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [c, p] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + p.to_string() + ")[" + c + "]";
  }
  return out;
}

BracketElement bracket_br(const Diagram& d, int cap, int threads) {
  check_cap(d, cap);
  const int n = d.crossing_count();
  const std::uint64_t total = std::uint64_t{1} << n;
  const int workers = static_cast<int>(std::clamp<std::uint64_t>(threads, 1, total));

  std::vector<Histogram> parts(workers);
  if (workers == 1) {
    accumulate(StateTracer(d), n, 0, total, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
      const std::uint64_t lo = total * t / workers, hi = total * (t + 1) / workers;
      pool.emplace_back([&d, n, lo, hi, &part = parts[t]] { accumulate(StateTracer(d), n, lo, hi, part); });
    }
    for (auto& th : pool) th.join();
  }

  std::map<std::string, std::map<std::pair<int, int>, std::uint64_t>> merged;
  for (auto& part : parts)
    for (auto& [config, counts] : part)
      for (auto& [key, k] : counts) merged[config][key] += k;

  std::vector<LaurentPoly> delta_pow{LaurentPoly(1)};
  BracketElement b;
  for (const auto& [config, counts] : merged) {
    LaurentPoly p;
    for (const auto& [key, k] : counts) {
      const auto [s, dc] = key;
      while (static_cast<int>(delta_pow.size()) <= dc) delta_pow.push_back(delta_pow.back() * LaurentPoly::delta());
      p += delta_pow[dc].shifted(s) * LaurentPoly(BigInt(k));
    }
    b.add(config, p);
  }
  return b;
}

std::pair<Diagram, Diagram> skein_expand(const Diagram& d, int v) {
  if (v < 0 || v >= d.crossing_count())
    throw PreconditionError("no crossing " + std::to_string(v) + " to expand");
  auto smooth = [&](bool inverse) {
    const int a = d.corner_face(v, inverse ? 0 : 1);
    const int b = d.corner_face(v, inverse ? 2 : 3);
    return detail::splice_out(d, {detail::Cut{v, detail::smoothing_partner(inverse)}}, {{a, b}},
                              true);
  };
  return {smooth(false), smooth(true)};
}

LightenedBracket lighten(const BracketElement& b) {
  LightenedBracket l;
  for (const auto& [config, p] : b.terms()) {
    const int m = Configuration{config}.circle_count();
    for (const auto& [e, c] : p.terms()) l.add_term(e, m, c);
  }
  return l;
}

LightenedBracket normalize(const Diagram& d, const LightenedBracket& x) {
  const int w = writhe(d);
  return x.scaled(-3 * w, w % 2 == 0 ? 1 : -1);
}

BracketElement normalize(const Diagram& d, const BracketElement& x) {
  const int w = writhe(d);
  return x.scaled(LaurentPoly::monomial(-3 * w, w % 2 == 0 ? 1 : -1));
}

LaurentPoly specialize_chi_to_delta(const LightenedBracket& l) {
  LaurentPoly r;
  for (const auto& [k, c] : l.terms()) r += LaurentPoly::delta().pow(k.second).shifted(k.first) * LaurentPoly(c);
  return r;
}

LaurentPoly kauffman_oracle(const Diagram& d, int cap) {
  check_cap(d, cap);
  const int n = d.crossing_count();
  const int m = d.edge_count();
  std::vector<int> parent(m);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // counts[sigma][circles] = number of states.
  std::map<int, std::map<int, std::uint64_t>> counts;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::iota(parent.begin(), parent.end(), 0);
    int circles = m;
    for (int x = 0; x < n; ++x) {
      const auto& e = d.crossing(x).edges;
      const bool inverse = (bits >> x) & 1;
      using Join = std::array<std::pair<int, int>, 2>;
      const Join joins = inverse ? Join{{{0, 3}, {1, 2}}} : Join{{{0, 1}, {2, 3}}};
      for (auto [p, q] : joins) {
        const int a = find(e[p]), b = find(e[q]);
        if (a != b) {
          parent[a] = b;
          --circles;
        }
      }
    }
    ++counts[n - 2 * std::popcount(bits)][circles];
  }
  LaurentPoly r;
  for (const auto& [s, by_circles] : counts)
    for (const auto& [c, k] : by_circles)
      r += LaurentPoly::delta().pow(c).shifted(s) * LaurentPoly(BigInt(k));
  return r;
}

std::pair<Configuration, LaurentPoly> seifert_leading_term(const Diagram& d, int cap) {
  const BracketElement b = bracket_br(d, cap);
  int best = -1;
  const std::string* best_config = nullptr;
  bool unique = false;
  for (const auto& [config, p] : b.terms()) {
    const int m = Configuration{config}.circle_count();
    if (m > best) {
      best = m;
      best_config = &config;
      unique = true;
    } else if (m == best) {
      unique = false;
    }
  }
  const Configuration sei = configuration_of(seifert_state(d));
  if (!best_config || !unique) throw std::logic_error("leading configuration is not unique");
  if (*best_config != sei.canonical)
    throw std::logic_error("leading configuration " + *best_config +
                           " differs from the Seifert configuration " + sei.canonical);
  const LaurentPoly coeff = b.coefficient(*best_config);
  if (!(coeff == LaurentPoly::monomial(writhe(d))))
    throw std::logic_error("leading coefficient " + coeff.to_string() + " is not A^w");
  return {sei, coeff};
}

std::string poly_json(const LaurentPoly& p, int indent) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [e, c] : p.terms()) j[std::to_string(e)] = c.str();
  return j.dump(indent);
}

std::string bracket_json(const BracketElement& b, int indent) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [config, p] : b.terms()) {
    nlohmann::ordered_json poly = nlohmann::ordered_json::object();
    for (const auto& [e, c] : p.terms()) poly[std::to_string(e)] = c.str();
    terms.push_back({{"config", config}, {"poly", poly}});
  }
  return nlohmann::ordered_json{{"terms", terms}}.dump(indent);
}

std::string lightened_json(const LightenedBracket& l, int indent) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [k, c] : l.terms()) terms.push_back({{"a", k.first}, {"chi", k.second}, {"coeff", c.str()}});
  return nlohmann::ordered_json{{"terms", terms}}.dump(indent);
}

}  // namespace braidkh
