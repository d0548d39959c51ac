#include "braidkh/homology.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace braidkh {

namespace {

struct Factors {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;
};

Factors factor(const SparseMatrix& m) {
  Factors f;
  for (const BigInt& d : smith_normal_form(m)) {
    ++f.rank;
    if (d > 1) f.torsion.push_back(d);
  }
  return f;
}

}  // namespace

HomologyTable homology_groups(const ChainComplex& c, int threads) {
  const auto mats = c.differential_matrices();
  std::vector<const std::pair<const Tridegree, SparseMatrix>*> work;
  for (const auto& entry : mats) work.push_back(&entry);
  std::vector<Factors> results(work.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t x = next++; x < work.size(); x = next++) results[x] = factor(work[x]->second);
  };
  const int pool_size = std::max(1, std::min<int>(threads, static_cast<int>(work.size())));
  if (pool_size == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < pool_size; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::map<Tridegree, const Factors*> by_source;
  for (std::size_t x = 0; x < work.size(); ++x) by_source[work[x]->first] = &results[x];

  HomologyTable table;
  for (const auto& [g, basis] : c.groups()) {
    HomologyGroup h;
    std::size_t out_rank = 0, in_rank = 0;
    if (auto it = by_source.find(g); it != by_source.end()) out_rank = it->second->rank;
    if (auto it = by_source.find(Tridegree{g.i + 1, g.j, g.k}); it != by_source.end()) {
      in_rank = it->second->rank;
      h.torsion = it->second->torsion;
    }
    h.betti = basis.size() - out_rank - in_rank;
    if (h.betti != 0 || !h.torsion.empty()) table.emplace(g, std::move(h));
  }
  return table;
}

HomologyTable homology_groups(const Diagram& d, int cap, int threads) {
  return homology_groups(ChainComplex(d, cap), threads);
}

EulerPoly euler_characteristic(const HomologyTable& t) {
  EulerPoly e;
  for (const auto& [g, h] : t) {
    if (h.betti == 0) continue;
    const int sign = ((g.i + g.j + g.k) % 2 == 0) ? 1 : -1;
    e.add_term(2 * g.j, 2 * g.k, BigInt(sign) * BigInt(h.betti));
  }
  return e;
}

EulerPoly chi_to_h(const LightenedBracket& l) {
  // (-H^2 - H^-2)^m, cached by m.
  std::vector<std::map<int, BigInt>> powers{{{0, BigInt(1)}}};
  auto power = [&](int m) -> const std::map<int, BigInt>& {
    while (static_cast<int>(powers.size()) <= m) {
      std::map<int, BigInt> next;
      for (const auto& [e, c] : powers.back()) {
        next[e + 2] -= c;
        next[e - 2] -= c;
      }
      powers.push_back(std::move(next));
    }
    return powers[m];
  };
  EulerPoly out;
  for (const auto& [k, c] : l.terms())
    for (const auto& [h, ch] : power(k.second)) out.add_term(k.first, h, c * ch);
  return out;
}

bool check_euler_identity(const Diagram& d, const HomologyTable& t, const BracketElement& b) {
  return chi_to_h(normalize(d, lighten(b))) == euler_characteristic(t);
}

bool check_euler_identity(const Diagram& d, int cap) {
  return check_euler_identity(d, homology_groups(d, cap), bracket_br(d, cap));
}

std::string homology_json(const HomologyTable& t, int indent) {
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const auto& [g, h] : t) {
    nlohmann::ordered_json tor = nlohmann::ordered_json::array();
    for (const BigInt& x : h.torsion) tor.push_back(x.str());
    groups.push_back({{"i", g.i}, {"j", g.j}, {"k", g.k}, {"betti", h.betti}, {"torsion", tor}});
  }
  nlohmann::ordered_json euler = nlohmann::ordered_json::object();
  const EulerPoly chi = euler_characteristic(t);
  for (const auto& [k, c] : chi.terms())
    euler["(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")"] = c.str();
  return nlohmann::ordered_json{{"groups", groups}, {"euler", euler}}.dump(indent);
}

std::string homology_csv(const HomologyTable& t) {
  std::ostringstream out;
  out << "i,j,k,betti,torsion\n";
  for (const auto& [g, h] : t) {
    out << g.i << ',' << g.j << ',' << g.k << ',' << h.betti << ',';
    for (std::size_t x = 0; x < h.torsion.size(); ++x) out << (x ? ";" : "") << h.torsion[x];
    out << '\n';
  }
  return out.str();
}

std::string homology_pretty(const HomologyTable& t) {
  std::ostringstream out;
  if (t.empty()) out << "  (all groups vanish)\n";
  for (const auto& [g, h] : t) {
    out << "  H(" << g.i << ',' << g.j << ',' << g.k << ") = ";
    bool first = true;
    if (h.betti) {
      out << "Z";
      if (h.betti > 1) out << '^' << h.betti;
      first = false;
    }
    for (const BigInt& x : h.torsion) {
      out << (first ? "" : " + ") << "Z/" << x;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace braidkh
