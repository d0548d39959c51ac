#pragma once

#include <map>
#include <string>
#include <vector>

#include "braidkh/bracket.hpp"
#include "braidkh/complex.hpp"
#include "braidkh/laurent.hpp"

namespace braidkh {

struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<BigInt> torsion;  // each >= 2, each dividing the next

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Nonzero groups only.
using HomologyTable = std::map<Tridegree, HomologyGroup>;

HomologyTable homology_groups(const ChainComplex& c, int threads = 1);
HomologyTable homology_groups(const Diagram& d, int cap = kDefaultCap, int threads = 1);

/// Sum of (-1)^i (-A^2)^j (-H^2)^k betti(i,j,k).
EulerPoly euler_characteristic(const HomologyTable& t);

/// A lightened bracket with chi^m expanded as (-H^2 - H^-2)^m.
EulerPoly chi_to_h(const LightenedBracket& l);

/// Compares euler_characteristic(homology) with the normalised lightened
/// bracket read in the H variable.
bool check_euler_identity(const Diagram& d, int cap = kDefaultCap);
bool check_euler_identity(const Diagram& d, const HomologyTable& t, const BracketElement& b);

/// {"groups":[{"i":..,"j":..,"k":..,"betti":..,"torsion":[..]}, ...],
///  "euler":{"(a,h)":"coeff", ...}}
std::string homology_json(const HomologyTable& t, int indent = -1);
/// Header plus one row per group: i,j,k,betti,torsion (torsion joined by ';').
std::string homology_csv(const HomologyTable& t);
std::string homology_pretty(const HomologyTable& t);

}  // namespace braidkh
