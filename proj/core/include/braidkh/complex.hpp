#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "braidkh/diagram.hpp"
#include "braidkh/snf.hpp"
#include "braidkh/states.hpp"

namespace braidkh {

struct Tridegree {
  int i = 0;
  int j = 0;
  int k = 0;

  friend auto operator<=>(const Tridegree&, const Tridegree&) = default;
};

/// A smoothing with a sign on every state circle. Bit c of `minus` is set when
/// circle c (in tracing order) carries a minus.
struct EnhancedState {
  Smoothing smoothing;
  std::uint64_t minus = 0;
  Tridegree grade;

  friend bool operator==(const EnhancedState& a, const EnhancedState& b) {
    return a.smoothing.bits() == b.smoothing.bits() && a.minus == b.minus;
  }
};

/// Generator order: smoothing bits ascending, then labels lexicographically
/// over circle ids with + before -.
bool generator_less(const EnhancedState& a, const EnhancedState& b);

struct Term {
  EnhancedState state;
  int coeff = 0;
};

/// Per smoothing data cached for the whole cube of resolutions.
struct ResolvedSmoothing {
  int circles = 0;
  int sigma = 0;
  std::vector<int> circle_of_edge;
  std::vector<int> first_edge;
  std::vector<CircleType> type;
};

/// The tri-graded chain complex of enhanced states of one diagram.
class ChainComplex {
 public:
  explicit ChainComplex(const Diagram& d, int cap = kDefaultCap);

  const Diagram& diagram() const noexcept { return d_; }
  int writhe() const noexcept { return w_; }
  const ResolvedSmoothing& smoothing(std::uint64_t bits) const { return cube_.at(bits); }

  /// Gradings of a labelling of the given smoothing.
  Tridegree grade(std::uint64_t bits, std::uint64_t minus) const;
  EnhancedState make_state(std::uint64_t bits, std::uint64_t minus) const;

  /// Bases of every nonzero chain group, in generator order.
  const std::map<Tridegree, std::vector<EnhancedState>>& groups() const noexcept { return groups_; }
  /// Position of a generator inside its chain group.
  int index_of(const EnhancedState& s) const;
  std::size_t generator_count() const noexcept { return generators_; }

  /// d_v(S) from the merge/split rule table, sign (-1)^{t_{v,S}} included.
  /// Throws PreconditionError if v is A^{-1}-smoothed in S.
  std::vector<Term> partial_differential(const EnhancedState& s, int v) const;
  std::vector<Term> differential(const EnhancedState& s) const;

  /// [S:S']_v from its defining conditions (smoothings, shared labels, j, k).
  int incidence(const EnhancedState& s, const EnhancedState& t, int v) const;

  /// Matrix of d : C_{i,j,k} -> C_{i-1,j,k}, keyed by the source tridegree.
  std::map<Tridegree, SparseMatrix> differential_matrices() const;

 private:
  Diagram d_;
  int n_ = 0;
  int w_ = 0;
  std::vector<ResolvedSmoothing> cube_;
  std::map<Tridegree, std::vector<EnhancedState>> groups_;
  std::vector<std::vector<int>> position_;  // [bits][minus] -> index in group
  std::size_t generators_ = 0;
};

std::map<Tridegree, std::vector<EnhancedState>> enhanced_states(const Diagram& d, int cap = kDefaultCap);
std::map<Tridegree, SparseMatrix> differential_matrices(const Diagram& d, int cap = kDefaultCap);

/// Checks that consecutive differentials compose to zero. Returns the source
/// tridegree of the first failing composite, if any.
std::optional<Tridegree> check_d_squared(const std::map<Tridegree, SparseMatrix>& mats);

struct AnticommuteReport {
  bool ok = true;
  std::size_t pairs_checked = 0;
  std::string witness;  // first violation, empty when ok
};

/// d_u d_v = -d_v d_u on every generator and every pair u != v of A-smoothed crossings.
AnticommuteReport verify_anticommute(const ChainComplex& c);
AnticommuteReport verify_anticommute(const Diagram& d, int cap = kDefaultCap);

std::string to_string(const EnhancedState& s, const ChainComplex& c);

/// [{"i":..,"j":..,"k":..,"rows":..,"cols":..,"entries":[[r,c,v],...]}, ...]
std::string matrices_json(const std::map<Tridegree, SparseMatrix>& mats, int indent = -1);

}  // namespace braidkh
