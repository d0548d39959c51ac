#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "braidkh/diagram.hpp"

namespace braidkh {

inline constexpr int kDefaultCap = 24;
inline constexpr int kMaxCrossings = 63;

enum class Resolution : std::uint8_t { A = 0, AInverse = 1 };

/// One smoothing choice per crossing; bit v set means crossing v is
/// A^{-1}-smoothed.
class Smoothing {
 public:
  Smoothing() = default;
  Smoothing(int size, std::uint64_t bits);

  static Smoothing all_a(int size) { return Smoothing(size, 0); }

  int size() const noexcept { return size_; }
  std::uint64_t bits() const noexcept { return bits_; }
  Resolution at(int v) const noexcept {
    return (bits_ >> v) & 1 ? Resolution::AInverse : Resolution::A;
  }
  Smoothing with(int v, Resolution r) const;
  int a_count() const noexcept;
  int a_inverse_count() const noexcept { return size_ - a_count(); }

  friend bool operator==(const Smoothing&, const Smoothing&) = default;

 private:
  int size_ = 0;
  std::uint64_t bits_ = 0;
};

/// The smoothing of crossing c that disagrees with the link orientation.
inline Resolution disoriented_resolution(int sign) noexcept {
  return sign > 0 ? Resolution::AInverse : Resolution::A;
}

enum class CircleType : std::uint8_t { D, H };

/// d-circle iff half the number of break points is odd.
constexpr CircleType classify(int break_points) noexcept {
  return (break_points / 2) % 2 == 1 ? CircleType::D : CircleType::H;
}

struct StateCircle {
  int id = 0;
  int break_points = 0;
  CircleType type = CircleType::H;
  std::vector<EdgeStep> edge_cycle;  // starts at the circle's lowest edge, forward
  std::optional<int> winding;         // closed-braid diagrams only
  int parent = -1;                    // innermost circle containing this one
};

struct KauffmanState {
  Smoothing smoothing;
  std::vector<StateCircle> circles;

  int d_count() const noexcept;
  int h_count() const noexcept;
};

/// Plane configuration of circles up to isotopy: an unordered nesting forest.
/// The canonical form writes each node as "(" + sorted child strings + ")"
/// and concatenates the sorted root strings; the empty configuration is "".
struct Configuration {
  std::string canonical;

  int circle_count() const noexcept;
  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// Builds the canonical form of a forest given by parent pointers (-1 = root).
Configuration configuration_from_forest(const std::vector<int>& parent);

/// Traces the state circles of one smoothing, with break points and nesting.
KauffmanState resolve(const Diagram& d, const Smoothing& m);

/// #A-smoothings minus #A^{-1}-smoothings.
int sigma(const KauffmanState& s);
int sigma(const Smoothing& m);

/// Every crossing smoothed along the orientation.
Smoothing seifert_smoothing(const Diagram& d);
KauffmanState seifert_state(const Diagram& d);

/// Nesting forest of the h-circles only; d-circles are removed and their
/// children reattach to the nearest h-ancestor.
Configuration configuration_of(const KauffmanState& s);

/// Calls `visit` on all 2^n states in ascending bit order. Throws
/// SizeCapError when the crossing count exceeds `cap`.
void enumerate_states(const Diagram& d, const std::function<void(const KauffmanState&)>& visit,
                      int cap = kDefaultCap);

/// Signed number of closure-arc traversals along the circle. Only defined for
/// diagrams built from a braid word.
int winding_number(const Diagram& d, const StateCircle& c);

/// Throws SizeCapError if d has more crossings than cap (or than 63).
void check_cap(const Diagram& d, int cap);

/// Reusable circle tracer: precomputes per-crossing tables once and resolves
/// smoothings without rebuilding them. Used by the state sums and the chain
/// complex; `resolve` is a thin wrapper around it.
class StateTracer {
 public:
  explicit StateTracer(const Diagram& d);

  struct Result {
    int circles = 0;
    std::vector<int> circle_of_edge;
    std::vector<int> break_points;
    std::vector<int> winding;
    std::vector<int> first_edge;
    std::vector<int> parent;  // innermost containing circle, -1 for roots
  };

  /// Fills `out` (reusing its storage). Nesting is only computed when asked.
  void trace(std::uint64_t bits, Result& out, bool with_nesting = true) const;

  const Diagram& diagram() const noexcept { return *d_; }

 private:
  const Diagram* d_;
  std::vector<std::array<int, 4>> edge_;
  std::vector<std::array<bool, 4>> tail_;
  std::vector<std::array<int, 4>> corner_;
  std::vector<int> sign_;
  mutable std::vector<int> region_;
  mutable std::vector<int> entry_;
  mutable std::vector<std::vector<int>> region_circles_;
};

/// Canonical h-configuration from a traced state (d-circles skipped).
Configuration h_configuration(const StateTracer::Result& r);

}  // namespace braidkh
