#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace braidkh {

inline constexpr int kNoCrossing = -1;

/// One of the four slots of a crossing. Slots are numbered counterclockwise,
/// slot 0 holds the incoming end of the under-strand, so slots 0 and 2 carry
/// the under-strand and slots 1 and 3 the over-strand.
struct Port {
  int crossing = kNoCrossing;
  int slot = 0;

  friend bool operator==(const Port&, const Port&) = default;
};

enum class Side : std::uint8_t { Left = 0, Right = 1 };

/// Directed arc between two crossing ports, or a crossing-free closed loop.
///
/// `breaks` counts orientation-reversal marks carried by the arc. Plain link
/// diagrams have none; partially smoothed diagrams acquire one per disoriented
/// smoothing arc. `closure` is the signed number of braid-closure arcs the edge
/// runs along (in its own direction); it is only meaningful when the diagram
/// was built from a braid word.
struct Edge {
  Port tail;
  Port head;
  int left_face = 0;
  int right_face = 0;
  int breaks = 0;
  int closure = 0;

  bool is_free_loop() const noexcept { return tail.crossing == kNoCrossing; }
  int face(Side s) const noexcept { return s == Side::Left ? left_face : right_face; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Crossing {
  int sign = 1;
  std::array<int, 4> edges{};  // edge id at each slot, counterclockwise

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Directed traversal of one edge; `forward` follows the edge direction.
struct EdgeStep {
  int edge = 0;
  bool forward = true;

  friend bool operator==(const EdgeStep&, const EdgeStep&) = default;
};

/// Reference to one side of one edge, used for face boundaries and anchors.
struct SideRef {
  int edge = 0;
  Side side = Side::Left;

  int encode() const noexcept { return 2 * edge + static_cast<int>(side); }
  static SideRef decode(int code) noexcept {
    return SideRef{code / 2, (code & 1) ? Side::Right : Side::Left};
  }
  friend bool operator==(const SideRef&, const SideRef&) = default;
  friend auto operator<=>(const SideRef& a, const SideRef& b) { return a.encode() <=> b.encode(); }
};

/// True when the slot is an incoming end for a crossing of the given sign.
constexpr bool slot_is_incoming(int sign, int slot) noexcept {
  switch (slot & 3) {
    case 0: return true;
    case 2: return false;
    case 1: return sign < 0;
    default: return sign > 0;
  }
}

/// Oriented link diagram on the sphere with a distinguished outer face.
///
/// The embedding is a rotation system (slot order at each crossing) plus an
/// explicit face id on both sides of every edge, which also places split
/// components and free loops inside their faces. Construction validates and
/// canonicalises face numbering; the object is immutable afterwards.
class Diagram {
 public:
  /// Empty diagram (no crossings, no edges, one face).
  Diagram();

  /// Validates and takes ownership. Face ids are renumbered by first use.
  /// Throws NonPlanarError / OrientationError / ParseError on bad input.
  Diagram(std::vector<Crossing> crossings, std::vector<Edge> edges, int outer_face,
          bool has_closure_arcs = false);

  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Crossing& crossing(int c) const { return crossings_.at(c); }
  const Edge& edge(int e) const { return edges_.at(e); }

  int crossing_count() const noexcept { return static_cast<int>(crossings_.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  int face_count() const noexcept { return face_count_; }
  int outer_face() const noexcept { return outer_face_; }
  bool has_closure_arcs() const noexcept { return has_closure_arcs_; }
  bool has_breaks() const noexcept;

  /// Edge at a crossing slot and whether that end is the edge's tail.
  int edge_at(int c, int slot) const { return crossings_[c].edges[slot & 3]; }
  bool is_tail_at(int c, int slot) const;

  /// Face occupying the corner between slot q and slot q+1 of crossing c.
  int corner_face(int c, int q) const;

  /// Side of the edge met when arriving at (c, slot) with the face on the left.
  SideRef arrival_side(int c, int slot) const;

  /// Next boundary step of a face walk (face kept on the left).
  SideRef next_on_face(SideRef s) const;

  /// All face boundary cycles, each a list of sides in walk order.
  std::vector<std::vector<SideRef>> boundary_cycles() const;

  /// Number of connected components of the underlying graph (free loops count).
  int component_count() const;

  friend bool operator==(const Diagram&, const Diagram&) = default;

 private:
  void canonicalise_faces();
  void validate() const;

  std::vector<Crossing> crossings_;
  std::vector<Edge> edges_;
  int face_count_ = 1;
  int outer_face_ = 0;
  bool has_closure_arcs_ = false;
};

/// Braid word on `strands` strands; letter g > 0 is sigma_g, g < 0 its inverse.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

/// Parses "Bk l1 l2 ..." (k = strand count, then signed generator indices).
BraidWord parse_braid_text(std::string_view text);
std::string to_string(const BraidWord& word);

/// Closure of a braid, strands running down through the braid box and back
/// up through closure arcs drawn around the left, strand k outermost.
Diagram braid_closure(const BraidWord& word);

/// parse_braid_text followed by braid_closure.
Diagram parse_braid_word(std::string_view text);

/// Sum of crossing signs.
int writhe(const Diagram& d);

/// Reverses every edge. Crossing signs and labels are unchanged.
Diagram reverse_orientation(const Diagram& d);

}  // namespace braidkh
