#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "braidkh/diagram.hpp"

namespace braidkh {

enum class MoveKind {
  IIa_insert,
  IIa_remove,
  IIIa,
  IIIb,
  IIIc,
  IIId,
  IIIe,
  IIIf,
  IIIg,
  IIIh,
  RI_insert,
  IIb_insert,
};

std::string_view to_string(MoveKind k);
MoveKind parse_move_kind(std::string_view s);
bool is_braid_like(MoveKind k);

/// A place where a move applies.
///
/// Anchors by kind:
///   IIa_insert, IIb_insert: {sideA, sideB, a_over}; the strand of sideA is
///     pushed across the strand of sideB through their common face, passing
///     over it when a_over is 1.
///   IIa_remove, III*: {side} for any side bounding the bigon / triangle.
///   RI_insert: {side, sign}; a curl of the given sign in the face on that side.
/// Sides are SideRef codes (2 * edge + 0 for left, 1 for right).
struct MoveSite {
  MoveKind kind = MoveKind::IIa_insert;
  std::vector<int> anchor;
  std::uint64_t fingerprint = 0;  // of the diagram the site was found on; 0 = unchecked

  friend bool operator==(const MoveSite&, const MoveSite&) = default;
};

/// Structural hash of a diagram, used to detect stale sites.
std::uint64_t fingerprint(const Diagram& d);

std::vector<MoveSite> find_sites(const Diagram& d, MoveKind kind);

/// Applies a move. Deleted crossings are removed from the order (later labels
/// shift down), created ones are appended. Braid-closure markers are dropped.
/// Throws SiteInvalidError if the site does not match d.
Diagram apply(const Diagram& d, const MoveSite& site);

/// closure(base) and the result of n_moves random braid-like moves on it.
/// Insertions stop once a diagram reaches max_crossings.
std::pair<Diagram, Diagram> random_equivalent_pair(std::uint64_t seed, int n_moves, const BraidWord& base,
                                                   int max_crossings = 10);

/// The round unknot with m pairs of opposite curls (writhe 0, Whitney index
/// of the round circle).
Diagram figure4_family(int m);

/// [{"kind":"IIa_insert","anchor":[...]}, ...]
std::vector<MoveSite> parse_move_script(std::string_view json_text);
std::string move_script_json(const std::vector<MoveSite>& sites, int indent = -1);

}  // namespace braidkh
