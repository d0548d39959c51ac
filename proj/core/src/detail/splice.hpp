#pragma once

#include <array>
#include <utility>
#include <vector>

#include "braidkh/diagram.hpp"

namespace braidkh::detail {

/// A crossing to delete; the strand arriving at slot s leaves through
/// partner[s]. partner must be an involution without fixed points.
struct Cut {
  int crossing = 0;
  std::array<int, 4> partner{};
};

/// Deletes the cut crossings, joining the edge pieces through them into new
/// edges. Pieces whose traversal directions disagree pick up one break per
/// reversal. Faces listed in `face_merges` are identified. Surviving crossings
/// keep their relative order; a merged edge takes the direction and id order
/// of its lowest-numbered piece. Its faces come from the first piece not listed
/// in `face_blocked` (pieces whose faces vanish with the cut).
Diagram splice_out(const Diagram& d, const std::vector<Cut>& cuts,
                   const std::vector<std::pair<int, int>>& face_merges, bool keep_closure,
                   const std::vector<int>& face_blocked = {});

/// Slot pairing of a smoothing: A joins (0,1),(2,3); A^{-1} joins (0,3),(1,2).
inline std::array<int, 4> smoothing_partner(bool inverse) {
  return inverse ? std::array<int, 4>{3, 2, 1, 0} : std::array<int, 4>{1, 0, 3, 2};
}

}  // namespace braidkh::detail
