#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "braidkh/diagram.hpp"

namespace braidkh {

/// Reads the oriented planar-diagram JSON format:
///
///   {"crossings":[{"id":0,"sign":1,"rotation":[r0,r1,r2,r3]}, ...],
///    "edges":[{"id":0,"from":[c,slot],"to":[c,slot],"left":f,"right":f}, ...],
///    "outer_face":[side, ...]}
///
/// A rotation entry is an edge-end reference 2*edge + (0 for the edge's tail,
/// 1 for its head), listed counterclockwise starting at the incoming end of the
/// under-strand. Crossing-free loops are edges {"id":e,"free":true}. An entry
/// of "outer_face" is a side reference 2*edge + (0 left, 1 right). Per-edge
/// face ids are optional for connected diagrams and required otherwise.
/// Optional per-edge "breaks" and "closure" counters default to 0.
Diagram parse_pd(std::string_view json_text);
Diagram parse_pd(std::istream& in);

/// Serialises to the format above with explicit face ids (round-trips exactly).
std::string to_pd_json(const Diagram& d, int indent = -1);

}  // namespace braidkh
