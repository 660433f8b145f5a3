#pragma once

#include <compare>

#include "brickseq/brick.hpp"

namespace brickseq {

/// Largest catalog footprint (2x6).
inline constexpr int kMaxFootprintArea = 12;
/// Parent-side connector tokens cover two vertical directions.
inline constexpr int kConnectorTokenCount = 2 * kMaxFootprintArea;
inline constexpr int kAnchorTokenCount = kMaxFootprintArea;

/// Relative placement of a child brick on its parent.
///
/// The shared reference stud q is the lexicographically smallest (x, then y) cell of
/// the footprint intersection. With (u_p, v_p) = q - parent origin, (u_c, v_c) =
/// q - child origin and s = 0 for "child above", 1 for "child below":
///
///   f = s * h_p * w_p + v_p * h_p + u_p
///   m = v_c * h_c + u_c
struct AttachmentCode {
  int f = 0;
  int m = 0;
  auto operator<=>(const AttachmentCode&) const = default;
};

/// Number of valid connector values for a parent of this size (2 * h * w).
constexpr int connector_count(BrickSize parent) { return 2 * parent.h * parent.w; }

/// Throws Error(NotAttached) unless the bricks are vertically adjacent with overlapping
/// footprints.
AttachmentCode encode_attachment(const Brick& parent, const Brick& child);

/// Inverse of encode_attachment. Throws Error(TokenOutOfRange) when f >= 2*h_p*w_p or
/// m >= h*w. The result is not bounds-checked.
Brick decode_attachment(int f, int m, const Brick& parent, BrickSize child);

}  // namespace brickseq
