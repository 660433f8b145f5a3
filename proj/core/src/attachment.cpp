#include "brickseq/attachment.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "brickseq/error.hpp"

namespace brickseq {

AttachmentCode encode_attachment(const Brick& parent, const Brick& child) {
  if (std::abs(child.z - parent.z) != 1 || !footprints_overlap(parent, child)) {
    throw Error(ErrorCode::kNotAttached, "bricks are not vertically adjacent with overlapping footprints");
  }
  // Smallest x first, then smallest y, of the rectangle intersection.
  const int qx = std::max(parent.x, child.x);
  const int qy = std::max(parent.y, child.y);
  const int s = child.z == parent.z + 1 ? 0 : 1;
  const int up = qx - parent.x;
  const int vp = qy - parent.y;
  const int uc = qx - child.x;
  const int vc = qy - child.y;
  return {s * parent.h * parent.w + vp * parent.h + up, vc * child.h + uc};
}

Brick decode_attachment(int f, int m, const Brick& parent, BrickSize child) {
  const int parent_area = parent.h * parent.w;
  if (f < 0 || f >= 2 * parent_area) {
    throw Error(ErrorCode::kTokenOutOfRange,
                "f=" + std::to_string(f) + " outside [0," + std::to_string(2 * parent_area) + ")");
  }
  if (child.h <= 0 || child.w <= 0 || m < 0 || m >= child.h * child.w) {
    throw Error(ErrorCode::kTokenOutOfRange,
                "m=" + std::to_string(m) + " outside [0," + std::to_string(child.h * child.w) + ")");
  }
  const int s = f / parent_area;
  const int r = f % parent_area;
  const int up = r % parent.h;
  const int vp = r / parent.h;
  const int uc = m % child.h;
  const int vc = m / child.h;
  return {child.h, child.w, parent.x + up - uc, parent.y + vp - vc, parent.z + (1 - 2 * s)};
}

}  // namespace brickseq
