#include "brickseq/ldraw.hpp"

#include <algorithm>
#include <cstdio>

#include "brickseq/error.hpp"

namespace brickseq {

std::string ldraw_part(BrickSize size) {
  if (!is_catalog_size(size)) {
    throw Error(ErrorCode::kSizeNotInLibrary, std::to_string(size.h) + "x" + std::to_string(size.w));
  }
  const int a = std::min(size.h, size.w);
  const int b = std::max(size.h, size.w);
  if (a == 1) {
    switch (b) {
      case 1: return "3005";
      case 2: return "3004";
      case 4: return "3010";
      case 6: return "3009";
      case 8: return "3008";
    }
  }
  switch (b) {
    case 2: return "3003";
    case 4: return "3001";
    default: return "2456";
  }
}

std::array<int, 9> ldraw_rotation(BrickSize size) {
  if (size.h >= size.w) return {1, 0, 0, 0, 1, 0, 0, 0, 1};
  return {0, 0, 1, 0, 1, 0, -1, 0, 0};
}

std::string export_ldraw(const BrickAssembly& assembly, std::string_view title) {
  std::string out = "0 " + std::string(title) + "\n0 Name: model.ldr\n";
  char line[160];
  for (const Brick& b : assembly.bricks()) {
    const auto r = ldraw_rotation(b.size());
    // Footprint center; our y maps onto LDraw z.
    const double x = 20.0 * (b.x + 0.5 * b.h);
    const double z = 20.0 * (b.y + 0.5 * b.w);
    const int y = -24 * b.z;
    std::snprintf(line, sizeof line, "1 4 %g %d %g %d %d %d %d %d %d %d %d %d %s.dat\n", x, y, z, r[0], r[1], r[2],
                  r[3], r[4], r[5], r[6], r[7], r[8], ldraw_part(b.size()).c_str());
    out += line;
  }
  return out;
}

}  // namespace brickseq
