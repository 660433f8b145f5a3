#pragma once

#include <array>
#include <string>
#include <string_view>

#include "brickseq/brick.hpp"

namespace brickseq {

/// Standard part number for a catalog footprint in either orientation, e.g. "3001".
/// Throws Error(SizeNotInLibrary).
std::string ldraw_part(BrickSize size);

/// Row-major 3x3 orientation. Identity puts the long side along LDraw X (our x);
/// footprints longer in y are turned 90 degrees about the vertical axis.
std::array<int, 9> ldraw_rotation(BrickSize size);

/// Header comments followed by one type-1 line per brick, LF line endings. Grid cells are
/// 20 LDU wide, layers 24 LDU tall and LDraw y points down, so layer z sits at y = -24 z.
std::string export_ldraw(const BrickAssembly& assembly, std::string_view title = "brickseq model");

}  // namespace brickseq
