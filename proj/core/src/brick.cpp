#include "brickseq/brick.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "brickseq/error.hpp"

namespace brickseq {

namespace {

constexpr std::array<BrickSize, 14> kCatalog = {{
    {1, 1}, {1, 2}, {2, 1}, {1, 4}, {4, 1}, {1, 6}, {6, 1},
    {1, 8}, {8, 1}, {2, 2}, {2, 4}, {4, 2}, {2, 6}, {6, 2},
}};

std::string describe(const Brick& b) {
  return std::to_string(b.h) + "x" + std::to_string(b.w) + " at (" + std::to_string(b.x) + "," +
         std::to_string(b.y) + "," + std::to_string(b.z) + ")";
}

}  // namespace

std::span<const BrickSize> catalog_sizes() { return kCatalog; }

bool is_catalog_size(BrickSize size) {
  return std::find(kCatalog.begin(), kCatalog.end(), size) != kCatalog.end();
}

bool in_bounds(const Brick& b) {
  return b.x >= 0 && b.y >= 0 && b.z >= 0 && b.h > 0 && b.w > 0 && b.x + b.h <= kWorkspace &&
         b.y + b.w <= kWorkspace && b.z < kWorkspace;
}

bool is_valid(const Brick& b) { return is_catalog_size(b.size()) && in_bounds(b); }

std::vector<Cell2> footprint(const Brick& b) {
  std::vector<Cell2> cells;
  cells.reserve(static_cast<std::size_t>(std::max(0, b.h * b.w)));
  for (int a = 0; a < b.h; ++a) {
    for (int c = 0; c < b.w; ++c) cells.push_back({b.x + a, b.y + c});
  }
  return cells;
}

bool footprints_overlap(const Brick& a, const Brick& b) {
  return a.x < b.x + b.h && b.x < a.x + a.h && a.y < b.y + b.w && b.y < a.y + a.w;
}

BrickAssembly::BrickAssembly() : owner_(kWorkspaceCells, -1) {}

BrickAssembly::BrickAssembly(std::span<const Brick> bricks) : BrickAssembly() {
  for (const Brick& b : bricks) {
    if (auto why = add(b)) {
      switch (why->reason) {
        case PlaceError::kSizeNotInLibrary:
          throw Error(ErrorCode::kSizeNotInLibrary, describe(b));
        case PlaceError::kOutOfBounds:
          throw Error(ErrorCode::kOutOfBounds, describe(b));
        case PlaceError::kCollision:
          throw Error(ErrorCode::kCollision,
                      describe(b) + " hits cell (" + std::to_string(why->cell.x) + "," +
                          std::to_string(why->cell.y) + "," + std::to_string(why->cell.z) + ")");
      }
    }
  }
}

bool BrickAssembly::occupied(Cell3 cell) const { return owner(cell) >= 0; }

int BrickAssembly::owner(Cell3 cell) const {
  if (!in_workspace(cell)) return -1;
  return owner_[static_cast<std::size_t>(cell_index(cell))];
}

std::optional<PlaceRejection> BrickAssembly::check(const Brick& b) const {
  if (!is_catalog_size(b.size())) return PlaceRejection{PlaceError::kSizeNotInLibrary, {b.x, b.y, b.z}};
  if (!in_bounds(b)) return PlaceRejection{PlaceError::kOutOfBounds, {b.x, b.y, b.z}};
  for (int a = 0; a < b.h; ++a) {
    for (int c = 0; c < b.w; ++c) {
      Cell3 cell{b.x + a, b.y + c, b.z};
      if (owner_[static_cast<std::size_t>(cell_index(cell))] >= 0) {
        return PlaceRejection{PlaceError::kCollision, cell};
      }
    }
  }
  return std::nullopt;
}

std::optional<PlaceRejection> BrickAssembly::add(const Brick& b) {
  if (auto why = check(b)) return why;
  const auto id = static_cast<std::int16_t>(bricks_.size());
  for (int a = 0; a < b.h; ++a) {
    for (int c = 0; c < b.w; ++c) {
      owner_[static_cast<std::size_t>(cell_index({b.x + a, b.y + c, b.z}))] = id;
    }
  }
  occupied_ += static_cast<std::size_t>(b.area());
  bricks_.push_back(b);
  return std::nullopt;
}

std::variant<BrickAssembly, PlaceRejection> place(const BrickAssembly& assembly,
                                                  const Brick& brick) {
  if (auto why = assembly.check(brick)) return *why;
  BrickAssembly next = assembly;
  next.add(brick);
  return next;
}

BrickAssembly remove_brick(const BrickAssembly& assembly, std::size_t index) {
  std::vector<Brick> kept(assembly.bricks().begin(), assembly.bricks().end());
  if (index >= kept.size()) {
    throw Error(ErrorCode::kInvalidArgument, "brick index " + std::to_string(index) + " out of range");
  }
  kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(index));
  return BrickAssembly(kept);
}

bool same_bricks(std::span<const Brick> a, std::span<const Brick> b) {
  if (a.size() != b.size()) return false;
  std::vector<Brick> sa(a.begin(), a.end());
  std::vector<Brick> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

}  // namespace brickseq
