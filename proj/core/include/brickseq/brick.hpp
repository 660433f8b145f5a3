#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace brickseq {

/// Edge length of the cubic workspace, in studs horizontally and brick layers vertically.
inline constexpr int kWorkspace = 20;
inline constexpr int kWorkspaceCells = kWorkspace * kWorkspace * kWorkspace;

struct BrickSize {
  int h = 1;  // extent along x
  int w = 1;  // extent along y

  constexpr int area() const { return h * w; }
  auto operator<=>(const BrickSize&) const = default;
};

/// The eight catalog bricks in both horizontal orientations (14 distinct footprints).
std::span<const BrickSize> catalog_sizes();
bool is_catalog_size(BrickSize size);

struct Cell2 {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell2&) const = default;
};

struct Cell3 {
  int x = 0;
  int y = 0;
  int z = 0;
  auto operator<=>(const Cell3&) const = default;
};

inline constexpr bool in_workspace(Cell3 c) {
  return c.x >= 0 && c.x < kWorkspace && c.y >= 0 && c.y < kWorkspace && c.z >= 0 &&
         c.z < kWorkspace;
}

inline constexpr int cell_index(Cell3 c) { return (c.z * kWorkspace + c.y) * kWorkspace + c.x; }

/// A brick is addressed by the stud closest to the origin; (h, w) is its footprint.
struct Brick {
  int h = 1;
  int w = 1;
  int x = 0;
  int y = 0;
  int z = 0;

  constexpr BrickSize size() const { return {h, w}; }
  constexpr int area() const { return h * w; }
  auto operator<=>(const Brick&) const = default;
};

bool in_bounds(const Brick& brick);
/// Catalog size and within the workspace.
bool is_valid(const Brick& brick);

/// Footprint cells {(x+a, y+b) : 0 <= a < h, 0 <= b < w}, x-major order.
std::vector<Cell2> footprint(const Brick& brick);
bool footprints_overlap(const Brick& a, const Brick& b);

enum class PlaceError { kSizeNotInLibrary, kOutOfBounds, kCollision };

struct PlaceRejection {
  PlaceError reason = PlaceError::kCollision;
  Cell3 cell;  // first offending cell (collision and bounds only)
  bool operator==(const PlaceRejection&) const = default;
};

/// Ordered, collision-free set of bricks with a dense occupancy index. Brick order
/// is the generation order.
class BrickAssembly {
 public:
  BrickAssembly();
  /// Throws Error (SizeNotInLibrary, OutOfBounds, Collision) on the first invalid brick.
  explicit BrickAssembly(std::span<const Brick> bricks);

  std::span<const Brick> bricks() const { return bricks_; }
  std::size_t size() const { return bricks_.size(); }
  bool empty() const { return bricks_.empty(); }
  const Brick& operator[](std::size_t i) const { return bricks_[i]; }

  bool occupied(Cell3 cell) const;
  /// Index of the brick covering `cell`, or -1.
  int owner(Cell3 cell) const;
  std::size_t occupied_count() const { return occupied_; }

  /// Why `brick` could not be placed, or nullopt if it fits.
  std::optional<PlaceRejection> check(const Brick& brick) const;
  /// Appends `brick` if it fits; otherwise leaves the assembly untouched.
  std::optional<PlaceRejection> add(const Brick& brick);

  /// Order-sensitive equality.
  bool operator==(const BrickAssembly& other) const { return bricks_ == other.bricks_; }

 private:
  std::vector<Brick> bricks_;
  std::vector<std::int16_t> owner_;
  std::size_t occupied_ = 0;
};

std::variant<BrickAssembly, PlaceRejection> place(const BrickAssembly& assembly,
                                                  const Brick& brick);
/// Returns a copy without brick `index`; later bricks shift down by one.
BrickAssembly remove_brick(const BrickAssembly& assembly, std::size_t index);

/// Multiset equality, ignoring order.
bool same_bricks(std::span<const Brick> a, std::span<const Brick> b);

}  // namespace brickseq
