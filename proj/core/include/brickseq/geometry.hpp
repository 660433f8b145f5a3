#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "brickseq/brick.hpp"

namespace brickseq {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  bool operator==(const Vec3&) const = default;
};

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
double distance(const Vec3& a, const Vec3& b);

struct PointCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;  // empty, or one unit vector per point

  std::size_t size() const { return points.size(); }
  bool has_normals() const { return !normals.empty(); }
  bool operator==(const PointCloud&) const = default;
};

enum class GridSource { kPoints, kBricks };

/// Fixed 20^3 occupancy grid indexed like the brick workspace.
class VoxelGrid {
 public:
  explicit VoxelGrid(GridSource source = GridSource::kBricks);

  bool operator()(Cell3 c) const { return cells_[static_cast<std::size_t>(cell_index(c))] != 0; }
  bool at(int x, int y, int z) const { return (*this)({x, y, z}); }
  void set(Cell3 c, bool value = true);
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  GridSource source() const { return source_; }
  void set_source(GridSource s) { source_ = s; }
  const std::vector<std::uint8_t>& cells() const { return cells_; }

  /// Compares occupancy only.
  bool operator==(const VoxelGrid& other) const { return cells_ == other.cells_; }

 private:
  std::vector<std::uint8_t> cells_;
  GridSource source_;
};

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  bool operator==(const SurfaceMesh&) const = default;
};

/// Centers the cloud on its bounding-box center and scales the largest extent to span
/// the grid. With solid_fill, every cell not reachable from the boundary through empty
/// cells becomes occupied. Throws Error(EmptyCloud) or Error(DegenerateExtent).
VoxelGrid voxelize_points(const PointCloud& cloud, bool solid_fill = true);
VoxelGrid voxelize_assembly(const BrickAssembly& assembly);

/// Shifts occupancy down so the lowest occupied layer is z = 0. Empty grids pass through.
VoxelGrid drop_to_ground(const VoxelGrid& grid);

/// |a & b| / |a | b|, 0 when both are empty.
double iou(const VoxelGrid& a, const VoxelGrid& b);

/// Iso-surface at 0.5 of the occupancy field sampled at cell centers, with one empty
/// layer of padding so the result is closed. Vertices sit on sample-edge midpoints.
SurfaceMesh marching_cubes(const VoxelGrid& grid);

/// Area-weighted uniform sampling with face normals. Throws Error(EmptyMesh).
PointCloud sample_surface(const SurfaceMesh& mesh, std::size_t n = 8192, std::uint64_t seed = 0);

/// Centroid to the origin, largest radius to 1. Throws Error(DegenerateCloud).
PointCloud normalize_cloud(const PointCloud& cloud);

/// Exact nearest-neighbor queries over a fixed point set.
class KdTree {
 public:
  explicit KdTree(const std::vector<Vec3>& points);
  /// Distance to the closest stored point. Requires a nonempty tree.
  double nearest_distance(const Vec3& q) const;

 private:
  struct Node {
    int point;
    int axis;
    int left;
    int right;
  };
  int build(std::vector<int>& idx, std::size_t lo, std::size_t hi, int depth);
  void search(int node, const Vec3& q, double& best2) const;

  std::vector<Vec3> points_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

/// Mean nearest distance from p to q plus the symmetric term (unsquared).
/// Throws Error(EmptyCloud).
double chamfer(const PointCloud& p, const PointCloud& q);

/// Signed enclosed volume by the tetrahedron sum.
double mesh_volume(const SurfaceMesh& mesh);
/// Every undirected edge is used by exactly two triangles, once in each direction.
bool is_watertight(const SurfaceMesh& mesh);
/// V - E + F over referenced vertices.
int euler_characteristic(const SurfaceMesh& mesh);

}  // namespace brickseq
