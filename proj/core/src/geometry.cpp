#include "brickseq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include "brickseq/error.hpp"
#include "brickseq/rng.hpp"

namespace brickseq {

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

VoxelGrid::VoxelGrid(GridSource source) : cells_(kWorkspaceCells, 0), source_(source) {}

void VoxelGrid::set(Cell3 c, bool value) { cells_[static_cast<std::size_t>(cell_index(c))] = value ? 1 : 0; }

std::size_t VoxelGrid::count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

VoxelGrid voxelize_points(const PointCloud& cloud, bool solid_fill) {
  if (cloud.points.empty()) throw Error(ErrorCode::kEmptyCloud, "cannot voxelize an empty cloud");
  Vec3 lo = cloud.points.front();
  Vec3 hi = lo;
  for (const Vec3& p : cloud.points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw Error(ErrorCode::kNonFiniteInput, "point cloud contains a non-finite coordinate");
    }
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  const double extent = std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z});
  if (extent <= 0.0) throw Error(ErrorCode::kDegenerateExtent, "all points coincide");
  const Vec3 center = (lo + hi) * 0.5;
  const double scale = kWorkspace / extent;
  const double half = kWorkspace / 2.0;

  VoxelGrid grid(GridSource::kPoints);
  const auto to_cell = [&](double v, double c) {
    const int i = static_cast<int>(std::floor((v - c) * scale + half));
    return std::clamp(i, 0, kWorkspace - 1);
  };
  for (const Vec3& p : cloud.points) {
    grid.set({to_cell(p.x, center.x), to_cell(p.y, center.y), to_cell(p.z, center.z)});
  }
  if (!solid_fill) return grid;

  // Flood the exterior air from every empty boundary cell.
  std::vector<std::uint8_t> outside(kWorkspaceCells, 0);
  std::vector<Cell3> stack;
  const auto seed = [&](Cell3 c) {
    const auto k = static_cast<std::size_t>(cell_index(c));
    if (!grid(c) && !outside[k]) {
      outside[k] = 1;
      stack.push_back(c);
    }
  };
  for (int a = 0; a < kWorkspace; ++a) {
    for (int b = 0; b < kWorkspace; ++b) {
      for (int e : {0, kWorkspace - 1}) {
        seed({e, a, b});
        seed({a, e, b});
        seed({a, b, e});
      }
    }
  }
  static constexpr int kSteps[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  while (!stack.empty()) {
    const Cell3 c = stack.back();
    stack.pop_back();
    for (const auto& d : kSteps) {
      const Cell3 n{c.x + d[0], c.y + d[1], c.z + d[2]};
      if (in_workspace(n)) seed(n);
    }
  }
  for (int z = 0; z < kWorkspace; ++z) {
    for (int y = 0; y < kWorkspace; ++y) {
      for (int x = 0; x < kWorkspace; ++x) {
        if (!outside[static_cast<std::size_t>(cell_index({x, y, z}))]) grid.set({x, y, z});
      }
    }
  }
  return grid;
}

VoxelGrid voxelize_assembly(const BrickAssembly& assembly) {
  VoxelGrid grid(GridSource::kBricks);
  for (const Brick& b : assembly.bricks()) {
    for (Cell2 c : footprint(b)) grid.set({c.x, c.y, b.z});
  }
  return grid;
}

VoxelGrid drop_to_ground(const VoxelGrid& grid) {
  int lowest = kWorkspace;
  for (int z = 0; z < kWorkspace && lowest == kWorkspace; ++z)
    for (int y = 0; y < kWorkspace; ++y)
      for (int x = 0; x < kWorkspace; ++x)
        if (grid.at(x, y, z)) lowest = z;
  VoxelGrid out(grid.source());
  if (lowest == kWorkspace) return out;
  for (int z = lowest; z < kWorkspace; ++z)
    for (int y = 0; y < kWorkspace; ++y)
      for (int x = 0; x < kWorkspace; ++x)
        if (grid.at(x, y, z)) out.set({x, y, z - lowest});
  return out;
}

double iou(const VoxelGrid& a, const VoxelGrid& b) {
  std::size_t inter = 0;
  std::size_t uni = 0;
  const auto& ca = a.cells();
  const auto& cb = b.cells();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    inter += static_cast<std::size_t>(ca[i] & cb[i]);
    uni += static_cast<std::size_t>(ca[i] | cb[i]);
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

PointCloud sample_surface(const SurfaceMesh& mesh, std::size_t n, std::uint64_t seed) {
  if (mesh.triangles.empty()) throw Error(ErrorCode::kEmptyMesh, "cannot sample an empty mesh");
  std::vector<double> cumulative;
  std::vector<Vec3> face_normal;
  cumulative.reserve(mesh.triangles.size());
  double total = 0.0;
  for (const auto& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[static_cast<std::size_t>(t[0])];
    const Vec3 c = cross(mesh.vertices[static_cast<std::size_t>(t[1])] - a,
                         mesh.vertices[static_cast<std::size_t>(t[2])] - a);
    const double twice_area = norm(c);
    total += 0.5 * twice_area;
    cumulative.push_back(total);
    face_normal.push_back(twice_area > 0.0 ? c * (1.0 / twice_area) : Vec3{0.0, 0.0, 1.0});
  }
  if (total <= 0.0) throw Error(ErrorCode::kEmptyMesh, "mesh has zero surface area");

  Rng rng(seed);
  PointCloud out;
  out.points.reserve(n);
  out.normals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double pick = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
    if (it == cumulative.end()) --it;
    const auto f = static_cast<std::size_t>(it - cumulative.begin());
    const auto& t = mesh.triangles[f];
    const double r1 = std::sqrt(rng.uniform());
    const double r2 = rng.uniform();
    const Vec3& a = mesh.vertices[static_cast<std::size_t>(t[0])];
    const Vec3& b = mesh.vertices[static_cast<std::size_t>(t[1])];
    const Vec3& c = mesh.vertices[static_cast<std::size_t>(t[2])];
    out.points.push_back(a * (1.0 - r1) + b * (r1 * (1.0 - r2)) + c * (r1 * r2));
    out.normals.push_back(face_normal[f]);
  }
  return out;
}

PointCloud normalize_cloud(const PointCloud& cloud) {
  if (cloud.points.size() < 2) throw Error(ErrorCode::kDegenerateCloud, "need at least two points");
  Vec3 centroid;
  for (const Vec3& p : cloud.points) centroid = centroid + p;
  centroid = centroid * (1.0 / static_cast<double>(cloud.points.size()));
  double radius = 0.0;
  for (const Vec3& p : cloud.points) radius = std::max(radius, norm(p - centroid));
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kDegenerateCloud, "points do not span a positive radius");
  }
  PointCloud out = cloud;
  for (Vec3& p : out.points) p = (p - centroid) * (1.0 / radius);
  return out;
}

KdTree::KdTree(const std::vector<Vec3>& points) : points_(points) {
  std::vector<int> idx(points_.size());
  std::iota(idx.begin(), idx.end(), 0);
  nodes_.reserve(points_.size());
  root_ = build(idx, 0, idx.size(), 0);
}

int KdTree::build(std::vector<int>& idx, std::size_t lo, std::size_t hi, int depth) {
  if (lo >= hi) return -1;
  const int axis = depth % 3;
  const auto key = [&](int i) {
    const Vec3& p = points_[static_cast<std::size_t>(i)];
    return axis == 0 ? p.x : axis == 1 ? p.y : p.z;
  };
  const std::size_t mid = lo + (hi - lo) / 2;
  std::nth_element(idx.begin() + static_cast<std::ptrdiff_t>(lo), idx.begin() + static_cast<std::ptrdiff_t>(mid),
                   idx.begin() + static_cast<std::ptrdiff_t>(hi), [&](int a, int b) { return key(a) < key(b); });
  const int self = static_cast<int>(nodes_.size());
  nodes_.push_back({idx[mid], axis, -1, -1});
  const int left = build(idx, lo, mid, depth + 1);
  const int right = build(idx, mid + 1, hi, depth + 1);
  nodes_[static_cast<std::size_t>(self)].left = left;
  nodes_[static_cast<std::size_t>(self)].right = right;
  return self;
}

void KdTree::search(int node, const Vec3& q, double& best2) const {
  if (node < 0) return;
  const Node& nd = nodes_[static_cast<std::size_t>(node)];
  const Vec3 d = q - points_[static_cast<std::size_t>(nd.point)];
  best2 = std::min(best2, dot(d, d));
  const double delta = nd.axis == 0 ? d.x : nd.axis == 1 ? d.y : d.z;
  // Near side first so the far side is usually pruned.
  search(delta < 0.0 ? nd.left : nd.right, q, best2);
  if (delta * delta <= best2) search(delta < 0.0 ? nd.right : nd.left, q, best2);
}

double KdTree::nearest_distance(const Vec3& q) const {
  double best2 = std::numeric_limits<double>::infinity();
  search(root_, q, best2);
  return std::sqrt(best2);
}

double chamfer(const PointCloud& p, const PointCloud& q) {
  if (p.points.empty() || q.points.empty()) throw Error(ErrorCode::kEmptyCloud, "chamfer needs two nonempty clouds");
  const auto directed = [](const PointCloud& from, const PointCloud& to) {
    const KdTree tree(to.points);
    double sum = 0.0;
    for (const Vec3& v : from.points) sum += tree.nearest_distance(v);
    return sum / static_cast<double>(from.points.size());
  };
  return directed(p, q) + directed(q, p);
}

double mesh_volume(const SurfaceMesh& mesh) {
  double six_v = 0.0;
  for (const auto& t : mesh.triangles) {
    six_v += dot(mesh.vertices[static_cast<std::size_t>(t[0])],
                 cross(mesh.vertices[static_cast<std::size_t>(t[1])], mesh.vertices[static_cast<std::size_t>(t[2])]));
  }
  return six_v / 6.0;
}

bool is_watertight(const SurfaceMesh& mesh) {
  std::map<std::pair<int, int>, int> directed;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) ++directed[{t[static_cast<std::size_t>(k)], t[static_cast<std::size_t>((k + 1) % 3)]}];
  }
  for (const auto& [edge, uses] : directed) {
    if (uses != 1) return false;
    const auto twin = directed.find({edge.second, edge.first});
    if (twin == directed.end() || twin->second != 1) return false;
  }
  return true;
}

int euler_characteristic(const SurfaceMesh& mesh) {
  std::vector<bool> used(mesh.vertices.size(), false);
  std::map<std::pair<int, int>, int> edges;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[static_cast<std::size_t>(k)];
      const int b = t[static_cast<std::size_t>((k + 1) % 3)];
      used[static_cast<std::size_t>(a)] = true;
      ++edges[{std::min(a, b), std::max(a, b)}];
    }
  }
  const auto v = static_cast<int>(std::count(used.begin(), used.end(), true));
  return v - static_cast<int>(edges.size()) + static_cast<int>(mesh.triangles.size());
}

}  // namespace brickseq
