#include <array>
#include <vector>

#include "brickseq/geometry.hpp"

namespace brickseq {

namespace {

// Corner c of a cube sits at offset (c & 1, (c >> 1) & 1, (c >> 2) & 1).
// Edge e = 4 * axis + k joins the k-th corner with a zero bit on `axis` to its neighbor.
struct CubeEdge {
  int corner;  // lower end
  int axis;
};

constexpr std::array<CubeEdge, 12> make_edges() {
  std::array<CubeEdge, 12> edges{};
  for (int axis = 0; axis < 3; ++axis) {
    int k = 0;
    for (int c = 0; c < 8; ++c) {
      if ((c >> axis) & 1) continue;
      edges[static_cast<std::size_t>(4 * axis + k)] = {c, axis};
      ++k;
    }
  }
  return edges;
}

constexpr std::array<CubeEdge, 12> kEdges = make_edges();

int edge_between(int a, int b) {
  const int lower = a < b ? a : b;
  const int axis = (a ^ b) == 1 ? 0 : (a ^ b) == 2 ? 1 : 2;
  for (int e = 0; e < 12; ++e) {
    if (kEdges[static_cast<std::size_t>(e)].corner == lower && kEdges[static_cast<std::size_t>(e)].axis == axis) return e;
  }
  return -1;
}

Vec3 corner_pos(int c) { return {double(c & 1), double((c >> 1) & 1), double((c >> 2) & 1)}; }

Vec3 edge_mid(int e) {
  const CubeEdge& ed = kEdges[static_cast<std::size_t>(e)];
  Vec3 p = corner_pos(ed.corner);
  (ed.axis == 0 ? p.x : ed.axis == 1 ? p.y : p.z) += 0.5;
  return p;
}

bool share_face(int e0, int e1) {
  const CubeEdge& a = kEdges[static_cast<std::size_t>(e0)];
  const CubeEdge& b = kEdges[static_cast<std::size_t>(e1)];
  for (int axis = 0; axis < 3; ++axis) {
    if (axis == a.axis || axis == b.axis) continue;
    if (((a.corner >> axis) & 1) == ((b.corner >> axis) & 1)) return true;
  }
  return false;
}

// Triangle corners index cube edges; index 12 + c is centers[c], the centroid of a loop
// that no fan can triangulate.
struct CaseEntry {
  std::vector<std::array<int, 3>> triangles;
  std::vector<Vec3> centers;
};

using CaseTable = std::array<CaseEntry, 256>;

// Builds the triangle list of every corner configuration from its face contours.
// Each cube face contributes segments between crossed edges; on a face with two
// diagonal inside corners each inside corner is cut off separately. Segments are
// directed so the surface normal points from inside to outside, then chained into
// loops and fanned.
CaseTable build_case_table() {
  CaseTable table;
  for (int mask = 0; mask < 256; ++mask) {
    const auto inside = [&](int c) { return ((mask >> c) & 1) != 0; };
    std::array<int, 12> next;
    next.fill(-1);
    for (int axis = 0; axis < 3; ++axis) {
      for (int side = 0; side < 2; ++side) {
        const int b = (axis + 1) % 3;
        const int c = (axis + 2) % 3;
        std::array<int, 4> ring{};
        const int base = side << axis;
        ring[0] = base;
        ring[1] = base | (1 << b);
        ring[2] = base | (1 << b) | (1 << c);
        ring[3] = base | (1 << c);
        Vec3 normal;
        (axis == 0 ? normal.x : axis == 1 ? normal.y : normal.z) = side ? 1.0 : -1.0;

        std::vector<std::array<int, 3>> segments;  // edge, edge, inside corner
        int crossings = 0;
        for (int k = 0; k < 4; ++k) crossings += inside(ring[static_cast<std::size_t>(k)]) != inside(ring[static_cast<std::size_t>((k + 1) % 4)]);
        if (crossings == 2) {
          std::array<int, 2> cut{};
          int n = 0;
          int in_corner = -1;
          for (int k = 0; k < 4; ++k) {
            const int p = ring[static_cast<std::size_t>(k)];
            const int q = ring[static_cast<std::size_t>((k + 1) % 4)];
            if (inside(p) != inside(q)) cut[static_cast<std::size_t>(n++)] = edge_between(p, q);
            if (inside(p)) in_corner = p;
          }
          segments.push_back({cut[0], cut[1], in_corner});
        } else if (crossings == 4) {
          for (int k = 0; k < 4; ++k) {
            const int p = ring[static_cast<std::size_t>(k)];
            if (!inside(p)) continue;
            const int before = ring[static_cast<std::size_t>((k + 3) % 4)];
            const int after = ring[static_cast<std::size_t>((k + 1) % 4)];
            segments.push_back({edge_between(before, p), edge_between(p, after), p});
          }
        }
        for (auto [e0, e1, corner] : segments) {
          const Vec3 a = edge_mid(e0);
          const Vec3 d = edge_mid(e1) - a;
          const Vec3 to_in = corner_pos(corner) - (a + d * 0.5);
          if (dot(normal, cross(to_in, d)) > 0.0) {
            next[static_cast<std::size_t>(e0)] = e1;
          } else {
            next[static_cast<std::size_t>(e1)] = e0;
          }
        }
      }
    }
    std::array<bool, 12> seen{};
    for (int start = 0; start < 12; ++start) {
      if (next[static_cast<std::size_t>(start)] < 0 || seen[static_cast<std::size_t>(start)]) continue;
      std::vector<int> loop;
      for (int e = start; !seen[static_cast<std::size_t>(e)]; e = next[static_cast<std::size_t>(e)]) {
        seen[static_cast<std::size_t>(e)] = true;
        loop.push_back(e);
      }
      // A fan diagonal between two edges of one face would put a triangle flat in that
      // face, where the neighboring cube emits it too. Pick an origin that avoids this.
      const std::size_t n = loop.size();
      std::size_t origin = n;
      for (std::size_t r = 0; r < n && origin == n; ++r) {
        bool ok = true;
        for (std::size_t k = 2; k + 1 < n && ok; ++k) ok = !share_face(loop[r], loop[(r + k) % n]);
        if (ok) origin = r;
      }
      CaseEntry& entry = table[static_cast<std::size_t>(mask)];
      if (origin < n) {
        for (std::size_t k = 1; k + 1 < n; ++k) {
          entry.triangles.push_back({loop[origin], loop[(origin + k) % n], loop[(origin + k + 1) % n]});
        }
      } else {
        Vec3 center;
        for (int e : loop) center = center + edge_mid(e);
        const int id = 12 + static_cast<int>(entry.centers.size());
        entry.centers.push_back(center * (1.0 / static_cast<double>(n)));
        for (std::size_t k = 0; k < n; ++k) entry.triangles.push_back({id, loop[k], loop[(k + 1) % n]});
      }
    }
  }
  return table;
}

const CaseTable& case_table() {
  static const CaseTable table = build_case_table();
  return table;
}

}  // namespace

SurfaceMesh marching_cubes(const VoxelGrid& grid) {
  constexpr int kPadded = kWorkspace + 2;
  // Sample (i, j, k) of the padded field is cell (i-1, j-1, k-1), centered at i - 0.5.
  const auto sample = [&](int i, int j, int k) {
    const Cell3 c{i - 1, j - 1, k - 1};
    return in_workspace(c) && grid(c);
  };
  const auto sample_id = [](int i, int j, int k) { return (k * kPadded + j) * kPadded + i; };

  SurfaceMesh mesh;
  std::vector<int> vertex_of(static_cast<std::size_t>(kPadded * kPadded * kPadded * 3), -1);
  const CaseTable& table = case_table();
  for (int k = 0; k + 1 < kPadded; ++k) {
    for (int j = 0; j + 1 < kPadded; ++j) {
      for (int i = 0; i + 1 < kPadded; ++i) {
        int mask = 0;
        for (int c = 0; c < 8; ++c) {
          if (sample(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1))) mask |= 1 << c;
        }
        const CaseEntry& entry = table[static_cast<std::size_t>(mask)];
        if (entry.triangles.empty()) continue;
        std::vector<int> center_ids;
        for (const Vec3& c : entry.centers) {
          center_ids.push_back(static_cast<int>(mesh.vertices.size()));
          mesh.vertices.push_back({i - 0.5 + c.x, j - 0.5 + c.y, k - 0.5 + c.z});
        }
        const auto vertex = [&](int e) {
          if (e >= 12) return center_ids[static_cast<std::size_t>(e - 12)];
          const CubeEdge& ed = kEdges[static_cast<std::size_t>(e)];
          const int si = i + (ed.corner & 1);
          const int sj = j + ((ed.corner >> 1) & 1);
          const int sk = k + ((ed.corner >> 2) & 1);
          int& slot = vertex_of[static_cast<std::size_t>(sample_id(si, sj, sk) * 3 + ed.axis)];
          if (slot < 0) {
            Vec3 p{si - 0.5, sj - 0.5, sk - 0.5};
            (ed.axis == 0 ? p.x : ed.axis == 1 ? p.y : p.z) += 0.5;
            slot = static_cast<int>(mesh.vertices.size());
            mesh.vertices.push_back(p);
          }
          return slot;
        };
        for (const auto& t : entry.triangles) mesh.triangles.push_back({vertex(t[0]), vertex(t[1]), vertex(t[2])});
      }
    }
  }
  return mesh;
}

}  // namespace brickseq
