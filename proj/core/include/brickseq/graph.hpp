#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "brickseq/brick.hpp"

namespace brickseq {

/// Vertical attachment graph: bricks i and j are adjacent iff |z_i - z_j| = 1 and their
/// footprints intersect. Neighbor lists are sorted by brick index.
struct AttachmentGraph {
  std::vector<std::vector<int>> neighbors;

  std::size_t size() const { return neighbors.size(); }
  bool has_edge(int i, int j) const;
  /// Undirected edges as (i, j) with i < j, sorted.
  std::vector<std::pair<int, int>> edges() const;
};

AttachmentGraph build_attachment_graph(const BrickAssembly& assembly);

/// Component label per brick, labels dense from 0 in order of first appearance.
std::vector<int> connected_components(const AttachmentGraph& graph);
std::size_t component_count(const AttachmentGraph& graph);
/// Empty and single-brick assemblies count as connected.
bool is_connected(const BrickAssembly& assembly);

/// Index of the brick with lexicographically smallest (z, y, x); -1 when empty.
int lexicographic_root(const BrickAssembly& assembly);

struct AttachmentTree {
  int root = -1;
  std::vector<int> parent;                 // -1 for the root
  std::vector<std::vector<int>> children;  // ordered by parent-side connector f
  std::vector<int> bfs_order;              // dequeue order
};

/// Deterministic BFS spanning tree rooted at lexicographic_root(). Each brick joins the
/// first dequeued neighbor; a parent's new children are enqueued by increasing f.
/// Throws Error(DisconnectedGraph) when the graph has more than one component.
AttachmentTree build_spanning_tree(const BrickAssembly& assembly);
AttachmentTree build_spanning_tree(const BrickAssembly& assembly, const AttachmentGraph& graph);

}  // namespace brickseq
