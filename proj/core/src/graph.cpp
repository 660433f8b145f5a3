#include "brickseq/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <tuple>

#include "brickseq/attachment.hpp"
#include "brickseq/error.hpp"

namespace brickseq {

bool AttachmentGraph::has_edge(int i, int j) const {
  const auto& n = neighbors[static_cast<std::size_t>(i)];
  return std::binary_search(n.begin(), n.end(), j);
}

std::vector<std::pair<int, int>> AttachmentGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    for (int j : neighbors[i]) {
      if (static_cast<int>(i) < j) out.emplace_back(static_cast<int>(i), j);
    }
  }
  return out;
}

AttachmentGraph build_attachment_graph(const BrickAssembly& assembly) {
  AttachmentGraph graph;
  graph.neighbors.resize(assembly.size());
  // Only look upward; the occupancy index gives the bricks covering the layer above.
  for (std::size_t i = 0; i < assembly.size(); ++i) {
    const Brick& b = assembly[i];
    if (b.z + 1 >= kWorkspace) continue;
    for (int a = 0; a < b.h; ++a) {
      for (int c = 0; c < b.w; ++c) {
        const int j = assembly.owner({b.x + a, b.y + c, b.z + 1});
        if (j < 0) continue;
        auto& ni = graph.neighbors[i];
        if (std::find(ni.begin(), ni.end(), j) == ni.end()) {
          ni.push_back(j);
          graph.neighbors[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
        }
      }
    }
  }
  for (auto& n : graph.neighbors) std::sort(n.begin(), n.end());
  return graph;
}

std::vector<int> connected_components(const AttachmentGraph& graph) {
  std::vector<int> label(graph.size(), -1);
  int next = 0;
  std::vector<int> stack;
  for (std::size_t s = 0; s < graph.size(); ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.assign(1, static_cast<int>(s));
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : graph.neighbors[static_cast<std::size_t>(u)]) {
        if (label[static_cast<std::size_t>(v)] < 0) {
          label[static_cast<std::size_t>(v)] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t component_count(const AttachmentGraph& graph) {
  const auto labels = connected_components(graph);
  return labels.empty() ? 0 : static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end()) + 1);
}

bool is_connected(const BrickAssembly& assembly) {
  return component_count(build_attachment_graph(assembly)) <= 1;
}

int lexicographic_root(const BrickAssembly& assembly) {
  int best = -1;
  for (std::size_t i = 0; i < assembly.size(); ++i) {
    const Brick& b = assembly[i];
    if (best < 0) {
      best = static_cast<int>(i);
      continue;
    }
    const Brick& r = assembly[static_cast<std::size_t>(best)];
    if (std::tie(b.z, b.y, b.x) < std::tie(r.z, r.y, r.x)) best = static_cast<int>(i);
  }
  return best;
}

AttachmentTree build_spanning_tree(const BrickAssembly& assembly) {
  return build_spanning_tree(assembly, build_attachment_graph(assembly));
}

AttachmentTree build_spanning_tree(const BrickAssembly& assembly, const AttachmentGraph& graph) {
  AttachmentTree tree;
  const std::size_t n = assembly.size();
  tree.parent.assign(n, -1);
  tree.children.resize(n);
  if (n == 0) return tree;
  if (const auto components = component_count(graph); components > 1) {
    throw Error(ErrorCode::kDisconnectedGraph, std::to_string(components) + " components");
  }

  tree.root = lexicographic_root(assembly);
  std::vector<bool> visited(n, false);
  visited[static_cast<std::size_t>(tree.root)] = true;
  std::deque<int> queue{tree.root};
  while (!queue.empty()) {
    const int p = queue.front();
    queue.pop_front();
    tree.bfs_order.push_back(p);
    const Brick& parent = assembly[static_cast<std::size_t>(p)];

    std::vector<std::pair<int, int>> fresh;  // (f, child)
    for (int c : graph.neighbors[static_cast<std::size_t>(p)]) {
      if (visited[static_cast<std::size_t>(c)]) continue;
      fresh.emplace_back(encode_attachment(parent, assembly[static_cast<std::size_t>(c)]).f, c);
    }
    std::sort(fresh.begin(), fresh.end());
    for (const auto& [f, c] : fresh) {
      visited[static_cast<std::size_t>(c)] = true;
      tree.parent[static_cast<std::size_t>(c)] = p;
      tree.children[static_cast<std::size_t>(p)].push_back(c);
      queue.push_back(c);
    }
  }
  return tree;
}

}  // namespace brickseq
