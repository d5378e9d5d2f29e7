#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace ksub {

struct DirectedGraph {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;  // (src, dst)

  DirectedGraph() = default;
  DirectedGraph(int nodes, std::vector<std::pair<int, int>> e)
      : node_count(nodes), edges(std::move(e)) {
    for (auto [u, v] : edges) {
      if (u < 0 || u >= node_count || v < 0 || v >= node_count) {
        throw std::invalid_argument("edge endpoint out of range");
      }
    }
  }

  std::vector<int> out_degrees() const {
    std::vector<int> deg(static_cast<size_t>(node_count), 0);
    for (auto [u, v] : edges) ++deg[static_cast<size_t>(u)];
    return deg;
  }
};

}  // namespace ksub
