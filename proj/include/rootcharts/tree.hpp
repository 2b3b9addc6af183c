#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rootcharts/charts.hpp"

namespace rc {

struct NodeLog {
  int multiplicity = -1;
  long group_order = -1;
  std::vector<std::string> notes;
};

template <class Payload>
struct TreeNode {
  std::vector<ChartStep> steps;  // parent coordinates -> node coordinates
  NodeLog log;
  std::vector<TreeNode> children;
  std::optional<Payload> leaf;
};

template <class Payload>
struct LeafRef {
  ChartMap chart;
  const Payload* payload = nullptr;
  std::vector<const NodeLog*> logs;  // root to leaf
};

template <class Payload>
void collect_leaves(const TreeNode<Payload>& node, ChartMap prefix, std::vector<const NodeLog*> logs,
                    std::vector<LeafRef<Payload>>& out) {
  for (const auto& s : node.steps) prefix.steps.push_back(s);
  logs.push_back(&node.log);
  if (node.leaf) out.push_back({prefix, &*node.leaf, logs});
  for (const auto& c : node.children) collect_leaves(c, prefix, logs, out);
}

template <class Payload>
std::vector<LeafRef<Payload>> leaves(const TreeNode<Payload>& root, int q) {
  std::vector<LeafRef<Payload>> out;
  collect_leaves(root, ChartMap{q, {}}, {}, out);
  return out;
}

// Visits every leaf with the steps taken below `node` (relative chart).
template <class Payload>
void for_each_leaf(TreeNode<Payload>& node, int q, const std::function<void(const ChartMap&, Payload&)>& fn,
                   ChartMap rel = {}) {
  if (rel.q == 0) rel.q = q;
  if (node.leaf) fn(rel, *node.leaf);
  for (auto& c : node.children) {
    ChartMap r = rel;
    r.steps.insert(r.steps.end(), c.steps.begin(), c.steps.end());
    for_each_leaf(c, q, fn, r);
  }
}

// Copies the structure of src and replaces each leaf by the tree fn returns.
// fn receives the chart from the root of src down to the leaf.
template <class P, class Q>
TreeNode<Q> graft(const TreeNode<P>& src, const std::function<TreeNode<Q>(const ChartMap&, const P&)>& fn,
                  ChartMap acc) {
  TreeNode<Q> out;
  out.steps = src.steps;
  out.log = src.log;
  acc.steps.insert(acc.steps.end(), src.steps.begin(), src.steps.end());
  for (const auto& c : src.children) out.children.push_back(graft(c, fn, acc));
  if (src.leaf) {
    TreeNode<Q> sub = fn(acc, *src.leaf);
    if (!sub.steps.empty()) {
      out.children.push_back(std::move(sub));
    } else {
      out.leaf = std::move(sub.leaf);
      for (auto& c : sub.children) out.children.push_back(std::move(c));
      for (auto& n : sub.log.notes) out.log.notes.push_back(std::move(n));
      if (sub.log.multiplicity >= 0) out.log.multiplicity = sub.log.multiplicity;
      if (sub.log.group_order >= 0) out.log.group_order = sub.log.group_order;
    }
  }
  return out;
}

template <class Payload>
size_t count_nodes(const TreeNode<Payload>& n) {
  size_t k = 1;
  for (const auto& c : n.children) k += count_nodes(c);
  return k;
}

}  // namespace rc
