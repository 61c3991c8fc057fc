/*
Copyright 2026 The holotape Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "holotape/blocks.hpp"
#include "holotape/codec.hpp"
#include "holotape/summary.hpp"

namespace holotape {

// Shape rules shared by the materialized tree and the streaming simulator.
// A range of n leaves splits into ceil(n/2) left leaves and floor(n/2) right
// leaves. Node ids are pre-order, so a subtree of n leaves occupies 2n-1
// consecutive ids.

inline std::uint64_t left_leaves(std::uint64_t n) noexcept { return (n + 1) / 2; }
inline std::uint64_t subtree_size(std::uint64_t n) noexcept { return n ? 2 * n - 1 : 0; }
inline std::uint64_t left_child_id(std::uint64_t id) noexcept { return id + 1; }
inline std::uint64_t right_child_id(std::uint64_t id, std::uint64_t n) noexcept {
    return id + 1 + subtree_size(left_leaves(n));
}

/// Height of the balanced tree over n leaves (0 for a single leaf).
inline std::uint32_t tree_depth(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("tree over zero leaves");
    std::map<std::uint64_t, std::uint32_t> memo;
    auto rec = [&](auto &self, std::uint64_t m) -> std::uint32_t {
        if (m <= 1) return 0;
        if (auto it = memo.find(m); it != memo.end()) return it->second;
        auto l = left_leaves(m);
        auto d = 1 + std::max(self(self, l), self(self, m - l));
        memo[m] = d;
        return d;
    };
    return rec(rec, n);
}

struct TreeNode {
    std::uint64_t id = 0;
    std::uint64_t leaf_lo = 0; // first block, 1-based
    std::uint64_t leaf_hi = 0; // last block
    StepInterval steps;
    std::optional<std::uint64_t> left;
    std::optional<std::uint64_t> right;
    std::uint32_t level = 0; // distance from the root

    bool is_leaf() const noexcept { return !left; }
    std::uint64_t leaves() const noexcept { return leaf_hi - leaf_lo + 1; }
};

class CausalTree {
  public:
    CausalTree(BlockDecomposition blocks, std::vector<TreeNode> nodes, std::uint32_t depth)
        : blocks_(blocks), nodes_(std::move(nodes)), depth_(depth) {}

    const BlockDecomposition &blocks() const noexcept { return blocks_; }
    std::uint64_t leaf_count() const noexcept { return blocks_.count(); }
    std::uint32_t depth() const noexcept { return depth_; }
    const std::vector<TreeNode> &nodes() const noexcept { return nodes_; }
    const TreeNode &node(std::uint64_t id) const { return nodes_.at(id); }
    const TreeNode &root() const { return nodes_.front(); }

    bool labeled() const noexcept { return !labels_.empty(); }
    const std::vector<IntervalSummary> &labels() const noexcept { return labels_; }
    const IntervalSummary &label(std::uint64_t id) const { return labels_.at(id); }
    void set_labels(std::vector<IntervalSummary> labels) { labels_ = std::move(labels); }

  private:
    BlockDecomposition blocks_;
    std::vector<TreeNode> nodes_;
    std::uint32_t depth_;
    std::vector<IntervalSummary> labels_;
};

inline CausalTree build_tree(const BlockDecomposition &blocks) {
    const auto T = blocks.count();
    if (T == 0) throw std::invalid_argument("cannot build a tree over zero blocks");
    std::vector<TreeNode> nodes(subtree_size(T));
    std::uint32_t depth = 0;
    // explicit stack: (id, lo, hi, level)
    struct Pending {
        std::uint64_t id, lo, hi;
        std::uint32_t level;
    };
    std::vector<Pending> todo{{0, 1, T, 0}};
    while (!todo.empty()) {
        auto p = todo.back();
        todo.pop_back();
        auto &n = nodes[p.id];
        n.id = p.id;
        n.leaf_lo = p.lo;
        n.leaf_hi = p.hi;
        n.steps = blocks.blocks(p.lo, p.hi);
        n.level = p.level;
        depth = std::max(depth, p.level);
        if (p.lo == p.hi) continue;
        auto m = p.hi - p.lo + 1;
        auto l = left_leaves(m);
        n.left = left_child_id(p.id);
        n.right = right_child_id(p.id, m);
        todo.push_back({*n.right, p.lo + l, p.hi, p.level + 1});
        todo.push_back({*n.left, p.lo, p.lo + l - 1, p.level + 1});
    }
    return CausalTree(blocks, std::move(nodes), depth);
}

/// Leaves from the oracle, internal nodes by merging children. Throws on the first violation.
inline CausalTree label_tree(CausalTree tree, const RunRecord &run, std::uint64_t c_int,
                             WindowPolicy policy) {
    if (tree.blocks().steps() != run.steps()) {
        throw std::invalid_argument("tree and run disagree on the number of steps");
    }
    std::vector<IntervalSummary> labels(tree.nodes().size());
    // children always have larger pre-order ids than their parent
    for (auto id = tree.nodes().size(); id-- > 0;) {
        const auto &n = tree.node(id);
        if (n.is_leaf()) {
            labels[id] = leaf_summary(run, tree.blocks(), n.leaf_lo, c_int);
            labels[id].policy = policy;
        } else {
            labels[id] = merge(labels[*n.left], labels[*n.right]);
        }
    }
    tree.set_labels(std::move(labels));
    return tree;
}

/// Left-deep fold ((s1 ⊕ s2) ⊕ s3) ⊕ ... over leaf summaries in block order.
inline IntervalSummary fold_left(const std::vector<IntervalSummary> &leaves) {
    if (leaves.empty()) throw std::invalid_argument("fold over no summaries");
    auto acc = leaves.front();
    for (std::size_t i = 1; i < leaves.size(); ++i) acc = merge(acc, leaves[i]);
    return acc;
}

enum class Phase : std::uint8_t { Enter, LeafEmit, Exit };

inline const char *to_string(Phase p) {
    switch (p) {
    case Phase::Enter: return "enter";
    case Phase::LeafEmit: return "leaf_emit";
    case Phase::Exit: return "exit";
    }
    return "?";
}

struct TraversalStep {
    std::uint64_t index = 0;
    std::uint64_t node = 0;
    Phase phase = Phase::Enter;
    std::uint64_t leaf = 0;   // LeafEmit only
    std::uint64_t offset = 0; // LeafEmit only

    bool operator==(const TraversalStep &) const = default;
};

/// Pre-order walk; each leaf k emits offsets 0..|I_k|-1 between its enter and exit.
inline std::vector<TraversalStep> dfs_order(const CausalTree &tree) {
    std::vector<TraversalStep> out;
    auto push = [&](std::uint64_t node, Phase ph, std::uint64_t leaf = 0, std::uint64_t off = 0) {
        out.push_back({out.size(), node, ph, leaf, off});
    };
    std::vector<std::pair<std::uint64_t, bool>> stack{{0, false}}; // (node, entered)
    while (!stack.empty()) {
        auto &[id, entered] = stack.back();
        const auto &n = tree.node(id);
        if (entered) {
            push(id, Phase::Exit);
            stack.pop_back();
            continue;
        }
        entered = true;
        push(id, Phase::Enter);
        if (n.is_leaf()) {
            for (std::uint64_t d = 0; d < n.steps.length(); ++d) push(id, Phase::LeafEmit, n.leaf_lo, d);
        } else {
            auto l = *n.left, r = *n.right;
            stack.emplace_back(r, false);
            stack.emplace_back(l, false);
        }
    }
    return out;
}

struct LeafOffset {
    std::uint64_t leaf = 0;
    std::uint64_t offset = 0;
    bool operator==(const LeafOffset &) const = default;
};

/// k = ceil(tau/b), offset = tau - ((k-1)b + 1).
inline LeafOffset time_to_leaf(std::uint64_t tau, std::uint64_t b) {
    if (b == 0) throw std::invalid_argument("block size must be positive");
    if (tau == 0) throw std::out_of_range("step index must be at least 1");
    auto k = (tau + b - 1) / b;
    return {k, tau - ((k - 1) * b + 1)};
}

inline LeafOffset time_to_leaf(const BlockDecomposition &blocks, std::uint64_t tau) {
    if (tau == 0 || tau > blocks.steps()) {
        throw std::out_of_range("step " + std::to_string(tau) + " outside 1.." +
                                std::to_string(blocks.steps()));
    }
    return time_to_leaf(tau, blocks.block_size());
}

inline std::uint64_t leaf_to_time(const BlockDecomposition &blocks, LeafOffset p) {
    auto blk = blocks.block(p.leaf);
    if (p.offset >= blk.length()) {
        throw std::out_of_range("offset " + std::to_string(p.offset) + " outside block " +
                                std::to_string(p.leaf) + " of length " + std::to_string(blk.length()));
    }
    return blk.first + p.offset;
}

/// For each leaf (in order), the step-length of every interval on its root path.
inline std::vector<std::vector<std::uint64_t>> radial_profile(const CausalTree &tree) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> path;
    auto rec = [&](auto &self, std::uint64_t id) -> void {
        const auto &n = tree.node(id);
        path.push_back(n.steps.length());
        if (n.is_leaf()) {
            out.push_back(path);
        } else {
            self(self, *n.left);
            self(self, *n.right);
        }
        path.pop_back();
    };
    rec(rec, 0);
    return out;
}

/// Every child covers at most ceil(parent/2) blocks.
inline bool halving_holds(const CausalTree &tree) {
    for (const auto &n : tree.nodes()) {
        if (n.is_leaf()) continue;
        auto bound = left_leaves(n.leaves());
        if (tree.node(*n.left).leaves() > bound || tree.node(*n.right).leaves() > bound) return false;
    }
    return true;
}

inline nlohmann::json tree_to_json(const CausalTree &tree) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto &n : tree.nodes()) {
        nlohmann::json j{{"id", n.id}, {"L", n.steps.first}, {"R", n.steps.last}};
        j["children"] = n.is_leaf() ? nlohmann::json(nullptr) : nlohmann::json::array({*n.left, *n.right});
        if (tree.labeled()) j["summary_hex"] = to_hex(encode_summary(tree.label(n.id)));
        nodes.push_back(std::move(j));
    }
    return {{"T", tree.leaf_count()},
            {"b", tree.blocks().block_size()},
            {"depth", tree.depth()},
            {"nodes", std::move(nodes)}};
}

} // namespace holotape
