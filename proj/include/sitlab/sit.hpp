#pragma once

// Strong interval trees: the bijection between permutations and trees whose
// internal nodes are labelled plus, minus or by a simple permutation.

#include "sitlab/permutation.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sitlab {

enum class NodeKind { leaf, plus, minus, prime };

inline bool is_linear(NodeKind k) { return k == NodeKind::plus || k == NodeKind::minus; }

struct SitNode {
  NodeKind kind = NodeKind::leaf;
  Permutation pattern;                // prime nodes; empty means an unlabelled arity marker
  std::vector<std::size_t> children;  // arena indices, left to right

  friend bool operator==(const SitNode&, const SitNode&) = default;
};

/// Plane tree stored as a preorder arena; node 0 is the root.
class SITree {
 public:
  SITree() : nodes_{SitNode{}} {}

  static SITree leaf() { return SITree(); }

  /// Builds an internal node over the given subtrees.
  static SITree node(NodeKind kind, const std::vector<SITree>& children, Permutation pattern = {}) {
    SITree t;
    t.nodes_.front().kind = kind;
    t.nodes_.front().pattern = std::move(pattern);
    for (const SITree& c : children) {
      const std::size_t offset = t.nodes_.size();
      t.nodes_.front().children.push_back(offset);
      for (SitNode n : c.nodes_) {
        for (auto& ch : n.children) {
          ch += offset;
        }
        t.nodes_.push_back(std::move(n));
      }
    }
    return t;
  }

  static SITree from_nodes(std::vector<SitNode> nodes) {
    if (nodes.empty()) {
      throw std::invalid_argument("tree needs at least one node");
    }
    SITree t;
    t.nodes_ = std::move(nodes);
    return t;
  }

  const std::vector<SitNode>& nodes() const { return nodes_; }
  const SitNode& operator[](std::size_t i) const { return nodes_[i]; }
  std::size_t node_count() const { return nodes_.size(); }

  /// Number of leaves below each node.
  std::vector<std::size_t> leaf_counts() const {
    std::vector<std::size_t> c(nodes_.size(), 0);
    for (std::size_t i = nodes_.size(); i-- > 0;) {
      if (nodes_[i].kind == NodeKind::leaf) {
        c[i] = 1;
      } else {
        for (std::size_t ch : nodes_[i].children) {
          c[i] += c[ch];
        }
      }
    }
    return c;
  }

  std::size_t size() const { return leaf_counts().front(); }

  friend bool operator==(const SITree&, const SITree&) = default;

 private:
  std::vector<SitNode> nodes_;
};

enum class Violation {
  malformed,
  leaf_with_children,
  unary_node,
  linear_adjacency,
  prime_arity_mismatch,
  non_simple_prime,
  missing_prime_pattern,
  prime_arity_out_of_range,
};

inline const char* violation_name(Violation v) {
  switch (v) {
    case Violation::malformed:
      return "malformed tree";
    case Violation::leaf_with_children:
      return "leaf with children";
    case Violation::unary_node:
      return "unary node";
    case Violation::linear_adjacency:
      return "linear adjacency";
    case Violation::prime_arity_mismatch:
      return "prime arity mismatch";
    case Violation::non_simple_prime:
      return "non-simple prime label";
    case Violation::missing_prime_pattern:
      return "missing prime label";
    case Violation::prime_arity_out_of_range:
      return "prime arity out of range";
  }
  return "?";
}

class ValidationError : public std::invalid_argument {
 public:
  ValidationError(Violation v, std::size_t node, const std::string& detail)
      : std::invalid_argument(std::string(violation_name(v)) + " at node " + std::to_string(node) +
                              (detail.empty() ? "" : ": " + detail)),
        violation_(v),
        node_(node) {}

  Violation violation() const { return violation_; }
  std::size_t node() const { return node_; }

 private:
  Violation violation_;
  std::size_t node_;
};

struct ValidateOptions {
  bool allow_unlabelled_primes = false;
  std::size_t max_prime_arity = static_cast<std::size_t>(-1);
  bool check_simplicity = true;
};

/// Throws ValidationError naming the first violated invariant.
inline void validate(const SITree& t, const ValidateOptions& opt = {}) {
  const auto& nodes = t.nodes();
  // preorder arena: every non-root node has exactly one parent with a smaller index
  std::vector<char> has_parent(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t c : nodes[i].children) {
      if (c <= i || c >= nodes.size() || has_parent[c]) {
        throw ValidationError(Violation::malformed, i, "bad child index " + std::to_string(c));
      }
      has_parent[c] = 1;
    }
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!has_parent[i]) {
      throw ValidationError(Violation::malformed, i, "unreachable node");
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const SitNode& v = nodes[i];
    const std::size_t arity = v.children.size();
    if (v.kind == NodeKind::leaf) {
      if (arity != 0) {
        throw ValidationError(Violation::leaf_with_children, i, "");
      }
      continue;
    }
    if (arity < 2) {
      throw ValidationError(Violation::unary_node, i, "arity " + std::to_string(arity));
    }
    if (is_linear(v.kind)) {
      for (std::size_t c : v.children) {
        if (nodes[c].kind == v.kind) {
          throw ValidationError(Violation::linear_adjacency, i,
                                std::string(v.kind == NodeKind::plus ? "plus" : "minus") +
                                    " node has a child with the same label");
        }
      }
      continue;
    }
    if (arity < 4 || arity > opt.max_prime_arity) {
      throw ValidationError(Violation::prime_arity_out_of_range, i, "arity " + std::to_string(arity));
    }
    if (v.pattern.empty()) {
      if (!opt.allow_unlabelled_primes) {
        throw ValidationError(Violation::missing_prime_pattern, i, "");
      }
      continue;
    }
    if (v.pattern.size() != arity) {
      throw ValidationError(Violation::prime_arity_mismatch, i,
                            "label of size " + std::to_string(v.pattern.size()) + " over " +
                                std::to_string(arity) + " children");
    }
    if (!is_permutation_word(v.pattern) || (opt.check_simplicity && !is_simple(v.pattern))) {
      throw ValidationError(Violation::non_simple_prime, i, format_permutation(v.pattern));
    }
  }
}

struct Interval {
  std::size_t start;  // 0-based positions, inclusive
  std::size_t end;

  std::size_t length() const { return end - start + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// All strong intervals of p (trivial ones included), sorted by start and
/// then by decreasing length, which is a preorder of the interval tree.
inline std::vector<Interval> strong_intervals(const Permutation& p) {
  require_permutation(p);
  const std::size_t n = p.size();
  // min_start[b]: smallest a with [a,b] an interval; max_end[a]: largest b with [a,b] an interval
  std::vector<std::size_t> min_start(n), max_end(n);
  for (std::size_t i = 0; i < n; ++i) {
    min_start[i] = i;
    max_end[i] = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    int lo = p[i], hi = p[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      lo = std::min(lo, p[j]);
      hi = std::max(hi, p[j]);
      if (static_cast<std::size_t>(hi - lo) == j - i) {
        min_start[j] = std::min(min_start[j], i);
        max_end[i] = j;
      }
    }
  }
  std::vector<Interval> out;
  std::vector<Interval> row;
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    int lo = p[i], hi = p[i];
    std::size_t reach_left = i;  // min of min_start over [i, j-1]
    std::size_t reach_right = i; // max of max_end over [i+1, j]
    for (std::size_t j = i; j < n; ++j) {
      if (j > i) {
        lo = std::min(lo, p[j]);
        hi = std::max(hi, p[j]);
        reach_left = std::min(reach_left, min_start[j - 1]);
        reach_right = std::max(reach_right, max_end[j]);
      }
      if (static_cast<std::size_t>(hi - lo) == j - i && reach_left >= i && reach_right <= j) {
        row.push_back({i, j});
      }
    }
    out.insert(out.end(), row.rbegin(), row.rend());
  }
  return out;
}

/// The strong interval tree of p.
inline SITree decompose(const Permutation& p) {
  const auto intervals = strong_intervals(p);
  std::vector<SitNode> nodes(intervals.size());
  std::vector<std::size_t> stack;
  for (std::size_t idx = 0; idx < intervals.size(); ++idx) {
    const Interval& iv = intervals[idx];
    while (!stack.empty() && intervals[stack.back()].end < iv.start) {
      stack.pop_back();
    }
    if (!stack.empty()) {
      nodes[stack.back()].children.push_back(idx);
    }
    stack.push_back(idx);
  }
  for (std::size_t idx = 0; idx < intervals.size(); ++idx) {
    SitNode& v = nodes[idx];
    if (v.children.empty()) {
      continue;
    }
    std::vector<int> mins;
    mins.reserve(v.children.size());
    for (std::size_t c : v.children) {
      const Interval& ci = intervals[c];
      mins.push_back(*std::min_element(p.begin() + static_cast<std::ptrdiff_t>(ci.start),
                                       p.begin() + static_cast<std::ptrdiff_t>(ci.end + 1)));
    }
    Permutation q = standardize(mins);
    if (is_increasing(q)) {
      v.kind = NodeKind::plus;
    } else if (is_decreasing(q)) {
      v.kind = NodeKind::minus;
    } else {
      v.kind = NodeKind::prime;
      v.pattern = std::move(q);
    }
  }
  return SITree::from_nodes(std::move(nodes));
}

/// The permutation whose strong interval tree is t.
inline Permutation compose(const SITree& t) {
  validate(t);
  const auto& nodes = t.nodes();
  const auto sizes = t.leaf_counts();
  std::vector<int> base(nodes.size(), 1);
  Permutation out;
  out.reserve(sizes.front());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const SitNode& v = nodes[i];
    if (v.kind == NodeKind::leaf) {
      out.push_back(base[i]);  // preorder visits leaves left to right
      continue;
    }
    const std::size_t a = v.children.size();
    Permutation q = v.kind == NodeKind::prime ? v.pattern : identity_permutation(a);
    if (v.kind == NodeKind::minus) {
      std::reverse(q.begin(), q.end());
    }
    // children sorted by their rank in the quotient get consecutive value blocks
    std::vector<std::size_t> by_rank(a);
    for (std::size_t c = 0; c < a; ++c) {
      by_rank[static_cast<std::size_t>(q[c] - 1)] = c;
    }
    int next = base[i];
    for (std::size_t r = 0; r < a; ++r) {
      const std::size_t child = v.children[by_rank[r]];
      base[child] = next;
      next += static_cast<int>(sizes[child]);
    }
  }
  return out;
}

struct TreeParams {
  std::size_t leaves = 0;
  std::size_t internal_nodes = 0;
  std::size_t prime_nodes = 0;
  std::size_t plus_nodes = 0;
  std::size_t minus_nodes = 0;
  std::size_t max_prime_arity = 0;
  std::map<std::size_t, std::size_t> arity_histogram;
  std::size_t subtree_size_sum = 0;
};

inline TreeParams tree_params(const SITree& t) {
  TreeParams r;
  const auto sizes = t.leaf_counts();
  for (std::size_t i = 0; i < t.node_count(); ++i) {
    const SitNode& v = t[i];
    r.subtree_size_sum += sizes[i];
    switch (v.kind) {
      case NodeKind::leaf:
        ++r.leaves;
        continue;
      case NodeKind::plus:
        ++r.plus_nodes;
        break;
      case NodeKind::minus:
        ++r.minus_nodes;
        break;
      case NodeKind::prime:
        ++r.prime_nodes;
        r.max_prime_arity = std::max(r.max_prime_arity, v.children.size());
        break;
    }
    ++r.internal_nodes;
    ++r.arity_histogram[v.children.size()];
  }
  return r;
}

inline std::size_t max_prime_arity(const SITree& t) {
  std::size_t m = 0;
  for (const SitNode& v : t.nodes()) {
    if (v.kind == NodeKind::prime) {
      m = std::max(m, v.children.size());
    }
  }
  return m;
}

}  // namespace sitlab
