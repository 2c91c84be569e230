#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ltr/lts.h"
#include "ltr/model.h"

namespace ltr {

/// Sum-of-squares product of a two-level network. Payloads of `lts` are
/// FreshInit (the initial state) or SquareOrigin whose child/root indices are
/// network component indices. Edge movers use the network's bit layout; the
/// fresh epsilon edges have no movers.
struct SumOfSquares {
  ExplicitLts lts;
  std::string epsilon;
  std::size_t root = 0;
  std::vector<std::size_t> children;
  ActionSet root_upacts;
  bool unreduced = true;

  std::size_t square_count() const { return children.size(); }
};

struct SquareOptions {
  /// Name of the fresh silent action; chosen automatically when empty.
  std::string epsilon;
};

/// Throws Error{NotTwoLevel} unless every child of the root is a leaf and the
/// root has at least one child.
SumOfSquares build_sq_unreduced(const Network& net, const SquareOptions& options = {});

/// States from which no path reaches a transition the root takes part in.
std::vector<StateId> compute_locked(const SumOfSquares& sq);

/// build_sq_unreduced with the locked states removed. Throws
/// Error{EmptyReduction} if every square entry is locked.
SumOfSquares build_sq(const Network& net, const SquareOptions& options = {});

/// Removes the locked states of an unreduced product.
SumOfSquares prune_locked(const SumOfSquares& sq);

/// Retargets every transition on an upact of the root to the fresh initial
/// state and returns the result as a component named `name`. State order is
/// preserved, so state i of the result is state i of `sq.lts`.
Component cmpl(const SumOfSquares& sq, const std::string& name);

struct ReduceOptions {
  /// Skip locked-state pruning at every level.
  bool keep_locked = false;
};

/// One node of the reduction tree. Leaves keep their component unchanged.
struct ReductionNode {
  std::size_t component = 0;  ///< index in the original network
  std::vector<ReductionNode> children;
  std::optional<SumOfSquares> sq;
  Component result;

  bool is_leaf() const { return !sq.has_value(); }
};

struct Reduction {
  ReductionNode root;
  /// The silent actions of the original network plus every epsilon introduced.
  ActionSet silent;
  std::size_t square_builds = 0;

  const Component& component() const { return root.result; }
  /// Epsilon of the topmost product, empty for single-component networks.
  std::string top_epsilon() const { return root.sq ? root.sq->epsilon : std::string(); }
};

/// Bottom-up reduction of a live-reset tree into a single component.
Reduction reduce_network(const Network& net, const ReduceOptions& options = {});

Component reduce_net(const Network& net, const ReduceOptions& options = {});

/// Name given to the component replacing the subtree rooted at `root_name`.
std::string reduced_name(const std::string& root_name);

}  // namespace ltr
