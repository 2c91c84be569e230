#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ltr/lts.h"
#include "ltr/model.h"

namespace ltr {

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

/// Reachable fragment of the asynchronous product of `net`, explored
/// breadth-first from the tuple of initial states. Edges record which
/// components moved. Throws Error{StateLimitExceeded} past `cap` states.
ExplicitLts full_product(const Network& net, std::size_t cap = kDefaultStateCap);

/// Two-component product; the components need not form a valid network.
ExplicitLts pair_product(const Component& a, const Component& b,
                         const ActionSet& silent = {"tau"},
                         std::size_t cap = kDefaultStateCap);

/// Product of an arbitrary list of components: an action fires jointly in
/// every component whose alphabet contains it, silent actions never
/// synchronise.
ExplicitLts product_of(std::span<const Component> components, const ActionSet& silent,
                       std::size_t cap = kDefaultStateCap);

struct PrefixStep {
  std::string action;
  MoverMask movers = 0;
  bool operator==(const PrefixStep&) const = default;
};

/// Finite run prefix over global tuples, with per-step provenance.
struct PathPrefix {
  std::vector<GlobalTuple> states;
  std::vector<PrefixStep> steps;
  bool operator==(const PathPrefix&) const = default;
};

/// Rebuilds a prefix from a path of `product` (which must carry GlobalTuple
/// payloads and mover masks, as full_product does).
PathPrefix prefix_from_path(const ExplicitLts& product, const Path& path);

/// Projects each state onto `keep` (in network order) and drops every step
/// that none of the kept components takes part in, together with its source
/// state. The final state is always kept. Throws Error{EmptyProjection} when
/// the prefix has no states or `keep` is empty.
PathPrefix project_prefix(const Network& net, const PathPrefix& prefix,
                          std::span<const std::size_t> keep);

}  // namespace ltr
