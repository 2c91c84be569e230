#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ltr {

using ActionSet = std::set<std::string>;
using PropositionSet = std::set<std::string>;

struct Transition {
  std::string source;
  std::string action;
  std::string target;

  auto operator<=>(const Transition&) const = default;
};

/// A single labelled transition system. States are kept in declaration order;
/// the action alphabet is whatever appears on the transitions.
struct Component {
  std::string name;
  std::vector<std::string> states;
  std::string initial;
  std::vector<Transition> transitions;
  std::map<std::string, PropositionSet> labels;

  bool operator==(const Component&) const = default;

  /// Index of `state` in `states`, or nullopt.
  std::optional<std::size_t> state_index(const std::string& state) const;
  std::size_t initial_index() const;
  const PropositionSet& labels_of(const std::string& state) const;
};

ActionSet acts_of(const Component& c);

/// Partition of one component's actions relative to the inferred tree.
/// Silent actions are always local.
struct ActionClass {
  ActionSet up;
  ActionSet down;
  ActionSet local;

  bool operator==(const ActionClass&) const = default;
};

struct TopologyOptions {
  ActionSet silent = {"tau"};
  /// Actions the root shares with a parent outside this network. Only used
  /// when a subtree is treated as a network of its own.
  ActionSet root_upacts;
  /// Component pairs that are adjacent even if they no longer share an
  /// action (a reduced subtree whose upacts all turned out to be dead).
  std::set<std::pair<std::string, std::string>> declared_edges;
};

class Network {
 public:
  const std::vector<Component>& components() const { return components_; }
  const Component& component(std::size_t i) const { return components_.at(i); }
  std::size_t size() const { return components_.size(); }
  std::size_t root() const { return root_; }
  const Component& root_component() const { return components_[root_]; }

  std::optional<std::size_t> parent(std::size_t i) const { return parent_.at(i); }
  const std::vector<std::size_t>& children(std::size_t i) const { return children_.at(i); }
  const ActionClass& action_class(std::size_t i) const { return classes_.at(i); }
  const ActionSet& upacts(std::size_t i) const { return classes_.at(i).up; }
  const ActionSet& downacts(std::size_t i) const { return classes_.at(i).down; }
  const ActionSet& locacts(std::size_t i) const { return classes_.at(i).local; }

  /// The child of `i` that synchronises with it over the downact `action`.
  std::size_t snd(std::size_t i, const std::string& action) const;
  const std::map<std::string, std::size_t>& snd_map(std::size_t i) const { return snd_.at(i); }

  const ActionSet& silent() const { return silent_; }
  bool is_silent(const std::string& action) const { return silent_.contains(action); }

  std::optional<std::size_t> index_of(const std::string& name) const;

  /// Components of the subtree rooted at `i` in pre-order.
  std::vector<std::size_t> subtree(std::size_t i) const;
  /// Longest root-to-leaf path counted in components (a single node has height 1).
  std::size_t height() const;

  bool operator==(const Network& other) const;

 private:
  friend Network infer_topology(std::vector<Component>, const std::string&,
                                const TopologyOptions&);

  std::vector<Component> components_;
  std::size_t root_ = 0;
  std::vector<std::optional<std::size_t>> parent_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<ActionClass> classes_;
  std::vector<std::map<std::string, std::size_t>> snd_;
  ActionSet silent_;
};

/// Builds the synchronisation tree: components are adjacent iff they share a
/// non-silent action. Throws Error{InvalidComponent, UnknownRoot, NotATree}.
Network infer_topology(std::vector<Component> components, const std::string& root_name,
                       const TopologyOptions& options = {});

struct Violation {
  std::string component;
  Transition transition;
  std::string message;

  bool operator==(const Violation&) const = default;
};

/// Reachable upact transitions that do not return to the initial state.
std::vector<Violation> validate_live_reset(const Network& net);

/// Same check restricted to transitions unreachable from the initial state;
/// these are reported as warnings only.
std::vector<Violation> live_reset_warnings(const Network& net);

/// States of `c` reachable from its initial state, in declaration order.
std::vector<bool> reachable_states(const Component& c);

}  // namespace ltr
