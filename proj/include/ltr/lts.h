#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ltr/model.h"

namespace ltr {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;
using PropId = std::uint32_t;
/// Local state index inside one component.
using LocalState = std::uint32_t;
/// Bit i is set when component i took part in a transition.
using MoverMask = std::uint64_t;

struct GlobalTuple {
  std::vector<LocalState> coords;
  bool operator==(const GlobalTuple&) const = default;
};

/// A state of the square M_child x R.
struct SquareOrigin {
  std::size_t child = 0;
  LocalState child_state = 0;
  LocalState root_state = 0;
  bool operator==(const SquareOrigin&) const = default;
};

struct FreshInit {
  bool operator==(const FreshInit&) const = default;
};

using StatePayload = std::variant<GlobalTuple, SquareOrigin, FreshInit>;

struct Edge {
  ActionId action = 0;
  StateId target = 0;
  MoverMask movers = 0;
};

/// Flattened transition graph with a payload per state pointing back at the
/// structured origin of that state.
class ExplicitLts {
 public:
  /// `component_names` / `component_states` describe the coordinates payloads
  /// refer to (used only for rendering).
  ExplicitLts(std::vector<std::string> component_names,
              std::vector<std::vector<std::string>> component_states);

  ActionId intern_action(const std::string& name, bool silent);
  PropId intern_prop(const std::string& name);
  std::optional<ActionId> find_action(const std::string& name) const;
  std::optional<PropId> find_prop(const std::string& name) const;

  StateId add_state(StatePayload payload, std::vector<PropId> labels);
  void add_edge(StateId from, ActionId action, StateId to, MoverMask movers = 0);
  void set_initial(StateId s) { initial_ = s; }
  /// Coordinate holding the root for SquareOrigin payloads.
  void set_root_coordinate(std::size_t c) { root_coordinate_ = c; }
  std::size_t root_coordinate() const { return root_coordinate_; }

  std::size_t state_count() const { return payloads_.size(); }
  std::size_t transition_count() const;
  StateId initial() const { return initial_; }
  const std::vector<Edge>& successors(StateId s) const { return succ_.at(s); }
  const std::vector<PropId>& labels(StateId s) const { return labels_.at(s); }
  bool has_label(StateId s, PropId p) const;
  const StatePayload& payload(StateId s) const { return payloads_.at(s); }
  const std::vector<StatePayload>& payloads() const { return payloads_; }

  const std::string& action_name(ActionId a) const { return actions_.at(a); }
  bool action_silent(ActionId a) const { return silent_.at(a); }
  std::size_t action_count() const { return actions_.size(); }
  const std::string& prop_name(PropId p) const { return props_.at(p); }
  std::size_t prop_count() const { return props_.size(); }

  const std::vector<std::string>& component_names() const { return component_names_; }
  const std::vector<std::vector<std::string>>& component_states() const {
    return component_states_;
  }

  /// Human-readable rendering of a state's payload, e.g. "(r0,s0,t0)".
  std::string state_name(StateId s) const;
  std::vector<std::string> label_names(StateId s) const;

  /// First edge from `from` with the given action and target.
  const Edge* find_edge(StateId from, const std::string& action, StateId to) const;

  /// Keeps only states with keep[s] true, renumbering in increasing order.
  /// The initial state must be kept.
  ExplicitLts restricted(const std::vector<bool>& keep) const;

 private:
  std::vector<std::string> component_names_;
  std::vector<std::vector<std::string>> component_states_;
  std::vector<std::string> actions_;
  std::vector<bool> silent_;
  std::vector<std::string> props_;
  StateId initial_ = 0;
  std::size_t root_coordinate_ = 0;
  std::vector<std::vector<Edge>> succ_;
  std::vector<std::vector<PropId>> labels_;
  std::vector<StatePayload> payloads_;
};

/// Alternating state/action sequence. For lassos `loop_start` indexes the
/// state the cycle starts at; the last state repeats it.
struct Path {
  std::vector<StateId> states;
  std::vector<std::string> actions;
  std::optional<std::size_t> loop_start;

  std::size_t length() const { return actions.size(); }
  bool operator==(const Path&) const = default;
};

/// True iff every step of `path` is a transition of `lts`.
bool replays(const ExplicitLts& lts, const Path& path);

/// Single-component view of `c` (payload GlobalTuple of length 1).
ExplicitLts component_to_lts(const Component& c, const ActionSet& silent);

/// Inverse of component_to_lts, naming states by their rendered payloads.
Component lts_to_component(const ExplicitLts& lts, const std::string& name);

}  // namespace ltr
