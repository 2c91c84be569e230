#include "ltr/lts.h"

#include <algorithm>
#include <set>
#include <sstream>

namespace ltr {

ExplicitLts::ExplicitLts(std::vector<std::string> component_names,
                         std::vector<std::vector<std::string>> component_states)
    : component_names_(std::move(component_names)),
      component_states_(std::move(component_states)) {}

ActionId ExplicitLts::intern_action(const std::string& name, bool silent) {
  if (auto id = find_action(name)) return *id;
  actions_.push_back(name);
  silent_.push_back(silent);
  return static_cast<ActionId>(actions_.size() - 1);
}

PropId ExplicitLts::intern_prop(const std::string& name) {
  if (auto id = find_prop(name)) return *id;
  props_.push_back(name);
  return static_cast<PropId>(props_.size() - 1);
}

std::optional<ActionId> ExplicitLts::find_action(const std::string& name) const {
  auto it = std::find(actions_.begin(), actions_.end(), name);
  if (it == actions_.end()) return std::nullopt;
  return static_cast<ActionId>(it - actions_.begin());
}

std::optional<PropId> ExplicitLts::find_prop(const std::string& name) const {
  auto it = std::find(props_.begin(), props_.end(), name);
  if (it == props_.end()) return std::nullopt;
  return static_cast<PropId>(it - props_.begin());
}

StateId ExplicitLts::add_state(StatePayload payload, std::vector<PropId> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  payloads_.push_back(std::move(payload));
  labels_.push_back(std::move(labels));
  succ_.emplace_back();
  return static_cast<StateId>(payloads_.size() - 1);
}

void ExplicitLts::add_edge(StateId from, ActionId action, StateId to, MoverMask movers) {
  succ_.at(from).push_back({action, to, movers});
}

std::size_t ExplicitLts::transition_count() const {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

bool ExplicitLts::has_label(StateId s, PropId p) const {
  const auto& l = labels_.at(s);
  return std::binary_search(l.begin(), l.end(), p);
}

std::string ExplicitLts::state_name(StateId s) const {
  const StatePayload& p = payloads_.at(s);
  std::ostringstream out;
  if (const auto* g = std::get_if<GlobalTuple>(&p)) {
    if (g->coords.size() == 1) return component_states_.at(0).at(g->coords[0]);
    out << '(';
    for (std::size_t i = 0; i < g->coords.size(); ++i) {
      if (i) out << ',';
      out << component_states_.at(i).at(g->coords[i]);
    }
    out << ')';
  } else if (const auto* sq = std::get_if<SquareOrigin>(&p)) {
    out << '[' << component_names_.at(sq->child) << ':'
        << component_states_.at(sq->child).at(sq->child_state) << '|'
        << component_states_.at(root_coordinate_).at(sq->root_state) << ']';
  } else {
    out << "init";
  }
  return out.str();
}

std::vector<std::string> ExplicitLts::label_names(StateId s) const {
  std::vector<std::string> out;
  for (PropId p : labels_.at(s)) out.push_back(props_.at(p));
  std::sort(out.begin(), out.end());
  return out;
}

const Edge* ExplicitLts::find_edge(StateId from, const std::string& action, StateId to) const {
  if (from >= succ_.size()) return nullptr;
  auto id = find_action(action);
  if (!id) return nullptr;
  for (const Edge& e : succ_[from]) {
    if (e.action == *id && e.target == to) return &e;
  }
  return nullptr;
}

ExplicitLts ExplicitLts::restricted(const std::vector<bool>& keep) const {
  ExplicitLts out(component_names_, component_states_);
  out.actions_ = actions_;
  out.silent_ = silent_;
  out.props_ = props_;
  out.root_coordinate_ = root_coordinate_;
  std::vector<StateId> remap(payloads_.size(), 0);
  for (StateId s = 0; s < payloads_.size(); ++s) {
    if (keep[s]) remap[s] = out.add_state(payloads_[s], labels_[s]);
  }
  for (StateId s = 0; s < payloads_.size(); ++s) {
    if (!keep[s]) continue;
    for (const Edge& e : succ_[s]) {
      if (keep[e.target]) out.add_edge(remap[s], e.action, remap[e.target], e.movers);
    }
  }
  out.initial_ = remap.at(initial_);
  return out;
}

bool replays(const ExplicitLts& lts, const Path& path) {
  if (path.states.empty() || path.states.size() != path.actions.size() + 1) return false;
  for (StateId s : path.states) {
    if (s >= lts.state_count()) return false;
  }
  for (std::size_t i = 0; i < path.actions.size(); ++i) {
    if (!lts.find_edge(path.states[i], path.actions[i], path.states[i + 1])) return false;
  }
  if (path.loop_start) {
    if (*path.loop_start >= path.states.size() - 1) return false;
    if (path.states[*path.loop_start] != path.states.back()) return false;
  }
  return true;
}

ExplicitLts component_to_lts(const Component& c, const ActionSet& silent) {
  ExplicitLts lts({c.name}, {c.states});
  for (LocalState i = 0; i < c.states.size(); ++i) {
    std::vector<PropId> labels;
    for (const auto& p : c.labels_of(c.states[i])) labels.push_back(lts.intern_prop(p));
    lts.add_state(GlobalTuple{{i}}, std::move(labels));
  }
  for (const auto& t : c.transitions) {
    ActionId a = lts.intern_action(t.action, silent.contains(t.action));
    lts.add_edge(*c.state_index(t.source), a, *c.state_index(t.target), 1);
  }
  lts.set_initial(static_cast<StateId>(c.initial_index()));
  return lts;
}

Component lts_to_component(const ExplicitLts& lts, const std::string& name) {
  Component c;
  c.name = name;
  std::set<std::string> used;
  for (StateId s = 0; s < lts.state_count(); ++s) {
    std::string state = lts.state_name(s);
    if (!used.insert(state).second) {
      state += "#" + std::to_string(s);
      used.insert(state);
    }
    c.states.push_back(state);
    auto labels = lts.label_names(s);
    if (!labels.empty()) c.labels[c.states.back()] = {labels.begin(), labels.end()};
  }
  c.initial = c.states.at(lts.initial());
  for (StateId s = 0; s < lts.state_count(); ++s) {
    for (const Edge& e : lts.successors(s)) {
      c.transitions.push_back({c.states[s], lts.action_name(e.action), c.states[e.target]});
    }
  }
  return c;
}

}  // namespace ltr
