#include "ltr/model.h"

#include <algorithm>
#include <deque>
#include <sstream>

#include "ltr/error.h"

namespace ltr {

namespace {

const PropositionSet kNoLabels;

void check_component(const Component& c) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::InvalidComponent, "component '" + c.name + "': " + what);
  };
  if (c.name.empty()) throw Error(ErrorKind::InvalidComponent, "component with empty name");
  if (c.states.empty()) fail("no states");
  std::set<std::string> seen;
  for (const auto& s : c.states) {
    if (!seen.insert(s).second) fail("duplicate state '" + s + "'");
  }
  if (!seen.contains(c.initial)) fail("initial state '" + c.initial + "' is not a state");
  for (const auto& t : c.transitions) {
    if (!seen.contains(t.source)) fail("transition source '" + t.source + "' is not a state");
    if (!seen.contains(t.target)) fail("transition target '" + t.target + "' is not a state");
    if (t.action.empty()) fail("transition with empty action name");
  }
  for (const auto& [state, props] : c.labels) {
    if (!seen.contains(state)) fail("labelled state '" + state + "' is not a state");
  }
}

std::vector<Violation> scan_upacts(const Network& net, bool reachable_part) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < net.size(); ++i) {
    const Component& c = net.component(i);
    const ActionSet& up = net.upacts(i);
    if (up.empty()) continue;
    const auto reach = reachable_states(c);
    for (const auto& t : c.transitions) {
      if (!up.contains(t.action) || t.target == c.initial) continue;
      const bool reachable = reach[*c.state_index(t.source)];
      if (reachable != reachable_part) continue;
      out.push_back({c.name, t,
                     "upact '" + t.action + "' leads to '" + t.target +
                         "' instead of the initial state '" + c.initial + "'"});
    }
  }
  return out;
}

}  // namespace

std::optional<std::size_t> Component::state_index(const std::string& state) const {
  auto it = std::find(states.begin(), states.end(), state);
  if (it == states.end()) return std::nullopt;
  return static_cast<std::size_t>(it - states.begin());
}

std::size_t Component::initial_index() const { return state_index(initial).value(); }

const PropositionSet& Component::labels_of(const std::string& state) const {
  auto it = labels.find(state);
  return it == labels.end() ? kNoLabels : it->second;
}

ActionSet acts_of(const Component& c) {
  ActionSet out;
  for (const auto& t : c.transitions) out.insert(t.action);
  return out;
}

std::size_t Network::snd(std::size_t i, const std::string& action) const {
  const auto& m = snd_.at(i);
  auto it = m.find(action);
  if (it == m.end()) {
    throw std::out_of_range("'" + action + "' is not a downact of " + components_.at(i).name);
  }
  return it->second;
}

std::optional<std::size_t> Network::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> Network::subtree(std::size_t i) const {
  std::vector<std::size_t> out;
  std::vector<std::size_t> stack{i};
  while (!stack.empty()) {
    std::size_t n = stack.back();
    stack.pop_back();
    out.push_back(n);
    const auto& ch = children_.at(n);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::size_t Network::height() const {
  std::size_t best = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{root_, 1}};
  while (!stack.empty()) {
    auto [n, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    for (std::size_t c : children_[n]) stack.push_back({c, d + 1});
  }
  return best;
}

bool Network::operator==(const Network& other) const {
  return components_ == other.components_ && root_ == other.root_ &&
         parent_ == other.parent_ && children_ == other.children_ &&
         classes_ == other.classes_ && snd_ == other.snd_ && silent_ == other.silent_;
}

Network infer_topology(std::vector<Component> components, const std::string& root_name,
                       const TopologyOptions& options) {
  if (components.empty()) throw Error(ErrorKind::InvalidComponent, "network has no components");
  std::set<std::string> names;
  for (const auto& c : components) {
    check_component(c);
    if (!names.insert(c.name).second) {
      throw Error(ErrorKind::InvalidComponent, "duplicate component name '" + c.name + "'");
    }
  }

  Network net;
  net.components_ = std::move(components);
  net.silent_ = options.silent;
  const std::size_t n = net.components_.size();

  auto root = net.index_of(root_name);
  if (!root) throw Error(ErrorKind::UnknownRoot, "no component named '" + root_name + "'");
  net.root_ = *root;

  // owners of every non-silent action
  std::map<std::string, std::vector<std::size_t>> owners;
  std::vector<ActionSet> acts(n);
  for (std::size_t i = 0; i < n; ++i) {
    acts[i] = acts_of(net.components_[i]);
    for (const auto& a : acts[i]) {
      if (!net.is_silent(a)) owners[a].push_back(i);
    }
  }

  std::vector<std::set<std::size_t>> adj(n);
  std::size_t edge_count = 0;
  for (const auto& [action, who] : owners) {
    if (who.size() > 2) {
      std::ostringstream msg;
      msg << "action '" << action << "' is shared by " << who.size() << " components";
      throw Error(ErrorKind::NotATree, msg.str());
    }
    if (who.size() == 2) {
      if (options.root_upacts.contains(action)) {
        throw Error(ErrorKind::NotATree,
                    "root upact '" + action + "' is also shared inside the network");
      }
      if (adj[who[0]].insert(who[1]).second) ++edge_count;
      adj[who[1]].insert(who[0]);
    }
  }
  for (const auto& [a, b] : options.declared_edges) {
    auto i = net.index_of(a);
    auto j = net.index_of(b);
    if (!i || !j || *i == *j) {
      throw Error(ErrorKind::InvalidComponent, "bad declared edge " + a + " - " + b);
    }
    if (adj[*i].insert(*j).second) ++edge_count;
    adj[*j].insert(*i);
  }
  if (edge_count != n - 1) {
    throw Error(ErrorKind::NotATree, "shared-action graph has " + std::to_string(edge_count) +
                                         " edges over " + std::to_string(n) + " components");
  }

  net.parent_.assign(n, std::nullopt);
  net.children_.assign(n, {});
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{net.root_};
  seen[net.root_] = true;
  std::size_t visited = 0;
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    ++visited;
    for (std::size_t next : adj[cur]) {
      if (seen[next]) continue;
      seen[next] = true;
      net.parent_[next] = cur;
      net.children_[cur].push_back(next);
      queue.push_back(next);
    }
  }
  if (visited != n) throw Error(ErrorKind::NotATree, "shared-action graph is disconnected");

  net.classes_.assign(n, {});
  net.snd_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& a : acts[i]) {
      ActionClass& cls = net.classes_[i];
      if (net.is_silent(a)) {
        cls.local.insert(a);
        continue;
      }
      const auto& who = owners[a];
      if (who.size() == 1) {
        if (i == net.root_ && options.root_upacts.contains(a)) {
          cls.up.insert(a);
        } else {
          cls.local.insert(a);
        }
        continue;
      }
      std::size_t other = who[0] == i ? who[1] : who[0];
      if (net.parent_[i] == other) {
        cls.up.insert(a);
      } else {
        cls.down.insert(a);
        net.snd_[i][a] = other;
      }
    }
  }
  return net;
}

std::vector<bool> reachable_states(const Component& c) {
  std::vector<bool> seen(c.states.size(), false);
  std::map<std::string, std::vector<std::size_t>> succ;
  for (const auto& t : c.transitions) succ[t.source].push_back(*c.state_index(t.target));
  std::vector<std::size_t> stack{c.initial_index()};
  seen[stack.back()] = true;
  while (!stack.empty()) {
    std::size_t s = stack.back();
    stack.pop_back();
    for (std::size_t t : succ[c.states[s]]) {
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

std::vector<Violation> validate_live_reset(const Network& net) { return scan_upacts(net, true); }

std::vector<Violation> live_reset_warnings(const Network& net) { return scan_upacts(net, false); }

}  // namespace ltr
