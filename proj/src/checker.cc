#include "ltr/checker.h"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "ltr/error.h"

namespace ltr {

namespace {

constexpr StateId kNone = static_cast<StateId>(-1);

MoverMask bit(std::size_t i) { return i < 64 ? MoverMask{1} << i : 0; }

std::vector<StateId> entry_states(const ExplicitLts& lts, const EvaluationEntry& entry) {
  if (entry.kind == EvaluationEntry::Kind::InitialState) return {lts.initial()};
  std::vector<StateId> out;
  auto eps = lts.find_action(entry.epsilon);
  if (!eps) return out;
  for (const Edge& e : lts.successors(lts.initial())) {
    if (e.action == *eps && std::find(out.begin(), out.end(), e.target) == out.end()) {
      out.push_back(e.target);
    }
  }
  return out;
}

struct EdgeRef {
  StateId from;
  ActionId action;
};

Path trace_back(const ExplicitLts& lts, const std::vector<EdgeRef>& parent, StateId start,
                StateId goal) {
  Path path;
  for (StateId s = goal; s != start; s = parent[s].from) {
    path.states.push_back(s);
    path.actions.push_back(lts.action_name(parent[s].action));
  }
  path.states.push_back(start);
  std::reverse(path.states.begin(), path.states.end());
  std::reverse(path.actions.begin(), path.actions.end());
  return path;
}

/// Strongly connected components of the subgraph induced by `inside`.
std::vector<std::size_t> scc_ids(const ExplicitLts& lts, const std::vector<StateId>& nodes,
                                 const std::vector<bool>& inside, std::vector<bool>& cyclic) {
  const std::size_t n = lts.state_count();
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  std::size_t counter = 0, comps = 0;
  struct Frame {
    StateId v;
    std::size_t next;
  };
  for (StateId root : nodes) {
    if (index[root] != SIZE_MAX) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& succ = lts.successors(f.v);
      if (f.next < succ.size()) {
        StateId w = succ[f.next++].target;
        if (!inside[w]) continue;
        if (index[w] == SIZE_MAX) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      StateId v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] != index[v]) continue;
      std::size_t size = 0;
      StateId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comps;
        ++size;
      } while (w != v);
      bool self_loop = false;
      for (const Edge& e : lts.successors(v)) self_loop |= e.target == v;
      cyclic.push_back(size > 1 || self_loop);
      ++comps;
    }
  }
  return comp;
}

}  // namespace

Verdict check_ef(const ExplicitLts& lts, const std::string& p, const EvaluationEntry& entry) {
  (void)entry;  // epsilon steps count as ordinary steps, so both entries start at the initial state
  Verdict v;
  auto prop = lts.find_prop(p);
  if (!prop) return v;
  const StateId start = lts.initial();
  std::vector<EdgeRef> parent(lts.state_count(), {kNone, 0});
  std::vector<bool> seen(lts.state_count(), false);
  std::deque<StateId> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    if (lts.has_label(s, *prop)) {
      v.holds = true;
      v.witness = trace_back(lts, parent, start, s);
      return v;
    }
    for (const Edge& e : lts.successors(s)) {
      if (seen[e.target]) continue;
      seen[e.target] = true;
      parent[e.target] = {s, e.action};
      queue.push_back(e.target);
    }
  }
  return v;
}

Verdict check_eg(const ExplicitLts& lts, const std::string& p, const EvaluationEntry& entry) {
  Verdict v;
  auto prop = lts.find_prop(p);
  if (!prop) return v;
  for (StateId start : entry_states(lts, entry)) {
    if (!lts.has_label(start, *prop)) continue;
    // states reachable from start through p-states only
    std::vector<EdgeRef> parent(lts.state_count(), {kNone, 0});
    std::vector<bool> inside(lts.state_count(), false);
    std::vector<StateId> order{start};
    inside[start] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (const Edge& e : lts.successors(order[i])) {
        if (inside[e.target] || !lts.has_label(e.target, *prop)) continue;
        inside[e.target] = true;
        parent[e.target] = {order[i], e.action};
        order.push_back(e.target);
      }
    }
    std::vector<bool> cyclic;
    auto comp = scc_ids(lts, order, inside, cyclic);
    auto hit = std::find_if(order.begin(), order.end(),
                            [&](StateId s) { return cyclic[comp[s]]; });
    if (hit == order.end()) continue;
    const StateId anchor = *hit;

    Path path = trace_back(lts, parent, start, anchor);
    const std::size_t loop_start = path.states.size() - 1;
    // shortest cycle back to the anchor inside its component
    std::vector<EdgeRef> cparent(lts.state_count(), {kNone, 0});
    std::vector<bool> cseen(lts.state_count(), false);
    std::deque<StateId> queue{anchor};
    bool closed = false;
    EdgeRef closing{kNone, 0};
    while (!queue.empty() && !closed) {
      StateId s = queue.front();
      queue.pop_front();
      for (const Edge& e : lts.successors(s)) {
        if (!inside[e.target] || comp[e.target] != comp[anchor]) continue;
        if (e.target == anchor) {
          closing = {s, e.action};
          closed = true;
          break;
        }
        if (cseen[e.target]) continue;
        cseen[e.target] = true;
        cparent[e.target] = {s, e.action};
        queue.push_back(e.target);
      }
    }
    std::vector<StateId> cycle_states;
    std::vector<std::string> cycle_actions{lts.action_name(closing.action)};
    for (StateId s = closing.from; s != anchor; s = cparent[s].from) {
      cycle_states.push_back(s);
      cycle_actions.push_back(lts.action_name(cparent[s].action));
    }
    std::reverse(cycle_states.begin(), cycle_states.end());
    std::reverse(cycle_actions.begin(), cycle_actions.end());
    for (std::size_t i = 0; i < cycle_actions.size(); ++i) {
      path.actions.push_back(cycle_actions[i]);
      path.states.push_back(i < cycle_states.size() ? cycle_states[i] : anchor);
    }
    path.loop_start = loop_start;
    v.holds = true;
    v.witness = std::move(path);
    return v;
  }
  return v;
}

Verdict check(const ExplicitLts& lts, const Formula& f, const EvaluationEntry& entry) {
  return f.modality == Modality::EF ? check_ef(lts, f.proposition, entry)
                                    : check_eg(lts, f.proposition, entry);
}

namespace {

struct LocalMove {
  std::size_t component;
  LocalState from;
  LocalState to;
};

struct Event {
  std::string action;
  std::vector<LocalMove> moves;
};

struct SubStep {
  StateId from;
  StateId to;
  std::string action;
  std::size_t event;
};

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidWitness, what); }

void expand(const ReductionNode& node, const std::vector<SubStep>& steps,
            std::vector<Event>& events) {
  if (node.is_leaf()) {
    for (const SubStep& s : steps) events[s.event].moves.push_back({node.component, s.from, s.to});
    return;
  }
  const SumOfSquares& sq = *node.sq;
  const ExplicitLts& lts = sq.lts;
  auto position = [&](std::size_t child) {
    auto it = std::find(sq.children.begin(), sq.children.end(), child);
    if (it == sq.children.end()) invalid("square of an unknown child");
    return static_cast<std::size_t>(it - sq.children.begin());
  };

  std::vector<std::vector<SubStep>> child_steps(node.children.size());
  // steps of the active child recorded since its square was entered
  std::size_t segment_start = 0;
  for (const SubStep& step : steps) {
    if (step.from >= lts.state_count() || step.to >= lts.state_count()) {
      invalid("state out of range in " + node.result.name);
    }
    const StatePayload& from = lts.payload(step.from);
    if (std::holds_alternative<FreshInit>(from)) {
      if (step.action != sq.epsilon || !lts.find_edge(step.from, step.action, step.to)) {
        invalid("no epsilon step " + lts.state_name(step.from) + " -> " + lts.state_name(step.to));
      }
      segment_start = child_steps[position(std::get<SquareOrigin>(lts.payload(step.to)).child)].size();
      continue;
    }
    const auto& origin = std::get<SquareOrigin>(from);
    const bool redirect = step.to == lts.initial() && sq.root_upacts.contains(step.action);
    const Edge* edge = nullptr;
    for (const Edge& e : lts.successors(step.from)) {
      if (lts.action_name(e.action) != step.action) continue;
      if (e.target == step.to || (redirect && (e.movers & bit(sq.root)))) {
        edge = &e;
        break;
      }
    }
    if (!edge) {
      invalid("no transition " + lts.state_name(step.from) + " -" + step.action + "-> " +
              (step.to < lts.state_count() ? lts.state_name(step.to) : std::string("?")));
    }
    const auto& target = std::get<SquareOrigin>(lts.payload(edge->target));
    const std::size_t k = position(origin.child);
    const bool child_moved = edge->movers & bit(origin.child);
    const bool root_moved = edge->movers & bit(sq.root);
    if (root_moved) {
      events[step.event].moves.push_back({node.component, origin.root_state, target.root_state});
    }
    if (child_moved && root_moved) {
      const auto child_init = static_cast<LocalState>(node.children[k].result.initial_index());
      child_steps[k].push_back({origin.child_state, child_init, step.action, step.event});
      segment_start = child_steps[position(target.child)].size();
    } else if (child_moved) {
      child_steps[k].push_back({origin.child_state, target.child_state, step.action, step.event});
    } else if (redirect) {
      child_steps[k].resize(segment_start);
    }
  }
  for (std::size_t k = 0; k < node.children.size(); ++k) {
    expand(node.children[k], child_steps[k], events);
  }
}

GlobalPath lift_from(const ReductionNode& top, const Network& net, const Path& path) {
  if (path.states.empty() || path.states.size() != path.actions.size() + 1) {
    invalid("malformed path");
  }
  std::vector<Event> events(path.actions.size());
  std::vector<SubStep> steps;
  for (std::size_t i = 0; i < path.actions.size(); ++i) {
    events[i].action = path.actions[i];
    steps.push_back({path.states[i], path.states[i + 1], path.actions[i], i});
  }
  if (top.is_leaf()) {
    const Component& c = top.result;
    for (StateId s : path.states) {
      if (s >= c.states.size()) invalid("state out of range");
    }
    for (const SubStep& s : steps) {
      bool found = false;
      for (const auto& t : c.transitions) {
        found |= t.source == c.states[s.from] && t.action == s.action && t.target == c.states[s.to];
      }
      if (!found) invalid("no transition for step '" + s.action + "'");
    }
  } else if (path.states.front() >= top.sq->lts.state_count()) {
    invalid("state out of range");
  }
  expand(top, steps, events);

  GlobalPath out;
  GlobalTuple cur;
  for (const auto& c : net.components()) cur.coords.push_back(static_cast<LocalState>(c.initial_index()));
  if (top.is_leaf()) cur.coords.at(top.component) = path.states.front();
  out.states.push_back(cur);
  for (const Event& ev : events) {
    if (ev.moves.empty()) continue;
    for (const LocalMove& m : ev.moves) {
      if (cur.coords.at(m.component) != m.from) {
        invalid("lifted step '" + ev.action + "' expects " + net.component(m.component).name +
                " in '" + net.component(m.component).states.at(m.from) + "'");
      }
      cur.coords[m.component] = m.to;
    }
    out.actions.push_back(ev.action);
    out.states.push_back(cur);
  }
  return out;
}

}  // namespace

GlobalPath lift_witness(const Reduction& reduction, const Network& net, const Path& path) {
  return lift_from(reduction.root, net, path);
}

GlobalPath lift_witness(const SumOfSquares& sq, const Network& net, const Path& path) {
  ReductionNode node;
  node.component = sq.root;
  node.sq = sq;
  for (std::size_t c : sq.children) {
    ReductionNode leaf;
    leaf.component = c;
    leaf.result = net.component(c);
    node.children.push_back(std::move(leaf));
  }
  return lift_from(node, net, path);
}

std::optional<Path> replay_global(const ExplicitLts& product, const GlobalPath& path) {
  if (path.states.empty() || path.states.size() != path.actions.size() + 1) return std::nullopt;
  std::map<std::vector<LocalState>, StateId> index;
  for (StateId s = 0; s < product.state_count(); ++s) {
    if (const auto* g = std::get_if<GlobalTuple>(&product.payload(s))) index.emplace(g->coords, s);
  }
  Path out;
  for (const auto& g : path.states) {
    auto it = index.find(g.coords);
    if (it == index.end()) return std::nullopt;
    out.states.push_back(it->second);
  }
  if (out.states.front() != product.initial()) return std::nullopt;
  out.actions = path.actions;
  if (!replays(product, out)) return std::nullopt;
  return out;
}

}  // namespace ltr
