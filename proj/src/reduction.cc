#include "ltr/reduction.h"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "ltr/error.h"

namespace ltr {

namespace {

MoverMask bit(std::size_t i) { return i < 64 ? MoverMask{1} << i : 0; }

enum class MoveKind { Local, Up, Down };

struct Move {
  std::string action;
  LocalState target;
  MoveKind kind;
};

std::vector<std::vector<Move>> classify_moves(const Network& net, std::size_t c) {
  const Component& comp = net.component(c);
  std::vector<std::vector<Move>> out(comp.states.size());
  for (const auto& t : comp.transitions) {
    MoveKind kind = MoveKind::Local;
    if (net.upacts(c).contains(t.action)) {
      kind = MoveKind::Up;
    } else if (net.downacts(c).contains(t.action)) {
      kind = MoveKind::Down;
    }
    out[*comp.state_index(t.source)].push_back(
        {t.action, static_cast<LocalState>(*comp.state_index(t.target)), kind});
  }
  return out;
}

std::string fresh_epsilon(const Network& net) {
  ActionSet used = net.silent();
  for (const auto& c : net.components()) {
    auto a = acts_of(c);
    used.insert(a.begin(), a.end());
  }
  for (std::size_t k = 0;; ++k) {
    std::string name = "eps" + std::to_string(k);
    if (!used.contains(name)) return name;
  }
}

using SquareKey = std::tuple<std::size_t, LocalState, LocalState>;

}  // namespace

SumOfSquares build_sq_unreduced(const Network& net, const SquareOptions& options) {
  const std::size_t root = net.root();
  const auto& children = net.children(root);
  if (children.empty()) {
    throw Error(ErrorKind::NotTwoLevel, "root '" + net.root_component().name + "' has no children");
  }
  for (std::size_t c : children) {
    if (!net.children(c).empty()) {
      throw Error(ErrorKind::NotTwoLevel,
                  "child '" + net.component(c).name + "' of the root has children");
    }
  }

  std::vector<std::string> names;
  std::vector<std::vector<std::string>> states;
  for (const auto& c : net.components()) {
    names.push_back(c.name);
    states.push_back(c.states);
  }

  SumOfSquares sq{ExplicitLts(names, states), options.epsilon.empty() ? fresh_epsilon(net) : options.epsilon,
                  root, children, net.upacts(root), true};
  ExplicitLts& lts = sq.lts;
  lts.set_root_coordinate(root);

  const Component& rc = net.root_component();
  const auto root_moves = classify_moves(net, root);
  std::vector<std::vector<std::vector<Move>>> child_moves;
  std::vector<LocalState> child_init;
  for (std::size_t c : children) {
    child_moves.push_back(classify_moves(net, c));
    child_init.push_back(static_cast<LocalState>(net.component(c).initial_index()));
  }
  const auto root_init = static_cast<LocalState>(rc.initial_index());

  struct PendingEdge {
    std::string action;
    SquareKey target;
    MoverMask movers;
  };
  auto successors = [&](const SquareKey& key) {
    auto [k, cs, rs] = key;
    const std::size_t child = children[k];
    std::vector<PendingEdge> out;
    for (const Move& m : child_moves[k][cs]) {
      if (m.kind == MoveKind::Local) out.push_back({m.action, {k, m.target, rs}, bit(child)});
    }
    for (const Move& m : root_moves[rs]) {
      if (m.kind == MoveKind::Local) out.push_back({m.action, {k, cs, m.target}, bit(root)});
    }
    for (const Move& m : child_moves[k][cs]) {
      if (m.kind != MoveKind::Up || m.target != child_init[k]) continue;
      for (const Move& r : root_moves[rs]) {
        if (r.kind != MoveKind::Down || r.action != m.action) continue;
        for (std::size_t j = 0; j < children.size(); ++j) {
          out.push_back({m.action, {j, child_init[j], r.target}, bit(child) | bit(root)});
        }
      }
    }
    for (const Move& m : root_moves[rs]) {
      if (m.kind == MoveKind::Up) out.push_back({m.action, {k, cs, m.target}, bit(root)});
    }
    return out;
  };

  // explore, then number squares child by child in declaration order
  std::map<SquareKey, std::vector<PendingEdge>> reached;
  std::deque<SquareKey> queue;
  for (std::size_t j = 0; j < children.size(); ++j) {
    SquareKey key{j, child_init[j], root_init};
    if (reached.emplace(key, std::vector<PendingEdge>{}).second) queue.push_back(key);
  }
  while (!queue.empty()) {
    SquareKey key = queue.front();
    queue.pop_front();
    auto edges = successors(key);
    for (const auto& e : edges) {
      if (reached.emplace(e.target, std::vector<PendingEdge>{}).second) queue.push_back(e.target);
    }
    reached[key] = std::move(edges);
  }

  std::map<SquareKey, StateId> ids;
  StateId fresh = lts.add_state(FreshInit{}, {});
  lts.set_initial(fresh);
  for (const auto& [key, edges] : reached) {
    auto [k, cs, rs] = key;
    const Component& cc = net.component(children[k]);
    std::vector<PropId> labels;
    for (const auto& p : cc.labels_of(cc.states[cs])) labels.push_back(lts.intern_prop(p));
    for (const auto& p : rc.labels_of(rc.states[rs])) labels.push_back(lts.intern_prop(p));
    ids[key] = lts.add_state(SquareOrigin{children[k], cs, rs}, std::move(labels));
  }

  ActionId eps = lts.intern_action(sq.epsilon, true);
  for (std::size_t j = 0; j < children.size(); ++j) {
    lts.add_edge(fresh, eps, ids.at({j, child_init[j], root_init}), 0);
  }
  for (const auto& [key, edges] : reached) {
    for (const auto& e : edges) {
      ActionId a = lts.intern_action(e.action, net.is_silent(e.action));
      lts.add_edge(ids.at(key), a, ids.at(e.target), e.movers);
    }
  }
  return sq;
}

std::vector<StateId> compute_locked(const SumOfSquares& sq) {
  const ExplicitLts& lts = sq.lts;
  const MoverMask root_bit = bit(sq.root);
  std::vector<std::vector<StateId>> pred(lts.state_count());
  std::vector<bool> live(lts.state_count(), false);
  std::deque<StateId> queue;
  for (StateId s = 0; s < lts.state_count(); ++s) {
    for (const Edge& e : lts.successors(s)) {
      pred[e.target].push_back(s);
      if ((e.movers & root_bit) && !live[s]) {
        live[s] = true;
        queue.push_back(s);
      }
    }
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (StateId p : pred[s]) {
      if (!live[p]) {
        live[p] = true;
        queue.push_back(p);
      }
    }
  }
  std::vector<StateId> out;
  for (StateId s = 0; s < lts.state_count(); ++s) {
    if (!live[s]) out.push_back(s);
  }
  return out;
}

SumOfSquares prune_locked(const SumOfSquares& sq) {
  std::vector<bool> keep(sq.lts.state_count(), true);
  for (StateId s : compute_locked(sq)) keep[s] = false;
  const StateId init = sq.lts.initial();
  if (!keep[init]) {
    throw Error(ErrorKind::EmptyReduction, "every square entry is locked");
  }
  SumOfSquares out{sq.lts.restricted(keep), sq.epsilon, sq.root, sq.children, sq.root_upacts,
                   false};
  return out;
}

SumOfSquares build_sq(const Network& net, const SquareOptions& options) {
  return prune_locked(build_sq_unreduced(net, options));
}

Component cmpl(const SumOfSquares& sq, const std::string& name) {
  Component c = lts_to_component(sq.lts, name);
  for (auto& t : c.transitions) {
    if (sq.root_upacts.contains(t.action)) t.target = c.initial;
  }
  return c;
}

std::string reduced_name(const std::string& root_name) { return "sq(" + root_name + ")"; }

namespace {

struct ReduceContext {
  const Network& net;
  ReduceOptions options;
  ActionSet used_actions;
  ActionSet silent;
  std::size_t next_epsilon = 0;
  std::size_t builds = 0;

  std::string take_epsilon() {
    for (;;) {
      std::string name = "eps" + std::to_string(next_epsilon++);
      if (!used_actions.contains(name) && !silent.contains(name)) return name;
    }
  }
};

ReductionNode reduce_node(ReduceContext& ctx, std::size_t index) {
  ReductionNode node;
  node.component = index;
  const Network& net = ctx.net;
  if (net.children(index).empty()) {
    node.result = net.component(index);
    return node;
  }
  std::vector<Component> parts{net.component(index)};
  TopologyOptions topo{ctx.silent, net.upacts(index), {}};
  ActionSet dead;
  for (std::size_t c : net.children(index)) {
    node.children.push_back(reduce_node(ctx, c));
    const Component& reduced = node.children.back().result;
    parts.push_back(reduced);
    topo.declared_edges.insert({parts.front().name, reduced.name});
    // upacts the reduced child can no longer perform
    const ActionSet kept = acts_of(reduced);
    for (const auto& a : net.upacts(c)) {
      if (!kept.contains(a)) dead.insert(a);
    }
  }
  std::erase_if(parts.front().transitions,
                [&](const Transition& t) { return dead.contains(t.action); });
  Network two_level = infer_topology(std::move(parts), net.component(index).name, topo);

  SquareOptions sq_opts{ctx.take_epsilon()};
  ++ctx.builds;
  node.sq = ctx.options.keep_locked ? build_sq_unreduced(two_level, sq_opts)
                                    : build_sq(two_level, sq_opts);
  ctx.silent.insert(sq_opts.epsilon);
  node.result = cmpl(*node.sq, reduced_name(net.component(index).name));
  return node;
}

}  // namespace

Reduction reduce_network(const Network& net, const ReduceOptions& options) {
  ReduceContext ctx{net, options, {}, net.silent()};
  for (const auto& c : net.components()) {
    auto a = acts_of(c);
    ctx.used_actions.insert(a.begin(), a.end());
  }
  Reduction out;
  out.root = reduce_node(ctx, net.root());
  out.silent = ctx.silent;
  out.square_builds = ctx.builds;
  return out;
}

Component reduce_net(const Network& net, const ReduceOptions& options) {
  return reduce_network(net, options).root.result;
}

}  // namespace ltr
