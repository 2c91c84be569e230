#include "ltr/product.h"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "ltr/error.h"

namespace ltr {

namespace {

struct TupleHash {
  std::size_t operator()(const std::vector<LocalState>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (LocalState x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

MoverMask bit(std::size_t i) { return i < 64 ? MoverMask{1} << i : 0; }

struct LocalMove {
  ActionId action;
  LocalState target;
};

}  // namespace

ExplicitLts product_of(std::span<const Component> components, const ActionSet& silent,
                       std::size_t cap) {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> states;
  for (const auto& c : components) {
    names.push_back(c.name);
    states.push_back(c.states);
  }
  ExplicitLts lts(names, states);
  const std::size_t n = components.size();

  // per component, per local state: outgoing moves in declaration order
  std::vector<std::vector<std::vector<LocalMove>>> moves(n);
  std::vector<std::vector<std::vector<PropId>>> local_labels(n);
  std::map<ActionId, std::vector<std::size_t>> owners;
  for (std::size_t c = 0; c < n; ++c) {
    const Component& comp = components[c];
    moves[c].resize(comp.states.size());
    local_labels[c].resize(comp.states.size());
    for (std::size_t s = 0; s < comp.states.size(); ++s) {
      for (const auto& p : comp.labels_of(comp.states[s])) {
        local_labels[c][s].push_back(lts.intern_prop(p));
      }
    }
    for (const auto& t : comp.transitions) {
      ActionId a = lts.intern_action(t.action, silent.contains(t.action));
      moves[c][*comp.state_index(t.source)].push_back(
          {a, static_cast<LocalState>(*comp.state_index(t.target))});
    }
    for (const auto& a : acts_of(comp)) {
      if (!silent.contains(a)) owners[*lts.find_action(a)].push_back(c);
    }
  }

  std::unordered_map<std::vector<LocalState>, StateId, TupleHash> index;
  std::deque<StateId> queue;
  std::vector<std::vector<LocalState>> tuples;

  auto intern = [&](const std::vector<LocalState>& tuple) -> StateId {
    auto it = index.find(tuple);
    if (it != index.end()) return it->second;
    if (lts.state_count() >= cap) {
      throw Error(ErrorKind::StateLimitExceeded,
                  "product exceeds the cap of " + std::to_string(cap) + " states");
    }
    std::vector<PropId> labels;
    for (std::size_t c = 0; c < n; ++c) {
      const auto& l = local_labels[c][tuple[c]];
      labels.insert(labels.end(), l.begin(), l.end());
    }
    StateId id = lts.add_state(GlobalTuple{tuple}, std::move(labels));
    index.emplace(tuple, id);
    tuples.push_back(tuple);
    queue.push_back(id);
    return id;
  };

  std::vector<LocalState> init(n);
  for (std::size_t c = 0; c < n; ++c) init[c] = static_cast<LocalState>(components[c].initial_index());
  lts.set_initial(intern(init));

  while (!queue.empty()) {
    StateId id = queue.front();
    queue.pop_front();
    const std::vector<LocalState> cur = tuples[id];
    for (std::size_t c = 0; c < n; ++c) {
      for (const LocalMove& m : moves[c][cur[c]]) {
        auto own = owners.find(m.action);
        if (lts.action_silent(m.action) || own == owners.end() || own->second.size() < 2) {
          std::vector<LocalState> next = cur;
          next[c] = m.target;
          StateId to = intern(next);
          lts.add_edge(id, m.action, to, bit(c));
          continue;
        }
        const auto& who = own->second;
        if (who.front() != c) continue;  // the lowest owner enumerates joint moves
        // cartesian product over the remaining owners' matching moves
        std::vector<std::vector<LocalState>> partial{cur};
        for (std::size_t k = 0; k < who.size(); ++k) {
          std::size_t d = who[k];
          std::vector<std::vector<LocalState>> extended;
          for (const auto& p : partial) {
            if (d == c) {
              auto q = p;
              q[d] = m.target;
              extended.push_back(std::move(q));
              continue;
            }
            for (const LocalMove& dm : moves[d][cur[d]]) {
              if (dm.action != m.action) continue;
              auto q = p;
              q[d] = dm.target;
              extended.push_back(std::move(q));
            }
          }
          partial = std::move(extended);
        }
        MoverMask mask = 0;
        for (std::size_t d : who) mask |= bit(d);
        for (const auto& next : partial) {
          StateId to = intern(next);
          lts.add_edge(id, m.action, to, mask);
        }
      }
    }
  }
  return lts;
}

ExplicitLts full_product(const Network& net, std::size_t cap) {
  return product_of(net.components(), net.silent(), cap);
}

ExplicitLts pair_product(const Component& a, const Component& b, const ActionSet& silent,
                         std::size_t cap) {
  std::vector<Component> pair{a, b};
  return product_of(pair, silent, cap);
}

PathPrefix prefix_from_path(const ExplicitLts& product, const Path& path) {
  if (!replays(product, path)) {
    throw Error(ErrorKind::InvalidWitness, "path does not replay on the product");
  }
  PathPrefix out;
  for (StateId s : path.states) out.states.push_back(std::get<GlobalTuple>(product.payload(s)));
  for (std::size_t i = 0; i < path.actions.size(); ++i) {
    const Edge* e = product.find_edge(path.states[i], path.actions[i], path.states[i + 1]);
    out.steps.push_back({path.actions[i], e->movers});
  }
  return out;
}

PathPrefix project_prefix(const Network& net, const PathPrefix& prefix,
                          std::span<const std::size_t> keep) {
  if (prefix.states.empty() || prefix.states.size() != prefix.steps.size() + 1) {
    throw Error(ErrorKind::EmptyProjection, "prefix has no states");
  }
  if (keep.empty()) throw Error(ErrorKind::EmptyProjection, "no components selected");
  std::vector<std::size_t> sel(keep.begin(), keep.end());
  std::sort(sel.begin(), sel.end());
  sel.erase(std::unique(sel.begin(), sel.end()), sel.end());

  ActionSet kept_acts;
  for (std::size_t c : sel) {
    if (c >= net.size() || c >= 64) {
      throw Error(ErrorKind::EmptyProjection, "component index out of range");
    }
    for (const auto& a : acts_of(net.component(c))) {
      if (!net.is_silent(a)) kept_acts.insert(a);
    }
  }

  auto project = [&](const GlobalTuple& g) {
    GlobalTuple out;
    for (std::size_t c : sel) out.coords.push_back(g.coords.at(c));
    return out;
  };
  auto remask = [&](MoverMask m) {
    MoverMask out = 0;
    for (std::size_t k = 0; k < sel.size(); ++k) {
      if (m & bit(sel[k])) out |= bit(k);
    }
    return out;
  };

  PathPrefix out;
  for (std::size_t i = 0; i < prefix.steps.size(); ++i) {
    const PrefixStep& step = prefix.steps[i];
    bool belongs = net.is_silent(step.action) ? remask(step.movers) != 0
                                              : kept_acts.contains(step.action);
    if (!belongs) continue;
    out.states.push_back(project(prefix.states[i]));
    out.steps.push_back({step.action, remask(step.movers)});
  }
  out.states.push_back(project(prefix.states.back()));
  return out;
}

}  // namespace ltr
