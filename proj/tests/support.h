#pragma once

// Shared fixtures and brute-force oracles for the test binaries. The oracles
// work directly on state names and never touch the library's products.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ltr/model.h"
#include "ltr/lts.h"

namespace ltr::test {

inline Component make(std::string name, std::vector<std::string> states,
                      std::vector<Transition> ts,
                      std::map<std::string, PropositionSet> labels = {}) {
  Component c;
  c.name = std::move(name);
  c.states = std::move(states);
  c.initial = c.states.front();
  c.transitions = std::move(ts);
  c.labels = std::move(labels);
  return c;
}

inline Component gx_root(std::map<std::string, PropositionSet> labels = {}) {
  return make("R", {"r0", "r1", "r2", "r3", "r4"},
              {{"r0", "open", "r1"},
               {"r1", "chooseL", "r2"},
               {"r2", "open", "r3"},
               {"r1", "chooseR", "r4"},
               {"r4", "chooseL", "r0"},
               {"r3", "beep", "r3"}},
              std::move(labels));
}
inline Component gx_s1() { return make("S1", {"s0"}, {{"s0", "open", "s0"}}); }
inline Component gx_s2() {
  return make("S2", {"t0", "t1", "t2"},
              {{"t0", "tau", "t1"}, {"t1", "tau", "t2"}, {"t1", "chooseL", "t0"},
               {"t2", "chooseR", "t0"}});
}

inline Network gx(std::map<std::string, PropositionSet> root_labels = {}) {
  return infer_topology({gx_root(std::move(root_labels)), gx_s1(), gx_s2()}, "R");
}

inline Network gy() {
  return infer_topology(
      {make("R", {"r0", "r1", "r2"},
            {{"r0", "chooseR", "r1"}, {"r1", "chooseL", "r2"}, {"r2", "beep", "r2"}},
            {{"r2", {"p"}}}),
       make("S1", {"s0", "s1"}, {{"s0", "tau", "s1"}, {"s1", "chooseL", "s0"}}, {{"s1", {"p"}}}),
       make("S2", {"t0", "t1"}, {{"t0", "tau", "t1"}, {"t1", "chooseR", "t0"}}, {{"t0", {"p"}}})},
      "R");
}

using NameTuple = std::vector<std::string>;

/// Reachable tuples of the synchronised product, as a least fixpoint over
/// named states. An action fires in every component whose alphabet has it.
struct OracleProduct {
  std::set<NameTuple> states;
  std::set<std::tuple<NameTuple, std::string, NameTuple>> edges;
  NameTuple initial;
};

inline OracleProduct oracle_product(const std::vector<Component>& comps,
                                    const ActionSet& silent = {"tau"}) {
  OracleProduct out;
  std::vector<ActionSet> alpha;
  ActionSet all;
  for (const auto& c : comps) {
    out.initial.push_back(c.initial);
    alpha.push_back(acts_of(c));
    all.insert(alpha.back().begin(), alpha.back().end());
  }
  out.states.insert(out.initial);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const NameTuple& s : std::set<NameTuple>(out.states)) {
      for (const auto& a : all) {
        // every combination of moves of the participating components
        std::vector<NameTuple> partial{s};
        if (silent.contains(a)) {
          partial.clear();
          for (std::size_t i = 0; i < comps.size(); ++i) {
            for (const auto& t : comps[i].transitions) {
              if (t.action == a && t.source == s[i]) {
                NameTuple n = s;
                n[i] = t.target;
                partial.push_back(n);
              }
            }
          }
        } else {
          for (std::size_t i = 0; i < comps.size(); ++i) {
            if (!alpha[i].contains(a)) continue;
            std::vector<NameTuple> next;
            for (const auto& p : partial) {
              for (const auto& t : comps[i].transitions) {
                if (t.action == a && t.source == s[i]) {
                  NameTuple n = p;
                  n[i] = t.target;
                  next.push_back(n);
                }
              }
            }
            partial = std::move(next);
          }
        }
        for (const auto& n : partial) {
          out.edges.insert({s, a, n});
          if (out.states.insert(n).second) changed = true;
        }
      }
    }
  }
  return out;
}

/// EF p on the oracle product.
inline bool oracle_ef(const std::vector<Component>& comps, const std::string& p,
                      const ActionSet& silent = {"tau"}) {
  OracleProduct prod = oracle_product(comps, silent);
  for (const auto& s : prod.states) {
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (comps[i].labels_of(s[i]).contains(p)) return true;
    }
  }
  return false;
}

/// Tuple of state names for a GlobalTuple payload.
inline NameTuple names_of(const ExplicitLts& lts, StateId s) {
  const auto& g = std::get<GlobalTuple>(lts.payload(s));
  NameTuple out;
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    out.push_back(lts.component_states()[i][g.coords[i]]);
  }
  return out;
}

inline std::optional<StateId> find_state(const ExplicitLts& lts, const std::string& name) {
  for (StateId s = 0; s < lts.state_count(); ++s) {
    if (lts.state_name(s) == name) return s;
  }
  return std::nullopt;
}

}  // namespace ltr::test
