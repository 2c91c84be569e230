#include <doctest.h>

#include <deque>
#include <numeric>
#include <random>

#include "ltr/checker.h"
#include "ltr/error.h"
#include "ltr/harness.h"
#include "ltr/product.h"
#include "ltr/reduction.h"
#include "support.h"

using namespace ltr;
using test::find_state;
using test::make;

namespace {

ExplicitLts permuted(const ExplicitLts& lts, const std::vector<StateId>& order) {
  ExplicitLts out(lts.component_names(), lts.component_states());
  for (ActionId a = 0; a < lts.action_count(); ++a) {
    out.intern_action(lts.action_name(a), lts.action_silent(a));
  }
  for (PropId p = 0; p < lts.prop_count(); ++p) out.intern_prop(lts.prop_name(p));
  std::vector<StateId> where(order.size());
  for (StateId i = 0; i < order.size(); ++i) {
    where[order[i]] = i;
    out.add_state(lts.payload(order[i]), lts.labels(order[i]));
  }
  for (StateId s = 0; s < lts.state_count(); ++s) {
    for (const Edge& e : lts.successors(s)) out.add_edge(where[s], e.action, where[e.target], e.movers);
  }
  out.set_initial(where[lts.initial()]);
  return out;
}

/// Distance to the nearest p-state, by BFS over the oracle product.
std::optional<std::size_t> oracle_distance(const std::vector<Component>& comps,
                                           const std::string& p) {
  auto prod = test::oracle_product(comps);
  auto labelled = [&](const test::NameTuple& t) {
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (comps[i].labels_of(t[i]).contains(p)) return true;
    }
    return false;
  };
  std::map<test::NameTuple, std::size_t> dist{{prod.initial, 0}};
  std::deque<test::NameTuple> queue{prod.initial};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    if (labelled(cur)) return dist[cur];
    for (const auto& [from, a, to] : prod.edges) {
      if (from == cur && !dist.contains(to)) {
        dist[to] = dist[cur] + 1;
        queue.push_back(to);
      }
    }
  }
  return std::nullopt;
}

bool ends_in(const ExplicitLts& lts, const Path& path, const std::string& p) {
  auto id = lts.find_prop(p);
  return id && lts.has_label(path.states.back(), *id);
}

}  // namespace

TEST_CASE("EF on the full product of the running example") {
  Network net = test::gx({{"r3", {"r3_reached"}}});
  ExplicitLts full = full_product(net);
  Verdict v = check_ef(full, "r3_reached");
  REQUIRE(v.holds);
  REQUIRE(v.witness);
  CHECK(replays(full, *v.witness));
  CHECK(test::names_of(full, v.witness->states.back())[0] == "r3");
  CHECK(v.witness->length() == *oracle_distance(net.components(), "r3_reached"));
  CHECK(v.witness->states.front() == full.initial());

  CHECK_FALSE(check_ef(full, "no_such_proposition").holds);
}

TEST_CASE("EF at the initial state") {
  auto a = make("A", {"a0", "a1"}, {{"a0", "x", "a1"}}, {{"a0", {"p"}}});
  ExplicitLts lts = component_to_lts(a, {"tau"});
  Verdict v = check_ef(lts, "p");
  REQUIRE(v.holds);
  CHECK(v.witness->length() == 0);
  CHECK(v.witness->states == std::vector<StateId>{lts.initial()});
}

TEST_CASE("EF on the sum-of-squares through (t0,r1)") {
  Network net = test::gx({{"r1", {"p"}}});
  SumOfSquares sq = build_sq(net);
  Verdict v = check_ef(sq.lts, "p", EvaluationEntry::epsilon_transparent(sq.epsilon));
  REQUIRE(v.holds);
  CHECK(sq.lts.state_name(v.witness->states.back()) == "[S2:t0|r1]");
  CHECK(replays(sq.lts, *v.witness));
  CHECK(check_ef(full_product(net), "p").holds);
}

TEST_CASE("EG on G_y") {
  Network net = test::gy();
  ExplicitLts full = full_product(net);
  Verdict v = check_eg(full, "p");
  REQUIRE(v.holds);
  REQUIRE(v.witness);
  REQUIRE(v.witness->loop_start);
  CHECK(replays(full, *v.witness));
  auto p = *full.find_prop("p");
  for (StateId s : v.witness->states) CHECK(full.has_label(s, p));
  // the lasso is closed explicitly: the last state repeats the loop start
  CHECK(v.witness->states.back() == v.witness->states[*v.witness->loop_start]);
  CHECK(v.witness->loop_start < v.witness->states.size() - 1);

  SumOfSquares sq = build_sq(net);
  CHECK_FALSE(check_eg(sq.lts, "p", EvaluationEntry::epsilon_transparent(sq.epsilon)).holds);
  Reduction r = reduce_network(net);
  CHECK_FALSE(check_eg(component_to_lts(r.component(), r.silent), "p",
                       EvaluationEntry::epsilon_transparent(r.top_epsilon()))
                  .holds);
  // EF is still preserved
  CHECK(check_ef(sq.lts, "p", EvaluationEntry::epsilon_transparent(sq.epsilon)).holds);
}

TEST_CASE("EG on a labelled loop") {
  auto a = make("A", {"a0", "a1", "a2"}, {{"a0", "x", "a1"}, {"a1", "y", "a2"}, {"a2", "z", "a0"}},
                {{"a0", {"p"}}, {"a1", {"p"}}, {"a2", {"p"}}});
  ExplicitLts lts = component_to_lts(a, {"tau"});
  Verdict v = check_eg(lts, "p");
  REQUIRE(v.holds);
  CHECK(v.witness->loop_start == 0u);
  CHECK(v.witness->states.size() == 4);
  CHECK(v.witness->states.back() == v.witness->states.front());
  CHECK(replays(lts, *v.witness));

  auto dead = make("D", {"d0", "d1"}, {{"d0", "x", "d1"}}, {{"d0", {"p"}}, {"d1", {"p"}}});
  CHECK_FALSE(check_eg(component_to_lts(dead, {"tau"}), "p").holds);
  CHECK(check(lts, {Modality::EG, "p"}).holds);
  CHECK_FALSE(check(lts, {Modality::EF, "q"}).holds);
}

TEST_CASE("EF is invariant under state renumbering") {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GenConfig g;
    g.seed = seed;
    Network net = gen_random_tree(g);
    ExplicitLts full = full_product(net);
    std::vector<StateId> order(full.state_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    ExplicitLts shuffled = permuted(full, order);
    for (const auto& p : propositions_of(net)) {
      CHECK(check_ef(full, p).holds == check_ef(shuffled, p).holds);
      CHECK(check_eg(full, p).holds == check_eg(shuffled, p).holds);
    }
  }
}

TEST_CASE("adding transitions never falsifies EF") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GenConfig g;
    g.seed = seed;
    Network net = gen_random_tree(g);
    ExplicitLts full = full_product(net);
    std::vector<StateId> order(full.state_count());
    std::iota(order.begin(), order.end(), 0);
    ExplicitLts more = permuted(full, order);
    ActionId extra = more.intern_action("extra", false);
    std::uniform_int_distribution<StateId> pick(0, full.state_count() - 1);
    for (int i = 0; i < 5; ++i) more.add_edge(pick(rng), extra, pick(rng));
    for (const auto& p : propositions_of(net)) {
      if (check_ef(full, p).holds) CHECK(check_ef(more, p).holds);
    }
  }
}

TEST_CASE("EG implies EF and witnesses replay") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenConfig g;
    g.seed = seed;
    Network net = gen_random_tree(g);
    ExplicitLts full = full_product(net);
    for (const auto& p : propositions_of(net)) {
      Verdict ef = check_ef(full, p);
      Verdict eg = check_eg(full, p);
      if (eg.holds) {
        CHECK(ef.holds);
        CHECK(replays(full, *eg.witness));
        CHECK(eg.witness->loop_start.has_value());
      }
      if (ef.holds) {
        CHECK(replays(full, *ef.witness));
        CHECK(ends_in(full, *ef.witness, p));
      }
    }
  }
}

TEST_CASE("lifting sum-of-squares witnesses") {
  Network net = test::gx();
  SumOfSquares sq = build_sq(net);
  ExplicitLts full = full_product(net);
  const StateId init = sq.lts.initial();
  const StateId s0r0 = *find_state(sq.lts, "[S1:s0|r0]");
  const StateId t0r1 = *find_state(sq.lts, "[S2:t0|r1]");

  SUBCASE("epsilon step only") {
    GlobalPath g = lift_witness(sq, net, Path{{init, s0r0}, {sq.epsilon}, {}});
    CHECK(g.actions.empty());
    REQUIRE(g.states.size() == 1);
    CHECK(g.states[0] == std::get<GlobalTuple>(full.payload(full.initial())));
  }
  SUBCASE("open hands off to S2") {
    GlobalPath g = lift_witness(sq, net, Path{{init, s0r0, t0r1}, {sq.epsilon, "open"}, {}});
    CHECK(g.actions == std::vector<std::string>{"open"});
    REQUIRE(g.states.size() == 2);
    auto render = [&](const GlobalTuple& t) {
      std::string out;
      for (std::size_t i = 0; i < t.coords.size(); ++i) {
        out += (i ? "," : "") + net.component(i).states[t.coords[i]];
      }
      return out;
    };
    CHECK(render(g.states[0]) == "r0,s0,t0");
    CHECK(render(g.states[1]) == "r1,s0,t0");
    CHECK(replay_global(full, g).has_value());
  }
  SUBCASE("a step with no counterpart") {
    CHECK_THROWS_AS(lift_witness(sq, net, Path{{init, t0r1}, {"open"}, {}}), Error);
  }
}

TEST_CASE("lifted witnesses replay on generated trees") {
  std::size_t lifted = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    GenConfig g;
    g.seed = seed;
    Network net = gen_random_tree(g);
    ExplicitLts full = full_product(net);
    for (bool keep : {false, true}) {
      std::optional<Reduction> r;
      try {
        r = reduce_network(net, {keep});
      } catch (const Error&) {
        continue;
      }
      ExplicitLts red = component_to_lts(r->component(), r->silent);
      const auto entry = r->top_epsilon().empty()
                             ? EvaluationEntry::initial()
                             : EvaluationEntry::epsilon_transparent(r->top_epsilon());
      for (const auto& p : propositions_of(net)) {
        Verdict v = check_ef(red, p, entry);
        if (!v.holds) continue;
        auto replayed = replay_global(full, lift_witness(*r, net, *v.witness));
        REQUIRE(replayed);
        CHECK(ends_in(full, *replayed, p));
        ++lifted;
      }
    }
  }
  CHECK(lifted > 100);
}
