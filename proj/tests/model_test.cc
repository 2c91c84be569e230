#include <doctest.h>

#include "ltr/error.h"
#include "ltr/model.h"
#include "support.h"

using namespace ltr;
using ltr::test::make;

TEST_CASE("topology of the running example") {
  Network net = test::gx();
  const std::size_t r = *net.index_of("R"), s1 = *net.index_of("S1"), s2 = *net.index_of("S2");
  CHECK(net.root() == r);
  CHECK(net.parent(s1) == r);
  CHECK(net.parent(s2) == r);
  CHECK_FALSE(net.parent(r).has_value());
  CHECK(net.children(r) == std::vector<std::size_t>{s1, s2});
  CHECK(net.downacts(r) == ActionSet{"open", "chooseL", "chooseR"});
  CHECK(net.locacts(r) == ActionSet{"beep"});
  CHECK(net.upacts(r).empty());
  CHECK(net.upacts(s1) == ActionSet{"open"});
  CHECK(net.upacts(s2) == ActionSet{"chooseL", "chooseR"});
  CHECK(net.locacts(s2) == ActionSet{"tau"});
  CHECK(net.snd(r, "open") == s1);
  CHECK(net.snd(r, "chooseR") == s2);
  CHECK(net.height() == 2);
  CHECK(net.subtree(r) == std::vector<std::size_t>{r, s1, s2});
}

TEST_CASE("single component is a one-node tree with only local actions") {
  Network net = infer_topology({make("A", {"a0", "a1"}, {{"a0", "x", "a1"}, {"a1", "y", "a0"}})}, "A");
  CHECK(net.size() == 1);
  CHECK(net.children(0).empty());
  CHECK(net.locacts(0) == ActionSet{"x", "y"});
  CHECK(net.height() == 1);
}

TEST_CASE("siblings sharing an action break the tree") {
  auto root = make("R", {"r0"}, {{"r0", "a", "r0"}, {"r0", "b", "r0"}});
  auto c1 = make("C1", {"c0"}, {{"c0", "a", "c0"}, {"c0", "x", "c0"}});
  auto c2 = make("C2", {"d0"}, {{"d0", "b", "d0"}, {"d0", "x", "d0"}});
  // independent adjacency count: R-C1, R-C2, C1-C2 is a triangle
  std::set<std::pair<std::string, std::string>> adjacent;
  std::vector<Component> cs{root, c1, c2};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      for (const auto& a : acts_of(cs[i])) {
        if (acts_of(cs[j]).contains(a)) adjacent.insert({cs[i].name, cs[j].name});
      }
    }
  }
  REQUIRE(adjacent.size() == 3);
  try {
    infer_topology(cs, "R");
    FAIL("expected NotATree");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotATree);
  }
}

TEST_CASE("topology errors") {
  auto a = make("A", {"a0"}, {{"a0", "x", "a0"}});
  auto b = make("B", {"b0"}, {{"b0", "y", "b0"}});
  auto c = make("C", {"c0"}, {{"c0", "x", "c0"}});
  auto d = make("D", {"d0"}, {{"d0", "x", "d0"}});
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::IoError;
  };
  CHECK(kind_of([&] { infer_topology({a, b}, "A"); }) == ErrorKind::NotATree);
  CHECK(kind_of([&] { infer_topology({a, c, d}, "A"); }) == ErrorKind::NotATree);
  CHECK(kind_of([&] { infer_topology({a}, "Z"); }) == ErrorKind::UnknownRoot);
  CHECK(kind_of([&] { infer_topology({a, a}, "A"); }) == ErrorKind::InvalidComponent);
  CHECK(kind_of([&] { infer_topology({}, "A"); }) == ErrorKind::InvalidComponent);
  auto bad = make("B", {"b0"}, {{"b0", "y", "b9"}});
  CHECK(kind_of([&] { infer_topology({bad}, "B"); }) == ErrorKind::InvalidComponent);
  auto bad_init = a;
  bad_init.initial = "nope";
  CHECK(kind_of([&] { infer_topology({bad_init}, "A"); }) == ErrorKind::InvalidComponent);
}

TEST_CASE("silent actions do not connect components") {
  auto a = make("A", {"a0"}, {{"a0", "tau", "a0"}, {"a0", "x", "a0"}});
  auto b = make("B", {"b0"}, {{"b0", "tau", "b0"}, {"b0", "x", "b0"}});
  auto c = make("C", {"c0"}, {{"c0", "tau", "c0"}, {"c0", "y", "c0"}});
  b.transitions.push_back({"b0", "y", "b0"});
  Network net = infer_topology({a, b, c}, "A");
  CHECK(net.parent(2) == 1);
  CHECK(net.locacts(0).contains("tau"));
}

TEST_CASE("root upacts of an embedded subtree") {
  TopologyOptions opts;
  opts.root_upacts = {"beep"};
  Network net = infer_topology({test::gx_root(), test::gx_s1(), test::gx_s2()}, "R", opts);
  CHECK(net.upacts(net.root()) == ActionSet{"beep"});
  CHECK(net.locacts(net.root()).empty());
}

TEST_CASE("live-reset validation") {
  CHECK(validate_live_reset(test::gx()).empty());
  CHECK(validate_live_reset(infer_topology({make("A", {"a0", "a1"}, {{"a0", "x", "a1"}})}, "A"))
            .empty());

  auto s2 = test::gx_s2();
  for (auto& t : s2.transitions) {
    if (t.action == "chooseR") t.target = "t1";
  }
  Network net = infer_topology({test::gx_root(), test::gx_s1(), s2}, "R");
  auto v = validate_live_reset(net);
  REQUIRE(v.size() == 1);
  CHECK(v[0].component == "S2");
  CHECK(v[0].transition == Transition{"t2", "chooseR", "t1"});
  CHECK(live_reset_warnings(net).empty());
}

TEST_CASE("unreachable live-reset violations are only warnings") {
  auto root = make("R", {"r0"}, {{"r0", "x", "r0"}});
  auto child = make("C", {"c0", "c1", "c2"}, {{"c0", "x", "c0"}, {"c2", "x", "c1"}});
  Network net = infer_topology({root, child}, "R");
  CHECK(validate_live_reset(net).empty());
  auto w = live_reset_warnings(net);
  REQUIRE(w.size() == 1);
  CHECK(w[0].transition == Transition{"c2", "x", "c1"});
  CHECK(reachable_states(net.component(1)) == std::vector<bool>{true, false, false});
}

TEST_CASE("action sets") {
  CHECK(acts_of(test::gx_s1()) == ActionSet{"open"});
  CHECK(acts_of(make("E", {"e0"}, {})).empty());
  CHECK(acts_of(test::gx_root()) == ActionSet{"open", "chooseL", "chooseR", "beep"});
}

TEST_CASE("action classes partition each alphabet") {
  Network net = test::gx();
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto& cls = net.action_class(i);
    ActionSet joined;
    std::size_t total = cls.up.size() + cls.down.size() + cls.local.size();
    joined.insert(cls.up.begin(), cls.up.end());
    joined.insert(cls.down.begin(), cls.down.end());
    joined.insert(cls.local.begin(), cls.local.end());
    CHECK(joined == acts_of(net.component(i)));
    CHECK(total == joined.size());
  }
}
