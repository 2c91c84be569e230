#include "ltr/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "ltr/checker.h"
#include "ltr/error.h"
#include "ltr/reduction.h"

namespace ltr {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[uniform(0, v.size() - 1)];
  }

 private:
  std::mt19937_64 engine_;
};

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.empty() ? 0.0 : v[v.size() / 2];
}

}  // namespace

GenConfig GenConfig::clamped() const {
  GenConfig c = *this;
  c.max_depth = std::max<std::size_t>(1, c.max_depth);
  c.max_children = std::max<std::size_t>(1, c.max_children);
  c.max_states = std::max<std::size_t>(1, c.max_states);
  c.min_children = std::min(c.min_children, c.max_children);
  c.min_states = std::clamp<std::size_t>(c.min_states, 1, c.max_states);
  c.propositions = std::max<std::size_t>(2, c.propositions);
  if (!(c.density > 0.0)) c.density = 0.05;
  c.density = std::min(1.0, c.density);
  return c;
}

Network gen_random_tree(const GenConfig& raw) {
  const GenConfig cfg = raw.clamped();
  Rng rng(cfg.seed);

  // tree shape, breadth first
  std::vector<std::size_t> depth{1};
  std::vector<std::optional<std::size_t>> parent{std::nullopt};
  for (std::size_t i = 0; i < depth.size(); ++i) {
    if (depth[i] >= cfg.max_depth) continue;
    std::size_t kids = rng.uniform(i == 0 ? std::max<std::size_t>(1, cfg.min_children) : cfg.min_children,
                                    cfg.max_children);
    for (std::size_t k = 0; k < kids; ++k) {
      depth.push_back(depth[i] + 1);
      parent.push_back(i);
    }
  }
  const std::size_t n = depth.size();

  std::vector<std::size_t> sizes(n);
  for (auto& s : sizes) s = rng.uniform(cfg.min_states, cfg.max_states);
  const std::size_t orphan_comp = rng.uniform(0, n - 1);
  if (sizes[orphan_comp] < 2) sizes[orphan_comp] = 2;
  const std::size_t orphan_state = sizes[orphan_comp] - 1;

  std::vector<Component> comps(n);
  std::vector<std::vector<std::size_t>> targets(n);  // legal transition targets
  for (std::size_t c = 0; c < n; ++c) {
    comps[c].name = "c" + std::to_string(c);
    for (std::size_t s = 0; s < sizes[c]; ++s) {
      comps[c].states.push_back("s" + std::to_string(s));
      if (!(c == orphan_comp && s == orphan_state)) targets[c].push_back(s);
    }
    comps[c].initial = "s0";
  }
  auto add = [&](std::size_t c, std::size_t from, const std::string& a, std::size_t to) {
    comps[c].transitions.push_back({comps[c].states[from], a, comps[c].states[to]});
  };

  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::string> local{"tau"};
    const std::size_t locals = rng.uniform(0, cfg.max_local_actions);
    for (std::size_t j = 0; j < locals; ++j) {
      local.push_back("l" + std::to_string(c) + "_" + std::to_string(j));
    }
    for (std::size_t s = 0; s < sizes[c]; ++s) {
      for (const auto& a : local) {
        if (rng.chance(cfg.density)) add(c, s, a, rng.pick(targets[c]));
      }
    }
  }
  for (std::size_t c = 1; c < n; ++c) {
    const std::size_t p = *parent[c];
    const std::size_t ups = rng.uniform(1, 3);
    for (std::size_t j = 0; j < ups; ++j) {
      const std::string a = "u" + std::to_string(c) + "_" + std::to_string(j);
      bool any = false;
      for (std::size_t s = 0; s < sizes[c]; ++s) {
        if (rng.chance(cfg.density)) {
          add(c, s, a, 0);
          any = true;
        }
      }
      if (!any) add(c, rng.pick(targets[c]), a, 0);
      any = false;
      for (std::size_t r = 0; r < sizes[p]; ++r) {
        if (rng.chance(cfg.density)) {
          add(p, r, a, rng.pick(targets[p]));
          any = true;
        }
      }
      if (!any) add(p, rng.pick(targets[p]), a, rng.pick(targets[p]));
    }
  }

  comps[rng.uniform(0, n - 1)].labels["s0"].insert("p0");
  comps[orphan_comp].labels[comps[orphan_comp].states[orphan_state]].insert("p1");
  for (std::size_t k = 2; k < cfg.propositions; ++k) {
    const std::size_t places = rng.uniform(1, 2);
    for (std::size_t j = 0; j < places; ++j) {
      const std::size_t c = rng.uniform(0, n - 1);
      const std::size_t s = rng.uniform(0, sizes[c] - 1);
      comps[c].labels[comps[c].states[s]].insert("p" + std::to_string(k));
    }
  }
  return infer_topology(std::move(comps), "c0");
}

std::vector<std::string> propositions_of(const Network& net) {
  std::set<std::string> out;
  for (const auto& c : net.components()) {
    for (const auto& [state, props] : c.labels) out.insert(props.begin(), props.end());
  }
  return {out.begin(), out.end()};
}

std::size_t SuiteReport::disagreements() const {
  return std::count_if(results.begin(), results.end(),
                       [](const auto& r) { return r.ef_full != r.ef_reduced; });
}
std::size_t SuiteReport::unreduced_disagreements() const {
  return std::count_if(results.begin(), results.end(),
                       [](const auto& r) { return r.ef_full != r.ef_unreduced; });
}
std::size_t SuiteReport::divergences() const {
  return std::count_if(results.begin(), results.end(),
                       [](const auto& r) { return r.ef_reduced != r.ef_unreduced; });
}
std::size_t SuiteReport::eg_divergences() const {
  return std::count_if(results.begin(), results.end(),
                       [](const auto& r) { return r.eg_full != r.eg_reduced; });
}
std::size_t SuiteReport::witnesses_checked() const {
  std::size_t n = 0;
  for (const auto& r : results) n += r.witness_reduced_ok.has_value() + r.witness_unreduced_ok.has_value();
  return n;
}
std::size_t SuiteReport::witnesses_failed() const {
  std::size_t n = 0;
  for (const auto& r : results) {
    n += (r.witness_reduced_ok == false) + (r.witness_unreduced_ok == false);
  }
  return n;
}

namespace {

struct ReducedModel {
  std::optional<Reduction> reduction;
  std::optional<ExplicitLts> lts;
  EvaluationEntry entry;
};

ReducedModel make_reduced(const Network& net, bool keep_locked, std::string* error) {
  ReducedModel m;
  try {
    m.reduction = reduce_network(net, {keep_locked});
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EmptyReduction) throw;
    if (error) *error = e.what();
    return m;
  }
  m.lts = component_to_lts(m.reduction->component(), m.reduction->silent);
  if (!m.reduction->top_epsilon().empty()) {
    m.entry = EvaluationEntry::epsilon_transparent(m.reduction->top_epsilon());
  }
  return m;
}

bool size_bound_holds(const ReductionNode& node) {
  if (node.is_leaf()) return true;
  std::size_t bound = 0;
  for (const auto& child : node.children) {
    if (!size_bound_holds(child)) return false;
    bound += child.result.states.size();
  }
  // the node's own root is coordinate root of its square product
  bound *= node.sq->lts.component_states().at(node.sq->root).size();
  return node.sq->lts.state_count() <= bound + 1;
}

std::optional<bool> lift_and_replay(const ReducedModel& m, const Network& net,
                                    const ExplicitLts& full, const std::string& p,
                                    const Verdict& v, std::string& error) {
  if (!v.holds) return std::nullopt;
  try {
    GlobalPath g = lift_witness(*m.reduction, net, *v.witness);
    auto replayed = replay_global(full, g);
    if (!replayed) {
      error = "lifted witness for " + p + " does not replay on the full product";
      return false;
    }
    auto prop = full.find_prop(p);
    if (!prop || !full.has_label(replayed->states.back(), *prop)) {
      error = "lifted witness for " + p + " does not end in a " + p + "-state";
      return false;
    }
    return true;
  } catch (const Error& e) {
    error = e.what();
    return false;
  }
}

}  // namespace

SuiteReport equivalence_suite(const Network& net, const SuiteOptions& options) {
  SuiteReport report;
  report.components = net.size();
  report.height = net.height();

  std::optional<ExplicitLts> full;
  try {
    full = full_product(net, options.cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::StateLimitExceeded) throw;
    throw Error(ErrorKind::OracleTooLarge, e.what());
  }
  report.full_states = full->state_count();

  const ReducedModel reduced = make_reduced(net, false, &report.reduction_error);
  const ReducedModel unreduced = make_reduced(net, true, nullptr);
  report.reduced_states = reduced.lts ? reduced.lts->state_count() : 0;
  report.unreduced_states = unreduced.lts->state_count();
  report.size_bound_ok = size_bound_holds(unreduced.reduction->root);
  if (report.height == 2) {
    std::size_t m = 0;
    for (const auto& c : net.components()) m = std::max(m, c.states.size());
    report.two_level_unreduced_states = unreduced.reduction->root.sq->lts.state_count();
    report.two_level_bound = (net.size() - 1) * m * m + 1;
  }

  for (const auto& p : propositions_of(net)) {
    PropositionResult r;
    r.proposition = p;
    r.ef_full = check_ef(*full, p).holds;
    const Verdict red = reduced.lts ? check_ef(*reduced.lts, p, reduced.entry) : Verdict{};
    const Verdict unred = check_ef(*unreduced.lts, p, unreduced.entry);
    r.ef_reduced = red.holds;
    r.ef_unreduced = unred.holds;
    if (options.check_eg) {
      r.eg_full = check_eg(*full, p).holds;
      r.eg_reduced = reduced.lts && check_eg(*reduced.lts, p, reduced.entry).holds;
    }
    if (reduced.lts) {
      r.witness_reduced_ok = lift_and_replay(reduced, net, *full, p, red, r.witness_error);
    }
    r.witness_unreduced_ok = lift_and_replay(unreduced, net, *full, p, unred, r.witness_error);
    report.results.push_back(std::move(r));
  }
  return report;
}

BatchReport run_batch(const BatchConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  BatchReport out;
  out.gen = cfg.gen.clamped();
  const std::size_t attempts = cfg.max_attempts ? cfg.max_attempts : 4 * cfg.instances;

  struct Slot {
    enum { Pending, Oversized, Done } state = Pending;
    SuiteReport report;
  };
  std::vector<Slot> slots(attempts);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex error_mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      if (done.load() >= cfg.instances) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= attempts) return;
      GenConfig g = cfg.gen;
      g.seed = cfg.first_seed + i;
      try {
        Network net = gen_random_tree(g);
        slots[i].report = equivalence_suite(net, cfg.suite);
        slots[i].report.seed = g.seed;
        slots[i].state = Slot::Done;
        done.fetch_add(1);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::OracleTooLarge) {
          slots[i].state = Slot::Oversized;
          continue;
        }
        std::lock_guard lock(error_mutex);
        if (!failure) failure = std::current_exception();
        return;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, cfg.jobs);
  {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // aggregate in seed order, stopping at the requested count
  for (auto& slot : slots) {
    if (out.evaluated >= cfg.instances) break;
    if (slot.state == Slot::Oversized) {
      ++out.skipped_oversized;
      continue;
    }
    if (slot.state != Slot::Done) continue;
    const SuiteReport& r = slot.report;
    ++out.evaluated;
    out.propositions += r.results.size();
    out.disagreements += r.disagreements();
    out.agreements += r.results.size() - r.disagreements();
    out.unreduced_disagreements += r.unreduced_disagreements();
    out.divergences += r.divergences();
    out.eg_divergences += r.eg_divergences();
    out.witnesses_checked += r.witnesses_checked();
    out.witnesses_failed += r.witnesses_failed();
    for (const auto& pr : r.results) (pr.ef_full ? out.ef_true : out.ef_false)++;
    bool bound_ok = r.size_bound_ok;
    if (r.two_level_unreduced_states) {
      ++out.two_level_instances;
      bound_ok = bound_ok && *r.two_level_unreduced_states <= *r.two_level_bound;
    }
    if (!bound_ok) ++out.size_bound_violations;
    if (r.disagreements() || r.unreduced_disagreements() || r.divergences() ||
        r.witnesses_failed() || !bound_ok) {
      out.findings.push_back(r);
    }
  }
  out.seconds = elapsed_ms(start) / 1000.0;
  return out;
}

StatsReport stats(const Network& net, std::size_t cap, std::size_t runs) {
  StatsReport r;
  r.components = net.size();
  r.runs = std::max<std::size_t>(1, runs);
  std::vector<double> full_ms, reduce_ms;
  for (std::size_t i = 0; i < r.runs; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      ExplicitLts full = full_product(net, cap);
      r.full_states = full.state_count();
      r.full_transitions = full.transition_count();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::StateLimitExceeded) throw;
      r.full_capped = true;
      r.full_states = cap;
      r.full_transitions = 0;
    }
    full_ms.push_back(elapsed_ms(t0));

    t0 = std::chrono::steady_clock::now();
    try {
      Component c = reduce_net(net);
      r.reduced_states = c.states.size();
      r.reduced_transitions = c.transitions.size();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptyReduction) throw;
      r.reduction_error = e.what();
    }
    reduce_ms.push_back(elapsed_ms(t0));
  }
  r.unreduced_states = reduce_net(net, {true}).states.size();
  r.full_product_ms = median(full_ms);
  r.reduce_ms = median(reduce_ms);
  r.reduction_ratio = r.full_states ? static_cast<double>(r.reduced_states) / r.full_states : 0.0;
  return r;
}

nlohmann::ordered_json to_json(const GenConfig& cfg) {
  return {{"seed", cfg.seed},
          {"maxDepth", cfg.max_depth},
          {"maxChildren", cfg.max_children},
          {"minChildren", cfg.min_children},
          {"maxStatesPerComponent", cfg.max_states},
          {"minStatesPerComponent", cfg.min_states},
          {"maxLocalActions", cfg.max_local_actions},
          {"propositionCount", cfg.propositions},
          {"density", cfg.density}};
}

nlohmann::ordered_json to_json(const SuiteReport& report) {
  nlohmann::ordered_json j;
  j["seed"] = report.seed ? nlohmann::ordered_json(*report.seed) : nlohmann::ordered_json();
  j["components"] = report.components;
  j["height"] = report.height;
  j["fullProductStates"] = report.full_states;
  j["reducedStates"] = report.reduced_states;
  j["unreducedStates"] = report.unreduced_states;
  j["reductionError"] = report.reduction_error;
  j["sizeBoundOk"] = report.size_bound_ok;
  if (report.two_level_bound) {
    j["twoLevelUnreducedStates"] = *report.two_level_unreduced_states;
    j["twoLevelBound"] = *report.two_level_bound;
  }
  j["disagreements"] = report.disagreements();
  j["unreducedDisagreements"] = report.unreduced_disagreements();
  j["divergences"] = report.divergences();
  j["egDivergences"] = report.eg_divergences();
  auto& results = j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : report.results) {
    nlohmann::ordered_json e;
    e["proposition"] = r.proposition;
    e["efFull"] = r.ef_full;
    e["efReduced"] = r.ef_reduced;
    e["efUnreduced"] = r.ef_unreduced;
    e["egFull"] = r.eg_full;
    e["egReduced"] = r.eg_reduced;
    e["witnessReducedOk"] =
        r.witness_reduced_ok ? nlohmann::ordered_json(*r.witness_reduced_ok) : nlohmann::ordered_json();
    e["witnessUnreducedOk"] = r.witness_unreduced_ok
                                  ? nlohmann::ordered_json(*r.witness_unreduced_ok)
                                  : nlohmann::ordered_json();
    if (!r.witness_error.empty()) e["witnessError"] = r.witness_error;
    results.push_back(std::move(e));
  }
  return j;
}

nlohmann::ordered_json to_json(const BatchReport& report) {
  nlohmann::ordered_json j;
  j["config"] = to_json(report.gen);
  j["config"].erase("seed");
  j["evaluated"] = report.evaluated;
  j["skippedOversized"] = report.skipped_oversized;
  j["propositions"] = report.propositions;
  j["efTrue"] = report.ef_true;
  j["efFalse"] = report.ef_false;
  j["agreements"] = report.agreements;
  j["disagreements"] = report.disagreements;
  j["unreducedDisagreements"] = report.unreduced_disagreements;
  j["divergences"] = report.divergences;
  j["egDivergences"] = report.eg_divergences;
  j["witnessesChecked"] = report.witnesses_checked;
  j["witnessesFailed"] = report.witnesses_failed;
  j["twoLevelInstances"] = report.two_level_instances;
  j["sizeBoundViolations"] = report.size_bound_violations;
  j["seconds"] = report.seconds;
  auto& findings = j["findings"] = nlohmann::ordered_json::array();
  for (const auto& f : report.findings) findings.push_back(to_json(f));
  return j;
}

nlohmann::ordered_json to_json(const StatsReport& report) {
  nlohmann::ordered_json j;
  j["components"] = report.components;
  j["fullProductStates"] = report.full_states;
  j["fullProductTransitions"] = report.full_transitions;
  j["fullProductCapped"] = report.full_capped;
  j["reducedStates"] = report.reduced_states;
  j["reducedTransitions"] = report.reduced_transitions;
  j["unreducedStates"] = report.unreduced_states;
  j["reductionRatio"] = report.reduction_ratio;
  j["reductionRatioIsBound"] = report.full_capped;
  if (!report.reduction_error.empty()) j["reductionError"] = report.reduction_error;
  j["wallTimesMs"] = {{"fullProduct", report.full_product_ms},
                      {"reduce", report.reduce_ms},
                      {"runs", report.runs}};
  return j;
}

std::string to_table(const SuiteReport& report) {
  std::ostringstream out;
  out << "components " << report.components << ", height " << report.height
      << ", full " << report.full_states << " states, reduced " << report.reduced_states
      << ", unreduced " << report.unreduced_states << "\n";
  if (!report.reduction_error.empty()) out << "reduction: " << report.reduction_error << "\n";
  out << std::left << std::setw(14) << "proposition" << std::setw(8) << "EF full" << std::setw(8)
      << "EF red" << std::setw(9) << "EF unred" << std::setw(8) << "EG full" << std::setw(8)
      << "EG red"
      << "witness\n";
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  for (const auto& r : report.results) {
    out << std::setw(14) << r.proposition << std::setw(8) << yn(r.ef_full) << std::setw(8)
        << yn(r.ef_reduced) << std::setw(9) << yn(r.ef_unreduced) << std::setw(8)
        << yn(r.eg_full) << std::setw(8) << yn(r.eg_reduced)
        << (r.witness_reduced_ok ? (*r.witness_reduced_ok ? "ok" : "FAILED") : "-") << "\n";
  }
  out << "disagreements " << report.disagreements() << ", pruning divergences "
      << report.divergences() << ", EG divergences " << report.eg_divergences() << "\n";
  return out.str();
}

std::string to_table(const BatchReport& r) {
  std::ostringstream out;
  out << "instances evaluated      " << r.evaluated << "\n"
      << "skipped (over cap)       " << r.skipped_oversized << "\n"
      << "propositions checked     " << r.propositions << " (EF true " << r.ef_true
      << ", false " << r.ef_false << ")\n"
      << "EF agreements            " << r.agreements << "\n"
      << "EF disagreements         " << r.disagreements << "\n"
      << "  without pruning        " << r.unreduced_disagreements << "\n"
      << "pruning divergences      " << r.divergences << "\n"
      << "EG divergences           " << r.eg_divergences << "\n"
      << "witnesses lifted         " << r.witnesses_checked << " (failed "
      << r.witnesses_failed << ")\n"
      << "two-level instances      " << r.two_level_instances << "\n"
      << "size-bound violations    " << r.size_bound_violations << "\n"
      << "wall time                " << std::fixed << std::setprecision(2) << r.seconds << " s\n";
  return out.str();
}

std::string to_table(const StatsReport& r) {
  std::ostringstream out;
  out << "components               " << r.components << "\n"
      << "full product states      " << (r.full_capped ? ">= " : "") << r.full_states << "\n"
      << "full product transitions " << (r.full_capped ? "n/a" : std::to_string(r.full_transitions))
      << "\n"
      << "reduced states           " << r.reduced_states << "\n"
      << "reduced transitions      " << r.reduced_transitions << "\n"
      << "unreduced states         " << r.unreduced_states << "\n"
      << "reduction ratio          " << (r.full_capped ? "<= " : "") << std::fixed
      << std::setprecision(4) << r.reduction_ratio << "\n"
      << "full product time (ms)   " << std::setprecision(3) << r.full_product_ms << "\n"
      << "reduction time (ms)      " << r.reduce_ms << "\n";
  if (!r.reduction_error.empty()) out << "reduction error          " << r.reduction_error << "\n";
  return out.str();
}

}  // namespace ltr
