#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ltr/model.h"
#include "ltr/product.h"

namespace ltr {

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_depth = 3;
  std::size_t max_children = 3;
  std::size_t min_children = 0;  ///< the root always gets at least one
  std::size_t max_states = 5;
  std::size_t min_states = 1;
  std::size_t max_local_actions = 2;
  std::size_t propositions = 3;
  double density = 0.4;

  /// Bounds clamped to their legal ranges.
  GenConfig clamped() const;
};

/// Random live-reset tree, deterministic in the seed. Every non-root component
/// has 1-3 upacts that all lead back to its initial state; a parent's downacts
/// are exactly its children's upacts. Proposition "p0" sits on some initial
/// state and "p1" on a state with no incoming transitions, so each instance
/// has a reachable and an unreachable proposition.
Network gen_random_tree(const GenConfig& cfg);

/// Propositions occurring anywhere in the network, sorted.
std::vector<std::string> propositions_of(const Network& net);

struct PropositionResult {
  std::string proposition;
  bool ef_full = false;
  bool ef_reduced = false;
  bool ef_unreduced = false;
  bool eg_full = false;
  bool eg_reduced = false;
  /// Lifted witnesses of the pruned / unpruned reduction that replay on the
  /// full product and end in a p-state; nullopt when EF does not hold there.
  std::optional<bool> witness_reduced_ok;
  std::optional<bool> witness_unreduced_ok;
  std::string witness_error;
};

struct SuiteReport {
  std::optional<std::uint64_t> seed;
  std::size_t components = 0;
  std::size_t height = 0;
  std::size_t full_states = 0;
  std::size_t reduced_states = 0;
  std::size_t unreduced_states = 0;
  /// Set when pruning removed every square entry at some level.
  std::string reduction_error;
  std::vector<PropositionResult> results;

  /// Every internal node's product is within children*|child|*|node| + 1;
  /// for two-level networks this is the (n-1)*m^2 + 1 bound.
  bool size_bound_ok = true;
  /// Unreduced top-level product size for two-level networks.
  std::optional<std::size_t> two_level_unreduced_states;
  std::optional<std::size_t> two_level_bound;

  std::size_t disagreements() const;           ///< full vs pruned reduction (EF)
  std::size_t unreduced_disagreements() const; ///< full vs unpruned reduction (EF)
  std::size_t divergences() const;             ///< pruned vs unpruned (EF)
  std::size_t eg_divergences() const;          ///< full vs pruned reduction (EG)
  std::size_t witnesses_checked() const;
  std::size_t witnesses_failed() const;
};

struct SuiteOptions {
  std::size_t cap = kDefaultStateCap;
  bool check_eg = true;
};

/// Compares EF (and EG) verdicts of the full product against the reduced
/// model for every proposition of `net`, lifting every reduced witness back
/// onto the full product. Throws Error{OracleTooLarge} past the state cap.
SuiteReport equivalence_suite(const Network& net, const SuiteOptions& options = {});

struct BatchConfig {
  GenConfig gen;
  std::uint64_t first_seed = 0;
  /// Number of instances that must be evaluated (oversized ones are skipped).
  std::size_t instances = 100;
  std::size_t max_attempts = 0;  ///< 0: 4 * instances
  std::size_t jobs = 1;
  SuiteOptions suite;
};

struct BatchReport {
  GenConfig gen;
  std::size_t evaluated = 0;
  std::size_t skipped_oversized = 0;
  std::size_t propositions = 0;
  std::size_t agreements = 0;
  std::size_t disagreements = 0;
  std::size_t unreduced_disagreements = 0;
  std::size_t divergences = 0;
  std::size_t eg_divergences = 0;
  std::size_t witnesses_checked = 0;
  std::size_t witnesses_failed = 0;
  std::size_t two_level_instances = 0;
  std::size_t size_bound_violations = 0;
  std::size_t ef_true = 0;
  std::size_t ef_false = 0;
  double seconds = 0;
  /// Reports of instances with any disagreement, divergence, witness failure
  /// or size-bound violation; each carries its seed for replay.
  std::vector<SuiteReport> findings;
};

BatchReport run_batch(const BatchConfig& cfg);

struct StatsReport {
  std::size_t components = 0;
  std::size_t full_states = 0;
  std::size_t full_transitions = 0;
  bool full_capped = false;  ///< full counts are lower bounds
  std::size_t reduced_states = 0;
  std::size_t reduced_transitions = 0;
  std::size_t unreduced_states = 0;
  std::string reduction_error;  ///< pruning emptied the reduction
  double reduction_ratio = 0;  ///< reduced / full
  double full_product_ms = 0;  ///< medians over `runs`
  double reduce_ms = 0;
  std::size_t runs = 3;
};

StatsReport stats(const Network& net, std::size_t cap = kDefaultStateCap, std::size_t runs = 3);

nlohmann::ordered_json to_json(const GenConfig& cfg);
nlohmann::ordered_json to_json(const SuiteReport& report);
nlohmann::ordered_json to_json(const BatchReport& report);
nlohmann::ordered_json to_json(const StatsReport& report);

std::string to_table(const SuiteReport& report);
std::string to_table(const BatchReport& report);
std::string to_table(const StatsReport& report);

}  // namespace ltr
