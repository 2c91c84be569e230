#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ltr/lts.h"
#include "ltr/model.h"
#include "ltr/reduction.h"

namespace ltr {

enum class Modality { EF, EG };

struct Formula {
  Modality modality = Modality::EF;
  std::string proposition;
};

/// Where a formula is evaluated. Sum-of-squares products are evaluated
/// through their fresh initial state: EF counts the epsilon step as an
/// ordinary step, EG is evaluated at the epsilon-successors.
struct EvaluationEntry {
  enum class Kind { InitialState, EpsilonTransparent };
  Kind kind = Kind::InitialState;
  std::string epsilon;

  static EvaluationEntry initial() { return {}; }
  static EvaluationEntry epsilon_transparent(std::string eps) {
    return {Kind::EpsilonTransparent, std::move(eps)};
  }
};

struct Verdict {
  bool holds = false;
  /// EF: shortest path to a p-state. EG: lasso (loop_start set), all states
  /// labelled p.
  std::optional<Path> witness;
};

Verdict check_ef(const ExplicitLts& lts, const std::string& p,
                 const EvaluationEntry& entry = EvaluationEntry::initial());

Verdict check_eg(const ExplicitLts& lts, const std::string& p,
                 const EvaluationEntry& entry = EvaluationEntry::initial());

Verdict check(const ExplicitLts& lts, const Formula& f,
              const EvaluationEntry& entry = EvaluationEntry::initial());

/// Run of the full product expressed as global tuples (coordinates in network
/// order).
struct GlobalPath {
  std::vector<GlobalTuple> states;
  std::vector<std::string> actions;
  bool operator==(const GlobalPath&) const = default;
};

/// Maps a path of a reduced model back to a run of the network. Squares are
/// replaced by global tuples with every inactive component at its initial
/// state, epsilon steps are dropped, and when a subtree root synchronises
/// upwards the local moves of its active child since that square was entered
/// are dropped (they are independent of everything else and would otherwise
/// leave that child away from its initial state). Throws
/// Error{InvalidWitness} if a step has no counterpart.
GlobalPath lift_witness(const Reduction& reduction, const Network& net, const Path& path);

/// Two-level form: `sq` was built from `net`.
GlobalPath lift_witness(const SumOfSquares& sq, const Network& net, const Path& path);

/// Replays a global path against `product` (which must have been built by
/// full_product on the same network). Returns the path in product ids, or
/// nullopt when some state or step is missing.
std::optional<Path> replay_global(const ExplicitLts& product, const GlobalPath& path);

}  // namespace ltr
