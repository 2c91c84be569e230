// ltr: command-line front end for live-reset tree reduction.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "ltr/checker.h"
#include "ltr/error.h"
#include "ltr/harness.h"
#include "ltr/io.h"
#include "ltr/product.h"
#include "ltr/reduction.h"

namespace {

enum Exit { kOk = 0, kFails = 1, kInvalid = 2, kCap = 3 };

using namespace ltr;

Network load_reporting(const std::string& file) {
  std::vector<Violation> warnings;
  Network net = load_network(file, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w.message << "\n";
  return net;
}

void print_path(const ExplicitLts& lts, const Path& path) {
  for (std::size_t i = 0; i < path.states.size(); ++i) {
    if (path.loop_start && *path.loop_start == i) std::cout << "  -- cycle from here --\n";
    std::cout << "  " << lts.state_name(path.states[i]);
    if (i < path.actions.size()) std::cout << " --" << path.actions[i] << "->";
    std::cout << "\n";
  }
}

void print_global(const Network& net, const GlobalPath& g) {
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    std::cout << "  (";
    for (std::size_t c = 0; c < g.states[i].coords.size(); ++c) {
      std::cout << (c ? "," : "") << net.component(c).states[g.states[i].coords[c]];
    }
    std::cout << ")";
    if (i < g.actions.size()) std::cout << " --" << g.actions[i] << "->";
    std::cout << "\n";
  }
}

void add_bounds(CLI::App* cmd, GenConfig& g) {
  cmd->add_option("--max-depth", g.max_depth, "tree depth bound")->capture_default_str();
  cmd->add_option("--max-children", g.max_children, "children per node bound")
      ->capture_default_str();
  cmd->add_option("--min-children", g.min_children, "children per internal node, lower bound")
      ->capture_default_str();
  cmd->add_option("--max-states", g.max_states, "states per component bound")
      ->capture_default_str();
  cmd->add_option("--min-states", g.min_states, "states per component, lower bound")
      ->capture_default_str();
  cmd->add_option("--max-local-actions", g.max_local_actions, "local actions per component")
      ->capture_default_str();
  cmd->add_option("--propositions", g.propositions, "number of propositions")
      ->capture_default_str();
  cmd->add_option("--density", g.density, "transition density in (0,1]")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduction and reachability checking for live-reset tree networks"};
  app.require_subcommand(1);
  std::size_t cap = kDefaultStateCap;
  app.add_option("--cap", cap, "state cap for explicit products")->capture_default_str();

  std::string file, out, dot, ef, eg, json_out;
  bool keep_locked = false, full = false, reduced = false, witness = false;

  auto* validate = app.add_subcommand("validate", "check a network file");
  validate->add_option("FILE", file)->required();

  auto* product = app.add_subcommand("product", "build the full product");
  product->add_option("FILE", file)->required();
  product->add_option("-o", out, "write the product as a one-component network");
  product->add_option("--dot", dot, "write a DOT graph");

  auto* reduce = app.add_subcommand("reduce", "reduce the network to one component");
  reduce->add_option("FILE", file)->required();
  reduce->add_option("-o", out, "write the reduced network");
  reduce->add_option("--dot", dot, "write a DOT graph");
  reduce->add_flag("--keep-locked", keep_locked, "do not prune locked states");

  auto* check_cmd = app.add_subcommand("check", "check EF p or EG p");
  check_cmd->add_option("FILE", file)->required();
  auto* ef_opt = check_cmd->add_option("--ef", ef, "proposition for EF");
  auto* eg_opt = check_cmd->add_option("--eg", eg, "proposition for EG");
  ef_opt->excludes(eg_opt);
  auto* full_opt = check_cmd->add_flag("--full", full, "check the full product");
  auto* red_opt = check_cmd->add_flag("--reduced", reduced, "check the reduced model");
  full_opt->excludes(red_opt);
  check_cmd->add_flag("--witness", witness, "print a witness");
  check_cmd->add_flag("--keep-locked", keep_locked, "reduce without pruning locked states");

  auto* stats_cmd = app.add_subcommand("stats", "sizes and timings");
  stats_cmd->add_option("FILE", file)->required();

  GenConfig gen_cfg;
  auto* gen = app.add_subcommand("gen", "generate a random live-reset tree");
  gen->add_option("--seed", gen_cfg.seed)->required();
  gen->add_option("-o", out, "output file")->required();
  add_bounds(gen, gen_cfg);

  BatchConfig batch;
  batch.jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* suite = app.add_subcommand("suite", "compare full and reduced verdicts on random trees");
  suite->add_option("--seeds", batch.instances, "number of instances")->required();
  suite->add_option("--first-seed", batch.first_seed)->capture_default_str();
  suite->add_option("--jobs", batch.jobs);
  suite->add_option("--json", json_out, "write the report as JSON");
  add_bounds(suite, batch.gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*validate) {
      Network net = load_reporting(file);
      std::cout << file << ": " << net.size() << " components, root " << net.root_component().name
                << ", height " << net.height() << "\n";
      for (std::size_t i = 0; i < net.size(); ++i) {
        const auto* parent = net.parent(i) ? &net.component(*net.parent(i)).name : nullptr;
        std::cout << "  " << net.component(i).name << (parent ? " <- " + *parent : std::string())
                  << "\n";
      }
      return kOk;
    }
    if (*product) {
      Network net = load_reporting(file);
      ExplicitLts lts = full_product(net, cap);
      std::cout << lts.state_count() << " states, " << lts.transition_count() << " transitions\n";
      if (!out.empty()) {
        save_network(single_component(lts_to_component(lts, "product"), net.silent()), out);
      }
      if (!dot.empty()) export_dot(lts, dot);
      return kOk;
    }
    if (*reduce) {
      Network net = load_reporting(file);
      Reduction r = reduce_network(net, {keep_locked});
      const Component& c = r.component();
      std::cout << c.states.size() << " states, " << c.transitions.size() << " transitions ("
                << r.square_builds << " square products)\n";
      if (!out.empty()) save_network(single_component(c, r.silent, net.upacts(net.root())), out);
      if (!dot.empty()) export_dot(component_to_lts(c, r.silent), dot);
      return kOk;
    }
    if (*check_cmd) {
      if (ef.empty() == eg.empty()) throw CLI::ValidationError("exactly one of --ef, --eg is required");
      if (!full && !reduced) throw CLI::ValidationError("one of --full, --reduced is required");
      Network net = load_reporting(file);
      const Formula f{ef.empty() ? Modality::EG : Modality::EF, ef.empty() ? eg : ef};
      const std::string shown = (f.modality == Modality::EF ? "EF " : "EG ") + f.proposition;
      if (full) {
        ExplicitLts lts = full_product(net, cap);
        Verdict v = check(lts, f);
        std::cout << shown << ": " << (v.holds ? "holds" : "does not hold") << " (full product, "
                  << lts.state_count() << " states)\n";
        if (witness && v.witness) print_path(lts, *v.witness);
        return v.holds ? kOk : kFails;
      }
      std::optional<Reduction> r;
      try {
        r = reduce_network(net, {keep_locked});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyReduction) throw;
        std::cout << shown << ": does not hold (" << e.what() << ")\n";
        return kFails;
      }
      ExplicitLts lts = component_to_lts(r->component(), r->silent);
      EvaluationEntry entry = r->top_epsilon().empty()
                                  ? EvaluationEntry::initial()
                                  : EvaluationEntry::epsilon_transparent(r->top_epsilon());
      Verdict v = check(lts, f, entry);
      std::cout << shown << ": " << (v.holds ? "holds" : "does not hold") << " (reduced, "
                << lts.state_count() << " states)\n";
      if (witness && v.witness) {
        print_path(lts, *v.witness);
        if (f.modality == Modality::EF) {
          std::cout << "lifted run:\n";
          print_global(net, lift_witness(*r, net, *v.witness));
        }
      }
      return v.holds ? kOk : kFails;
    }
    if (*stats_cmd) {
      Network net = load_reporting(file);
      std::cout << to_table(stats(net, cap));
      return kOk;
    }
    if (*gen) {
      save_network(gen_random_tree(gen_cfg), out);
      return kOk;
    }
    if (*suite) {
      batch.suite.cap = cap;
      BatchReport report = run_batch(batch);
      std::cout << to_table(report);
      for (const auto& f : report.findings) {
        std::cout << "seed " << *f.seed << ":\n" << to_table(f);
      }
      if (!json_out.empty()) {
        std::ofstream js(json_out);
        if (!js) throw Error(ErrorKind::IoError, "cannot write " + json_out);
        js << to_json(report).dump(2) << "\n";
      }
      return report.disagreements || report.witnesses_failed ? kFails : kOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::StateLimitExceeded:
      case ErrorKind::OracleTooLarge:
        return kCap;
      case ErrorKind::EmptyReduction:
      case ErrorKind::InvalidWitness:
        return kFails;
      default:
        return kInvalid;
    }
  }
  return kOk;
}
