#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ltr/lts.h"
#include "ltr/model.h"

namespace ltr {

/// Parses a network document. Action names may carry a direction prefix:
/// "?a" marks a downact of the declaring component, "!a" an upact. Prefixes
/// are stripped and checked against the inferred topology; "!" on the root
/// declares an upact of the whole network.
/// Throws Error{ParseError} for malformed JSON or schema violations and
/// Error{ValidationError} for networks rejected by the model (including
/// reachable live-reset violations). Unreachable violations go to `warnings`.
Network parse_network(const std::string& text, std::vector<Violation>* warnings = nullptr);

/// Canonical document: components in network order, up/down actions
/// annotated, labels only for labelled states.
nlohmann::ordered_json network_to_json(const Network& net);

Network load_network(const std::filesystem::path& path,
                     std::vector<Violation>* warnings = nullptr);
void save_network(const Network& net, const std::filesystem::path& path);

/// One-component network holding `c` as its root.
Network single_component(const Component& c, const ActionSet& silent,
                         const ActionSet& root_upacts = {});

std::string to_dot(const ExplicitLts& lts, const std::string& graph_name = "lts");
void export_dot(const ExplicitLts& lts, const std::filesystem::path& path);

}  // namespace ltr
