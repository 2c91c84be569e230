#include "ltr/io.h"

#include <fstream>
#include <map>
#include <sstream>

#include "ltr/error.h"

namespace ltr {

namespace {

using Json = nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& msg) {
  throw Error(ErrorKind::ParseError, where + ": " + msg);
}

void only_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
               const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) schema_error(where, "unknown key '" + key + "'");
  }
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, "missing key '" + key + "'");
  return *it;
}

std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) schema_error(where, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> as_strings(const Json& v, const std::string& where) {
  if (!v.is_array()) schema_error(where, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(as_string(e, where));
  return out;
}

enum class Mark { None, Down, Up };

struct Annotated {
  std::string component;
  std::string action;
  Mark mark;
};

std::pair<std::string, Mark> strip(const std::string& action) {
  if (action.size() > 1 && action[0] == '?') return {action.substr(1), Mark::Down};
  if (action.size() > 1 && action[0] == '!') return {action.substr(1), Mark::Up};
  return {action, Mark::None};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto colon = what.rfind(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
  }
}

}  // namespace

Network parse_network(const std::string& text, std::vector<Violation>* warnings) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) schema_error("document", "expected an object");
  only_keys(doc, {"root", "silent", "components"}, "document");

  const std::string root = as_string(require(doc, "root", "document"), "root");
  ActionSet silent{"tau"};
  if (auto it = doc.find("silent"); it != doc.end()) {
    auto names = as_strings(*it, "silent");
    silent = ActionSet(names.begin(), names.end());
  }
  const Json& comps = require(doc, "components", "document");
  if (!comps.is_array()) schema_error("components", "expected an array");

  std::vector<Component> components;
  std::vector<Annotated> marks;
  ActionSet root_upacts;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const Json& cj = comps[i];
    std::string where = "components[" + std::to_string(i) + "]";
    if (!cj.is_object()) schema_error(where, "expected an object");
    only_keys(cj, {"name", "states", "initial", "labels", "transitions"}, where);
    Component c;
    c.name = as_string(require(cj, "name", where), where + ".name");
    where = "component '" + c.name + "'";
    c.states = as_strings(require(cj, "states", where), where + ".states");
    c.initial = as_string(require(cj, "initial", where), where + ".initial");
    if (auto it = cj.find("labels"); it != cj.end()) {
      if (!it->is_object()) schema_error(where + ".labels", "expected an object");
      for (const auto& [state, props] : it->items()) {
        auto names = as_strings(props, where + ".labels");
        if (!names.empty()) c.labels[state].insert(names.begin(), names.end());
      }
    }
    if (auto it = cj.find("transitions"); it != cj.end()) {
      if (!it->is_array()) schema_error(where + ".transitions", "expected an array");
      for (const auto& t : *it) {
        auto parts = as_strings(t, where + ".transitions");
        if (parts.size() != 3) {
          schema_error(where + ".transitions", "expected [source, action, target]");
        }
        auto [action, mark] = strip(parts[1]);
        if (mark != Mark::None) marks.push_back({c.name, action, mark});
        if (mark == Mark::Up && c.name == root) root_upacts.insert(action);
        c.transitions.push_back({parts[0], action, parts[2]});
      }
    }
    components.push_back(std::move(c));
  }
  if (components.empty()) throw Error(ErrorKind::ValidationError, "network has no components");

  Network net = [&] {
    try {
      return infer_topology(std::move(components), root, {silent, root_upacts, {}});
    } catch (const Error& e) {
      throw Error(ErrorKind::ValidationError, std::string(to_string(e.kind())) + ": " + e.detail());
    }
  }();

  for (const auto& m : marks) {
    const std::size_t c = *net.index_of(m.component);
    const bool ok = m.mark == Mark::Up ? net.upacts(c).contains(m.action)
                                       : net.downacts(c).contains(m.action);
    if (!ok) {
      throw Error(ErrorKind::ValidationError,
                  "action '" + m.action + "' of '" + m.component + "' is marked as " +
                      (m.mark == Mark::Up ? "an upact" : "a downact") +
                      " but the topology disagrees");
    }
  }

  auto violations = validate_live_reset(net);
  if (!violations.empty()) {
    std::string msg = "not live-reset:";
    for (const auto& v : violations) msg += " " + v.message + ";";
    msg.pop_back();
    throw Error(ErrorKind::ValidationError, msg);
  }
  if (warnings) *warnings = live_reset_warnings(net);
  return net;
}

nlohmann::ordered_json network_to_json(const Network& net) {
  nlohmann::ordered_json doc;
  doc["root"] = net.root_component().name;
  doc["silent"] = std::vector<std::string>(net.silent().begin(), net.silent().end());
  auto& comps = doc["components"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < net.size(); ++i) {
    const Component& c = net.component(i);
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["states"] = c.states;
    cj["initial"] = c.initial;
    cj["labels"] = nlohmann::ordered_json::object();
    for (const auto& s : c.states) {
      const auto& props = c.labels_of(s);
      if (!props.empty()) cj["labels"][s] = std::vector<std::string>(props.begin(), props.end());
    }
    auto& ts = cj["transitions"] = nlohmann::ordered_json::array();
    for (const auto& t : c.transitions) {
      std::string action = t.action;
      if (net.upacts(i).contains(action)) {
        action = "!" + action;
      } else if (net.downacts(i).contains(action)) {
        action = "?" + action;
      }
      ts.push_back({t.source, action, t.target});
    }
    comps.push_back(std::move(cj));
  }
  return doc;
}

Network load_network(const std::filesystem::path& path, std::vector<Violation>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_network(buf.str(), warnings);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.detail());
  }
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::IoError, "write failed: " + path.string());
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

void save_network(const Network& net, const std::filesystem::path& path) {
  write_file(path, network_to_json(net).dump(2) + "\n");
}

Network single_component(const Component& c, const ActionSet& silent,
                         const ActionSet& root_upacts) {
  return infer_topology({c}, c.name, {silent, root_upacts, {}});
}

std::string to_dot(const ExplicitLts& lts, const std::string& graph_name) {
  std::ostringstream out;
  out << "digraph " << quoted(graph_name) << " {\n"
      << "  rankdir=LR;\n"
      << "  node [shape=box, style=rounded];\n";
  for (StateId s = 0; s < lts.state_count(); ++s) {
    std::string label = lts.state_name(s);
    auto props = lts.label_names(s);
    if (!props.empty()) {
      label += "\n{";
      for (std::size_t i = 0; i < props.size(); ++i) label += (i ? "," : "") + props[i];
      label += "}";
    }
    std::string escaped;
    for (char ch : label) {
      if (ch == '\n') {
        escaped += "\\n";
      } else {
        if (ch == '"' || ch == '\\') escaped += '\\';
        escaped += ch;
      }
    }
    out << "  n" << s << " [label=\"" << escaped << "\"";
    if (s == lts.initial()) out << ", style=\"rounded,bold\", penwidth=2";
    out << "];\n";
  }
  for (StateId s = 0; s < lts.state_count(); ++s) {
    for (const Edge& e : lts.successors(s)) {
      out << "  n" << s << " -> n" << e.target << " [label=" << quoted(lts.action_name(e.action));
      if (lts.action_silent(e.action)) out << ", style=dashed";
      out << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

void export_dot(const ExplicitLts& lts, const std::filesystem::path& path) {
  write_file(path, to_dot(lts));
}

}  // namespace ltr
