#include "crdtlab/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "crdtlab/error.hpp"
#include "json.hpp"

namespace crdtlab::sim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const json& field(const json& obj, const char* name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end()) fail(where, std::string("missing field \"") + name + "\"");
  return *it;
}

std::uint64_t as_uint(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) fail(where, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

ReplicaId as_replica(const json& v, const std::string& where) {
  const std::uint64_t r = as_uint(v, where);
  if (r > UINT32_MAX) fail(where, "replica index too large");
  return ReplicaId{static_cast<std::uint32_t>(r)};
}

ScenarioEvent parse_event(const json& ev, const std::string& at) {
  if (!ev.is_object()) fail(at, "expected an object");
  const std::string type = as_string(field(ev, "type", at), at + "/type");
  if (type == "op") {
    const std::string kind = as_string(field(ev, "kind", at), at + "/kind");
    if (kind != "add" && kind != "remove") fail(at + "/kind", "expected \"add\" or \"remove\"");
    return OpEvent{as_replica(field(ev, "replica", at), at + "/replica"),
                   Update{kind == "add" ? UpdateKind::add : UpdateKind::remove,
                          as_string(field(ev, "element", at), at + "/element")}};
  }
  if (type == "deliver") {
    DeliverEvent d{std::nullopt, as_replica(field(ev, "at", at), at + "/at")};
    const json& m = field(ev, "message", at);
    if (m.is_string()) {
      if (m.get<std::string>() != "next") fail(at + "/message", "expected an integer or \"next\"");
    } else {
      d.message = as_uint(m, at + "/message");
    }
    return d;
  }
  if (type == "merge")
    return MergeEvent{as_replica(field(ev, "from", at), at + "/from"),
                      as_replica(field(ev, "to", at), at + "/to")};
  if (type == "sync-all") return SyncAllEvent{};
  if (type == "check") {
    const std::string name = as_string(field(ev, "check", at), at + "/check");
    auto kind = parse_check(name);
    if (!kind) fail(at + "/check", "unknown check \"" + name + "\"");
    return CheckEvent{*kind};
  }
  fail(at + "/type", "unknown event type \"" + type + "\"");
}

json event_json(const ScenarioEvent& ev) {
  return std::visit(
      [](const auto& e) -> json {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, OpEvent>) {
          return {{"type", "op"}, {"replica", e.replica.index},
                  {"kind", to_string(e.update.kind)}, {"element", e.update.element}};
        } else if constexpr (std::is_same_v<T, DeliverEvent>) {
          json j{{"type", "deliver"}, {"at", e.at.index}};
          if (e.message)
            j["message"] = *e.message;
          else
            j["message"] = "next";
          return j;
        } else if constexpr (std::is_same_v<T, MergeEvent>) {
          return {{"type", "merge"}, {"from", e.from.index}, {"to", e.to.index}};
        } else if constexpr (std::is_same_v<T, SyncAllEvent>) {
          return {{"type", "sync-all"}};
        } else {
          return {{"type", "check"}, {"check", to_string(e.check)}};
        }
      },
      ev);
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte) + ": malformed JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) fail("/", "expected a JSON object");

  Scenario sc;
  const std::string design = as_string(field(doc, "design", ""), "/design");
  auto d = parse_design(design);
  if (!d) fail("/design", "unknown design \"" + design + "\"");
  sc.design = *d;
  sc.replicas = as_uint(field(doc, "replicas", ""), "/replicas");
  if (auto it = doc.find("seed"); it != doc.end()) sc.seed = as_uint(*it, "/seed");
  if (auto it = doc.find("delivery"); it != doc.end()) {
    const std::string name = as_string(*it, "/delivery");
    auto del = parse_delivery(name);
    if (!del) fail("/delivery", "unknown delivery \"" + name + "\"");
    sc.delivery = *del;
  }
  if (auto it = doc.find("faults"); it != doc.end()) {
    if (!it->is_object()) fail("/faults", "expected an object");
    if (auto dup = it->find("duplicates"); dup != it->end()) {
      if (!dup->is_boolean()) fail("/faults/duplicates", "expected a boolean");
      sc.faults.duplicates = dup->get<bool>();
    }
  }
  const json& events = field(doc, "events", "");
  if (!events.is_array()) fail("/events", "expected an array");
  for (std::size_t i = 0; i < events.size(); ++i)
    sc.events.push_back(parse_event(events[i], "/events/" + std::to_string(i)));
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string to_json(const Scenario& sc, bool pretty) {
  json events = json::array();
  for (const auto& ev : sc.events) events.push_back(event_json(ev));
  json doc{{"design", to_string(sc.design)},
           {"replicas", sc.replicas},
           {"seed", sc.seed},
           {"delivery", to_string(sc.delivery)},
           {"faults", {{"duplicates", sc.faults.duplicates}}},
           {"events", std::move(events)}};
  return pretty ? doc.dump(2) : doc.dump();
}

}  // namespace crdtlab::sim
