#include "pndiag/net_format.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "json.hpp"

namespace pndiag {

// ordered_json keeps object keys in document order.
using json = nlohmann::ordered_json;

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void schema_error(const std::string& message) {
  throw Error(ErrorCode::kSchema, message);
}

const json& field(const json& object, const char* key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end()) schema_error(where + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const json& object, const char* key, const std::string& where) {
  const json& v = field(object, key, where);
  if (!v.is_string()) schema_error(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> names_field(const json& object, const char* key, const std::string& where) {
  const json& v = field(object, key, where);
  if (!v.is_array()) schema_error(where + ": field '" + key + "' must be an array");
  std::vector<std::string> out;
  for (const json& item : v) {
    if (!item.is_string()) schema_error(where + ": '" + key + "' entries must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

bool bool_field(const json& object, const char* key, const std::string& where) {
  const json& v = field(object, key, where);
  if (!v.is_boolean()) schema_error(where + ": field '" + key + "' must be a boolean");
  return v.get<bool>();
}

std::string quoted(const std::string& s) { return json(s).dump(); }

std::string name_list(const std::vector<std::string>& names) {
  std::string out = "[";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + quoted(names[i]);
  return out + "]";
}

}  // namespace

NetDocument parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw SyntaxError(line, column,
                      "syntax error at line " + std::to_string(line) + ", column " +
                          std::to_string(column));
  }
  if (!root.is_object()) schema_error("net document must be a JSON object");

  NetDocument doc;
  doc.schema_version = string_field(root, "schema_version", "document");
  if (doc.schema_version != kSchemaVersion) {
    schema_error("unsupported schema_version '" + doc.schema_version + "'");
  }

  const json& places = field(root, "places", "document");
  if (!places.is_array()) schema_error("document: 'places' must be an array");
  for (std::size_t i = 0; i < places.size(); ++i) {
    const std::string where = "places[" + std::to_string(i) + "]";
    if (!places[i].is_object()) schema_error(where + ": must be an object");
    doc.places.push_back({string_field(places[i], "name", where)});
  }

  const json& transitions = field(root, "transitions", "document");
  if (!transitions.is_array()) schema_error("document: 'transitions' must be an array");
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const std::string where = "transitions[" + std::to_string(i) + "]";
    const json& t = transitions[i];
    if (!t.is_object()) schema_error(where + ": must be an object");
    doc.transitions.push_back({string_field(t, "name", where), names_field(t, "pre", where),
                               names_field(t, "post", where), bool_field(t, "observable", where),
                               bool_field(t, "fault", where)});
  }

  const json& marking = field(root, "initial_marking", "document");
  if (!marking.is_object()) schema_error("document: 'initial_marking' must be an object");
  for (const auto& [name, count] : marking.items()) {
    if (!count.is_number_integer()) {
      schema_error("initial_marking: count for '" + name + "' must be an integer");
    }
    doc.initial_marking.emplace_back(name, count.get<std::int64_t>());
  }
  return doc;
}

std::string serialize_document(const NetDocument& doc) {
  std::string out = "{\n";
  out += "  \"schema_version\": " + quoted(doc.schema_version) + ",\n";
  out += "  \"places\": [";
  for (std::size_t i = 0; i < doc.places.size(); ++i) {
    out += (i ? ",\n    " : "\n    ") + std::string("{\"name\": ") + quoted(doc.places[i].name) + "}";
  }
  out += doc.places.empty() ? "],\n" : "\n  ],\n";
  out += "  \"transitions\": [";
  for (std::size_t i = 0; i < doc.transitions.size(); ++i) {
    const auto& t = doc.transitions[i];
    out += (i ? ",\n    " : "\n    ") + std::string("{\"name\": ") + quoted(t.name) +
           ", \"pre\": " + name_list(t.pre) + ", \"post\": " + name_list(t.post) +
           ", \"observable\": " + (t.observable ? "true" : "false") +
           ", \"fault\": " + (t.fault ? "true" : "false") + "}";
  }
  out += doc.transitions.empty() ? "],\n" : "\n  ],\n";
  out += "  \"initial_marking\": {";
  for (std::size_t i = 0; i < doc.initial_marking.size(); ++i) {
    const auto& [name, count] = doc.initial_marking[i];
    out += (i ? ", " : "") + quoted(name) + ": " + std::to_string(count);
  }
  out += "}\n}\n";
  return out;
}

NetSystem to_net(const NetDocument& doc) {
  std::vector<std::string> place_names;
  for (const auto& p : doc.places) place_names.push_back(p.name);

  const auto resolve = [&](const std::string& name, const std::string& where) {
    const auto it = std::find(place_names.begin(), place_names.end(), name);
    if (it == place_names.end()) {
      throw Error(ErrorCode::kUnknownPlace, where + ": unknown place '" + name + "'");
    }
    return PlaceId{static_cast<std::uint32_t>(it - place_names.begin())};
  };

  std::vector<Transition> transitions;
  std::set<TransitionId> observable;
  std::set<TransitionId> fault;
  for (std::size_t i = 0; i < doc.transitions.size(); ++i) {
    const auto& t = doc.transitions[i];
    const TransitionId id{static_cast<std::uint32_t>(i)};
    if (t.fault && t.observable) {
      throw Error(ErrorCode::kObservableFault,
                  "transition '" + t.name + "': fault transition must be unobservable");
    }
    Transition tr{id, t.name, {}, {}};
    for (const auto& p : t.pre) tr.pre.push_back(resolve(p, "transition '" + t.name + "'"));
    for (const auto& p : t.post) tr.post.push_back(resolve(p, "transition '" + t.name + "'"));
    transitions.push_back(std::move(tr));
    if (t.observable) observable.insert(id);
    if (t.fault) fault.insert(id);
  }

  Marking initial;
  for (const auto& [name, count] : doc.initial_marking) {
    if (count < 0) {
      throw Error(ErrorCode::kNegativeCount,
                  "initial_marking: negative count for place '" + name + "'");
    }
    if (count > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(ErrorCode::kNegativeCount, "initial_marking: count for '" + name + "' too large");
    }
    initial.add(resolve(name, "initial_marking"), static_cast<std::uint32_t>(count));
  }
  return NetSystem(std::move(place_names), std::move(transitions), std::move(initial),
                   Labeling(std::move(observable), std::move(fault)));
}

NetDocument to_document(const NetSystem& net) {
  NetDocument doc;
  for (const auto& name : net.place_names()) doc.places.push_back({name});
  for (const Transition& t : net.transitions()) {
    NetDocument::Transition out{t.name, {}, {}, net.labeling().is_observable(t.id),
                                net.labeling().is_fault(t.id)};
    for (const PlaceId p : t.pre) out.pre.push_back(net.name(p));
    for (const PlaceId p : t.post) out.post.push_back(net.name(p));
    doc.transitions.push_back(std::move(out));
  }
  for (const auto& [p, count] : net.initial().counts()) {
    doc.initial_marking.emplace_back(net.name(p), count);
  }
  return doc;
}

ParsedNet parse_net(std::string_view text) {
  NetSystem net = to_net(parse_document(text));
  StructureReport structure = check_structure(net);
  return ParsedNet{std::move(net), std::move(structure)};
}

std::string serialize_net(const NetSystem& net) { return serialize_document(to_document(net)); }

}  // namespace pndiag
