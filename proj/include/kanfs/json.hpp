#pragma once

// JSON encoding of values and terms. Tags: unit, lit, pair, cube, abs
// for the carrier constructors; base, upbox, downbox, plus, minus for
// terms of a free fibration. Names print as "a<id>", bound names are
// canonicalized before printing, face lists are kept in their canonical
// (name, bit) order, so printing is alpha-invariant and parse/print is
// a bit-exact round trip.

#include <json.hpp>  // vendored nlohmann/json

#include "kanfs/value.hpp"

namespace kanfs {

using json = nlohmann::ordered_json;

struct SchemaError : std::runtime_error {
  std::string location;
  SchemaError(const std::string& loc, const std::string& msg)
      : std::runtime_error(msg + " (at " + loc + ")"), location(loc) {}
};

inline json name_to_json(Name n) { return to_string(n); }

inline Name name_from_json(const json& j, const std::string& loc) {
  if (!j.is_string()) throw SchemaError(loc, "expected a name string");
  std::string s = j.get<std::string>();
  if (s.size() < 2 || s[0] != 'a' ||
      s.find_first_not_of("0123456789", 1) != std::string::npos)
    throw SchemaError(loc, "malformed name '" + s + "'");
  return Name{static_cast<uint32_t>(std::stoul(s.substr(1)))};
}

inline json bit_to_json(Bit i) { return to_int(i); }

inline Bit bit_from_json(const json& j, const std::string& loc) {
  if (!j.is_number_integer() || (j != 0 && j != 1))
    throw SchemaError(loc, "expected bit 0 or 1");
  return bit_of(j.get<int>());
}

inline json value_to_json(const Value& v);

inline json box_to_json(const BoxData& b, bool with_kind) {
  json faces = json::array();
  for (const auto& [n, i, t] : b.faces)
    faces.push_back({{"name", name_to_json(n)},
                     {"bit", bit_to_json(i)},
                     {"term", value_to_json(t)}});
  json r;
  if (with_kind) r["kind"] = b.up ? "up" : "down";
  r["a"] = name_to_json(b.a);
  r["faces"] = std::move(faces);
  r["base"] = value_to_json(b.base);
  return r;
}

inline json value_to_json(const Value& v) {
  return std::visit(
      [&](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Unit>) {
          return {{"tag", "unit"}};
        } else if constexpr (std::is_same_v<T, node::Lit>) {
          return {{"tag", "lit"}, {"value", n.v}};
        } else if constexpr (std::is_same_v<T, node::Pair>) {
          return {{"tag", "pair"},
                  {"first", value_to_json(n.first)},
                  {"second", value_to_json(n.second)}};
        } else if constexpr (std::is_same_v<T, node::Cube>) {
          json assign = json::array();
          for (const auto& [k, e] : n.assign) {
            json val = std::holds_alternative<Name>(e)
                           ? name_to_json(std::get<Name>(e))
                           : bit_to_json(std::get<Bit>(e));
            assign.push_back({{"name", name_to_json(k)}, {"value", val}});
          }
          return {{"tag", "cube"}, {"assign", std::move(assign)}};
        } else if constexpr (std::is_same_v<T, node::Abs>) {
          Name c = canonical_bound(free_names(v));
          Value body = act(Perm::swap(c, n.bound), n.body);
          return {{"tag", "abs"},
                  {"bound", name_to_json(c)},
                  {"body", value_to_json(body)}};
        } else if constexpr (std::is_same_v<T, node::KBase>) {
          return {{"tag", "base"}, {"elem", value_to_json(n.x)}};
        } else if constexpr (std::is_same_v<T, node::KBox>) {
          return {{"tag", n.box.up ? "upbox" : "downbox"},
                  {"box", box_to_json(n.box, false)}};
        } else {
          static_assert(std::is_same_v<T, node::KBind>);
          Name c = canonical_bound(free_names(v));
          BoxData box = box_act(Perm::swap(c, n.bound), n.box);
          return {{"tag", n.box.up ? "plus" : "minus"},
                  {"bound", name_to_json(c)},
                  {"box", box_to_json(box, false)}};
        }
      },
      (*v).data);
}

inline Value value_from_json(const json& j, const std::string& loc = "$");

inline BoxData box_from_json(const json& j, bool up, const std::string& loc) {
  if (!j.is_object()) throw SchemaError(loc, "expected a box object");
  BoxData b;
  b.up = up;
  if (j.contains("kind")) {
    if (j["kind"] != "up" && j["kind"] != "down")
      throw SchemaError(loc + ".kind", "expected \"up\" or \"down\"");
    b.up = j["kind"] == "up";
  }
  if (!j.contains("a") || !j.contains("faces") || !j.contains("base"))
    throw SchemaError(loc, "box needs fields a, faces, base");
  b.a = name_from_json(j["a"], loc + ".a");
  if (!j["faces"].is_array()) throw SchemaError(loc + ".faces", "expected a list");
  int k = 0;
  for (const json& fj : j["faces"]) {
    std::string floc = loc + ".faces[" + std::to_string(k++) + "]";
    if (!fj.is_object() || !fj.contains("name") || !fj.contains("bit") ||
        !fj.contains("term"))
      throw SchemaError(floc, "face needs fields name, bit, term");
    b.faces.emplace_back(name_from_json(fj["name"], floc + ".name"),
                         bit_from_json(fj["bit"], floc + ".bit"),
                         value_from_json(fj["term"], floc + ".term"));
  }
  b.base = value_from_json(j["base"], loc + ".base");
  b.sort_faces();
  return b;
}

inline Value value_from_json(const json& j, const std::string& loc) {
  if (!j.is_object() || !j.contains("tag") || !j["tag"].is_string())
    throw SchemaError(loc, "expected a tagged object");
  std::string tag = j["tag"].get<std::string>();
  auto need = [&](const char* field) -> const json& {
    if (!j.contains(field))
      throw SchemaError(loc, "tag '" + tag + "' needs field '" + field + "'");
    return j[field];
  };
  try {
    if (tag == "unit") return unit();
    if (tag == "lit") {
      const json& v = need("value");
      if (!v.is_number_integer()) throw SchemaError(loc + ".value", "expected an integer");
      return lit(v.get<long>());
    }
    if (tag == "pair")
      return pair(value_from_json(need("first"), loc + ".first"),
                  value_from_json(need("second"), loc + ".second"));
    if (tag == "cube") {
      const json& a = need("assign");
      if (!a.is_array()) throw SchemaError(loc + ".assign", "expected a list");
      std::vector<std::pair<Name, node::CubeEntry>> assign;
      int k = 0;
      for (const json& ej : a) {
        std::string eloc = loc + ".assign[" + std::to_string(k++) + "]";
        if (!ej.is_object() || !ej.contains("name") || !ej.contains("value"))
          throw SchemaError(eloc, "entry needs fields name, value");
        node::CubeEntry e = ej["value"].is_string()
                                ? node::CubeEntry(name_from_json(ej["value"], eloc))
                                : node::CubeEntry(bit_from_json(ej["value"], eloc));
        assign.emplace_back(name_from_json(ej["name"], eloc + ".name"), e);
      }
      return cube(std::move(assign));
    }
    if (tag == "abs")
      return abs(name_from_json(need("bound"), loc + ".bound"),
                 value_from_json(need("body"), loc + ".body"));
    if (tag == "base") return kbase(value_from_json(need("elem"), loc + ".elem"));
    if (tag == "upbox" || tag == "downbox")
      return kbox(box_from_json(need("box"), tag == "upbox", loc + ".box"));
    if (tag == "plus" || tag == "minus") {
      Name bound = name_from_json(need("bound"), loc + ".bound");
      BoxData box = box_from_json(need("box"), tag == "plus", loc + ".box");
      if (!(box.a == bound))
        throw SchemaError(loc, "bound name does not match the box direction");
      return kbind(bound, std::move(box));
    }
  } catch (const std::invalid_argument& e) {
    throw SchemaError(loc, e.what());
  }
  throw SchemaError(loc, "unknown tag '" + tag + "'");
}

}  // namespace kanfs
