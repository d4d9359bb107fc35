// SIMMC type system: object/activity/dialog-act hierarchies, attribute
// definitions with inheritance, and dialog-act x activity validity tables.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace simmc::ontology {

using json = nlohmann::json;

class OntologyError : public std::runtime_error {
 public:
  explicit OntologyError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class TypeKind { Object, Activity, DialogAct };

inline TypeKind kind_from_string(const std::string& s) {
  if (s == "object") return TypeKind::Object;
  if (s == "activity") return TypeKind::Activity;
  if (s == "dialog_act") return TypeKind::DialogAct;
  throw OntologyError("unknown type kind: " + s);
}

struct TypeNode {
  std::string name;
  TypeKind kind = TypeKind::Object;
  std::optional<std::string> parent;  // absent only for the kind root
};

enum class RangeKind { Type, Primitive, Enum };

struct AttributeDef {
  std::string name;
  std::string domain;  // object or activity type
  RangeKind range_kind = RangeKind::Primitive;
  std::string range;  // type name, enum name, or string/integer/decimal/boolean
  bool canonical = true;
  std::optional<std::string> inverse_of;

  bool operator==(const AttributeDef&) const = default;
};

struct EnumDef {
  std::string name;
  std::vector<std::string> values;

  bool contains(const std::string& v) const {
    for (const auto& x : values)
      if (x == v) return true;
    return false;
  }
};

enum class Domain { Furniture, Fashion };

inline std::string to_string(Domain d) {
  return d == Domain::Furniture ? "furniture" : "fashion";
}
inline Domain domain_from_string(const std::string& s) {
  if (s == "furniture") return Domain::Furniture;
  if (s == "fashion") return Domain::Fashion;
  throw OntologyError("unknown domain: " + s);
}

struct ComboTable {
  // (dialog_act, activity) pairs per domain
  std::set<std::pair<std::string, std::string>> furniture;
  std::set<std::pair<std::string, std::string>> fashion;

  const std::set<std::pair<std::string, std::string>>& table(Domain d) const {
    return d == Domain::Furniture ? furniture : fashion;
  }
};

struct OntologyGraph {
  std::map<std::string, TypeNode> types;
  // Same attribute name may be declared on unrelated domains (e.g. color on
  // both CLOTHING and FURNITURE); duplicates on one ancestor chain are
  // rejected at load.
  std::map<std::string, std::vector<AttributeDef>> attributes;
  std::map<std::string, EnumDef> enums;
  ComboTable combos;

  const TypeNode& type(const std::string& name) const {
    auto it = types.find(name);
    if (it == types.end()) throw OntologyError("undeclared type: " + name);
    return it->second;
  }
  bool has_type(const std::string& name) const {
    return types.count(name) != 0;
  }
};

// b reachable from a via parent links, reflexively.
inline bool is_subtype(const std::string& a, const std::string& b,
                       const OntologyGraph& g) {
  g.type(b);
  const TypeNode* n = &g.type(a);
  while (true) {
    if (n->name == b) return true;
    if (!n->parent) return false;
    n = &g.type(*n->parent);
  }
}

// Attributes declared on t and all its ancestors.
inline std::vector<AttributeDef> attributes_of(const std::string& t,
                                               const OntologyGraph& g) {
  std::vector<AttributeDef> out;
  const TypeNode* n = &g.type(t);
  while (true) {
    for (const auto& [name, defs] : g.attributes)
      for (const auto& d : defs)
        if (d.domain == n->name) out.push_back(d);
    if (!n->parent) break;
    n = &g.type(*n->parent);
  }
  return out;
}

// The unique def named attr whose domain is t or an ancestor of t.
inline const AttributeDef* find_attribute(const std::string& t,
                                          const std::string& attr,
                                          const OntologyGraph& g) {
  auto it = g.attributes.find(attr);
  if (it == g.attributes.end()) return nullptr;
  for (const auto& d : it->second)
    if (is_subtype(t, d.domain, g)) return &d;
  return nullptr;
}

inline const AttributeDef& resolve_attribute(const std::string& t,
                                             const std::string& attr,
                                             const OntologyGraph& g) {
  const AttributeDef* d = find_attribute(t, attr, g);
  if (!d)
    throw OntologyError("no attribute '" + attr + "' on type " + t +
                        " or its ancestors");
  return *d;
}

inline bool validate_combo(const std::string& da, const std::string& act,
                           Domain domain, const OntologyGraph& g) {
  if (g.type(da).kind != TypeKind::DialogAct)
    throw OntologyError(da + " is not a dialog act");
  if (g.type(act).kind != TypeKind::Activity)
    throw OntologyError(act + " is not an activity");
  return g.combos.table(domain).count({da, act}) != 0;
}

namespace detail {

inline void check_hierarchies(const OntologyGraph& g) {
  int roots[3] = {0, 0, 0};
  for (const auto& [name, node] : g.types) {
    if (!node.parent) {
      roots[static_cast<int>(node.kind)]++;
      continue;
    }
    auto pit = g.types.find(*node.parent);
    if (pit == g.types.end())
      throw OntologyError("dangling parent reference '" + *node.parent +
                          "' on type " + name);
    if (pit->second.kind != node.kind)
      throw OntologyError("type " + name + " crosses kinds via parent " +
                          *node.parent);
    // walk to the root; more steps than types means a cycle
    const TypeNode* n = &pit->second;
    size_t steps = 0;
    while (true) {
      if (n->name == name || ++steps > g.types.size())
        throw OntologyError("cycle in hierarchy at type " + name);
      if (!n->parent) break;
      n = &g.type(*n->parent);
    }
  }
  const char* kinds[3] = {"object", "activity", "dialog_act"};
  for (int k = 0; k < 3; ++k)
    if (roots[k] != 1)
      throw OntologyError(std::string("expected exactly one ") + kinds[k] +
                          " root, found " + std::to_string(roots[k]));
}

inline void check_attributes(const OntologyGraph& g) {
  for (const auto& [name, defs] : g.attributes) {
    for (const auto& d : defs) {
      if (!g.has_type(d.domain))
        throw OntologyError("attribute " + name + " has undeclared domain " +
                            d.domain);
      TypeKind dk = g.type(d.domain).kind;
      if (dk == TypeKind::DialogAct)
        throw OntologyError("attribute " + name +
                            " declared on dialog act " + d.domain);
      if (d.range_kind == RangeKind::Type && !g.has_type(d.range))
        throw OntologyError("attribute " + name + " has undeclared range " +
                            d.range);
      if (d.range_kind == RangeKind::Enum && !g.enums.count(d.range))
        throw OntologyError("attribute " + name + " has undeclared enum " +
                            d.range);
    }
    // duplicate on one chain: some declared domain is an ancestor of another
    for (size_t i = 0; i < defs.size(); ++i)
      for (size_t j = 0; j < defs.size(); ++j)
        if (i != j && is_subtype(defs[i].domain, defs[j].domain, g))
          throw OntologyError("attribute " + name + " declared at two levels (" +
                              defs[i].domain + ", " + defs[j].domain + ")");
  }
  // inverse pairs: symmetric, exactly one canonical side
  for (const auto& [name, defs] : g.attributes) {
    for (const auto& d : defs) {
      if (!d.inverse_of) continue;
      auto it = g.attributes.find(*d.inverse_of);
      if (it == g.attributes.end())
        throw OntologyError("attribute " + name + " has undeclared inverse " +
                            *d.inverse_of);
      const AttributeDef* other = nullptr;
      for (const auto& o : it->second)
        if (o.inverse_of && *o.inverse_of == name) other = &o;
      if (!other)
        throw OntologyError("inverse of attribute " + name +
                            " does not point back");
      if (d.canonical == other->canonical)
        throw OntologyError("inverse pair (" + name + ", " + *d.inverse_of +
                            ") must have exactly one canonical side");
    }
  }
}

inline void check_combos(const OntologyGraph& g) {
  for (Domain dom : {Domain::Furniture, Domain::Fashion}) {
    for (const auto& [da, act] : g.combos.table(dom)) {
      if (!g.has_type(da) || g.type(da).kind != TypeKind::DialogAct)
        throw OntologyError("combo dialog act undeclared: " + da);
      if (!g.has_type(act) || g.type(act).kind != TypeKind::Activity)
        throw OntologyError("combo activity undeclared: " + act);
      if (da == "REQUEST" && act == "DISPREFER")
        throw OntologyError("(REQUEST, DISPREFER) is never a valid combo");
      if (dom == Domain::Fashion && (act == "COUNT" || act == "ROTATE"))
        throw OntologyError("fashion combos exclude " + act);
    }
  }
}

}  // namespace detail

inline OntologyGraph load_ontology(const json& doc) {
  OntologyGraph g;
  static const std::set<std::string> primitives = {"string", "integer",
                                                   "decimal", "boolean"};
  for (const auto& e : doc.at("enums")) {
    EnumDef ed{e.at("name").get<std::string>(),
               e.at("values").get<std::vector<std::string>>()};
    if (ed.values.empty())
      throw OntologyError("enum " + ed.name + " has no values");
    std::set<std::string> uniq(ed.values.begin(), ed.values.end());
    if (uniq.size() != ed.values.size())
      throw OntologyError("enum " + ed.name + " has duplicate values");
    if (!g.enums.emplace(ed.name, ed).second)
      throw OntologyError("duplicate enum name: " + ed.name);
  }
  for (const auto& t : doc.at("types")) {
    TypeNode n;
    n.name = t.at("name").get<std::string>();
    n.kind = kind_from_string(t.at("kind").get<std::string>());
    if (t.contains("parent")) n.parent = t.at("parent").get<std::string>();
    if (g.enums.count(n.name))
      throw OntologyError("name declared as both type and enum: " + n.name);
    if (!g.types.emplace(n.name, n).second)
      throw OntologyError("duplicate type name: " + n.name);
  }
  for (const auto& adoc : doc.at("attributes")) {
    AttributeDef d;
    d.name = adoc.at("name").get<std::string>();
    d.domain = adoc.at("domain").get<std::string>();
    d.range = adoc.at("range").get<std::string>();
    d.canonical = adoc.value("canonical", true);
    if (adoc.contains("inverse_of"))
      d.inverse_of = adoc.at("inverse_of").get<std::string>();
    if (primitives.count(d.range))
      d.range_kind = RangeKind::Primitive;
    else if (g.enums.count(d.range))
      d.range_kind = RangeKind::Enum;
    else
      d.range_kind = RangeKind::Type;
    for (const auto& prev : g.attributes[d.name])
      if (prev.domain == d.domain)
        throw OntologyError("duplicate attribute " + d.name + " on domain " +
                            d.domain);
    g.attributes[d.name].push_back(d);
  }
  const auto& combos = doc.at("combos");
  auto read_pairs = [](const json& arr) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& p : arr)
      out.insert({p.at(0).get<std::string>(), p.at(1).get<std::string>()});
    return out;
  };
  g.combos.furniture = read_pairs(combos.at("furniture"));
  g.combos.fashion = read_pairs(combos.at("fashion"));

  detail::check_hierarchies(g);
  detail::check_attributes(g);
  detail::check_combos(g);
  return g;
}

inline OntologyGraph load_ontology(const std::string& text) {
  return load_ontology(json::parse(text));
}

inline json serialize(const OntologyGraph& g) {
  json doc;
  doc["types"] = json::array();
  for (const auto& [name, n] : g.types) {
    json t{{"name", n.name}};
    t["kind"] = n.kind == TypeKind::Object     ? "object"
                : n.kind == TypeKind::Activity ? "activity"
                                               : "dialog_act";
    if (n.parent) t["parent"] = *n.parent;
    doc["types"].push_back(t);
  }
  doc["attributes"] = json::array();
  for (const auto& [name, defs] : g.attributes)
    for (const auto& d : defs) {
      json a{{"name", d.name},
             {"domain", d.domain},
             {"range", d.range},
             {"canonical", d.canonical}};
      if (d.inverse_of) a["inverse_of"] = *d.inverse_of;
      doc["attributes"].push_back(a);
    }
  doc["enums"] = json::array();
  for (const auto& [name, e] : g.enums)
    doc["enums"].push_back({{"name", e.name}, {"values", e.values}});
  auto write_pairs = [](const std::set<std::pair<std::string, std::string>>& s) {
    json arr = json::array();
    for (const auto& [da, act] : s) arr.push_back({da, act});
    return arr;
  };
  doc["combos"] = {{"furniture", write_pairs(g.combos.furniture)},
                   {"fashion", write_pairs(g.combos.fashion)}};
  return doc;
}

}  // namespace simmc::ontology
