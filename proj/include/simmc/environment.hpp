// Deterministic shopping-environment state machines for the furniture
// (carousel/focused VR view) and fashion (current + memory images) domains.
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <simmc/ontology.hpp>

namespace simmc::env {

using json = nlohmann::json;
using ontology::Domain;
using ontology::OntologyGraph;

class EnvError : public std::runtime_error {
 public:
  explicit EnvError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CatalogItem {
  std::string item_id;
  Domain domain = Domain::Furniture;
  std::string type;  // ontology object type, e.g. SOFA or DRESS
  json attributes;   // attribute name -> value

  bool operator==(const CatalogItem&) const = default;
};

struct Catalog {
  Domain domain = Domain::Furniture;
  std::vector<CatalogItem> items;  // stable order

  const CatalogItem& item(const std::string& id) const {
    for (const auto& it : items)
      if (it.item_id == id) return it;
    throw EnvError("unknown item id: " + id);
  }
  bool has(const std::string& id) const {
    for (const auto& it : items)
      if (it.item_id == id) return true;
    return false;
  }
};

inline void validate_catalog(const Catalog& c, const OntologyGraph& g) {
  std::set<std::string> seen;
  for (const auto& it : c.items) {
    if (!seen.insert(it.item_id).second)
      throw EnvError("duplicate item id: " + it.item_id);
    if (!g.has_type(it.type))
      throw EnvError("item " + it.item_id + " has undeclared type " + it.type);
    for (const auto& [name, value] : it.attributes.items()) {
      const auto* def = ontology::find_attribute(it.type, name, g);
      if (!def)
        throw EnvError("item " + it.item_id + ": attribute '" + name +
                       "' does not resolve on " + it.type);
      if (name == "price" && value.is_number() && value.get<double>() < 0)
        throw EnvError("item " + it.item_id + ": negative price");
      if (name == "customerRating" && value.is_number()) {
        double r = value.get<double>();
        if (r < 0 || r > 5)
          throw EnvError("item " + it.item_id + ": rating outside [0,5]");
      }
    }
  }
}

inline Catalog catalog_from_json(const json& doc) {
  Catalog c;
  c.domain = ontology::domain_from_string(doc.at("domain").get<std::string>());
  for (const auto& it : doc.at("items")) {
    CatalogItem item;
    item.item_id = it.at("item_id").get<std::string>();
    item.domain = c.domain;
    item.type = it.at("type").get<std::string>();
    item.attributes = it.at("attributes");
    c.items.push_back(std::move(item));
  }
  return c;
}

inline json catalog_to_json(const Catalog& c) {
  json doc{{"domain", ontology::to_string(c.domain)}, {"items", json::array()}};
  for (const auto& it : c.items)
    doc["items"].push_back({{"item_id", it.item_id},
                            {"type", it.type},
                            {"attributes", it.attributes}});
  return doc;
}

// ---------------------------------------------------------------------------
// States

struct Carousel {
  std::vector<std::string> results;  // filtered item ids, catalog order
  int offset = 0;                    // multiple of 3 within bounds

  std::optional<std::string> slot(int i) const {  // i in 0..2
    size_t idx = static_cast<size_t>(offset + i);
    if (idx < results.size()) return results[idx];
    return std::nullopt;
  }
  int max_offset() const {
    if (results.size() <= 3) return 0;
    return static_cast<int>((results.size() - 1) / 3) * 3;
  }
  bool operator==(const Carousel&) const = default;
};

struct Focused {
  std::string item;
  int yaw = 0;    // {0, 90, 180, 270}
  int pitch = 0;  // {-90, 0, 90}
  Carousel saved_carousel;
  bool operator==(const Focused&) const = default;
};

struct FurnitureState {
  std::variant<Carousel, Focused> mode = Carousel{};
  std::set<std::string> cart;
  bool operator==(const FurnitureState&) const = default;
};

struct FashionState {
  std::string current;
  std::vector<std::string> memory;  // exactly 3 previously viewed items
  std::set<std::string> cart;
  bool operator==(const FashionState&) const = default;
};

using EnvState = std::variant<FurnitureState, FashionState>;

struct ApiCall {
  std::string action;  // SearchFurniture, SpecifyInfo, FocusOnFurniture, ...
  json arguments = json::object();
  bool operator==(const ApiCall&) const = default;
};

enum class Status { Ok, Clamped, Error };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Clamped: return "clamped";
    case Status::Error: return "error";
  }
  return "error";
}

struct ApiResult {
  Status status = Status::Ok;
  json payload = json::object();
  std::string message;  // set for errors
  bool operator==(const ApiResult&) const = default;
};

struct ContextUnit {
  std::optional<std::string> item_id;
  std::string tag;  // left/center/right/focused or current/memory
  bool operator==(const ContextUnit&) const = default;
};

struct MultimodalContext {
  std::vector<ContextUnit> units;  // N_M = 3 (carousel), 1 (focused), 4 (fashion)
  bool operator==(const MultimodalContext&) const = default;
};

// Action context: the post-call environment view, except SpecifyInfo, whose
// context is the requested attribute values themselves.
struct ActionContext {
  bool is_info = false;
  MultimodalContext ctx;
  std::vector<std::pair<std::string, std::string>> info_units;  // (attr, value)
};

// ---------------------------------------------------------------------------
// Search filters: conjunction of equality / containment / min-max range.

inline bool matches_filter(const json& item_value, const json& filter_value) {
  if (filter_value.is_object()) {
    if (!item_value.is_number()) return false;
    double v = item_value.get<double>();
    if (filter_value.contains("min") && v < filter_value["min"].get<double>())
      return false;
    if (filter_value.contains("max") && v > filter_value["max"].get<double>())
      return false;
    return true;
  }
  if (item_value.is_array()) {
    for (const auto& e : item_value)
      if (e == filter_value) return true;
    return false;
  }
  return item_value == filter_value;
}

inline bool matches(const CatalogItem& item, const json& filters) {
  for (const auto& [name, fv] : filters.items()) {
    if (name == "type" || name == "category") {
      if (item.type != fv.get<std::string>()) return false;
      continue;
    }
    if (!item.attributes.contains(name)) return false;
    if (!matches_filter(item.attributes.at(name), fv)) return false;
  }
  return true;
}

inline std::vector<std::string> search_catalog(const Catalog& catalog,
                                               const json& filters) {
  std::vector<std::string> out;
  for (const auto& it : catalog.items)
    if (matches(it, filters)) out.push_back(it.item_id);
  return out;
}

// ---------------------------------------------------------------------------
// apply

namespace detail {

inline ApiResult error(const std::string& msg) {
  return {Status::Error, json::object(), msg};
}

inline json value_to_string_json(const json& v) {
  return v;
}

inline ApiResult specify_info(const Catalog& catalog, const std::string& item_id,
                              const json& attrs) {
  const CatalogItem& item = catalog.item(item_id);
  json payload{{"item_id", item_id}, {"attributes", json::object()}};
  for (const auto& a : attrs) {
    std::string name = a.get<std::string>();
    if (!item.attributes.contains(name))
      return error("item " + item_id + " has no attribute '" + name + "'");
    payload["attributes"][name] = item.attributes.at(name);
  }
  return {Status::Ok, payload, ""};
}

inline std::pair<EnvState, ApiResult> apply_furniture(FurnitureState s,
                                                      const ApiCall& call,
                                                      const Catalog& catalog) {
  const json& args = call.arguments;
  if (call.action == "None") return {s, {Status::Ok, json::object(), ""}};

  if (call.action == "SearchFurniture") {
    Carousel c;
    c.results = search_catalog(catalog, args.value("filters", json::object()));
    c.offset = 0;
    s.mode = c;
    return {s, {Status::Ok, json{{"shown", c.results}}, ""}};
  }

  if (call.action == "FocusOnFurniture") {
    auto* car = std::get_if<Carousel>(&s.mode);
    if (!car) return {s, error("FocusOnFurniture requires carousel mode")};
    std::string pos = args.value("position", "");
    int idx = pos == "left" ? 0 : pos == "center" ? 1 : pos == "right" ? 2 : -1;
    if (idx < 0) return {s, error("bad carousel position: " + pos)};
    auto item = car->slot(idx);
    if (!item) return {s, error("carousel slot '" + pos + "' is empty")};
    Focused f;
    f.item = *item;
    f.saved_carousel = *car;
    s.mode = f;
    return {s, {Status::Ok, json{{"shown", {*item}}}, ""}};
  }

  if (call.action == "RotateFurniture") {
    auto* f = std::get_if<Focused>(&s.mode);
    if (!f) return {s, error("RotateFurniture requires focused mode")};
    std::string dir = args.value("direction", "");
    Focused nf = *f;
    Status st = Status::Ok;
    if (dir == "left") {
      nf.yaw = (nf.yaw + 270) % 360;
    } else if (dir == "right") {
      nf.yaw = (nf.yaw + 90) % 360;
    } else if (dir == "up") {
      if (nf.pitch == 90) st = Status::Clamped;
      nf.pitch = std::min(90, nf.pitch + 90);
    } else if (dir == "down") {
      if (nf.pitch == -90) st = Status::Clamped;
      nf.pitch = std::max(-90, nf.pitch - 90);
    } else if (dir == "front") {
      nf.yaw = 0;
      nf.pitch = 0;
    } else if (dir == "back") {
      nf.yaw = 180;
      nf.pitch = 0;
    } else {
      return {s, error("bad rotate direction: " + dir)};
    }
    s.mode = nf;
    return {s, {st, json{{"shown", {nf.item}}}, ""}};
  }

  if (call.action == "NavigateCarousel") {
    std::string dir = args.value("direction", "");
    if (dir != "next" && dir != "previous")
      return {s, error("bad navigate direction: " + dir)};
    Carousel c;
    if (auto* f = std::get_if<Focused>(&s.mode))
      c = f->saved_carousel;  // leaving focus restores the carousel
    else
      c = std::get<Carousel>(s.mode);
    Status st = Status::Ok;
    int next = c.offset + (dir == "next" ? 3 : -3);
    if (next < 0 || next > c.max_offset())
      st = Status::Clamped;
    else
      c.offset = next;
    s.mode = c;
    json shown = json::array();
    for (int i = 0; i < 3; ++i)
      if (auto it = c.slot(i)) shown.push_back(*it);
    return {s, {st, json{{"shown", shown}}, ""}};
  }

  if (call.action == "AddToCart") {
    std::string id = args.value("item_id", "");
    if (id.empty()) {
      if (auto* f = std::get_if<Focused>(&s.mode))
        id = f->item;
      else
        return {s, error("AddToCart needs an item_id outside focused mode")};
    }
    if (!catalog.has(id)) return {s, error("unknown item id: " + id)};
    s.cart.insert(id);
    return {s, {Status::Ok, json{{"cart", std::vector<std::string>(
                                              s.cart.begin(), s.cart.end())}},
                ""}};
  }

  if (call.action == "SpecifyInfo") {
    std::string id = args.value("item_id", "");
    if (id.empty()) {
      if (auto* f = std::get_if<Focused>(&s.mode))
        id = f->item;
      else
        return {s, error("SpecifyInfo needs an item_id outside focused mode")};
    }
    if (!catalog.has(id)) return {s, error("unknown item id: " + id)};
    ApiResult r =
        specify_info(catalog, id, args.value("attributes", json::array()));
    return {s, r};
  }

  return {s, error("unknown furniture action: " + call.action)};
}

inline std::pair<EnvState, ApiResult> apply_fashion(FashionState s,
                                                    const ApiCall& call,
                                                    const Catalog& catalog) {
  const json& args = call.arguments;
  if (call.action == "None") return {s, {Status::Ok, json::object(), ""}};

  if (call.action == "SearchDatabase" || call.action == "SearchMemory") {
    json filters = args.value("filters", json::object());
    std::string match;
    if (call.action == "SearchMemory") {
      for (const auto& id : s.memory)
        if (matches(catalog.item(id), filters)) {
          match = id;
          break;
        }
      if (match.empty()) return {s, error("no memory item matches the filters")};
    } else {
      auto hits = search_catalog(catalog, filters);
      if (hits.empty()) return {s, error("no catalog item matches the filters")};
      match = hits.front();
    }
    // previous current becomes the newest memory; oldest is evicted
    s.memory.insert(s.memory.begin(), s.current);
    s.memory.resize(3);
    s.current = match;
    return {s, {Status::Ok, json{{"shown", {match}}}, ""}};
  }

  if (call.action == "AddToCart") {
    std::string id = args.value("item_id", s.current);
    if (!catalog.has(id)) return {s, error("unknown item id: " + id)};
    s.cart.insert(id);
    return {s, {Status::Ok, json{{"cart", std::vector<std::string>(
                                              s.cart.begin(), s.cart.end())}},
                ""}};
  }

  if (call.action == "SpecifyInfo") {
    std::string id = args.value("item_id", s.current);
    if (!catalog.has(id)) return {s, error("unknown item id: " + id)};
    ApiResult r =
        specify_info(catalog, id, args.value("attributes", json::array()));
    return {s, r};
  }

  return {s, error("unknown fashion action: " + call.action)};
}

}  // namespace detail

inline std::pair<EnvState, ApiResult> apply(const EnvState& state,
                                            const ApiCall& call,
                                            const Catalog& catalog) {
  if (const auto* fs = std::get_if<FurnitureState>(&state))
    return detail::apply_furniture(*fs, call, catalog);
  return detail::apply_fashion(std::get<FashionState>(state), call, catalog);
}

inline MultimodalContext context_of(const EnvState& state) {
  MultimodalContext ctx;
  if (const auto* fs = std::get_if<FurnitureState>(&state)) {
    if (const auto* c = std::get_if<Carousel>(&fs->mode)) {
      const char* tags[3] = {"left", "center", "right"};
      for (int i = 0; i < 3; ++i) ctx.units.push_back({c->slot(i), tags[i]});
    } else {
      ctx.units.push_back({std::get<Focused>(fs->mode).item, "focused"});
    }
  } else {
    const auto& fa = std::get<FashionState>(state);
    ctx.units.push_back({fa.current, "current"});
    for (const auto& m : fa.memory) ctx.units.push_back({m, "memory"});
  }
  return ctx;
}

inline ActionContext action_context_of(const EnvState& state,
                                       const ApiResult& last_result) {
  ActionContext ac;
  if (last_result.status != Status::Error &&
      last_result.payload.contains("attributes")) {
    ac.is_info = true;
    for (const auto& [name, value] : last_result.payload["attributes"].items())
      ac.info_units.emplace_back(
          name, value.is_string() ? value.get<std::string>() : value.dump());
    return ac;
  }
  ac.ctx = context_of(state);
  return ac;
}

struct TraceEntry {
  EnvState state;  // post-call state
  ApiResult result;
};

// Fold of apply; errors are recorded in-band and leave the state unchanged.
inline std::vector<TraceEntry> replay(const EnvState& initial,
                                      const std::vector<ApiCall>& calls,
                                      const Catalog& catalog) {
  std::vector<TraceEntry> trace;
  EnvState state = initial;
  for (const auto& call : calls) {
    auto [next, result] = apply(state, call, catalog);
    if (result.status == Status::Error)
      trace.push_back({state, result});
    else {
      state = next;
      trace.push_back({state, result});
    }
  }
  return trace;
}

// ---------------------------------------------------------------------------
// JSON forms for states, calls, contexts (trace and corpus files)

inline json to_json(const MultimodalContext& ctx) {
  json arr = json::array();
  for (const auto& u : ctx.units)
    arr.push_back({{"item_id", u.item_id ? json(*u.item_id) : json()},
                   {"tag", u.tag}});
  return arr;
}

inline MultimodalContext context_from_json(const json& arr) {
  MultimodalContext ctx;
  for (const auto& u : arr) {
    ContextUnit unit;
    if (!u.at("item_id").is_null()) unit.item_id = u.at("item_id").get<std::string>();
    unit.tag = u.at("tag").get<std::string>();
    ctx.units.push_back(unit);
  }
  return ctx;
}

inline json to_json(const ApiCall& call) {
  return {{"action", call.action}, {"arguments", call.arguments}};
}

inline ApiCall call_from_json(const json& j) {
  return {j.at("action").get<std::string>(),
          j.value("arguments", json::object())};
}

inline json to_json(const ApiResult& r) {
  return {{"status", to_string(r.status)},
          {"payload", r.payload},
          {"message", r.message}};
}

}  // namespace simmc::env
