#include <catch2/catch_amalgamated.hpp>

#include <simmc/io.hpp>
#include <simmc/ontology.hpp>

using namespace simmc::ontology;

static const OntologyGraph& shipped() {
  static OntologyGraph g =
      load_ontology(simmc::io::slurp(simmc::io::data_dir() + "/ontology/simmc.json"));
  return g;
}

TEST_CASE("shipped document loads with the expected vocabulary") {
  const auto& g = shipped();
  for (const char* name : {"DRESS", "SKIRT", "SOFA", "TABLE_LAMP", "GET",
                           "ASK", "INFORM", "ROTATE", "ADD_TO_CART"})
    CHECK(g.has_type(name));
  CHECK(g.type("DRESS").kind == TypeKind::Object);
  CHECK(g.type("GET").kind == TypeKind::Activity);
  CHECK(g.type("ASK").kind == TypeKind::DialogAct);
}

TEST_CASE("is_subtype follows parent links") {
  const auto& g = shipped();
  CHECK(is_subtype("SOFA", "FURNITURE", g));
  CHECK(is_subtype("SOFA", "SOFA", g));
  CHECK(is_subtype("DRESS", "OBJECT", g));
  CHECK_FALSE(is_subtype("FURNITURE", "SOFA", g));
  CHECK_FALSE(is_subtype("DRESS", "FURNITURE", g));
  CHECK_THROWS_AS(is_subtype("NO_SUCH", "OBJECT", g), OntologyError);
  CHECK_THROWS_AS(is_subtype("SOFA", "NO_SUCH", g), OntologyError);
}

TEST_CASE("is_subtype is reflexive, transitive and antisymmetric") {
  const auto& g = shipped();
  for (const auto& [a, na] : g.types) {
    CHECK(is_subtype(a, a, g));
    for (const auto& [b, nb] : g.types) {
      if (a != b && is_subtype(a, b, g)) {
        CHECK_FALSE(is_subtype(b, a, g));
        for (const auto& [c, nc] : g.types)
          if (is_subtype(b, c, g)) CHECK(is_subtype(a, c, g));
      }
    }
  }
}

TEST_CASE("attributes are inherited from ancestors") {
  const auto& g = shipped();
  auto names = [&](const std::string& t) {
    std::set<std::string> out;
    for (const auto& d : attributes_of(t, g)) out.insert(d.name);
    return out;
  };
  auto dress = names("DRESS");
  CHECK(dress.count("color"));      // from CLOTHING
  CHECK(dress.count("price"));      // from CLOTHING
  CHECK(dress.count("hemLength"));  // own
  auto count = names("COUNT");
  CHECK(count.count("countFrom"));
  CHECK(count.count("countTo"));
  CHECK(count.count("countUnit"));
  CHECK(count.count("amount"));     // universal activity attributes
  CHECK(count.count("endTime"));
  CHECK(count.count("startTime"));
}

TEST_CASE("attribute inheritance is monotone along parent links") {
  const auto& g = shipped();
  for (const auto& [t, node] : g.types) {
    if (!node.parent) continue;
    std::set<std::string> mine, parents;
    for (const auto& d : attributes_of(t, g)) mine.insert(d.domain + "." + d.name);
    for (const auto& d : attributes_of(*node.parent, g))
      parents.insert(d.domain + "." + d.name);
    for (const auto& p : parents) CHECK(mine.count(p));
  }
}

TEST_CASE("resolve_attribute walks the chain") {
  const auto& g = shipped();
  const auto& price = resolve_attribute("DRESS", "price", g);
  CHECK(price.domain == "CLOTHING");
  CHECK(price.range == "decimal");
  const auto& rot = resolve_attribute("ROTATE", "rotateTo", g);
  CHECK(rot.range_kind == RangeKind::Enum);
  CHECK(g.enums.at(rot.range).contains("BACK"));
  CHECK_THROWS_AS(resolve_attribute("TABLE_LAMP", "nonexistent", g), OntologyError);
  CHECK_THROWS_AS(resolve_attribute("DRESS", "skirtStyle", g), OntologyError);
}

TEST_CASE("combo validity") {
  const auto& g = shipped();
  CHECK_FALSE(validate_combo("REQUEST", "DISPREFER", Domain::Furniture, g));
  CHECK_FALSE(validate_combo("REQUEST", "DISPREFER", Domain::Fashion, g));
  CHECK(validate_combo("INFORM", "GET", Domain::Fashion, g));
  CHECK(validate_combo("REQUEST", "ROTATE", Domain::Furniture, g));
  CHECK_FALSE(validate_combo("ASK", "ROTATE", Domain::Fashion, g));
  CHECK_FALSE(validate_combo("REQUEST", "COUNT", Domain::Fashion, g));
  CHECK_THROWS_AS(validate_combo("GET", "INFORM", Domain::Furniture, g),
                  OntologyError);
}

TEST_CASE("serialize round-trips the shipped document") {
  const auto& g = shipped();
  OntologyGraph g2 = load_ontology(serialize(g));
  CHECK(serialize(g2) == serialize(g));
}

TEST_CASE("load errors carry the offending identifier") {
  json base = serialize(shipped());

  SECTION("empty document lacks kind roots") {
    json doc{{"types", json::array()},
             {"attributes", json::array()},
             {"enums", json::array()},
             {"combos", {{"furniture", json::array()}, {"fashion", json::array()}}}};
    CHECK_THROWS_WITH(load_ontology(doc),
                      Catch::Matchers::ContainsSubstring("root"));
  }
  SECTION("self-parented type is a cycle") {
    json doc = base;
    for (auto& t : doc["types"])
      if (t["name"] == "SOFA") t["parent"] = "SOFA";
    CHECK_THROWS_WITH(load_ontology(doc),
                      Catch::Matchers::ContainsSubstring("SOFA"));
  }
  SECTION("duplicate type name") {
    json doc = base;
    doc["types"].push_back({{"name", "SOFA"}, {"kind", "object"},
                            {"parent", "FURNITURE"}});
    CHECK_THROWS_WITH(load_ontology(doc),
                      Catch::Matchers::ContainsSubstring("SOFA"));
  }
  SECTION("dangling parent") {
    json doc = base;
    doc["types"].push_back({{"name", "OTTOMAN"}, {"kind", "object"},
                            {"parent", "NO_SUCH"}});
    CHECK_THROWS_WITH(load_ontology(doc),
                      Catch::Matchers::ContainsSubstring("NO_SUCH"));
  }
  SECTION("attribute declared at two levels of one chain") {
    json doc = base;
    doc["attributes"].push_back({{"name", "price"}, {"domain", "DRESS"},
                                 {"range", "decimal"}});
    CHECK_THROWS_WITH(load_ontology(doc),
                      Catch::Matchers::ContainsSubstring("price"));
  }
  SECTION("inverse pair with two canonical sides") {
    json doc = base;
    for (auto& a : doc["attributes"])
      if (a["name"] == "inAttentionOf") a["canonical"] = true;
    CHECK_THROWS_WITH(load_ontology(doc),
                      Catch::Matchers::ContainsSubstring("attentionOn"));
  }
  SECTION("combo with REQUEST:DISPREFER rejected") {
    json doc = base;
    doc["combos"]["furniture"].push_back({"REQUEST", "DISPREFER"});
    CHECK_THROWS_AS(load_ontology(doc), OntologyError);
  }
}
