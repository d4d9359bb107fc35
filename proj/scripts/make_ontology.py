#!/usr/bin/env python3
"""Regenerates data/ontology/simmc.json from the tables below."""
import json, itertools, pathlib

types = []
def t(name, kind, parent=None):
    node = {"name": name, "kind": kind}
    if parent: node["parent"] = parent
    types.append(node)

t("OBJECT", "object")
for n in ["FURNITURE", "CLOTHING", "COMPANY", "USER", "SIZE", "LOCATION",
          "EVENT", "HOLIDAY", "DATE_TIME", "DISPLAY", "SITUATION"]:
    t(n, "object", "OBJECT")
for n in ["SOFA", "COUCH", "TABLE", "CHAIR", "TABLE_LAMP", "BOOKCASE", "BED"]:
    t(n, "object", "FURNITURE")
for n in ["DRESS", "SKIRT", "JACKET", "SWEATER"]:
    t(n, "object", "CLOTHING")

t("ACTIVITY", "activity")
ACTIVITIES = ["GET", "REFINE", "CHECK", "COMPARE", "COUNT", "PREFER",
              "DISPREFER", "ADD_TO_CART", "ROTATE"]
for n in ACTIVITIES:
    t(n, "activity", "ACTIVITY")

t("DIALOG_ACT", "dialog_act")
DIALOG_ACTS = ["ASK", "CONFIRM", "INFORM", "PROMPT", "REQUEST"]
for n in DIALOG_ACTS:
    t(n, "dialog_act", "DIALOG_ACT")

attrs = []
def a(domain, name, rng="string", canonical=True, inverse_of=None):
    d = {"name": name, "domain": domain, "range": rng, "canonical": canonical}
    if inverse_of: d["inverse_of"] = inverse_of
    attrs.append(d)

a("OBJECT", "inAttentionOf", "USER", canonical=False, inverse_of="attentionOn")

for n in ["ageRange", "clothingCategory", "clothingStyle", "color", "condition",
          "embellishment", "forGender", "forOccasion", "forSeason",
          "itemDescription", "madeIn", "material", "ordinal", "pattern",
          "sequential", "warmthRating", "waterResistance", "availableSizes"]:
    a("CLOTHING", n)
a("CLOTHING", "amountInStock", "integer")
a("CLOTHING", "customerRating", "decimal")
a("CLOTHING", "price", "decimal")
a("CLOTHING", "brand", "COMPANY")
a("CLOTHING", "soldBy", "COMPANY")
a("CLOTHING", "size", "SIZE")

for n in ["headquarteredIn", "name", "ordinal", "sequential"]:
    a("COMPANY", n)
for n in ["date", "month", "time", "week", "weekday", "year"]:
    a("DATE_TIME", n)
for n in ["displayPosition", "displayFirst", "displaySecond", "displayThird"]:
    a("DISPLAY", n)
for n in ["dressStyle", "hemLength", "hemStyle", "necklineStyle",
          "sleeveLength", "sleeveStyle", "waistStyle"]:
    a("DRESS", n)
for n in ["duration", "elapsedTime", "eventType", "hasPart", "name",
          "remainingTime"]:
    a("EVENT", n)
a("EVENT", "endTime", "DATE_TIME")
a("EVENT", "startTime", "DATE_TIME")

for n in ["ageRange", "color", "condition", "currentLocation", "decorStyle",
          "dimensions", "width", "depth", "height", "era", "filling", "finish",
          "intendedRoom", "madeIn", "material", "name", "ordinal", "pattern",
          "sequential", "upholstery", "weight", "weightCapacity"]:
    a("FURNITURE", n)
for n in ["assemblyRequired", "foldable", "hasStorage", "isAdjustable",
          "isAntique", "isVintage", "swivels"]:
    a("FURNITURE", n, "boolean")
a("FURNITURE", "amountInStock", "integer")
a("FURNITURE", "customerRating", "decimal")
a("FURNITURE", "price", "decimal")
a("FURNITURE", "brand", "COMPANY")
a("FURNITURE", "soldBy", "COMPANY")
a("FURNITURE", "owner", "USER")

a("HOLIDAY", "duration")
a("HOLIDAY", "name")
a("HOLIDAY", "endTime", "DATE_TIME")
a("HOLIDAY", "startTime", "DATE_TIME")
for n in ["hemLength", "hemStyle", "jacketStyle", "necklineStyle",
          "sleeveLength", "sleeveStyle", "waistStyle"]:
    a("JACKET", n)
for n in ["city", "continent", "country", "region", "state"]:
    a("LOCATION", n)
a("LOCATION", "currentDate", "DATE_TIME")
a("LOCATION", "currentTime", "DATE_TIME")
a("SITUATION", "agent", "USER")
a("SITUATION", "situationLocation", "LOCATION")
a("SITUATION", "situationTime", "DATE_TIME")
a("SITUATION", "situationType")
a("SITUATION", "theme")
for n in ["ageSize", "alphabeticSize", "numericSize", "ordinal", "sequential",
          "sizeType"]:
    a("SIZE", n)
for n in ["hemLength", "hemStyle", "skirtStyle", "waistStyle"]:
    a("SKIRT", n)
for n in ["necklineStyle", "sleeveLength", "sleeveStyle", "sweaterStyle",
          "waistStyle"]:
    a("SWEATER", n)
a("USER", "attentionOn", "OBJECT", inverse_of="inAttentionOf")
a("USER", "name")

a("ACTIVITY", "amount", "integer")
a("ACTIVITY", "endTime", "DATE_TIME")
a("ACTIVITY", "startTime", "DATE_TIME")
a("CHECK", "check")
a("COMPARE", "comp", "OBJECT")
a("COUNT", "countFrom", "OBJECT")
a("COUNT", "countTo", "OBJECT")
a("COUNT", "countUnit")
a("ROTATE", "rotateTo", "ROTATION_DIRECTION")

enums = [{"name": "ROTATION_DIRECTION",
          "values": ["LEFT", "RIGHT", "UP", "DOWN", "FRONT", "BACK", "SIDE"]}]

excluded_common = {("REQUEST", "DISPREFER"), ("REQUEST", "PREFER"),
                   ("ASK", "PREFER"), ("ASK", "DISPREFER"),
                   ("ASK", "ADD_TO_CART"), ("PROMPT", "DISPREFER"),
                   ("CONFIRM", "DISPREFER")}
furniture = [[da, act] for da, act in itertools.product(DIALOG_ACTS, ACTIVITIES)
             if (da, act) not in excluded_common]
fashion_acts = [x for x in ACTIVITIES if x not in ("COUNT", "ROTATE")]
excluded_fashion = {("REQUEST", "DISPREFER"), ("ASK", "DISPREFER"),
                    ("PROMPT", "DISPREFER")}
fashion = [[da, act] for da, act in itertools.product(DIALOG_ACTS, fashion_acts)
           if (da, act) not in excluded_fashion]
assert len(furniture) == 38 and len(fashion) == 32, (len(furniture), len(fashion))

doc = {"types": types, "attributes": attrs, "enums": enums,
       "combos": {"furniture": furniture, "fashion": fashion}}
out = pathlib.Path(__file__).resolve().parent.parent / "data/ontology/simmc.json"
out.write_text(json.dumps(doc, indent=2) + "\n")
print("wrote", out)
