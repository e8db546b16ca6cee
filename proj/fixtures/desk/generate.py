#!/usr/bin/env python3
"""Regenerates the desk-scale fixture under this directory.

Output is deterministic. The banana table is copied verbatim from the
BBS yearbook layout (one wide row per district, one aggregate row).
"""
import csv
import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent

BASE = "http://bike-csecu.com/datasets/agri/abox/"
MDP = BASE + "mdProperty#"
MDA = BASE + "mdAttribute#"
MDS = BASE + "mdStructure#"
DATA = BASE + "data#"
ONTO = "http://bike-csecu.com/datasets/agri/onto#"

WIKIDATA = "http://mock.wikidata.example/entity/"
GEONAMES = "http://mock.geonames.example/"
EXIOBASE = "http://mock.exiobase.example/product/"

DIVISIONS = [
    (10, "Barishal"), (20, "Chattogram"), (30, "Dhaka"), (40, "Khulna"),
    (50, "Rajshahi"), (55, "Rangpur"), (60, "Sylhet"),
]

DISTRICTS = {
    10: [(4, "Barguna"), (6, "Barishal"), (9, "Bhola"), (42, "Jhalokati"), (78, "Patuakhali"), (79, "Pirojpur")],
    20: [(3, "Bandarban"), (12, "Brahmanbaria"), (13, "Chandpur"), (15, "Chattogram"), (19, "Cumilla"),
         (22, "Cox's Bazar"), (30, "Feni"), (46, "Khagrachhari"), (51, "Lakshmipur"), (75, "Noakhali"),
         (84, "Rangamati")],
    30: [(26, "Dhaka"), (29, "Faridpur"), (33, "Gazipur"), (35, "Gopalganj"), (39, "Jamalpur"),
         (48, "Kishoreganj"), (54, "Madaripur"), (56, "Manikganj"), (59, "Munshiganj"), (61, "Mymensingh"),
         (67, "Narayanganj"), (68, "Narsingdi"), (72, "Netrokona"), (82, "Rajbari"), (86, "Shariatpur"),
         (89, "Sherpur"), (93, "Tangail")],
    40: [(1, "Bagerhat"), (18, "Chuadanga"), (41, "Jashore"), (44, "Jhenaidah"), (47, "Khulna"),
         (50, "Kushtia"), (55, "Magura"), (57, "Meherpur"), (65, "Narail"), (87, "Satkhira")],
    50: [(10, "Bogura"), (70, "Chapai Nawabganj"), (38, "Joypurhat"), (64, "Naogaon"), (69, "Natore"),
         (76, "Pabna"), (81, "Rajshahi"), (88, "Sirajganj")],
    55: [(27, "Dinajpur"), (32, "Gaibandha"), (49, "Kurigram"), (52, "Lalmonirhat"), (73, "Nilphamari"),
         (77, "Panchagarh"), (85, "Rangpur"), (94, "Thakurgaon")],
    60: [(36, "Habiganj"), (58, "Moulvibazar"), (90, "Sunamganj"), (91, "Sylhet")],
}

# Spellings used by the yearbook tables that differ from the level names.
DISTRICT_ALIASES = {"Jhallokati": 1042, "Barisal": 1006, "Chadpur": 1013}

CATEGORIES = [
    ("Fruits", ["Mango", "Jackfruit", "Pineapple", "Papaya", "Guava", "Litchi", "Lemon", "Watermelon", "Orange",
                "Coconut", "Jujube", "Black Berry", "Melon", "Tamarind", "Pomelo", "Wood Apple", "Star Fruit",
                "Sapota", "Hog Plum", "Olive", "Custard Apple", "Lotkon"]),
    ("Cereals", ["Aus Rice", "Aman Rice", "Boro Rice", "Wheat", "Maize", "Barley", "Jowar", "Bajra", "Kaon",
                 "Cheena"]),
    ("Fiber Crops", ["Jute", "Mesta", "Kenaf", "Cotton", "Sunhemp"]),
    ("Vegetables", ["Brinjal", "Pumpkin", "Cauliflower", "Cabbage", "Tomato", "Radish", "Bitter Gourd",
                    "Ladies Finger", "Bottle Gourd", "Snake Gourd", "Pointed Gourd", "Cucumber", "Carrot",
                    "Red Amaranth", "Lau Shak", "Spinach", "Kakrol", "Dhundul", "Chichinga", "Jhinga", "Cowpea",
                    "Bean", "Kachu Shak"]),
    ("Pulses", ["Lentil", "Mung", "Mashkalai", "Gram", "Khesari", "Field Pea", "Arhar"]),
    ("Oilseeds", ["Mustard", "Sesame", "Groundnut", "Linseed", "Soybean", "Sunflower"]),
    ("Spices", ["Chilli", "Onion", "Garlic", "Ginger", "Turmeric", "Coriander", "Cumin"]),
    ("Sugar Crops", ["Sugarcane", "Date Palm", "Palmyra Palm"]),
    ("Narcotics", ["Tobacco", "Betel Leaf", "Betel Nut"]),
    ("Flowers", ["Rose", "Marigold", "Tuberose", "Gladiolus", "Jasmine"]),
    ("Tubers", ["Potato", "Sweet Potato", "Aroid", "Cassava", "Yam"]),
    ("Fodder", ["Napier Grass", "Para Grass", "Maize Fodder", "Oat Fodder"]),
    ("Beverages", ["Tea", "Coffee"]),
    ("Medicinal Plants", ["Aloe Vera", "Neem", "Tulsi", "Basak", "Amla"]),
    ("Other Crops", ["Bamboo", "Rubber", "Mulberry", "Cane", "Hogla", "Murta"]),
]

HABITATS = ["Rivers and Estuaries", "Sundarbans", "Beel", "Kaptai Lake", "Floodplain", "Pond", "Baor",
            "Shrimp and Prawn Farm", "Seasonal Cultivated Water Body", "Pen and Cage", "Crab Farm",
            "Industrial Marine", "Artisanal Marine", "Hilsa Sanctuary"]

SECTORS = [
    ("S01", "Crops", "Field crops, horticulture and plantation crops", "acre"),
    ("S02", "Fisheries", "Inland capture, inland culture and marine fisheries", "metric ton"),
    ("S03", "Forestry", "Natural, plantation and social forests", "acre"),
    ("S04", "Livestock", "Cattle, poultry and other livestock", "head"),
]

BANANA = "A010192"

# Banana area (acre) / production (MT) by district and year, yearbook layout.
BANANA_TABLE = [
    ("Barguna", [(331, 1132), (338, 475), (347, 1580)]),
    ("Barishal", [(1668, 3219), (1684, 3401), (1750, 5500)]),
    ("Bhola", [(513, 1178), (520, 1180), (536, 1879)]),
    ("Jhallokati", [(2824, 7461), (2830, 7470), (2902, 8324)]),
    ("Patuakhali", [(764, 3343), (765, 3345), (554, 2717)]),
    ("Pirojpur", [(3240, 14034), (3280, 13386), (2768, 13390)]),
]
BANANA_TOTAL = [(9340, 30367), (9417, 29257), (8857, 33390)]
BANANA_YEARS = ["2017-18", "2018-19", "2019-20"]


def year_id(start):
    return f"{start}{(start + 1) % 100:02d}"


def year_name(start):
    return f"{start}-{(start + 1) % 100:02d}"


YEARS = list(range(1971, 2023))  # 52 fiscal years


def write_csv(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def districts():
    for div, items in DISTRICTS.items():
        for code, name in items:
            yield div * 100 + code, name, div


def products():
    out = []
    for ci, (cat, names) in enumerate(CATEGORIES, start=1):
        cat_id = f"C{ci:02d}"
        if cat == "Fruits":
            out.append((BANANA, "Banana", cat_id))
        for ni, name in enumerate(names, start=1):
            out.append((f"A01{ci:02d}{ni:02d}", name, cat_id))
    return out


def level_tables():
    d = HERE / "levels"
    write_csv(d / "district.csv", ["districtId", "districtName", "inDivision"],
              [(i, n, div) for i, n, div in districts()])
    write_csv(d / "division.csv", ["divisionId", "divisionName", "inAll"], [(i, n, "BD") for i, n in DIVISIONS])
    write_csv(d / "all.csv", ["allId", "allName", "allDescription"],
              [("BD", "Bangladesh", "People's Republic of Bangladesh")])
    write_csv(d / "product.csv", ["productId", "productName", "inCategory"], products())
    write_csv(d / "category.csv", ["categoryId", "categoryName", "inSector"],
              [(f"C{i:02d}", c, "S01") for i, (c, _) in enumerate(CATEGORIES, start=1)])
    write_csv(d / "habitat.csv", ["habitatId", "habitatName", "inSector"],
              [(f"H{i:02d}", h, "S02") for i, h in enumerate(HABITATS, start=1)])
    write_csv(d / "sector.csv",
              ["sectorId", "sectorName", "sectorDescription", "sectorUnit", "sectorSource", "inAgriculture"],
              [(i, n, desc, unit, "BBS Yearbook of Agricultural Statistics", "AG")
               for i, n, desc, unit in SECTORS])
    write_csv(d / "agriculture.csv",
              ["agricultureId", "agricultureName", "agricultureDescription", "agricultureCountry",
               "agricultureSource", "agricultureLicense"],
              [("AG", "Bangladesh Agriculture", "Crops, fisheries, forestry and livestock statistics",
                "Bangladesh", "Bangladesh Bureau of Statistics", "CC BY 4.0")])
    write_csv(d / "time.csv", ["yearId", "yearName", "startYear"],
              [(year_id(y), year_name(y), y) for y in YEARS])


def lookup_tables():
    d = HERE / "lookup"
    rows = [(n, i) for i, n, _ in districts()]
    rows += [(n, i) for n, i in DISTRICT_ALIASES.items()]
    write_csv(d / "district_codes.csv", ["districtName", "districtId"], rows)
    write_csv(d / "year_codes.csv", ["yearName", "yearId"], [(year_name(y), year_id(y)) for y in YEARS])


def fact_tables():
    d = HERE / "facts"
    header = ["No", "District/Division"]
    for y in BANANA_YEARS:
        header += [f"{y} Area (acre)", f"{y} Production (MT)"]
    rows = []
    for no, (name, cells) in enumerate(BANANA_TABLE, start=1):
        rows.append([no, name] + [v for pair in cells for v in pair])
    rows.append([1, "Barishal Division"] + [v for pair in BANANA_TOTAL for v in pair])
    write_csv(d / "banana_yearbook.csv", header, rows)

    rng = random.Random(20240617)
    dist = list(districts())
    years = [2016, 2017, 2018, 2019]
    crops = []
    for pid, name, cat in products():
        if pid == BANANA:
            continue
        if cat not in ("C02", "C03", "C07") and rng.random() < 0.7:
            continue
        for did, _, _ in rng.sample(dist, 4):
            for y in years:
                area = rng.randint(50, 5000)
                crops.append((pid, did, year_id(y), area, area * rng.randint(1, 6)))
    # onion in Chandpur, used by the slice/dice catalog entries
    for y in years:
        key = ("A010702", 2013, year_id(y))
        if not any(c[:3] == key for c in crops):
            crops.append(key + (410 + y % 10, 2900 + 7 * (y % 10)))
    crops.sort()
    write_csv(d / "crops.csv", ["cropsId", "districtId", "yearId", "area", "production"], crops)

    fish = []
    for hi in range(1, len(HABITATS) + 1):
        picked = {d[0] for d in rng.sample(dist, 5)} | {1004}
        for did in sorted(picked):
            for y in years[1:]:
                fish.append((f"H{hi:02d}", did, year_id(y), rng.randint(20, 9000)))
    fish = sorted(set(fish))
    write_csv(d / "fisheries.csv", ["habitatId", "districtId", "yearId", "production"], fish)

    forest = []
    for did, _, _ in dist:
        if rng.random() < 0.5 and did != 2003:
            continue
        for y in years:
            forest.append(("S03", did, year_id(y), rng.randint(100, 80000)))
    forest.sort()
    write_csv(d / "forestry.csv", ["sectorId", "districtId", "yearId", "area"], forest)


def link_tables():
    d = HERE / "links"
    member = lambda level, key: f"{BASE}{level}/{key}"
    write_csv(d / "geography.csv", ["localIri", "externalIri"],
              [(member("District", i), f"{WIKIDATA}District-{i}") for i, _, _ in districts()]
              + [(member("District", i), f"{GEONAMES}district/{i}") for i, _, _ in districts()]
              + [(member("Division", i), f"{WIKIDATA}Division-{i}") for i, _ in DIVISIONS]
              + [(member("Division", i), f"{GEONAMES}division/{i}") for i, _ in DIVISIONS]
              + [(member("All", "BD"), f"{WIKIDATA}Bangladesh")])
    prods = products()
    write_csv(d / "product.csv", ["localIri", "externalIri"],
              [(member("Product", p), f"{WIKIDATA}Product-{p}") for p, _, _ in prods]
              + [(member("Product", p), f"{EXIOBASE}{p}") for p, _, _ in prods[:20]]
              + [(member("Category", f"C{i:02d}"), f"{WIKIDATA}Category-C{i:02d}")
                 for i in range(1, len(CATEGORIES) + 1)]
              + [(member("Habitat", f"H{i:02d}"), f"{WIKIDATA}Habitat-H{i:02d}")
                 for i in range(1, len(HABITATS) + 1)]
              + [(member("Sector", s[0]), f"{WIKIDATA}Sector-{s[0]}") for s in SECTORS]
              + [(member("Agriculture", "AG"), f"{WIKIDATA}Agriculture")])
    write_csv(d / "time.csv", ["localIri", "externalIri"],
              [(member("Time", year_id(y)), f"{WIKIDATA}Year-{year_name(y)}") for y in YEARS])


# level -> (identifier, [(attribute, range)])
LEVELS = {
    "District": ("districtId", [("districtId", "xsd:integer"), ("districtName", "xsd:string"),
                                ("inDivision", "mdProperty:Division")]),
    "Division": ("divisionId", [("divisionId", "xsd:integer"), ("divisionName", "xsd:string"),
                                ("inAll", "mdProperty:All")]),
    "All": ("allId", [("allId", "xsd:string"), ("allName", "xsd:string"), ("allDescription", "xsd:string")]),
    "Product": ("productId", [("productId", "xsd:string"), ("productName", "xsd:string"),
                              ("inCategory", "mdProperty:Category")]),
    "Category": ("categoryId", [("categoryId", "xsd:string"), ("categoryName", "xsd:string"),
                                ("inSector", "mdProperty:Sector")]),
    "Habitat": ("habitatId", [("habitatId", "xsd:string"), ("habitatName", "xsd:string"),
                              ("inSector", "mdProperty:Sector")]),
    "Sector": ("sectorId", [("sectorId", "xsd:string"), ("sectorName", "xsd:string"),
                            ("sectorDescription", "xsd:string"), ("sectorUnit", "xsd:string"),
                            ("sectorSource", "xsd:string"), ("inAgriculture", "mdProperty:Agriculture")]),
    "Agriculture": ("agricultureId", [("agricultureId", "xsd:string"), ("agricultureName", "xsd:string"),
                                      ("agricultureDescription", "xsd:string"),
                                      ("agricultureCountry", "xsd:string"), ("agricultureSource", "xsd:string"),
                                      ("agricultureLicense", "xsd:string")]),
    "Time": ("yearId", [("yearId", "xsd:integer"), ("yearName", "xsd:string"), ("startYear", "xsd:integer")]),
}

HIERARCHIES = {
    "geoHierarchy": ("agriGeographyDim", [("District", "Division", "inDivision"), ("Division", "All", "inAll")],
                     ["District"]),
    "productCropsHierarchy": ("agriProductDim", [("Product", "Category", "inCategory"),
                                                 ("Category", "Sector", "inSector"),
                                                 ("Sector", "Agriculture", "inAgriculture")], ["Product"]),
    "productFisheriesHierarchy": ("agriProductDim", [("Habitat", "Sector", "inSector"),
                                                     ("Sector", "Agriculture", "inAgriculture")], ["Habitat"]),
    "timeHierarchy": ("agriTimeDim", [], ["Time"]),
}

CUBOIDS = [
    ("productionCuboid", "agricultureDataset", ["Product", "District", "Time"], ["area", "production"]),
    ("fisheriesCuboid", "fisheriesDataset", ["Habitat", "District", "Time"], ["production"]),
    ("forestryCuboid", "forestryDataset", ["Sector", "District", "Time"], ["area"]),
]


def tbox():
    out = [
        "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .",
        "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .",
        "@prefix owl: <http://www.w3.org/2002/07/owl#> .",
        "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .",
        "@prefix qb: <http://purl.org/linked-data/cube#> .",
        "@prefix qb4o: <http://purl.org/qb4olap/cubes#> .",
        "@prefix kgc: <https://w3id.org/kgcube/vocab#> .",
        f"@prefix mdProperty: <{MDP}> .",
        f"@prefix mdAttribute: <{MDA}> .",
        f"@prefix mdStructure: <{MDS}> .",
        f"@prefix data: <{DATA}> .",
        "",
        "# Dimensions",
    ]
    dims = {}
    for h, (dim, _, _) in HIERARCHIES.items():
        dims.setdefault(dim, []).append(h)
    for dim, hs in dims.items():
        out.append(f"mdProperty:{dim} a qb:DimensionProperty ;")
        out.append("    qb4o:hasHierarchy " + ", ".join(f"mdStructure:{h}" for h in hs) + " .")
    out += ["", "# Hierarchies"]
    for h, (dim, steps, first) in HIERARCHIES.items():
        levels = first + [s[1] for s in steps]
        out.append(f"mdStructure:{h} a qb4o:Hierarchy ;")
        out.append(f"    qb4o:inDimension mdProperty:{dim} ;")
        out.append("    qb4o:hasLevel " + ", ".join(f"mdProperty:{l}" for l in levels) + " .")
        for child, parent, rollup in steps:
            out.append("[] a qb4o:HierarchyStep ;")
            out.append(f"    qb4o:inHierarchy mdStructure:{h} ;")
            out.append(f"    qb4o:childLevel mdProperty:{child} ;")
            out.append(f"    qb4o:parentLevel mdProperty:{parent} ;")
            out.append("    qb4o:pcCardinality qb4o:OneToMany ;")
            out.append(f"    qb4o:rollup mdAttribute:{rollup} .")
    out += ["", "# Levels"]
    attrs = {}
    for level, (ident, items) in LEVELS.items():
        out.append(f"mdProperty:{level} a qb4o:LevelProperty ;")
        out.append("    qb4o:hasAttribute " + ", ".join(f"mdAttribute:{a}" for a, _ in items) + " ;")
        out.append(f"    kgc:identifier mdAttribute:{ident} .")
        for a, r in items:
            attrs.setdefault(a, (r, []))[1].append(level)
    out += ["", "# Level attributes"]
    for a, (r, levels) in attrs.items():
        kind = "owl:ObjectProperty" if r.startswith("mdProperty:") else "owl:DatatypeProperty"
        out.append(f"mdAttribute:{a} a qb4o:LevelAttribute, {kind} ;")
        out.append("    qb4o:inLevel " + ", ".join(f"mdProperty:{l}" for l in levels) + " ;")
        out.append(f"    rdfs:range {r} .")
    out += ["", "# Measures"]
    for m in ["area", "production"]:
        out.append(f"mdProperty:{m} a qb:MeasureProperty ;")
        out.append("    rdfs:range xsd:float ;")
        out.append("    qb4o:aggregateFunction qb4o:sum .")
    out += ["", "# Cuboids"]
    for dsd, ds, levels, measures in CUBOIDS:
        out.append(f"mdStructure:{dsd} a qb:DataStructureDefinition ;")
        comps = [f"[ qb4o:level mdProperty:{l} ]" for l in levels]
        comps += [f"[ qb:measure mdProperty:{m} ]" for m in measures]
        out.append("    qb:component " + ",\n        ".join(comps) + " .")
        out.append(f"data:{ds} a qb:DataSet ;")
        out.append(f"    qb:structure mdStructure:{dsd} .")
    (HERE / "tbox.ttl").write_text("\n".join(out) + "\n", encoding="utf-8")


SOURCES = {
    # source name -> (csv, target, iri value, {target property: source column or expression})
    "District": ("levels/district.csv", "mdProperty:District", "districtId", None),
    "Division": ("levels/division.csv", "mdProperty:Division", "divisionId", None),
    "All": ("levels/all.csv", "mdProperty:All", "allId", None),
    "Product": ("levels/product.csv", "mdProperty:Product", "productId", None),
    "Category": ("levels/category.csv", "mdProperty:Category", "categoryId", None),
    "Habitat": ("levels/habitat.csv", "mdProperty:Habitat", "habitatId", None),
    "Sector": ("levels/sector.csv", "mdProperty:Sector", "sectorId", None),
    "Agriculture": ("levels/agriculture.csv", "mdProperty:Agriculture", "agricultureId", None),
    "Time": ("levels/time.csv", "mdProperty:Time", "yearId", None),
    "Banana": ("facts/banana_yearbook.csv", "mdStructure:productionCuboid", "concat(cropsId, districtId, yearId)",
               {"mdProperty:Product": "cropsId", "mdProperty:District": "districtId", "mdProperty:Time": "yearId",
                "mdProperty:area": "area", "mdProperty:production": "production"}),
    "Crops": ("facts/crops.csv", "mdStructure:productionCuboid", "concat(cropsId, districtId, yearId)",
              {"mdProperty:Product": "cropsId", "mdProperty:District": "districtId", "mdProperty:Time": "yearId",
               "mdProperty:area": "area", "mdProperty:production": "production"}),
    "Fisheries": ("facts/fisheries.csv", "mdStructure:fisheriesCuboid", "concat(habitatId, districtId, yearId)",
                  {"mdProperty:Habitat": "habitatId", "mdProperty:District": "districtId",
                   "mdProperty:Time": "yearId", "mdProperty:production": "production"}),
    "Forestry": ("facts/forestry.csv", "mdStructure:forestryCuboid", "concat(sectorId, districtId, yearId)",
                 {"mdProperty:Sector": "sectorId", "mdProperty:District": "districtId",
                  "mdProperty:Time": "yearId", "mdProperty:area": "area"}),
}


def mapping():
    out = [
        "@prefix map: <http://bike-csecu.com/map#> .",
        "@prefix skos: <http://www.w3.org/2004/02/skos/core#> .",
        f"@prefix onto: <{ONTO}> .",
        f"@prefix mdProperty: <{MDP}> .",
        f"@prefix mdAttribute: <{MDA}> .",
        f"@prefix mdStructure: <{MDS}> .",
        "",
        "map:bdakg a map:Dataset ;",
        '    map:sourceTBox "staging/source_tbox.ttl" ;',
        '    map:targetTBox "tbox.ttl" .',
    ]
    for name, (_, target, iri_value, props) in SOURCES.items():
        cm = f"map:{name}_{target.split(':')[1]}"
        out.append("")
        out.append(f"{cm} a map:ConceptMapping ;")
        out.append("    map:dataset map:bdakg ;")
        out.append(f"    map:sourceConcept onto:{name} ;")
        out.append(f"    map:targetConcept {target} ;")
        out.append("    map:relation skos:exactMatch ;")
        if props is None:
            out.append(f"    map:iriValue onto:{iri_value} ;")
            out.append("    map:iriValueType map:SourceAttribute ;")
        else:
            out.append(f'    map:iriValue "{iri_value}" ;')
            out.append("    map:iriValueType map:Expression ;")
        out.append('    map:matchedInstances "All" .')
        if props is None:
            level = target.split(":")[1]
            props = {f"mdAttribute:{a}": a for a, _ in LEVELS[level][1]}
        for i, (tp, src) in enumerate(props.items(), start=1):
            out.append(f"map:{name}_p{i:02d} a map:PropertyMapping ;")
            out.append(f"    map:conceptMapping {cm} ;")
            out.append(f"    map:targetProperty {tp} ;")
            out.append(f"    map:sourceProperty onto:{src} .")
    (HERE / "mapping.ttl").write_text("\n".join(out) + "\n", encoding="utf-8")


def configs():
    sources = []
    for name, (path, target, _, _) in SOURCES.items():
        s = {"name": name, "path": path}
        if name == "Banana":
            groups = [{"key": y, "columns": {"area": f"{y} Area (acre)", "production": f"{y} Production (MT)"}}
                      for y in BANANA_YEARS]
            s["cleansing"] = {
                "dropRows": "contains(`District/Division`, 'Division')",
                "melt": {"keep": ["District/Division"], "keyColumn": "yearName", "groups": groups},
                "rename": {"District/Division": "districtName"},
                "substitutions": [
                    {"column": "districtName", "into": "districtId", "file": "lookup/district_codes.csv"},
                    {"column": "yearName", "into": "yearId", "file": "lookup/year_codes.csv"},
                ],
                "constants": {"cropsId": BANANA},
            }
        if target == "mdStructure:productionCuboid":
            s["dataset"] = DATA + "agricultureDataset"
        sources.append(s)
    pipeline = {
        "baseIri": BASE,
        "sourceNamespace": ONTO,
        "tbox": "tbox.ttl",
        "mapping": "mapping.ttl",
        "output": "out/bdakg.ttl",
        "staging": "out/staging",
        "strict": True,
        "sources": sources,
        "links": ["links/geography.csv", "links/product.csv", "links/time.csv"],
    }
    (HERE / "pipeline.json").write_text(json.dumps(pipeline, indent=2) + "\n", encoding="utf-8")
    service = {
        "listen": "127.0.0.1:8080",
        "dump": "out/bdakg.ttl",
        "examples": "../../catalog",
        "endpoints": {
            "wikidata": "http://127.0.0.1:8891/sparql",
            "exiobase": "http://127.0.0.1:8892/sparql",
        },
        "cors": ["http://localhost:5173", "http://127.0.0.1:5173"],
    }
    (HERE / "service.json").write_text(json.dumps(service, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    level_tables()
    lookup_tables()
    fact_tables()
    link_tables()
    tbox()
    mapping()
    configs()
