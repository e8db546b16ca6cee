#pragma once

#include <string_view>

// Namespace IRIs and the handful of terms the engine refers to by name.
namespace kgcube::vocab {

inline constexpr std::string_view rdf_ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs_ns = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl_ns = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view xsd_ns = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view qb_ns = "http://purl.org/linked-data/cube#";
inline constexpr std::string_view qb4o_ns = "http://purl.org/qb4olap/cubes#";
inline constexpr std::string_view skos_ns = "http://www.w3.org/2004/02/skos/core#";
// Engine extension terms that QB4OLAP has no construct for (level identifiers).
inline constexpr std::string_view kgc_ns = "https://w3id.org/kgcube/vocab#";
// Default S2TMAP namespace; overridable wherever mappings are parsed.
inline constexpr std::string_view map_ns = "http://bike-csecu.com/map#";

namespace rdf {
inline constexpr std::string_view type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view lang_string = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
}  // namespace rdf

namespace rdfs {
inline constexpr std::string_view range = "http://www.w3.org/2000/01/rdf-schema#range";
inline constexpr std::string_view domain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr std::string_view label = "http://www.w3.org/2000/01/rdf-schema#label";
}  // namespace rdfs

namespace owl {
inline constexpr std::string_view same_as = "http://www.w3.org/2002/07/owl#sameAs";
inline constexpr std::string_view klass = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view datatype_property = "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view object_property = "http://www.w3.org/2002/07/owl#ObjectProperty";
}  // namespace owl

namespace xsd {
inline constexpr std::string_view string = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view integer = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view decimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view double_ = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view float_ = "http://www.w3.org/2001/XMLSchema#float";
inline constexpr std::string_view boolean = "http://www.w3.org/2001/XMLSchema#boolean";
}  // namespace xsd

namespace qb {
inline constexpr std::string_view observation = "http://purl.org/linked-data/cube#Observation";
inline constexpr std::string_view data_set = "http://purl.org/linked-data/cube#dataSet";
inline constexpr std::string_view data_set_class = "http://purl.org/linked-data/cube#DataSet";
inline constexpr std::string_view structure = "http://purl.org/linked-data/cube#structure";
inline constexpr std::string_view component = "http://purl.org/linked-data/cube#component";
inline constexpr std::string_view measure = "http://purl.org/linked-data/cube#measure";
inline constexpr std::string_view measure_property = "http://purl.org/linked-data/cube#MeasureProperty";
inline constexpr std::string_view dimension_property = "http://purl.org/linked-data/cube#DimensionProperty";
inline constexpr std::string_view data_structure_definition =
    "http://purl.org/linked-data/cube#DataStructureDefinition";
}  // namespace qb

namespace qb4o {
inline constexpr std::string_view dimension_property = "http://purl.org/qb4olap/cubes#DimensionProperty";
inline constexpr std::string_view hierarchy = "http://purl.org/qb4olap/cubes#Hierarchy";
inline constexpr std::string_view level_property = "http://purl.org/qb4olap/cubes#LevelProperty";
inline constexpr std::string_view level_attribute = "http://purl.org/qb4olap/cubes#LevelAttribute";
inline constexpr std::string_view level_member = "http://purl.org/qb4olap/cubes#LevelMember";
inline constexpr std::string_view hierarchy_step = "http://purl.org/qb4olap/cubes#HierarchyStep";
inline constexpr std::string_view has_hierarchy = "http://purl.org/qb4olap/cubes#hasHierarchy";
inline constexpr std::string_view in_dimension = "http://purl.org/qb4olap/cubes#inDimension";
inline constexpr std::string_view has_level = "http://purl.org/qb4olap/cubes#hasLevel";
inline constexpr std::string_view has_attribute = "http://purl.org/qb4olap/cubes#hasAttribute";
inline constexpr std::string_view in_level = "http://purl.org/qb4olap/cubes#inLevel";
inline constexpr std::string_view in_hierarchy = "http://purl.org/qb4olap/cubes#inHierarchy";
inline constexpr std::string_view child_level = "http://purl.org/qb4olap/cubes#childLevel";
inline constexpr std::string_view parent_level = "http://purl.org/qb4olap/cubes#parentLevel";
inline constexpr std::string_view pc_cardinality = "http://purl.org/qb4olap/cubes#pcCardinality";
inline constexpr std::string_view rollup = "http://purl.org/qb4olap/cubes#rollup";
inline constexpr std::string_view level = "http://purl.org/qb4olap/cubes#level";
inline constexpr std::string_view member_of = "http://purl.org/qb4olap/cubes#memberOf";
inline constexpr std::string_view aggregate_function = "http://purl.org/qb4olap/cubes#aggregateFunction";
inline constexpr std::string_view one_to_many = "http://purl.org/qb4olap/cubes#OneToMany";
inline constexpr std::string_view one_to_one = "http://purl.org/qb4olap/cubes#OneToOne";
inline constexpr std::string_view many_to_many = "http://purl.org/qb4olap/cubes#ManyToMany";
inline constexpr std::string_view sum = "http://purl.org/qb4olap/cubes#sum";
inline constexpr std::string_view avg = "http://purl.org/qb4olap/cubes#avg";
inline constexpr std::string_view min = "http://purl.org/qb4olap/cubes#min";
inline constexpr std::string_view max = "http://purl.org/qb4olap/cubes#max";
inline constexpr std::string_view count = "http://purl.org/qb4olap/cubes#count";
}  // namespace qb4o

namespace skos {
inline constexpr std::string_view exact_match = "http://www.w3.org/2004/02/skos/core#exactMatch";
}  // namespace skos

namespace kgc {
inline constexpr std::string_view identifier = "https://w3id.org/kgcube/vocab#identifier";
}  // namespace kgc

}  // namespace kgcube::vocab
