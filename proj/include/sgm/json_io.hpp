#ifndef SGM_JSON_IO_HPP
#define SGM_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "sgm/fraisse.hpp"
#include "sgm/geodesic.hpp"
#include "sgm/independence.hpp"
#include "sgm/semigroup.hpp"
#include "sgm/space.hpp"

namespace sgm {

// {"elements": [...], "op": [[i...]...], "leq": [[bool...]...]}
nlohmann::json semigroup_to_json(const PosetSemigroup& m);
SemigroupData semigroup_data_from_json(const nlohmann::json& j);
PosetSemigroup semigroup_from_json(const nlohmann::json& j);

// {"semigroup": <inline object or file path>, "vertices": [...],
//  "d": [[label | "0" | null ...]...]}
nlohmann::json space_to_json(const MetricSpace& s);
nlohmann::json graph_to_json(const LabelledGraph& g);
// base_dir resolves a file-path "semigroup" reference.
LabelledGraph graph_from_json(const nlohmann::json& j, const std::string& base_dir = ".");

nlohmann::json validation_report_to_json(const ValidationReport& r);
nlohmann::json triangle_report_to_json(const LabelledGraph& g, const TriangleReport& r);
nlohmann::json axiom_report_to_json(const AxiomReport& r);
nlohmann::json amalgamation_report_to_json(const AmalgamationReport& r);
nlohmann::json bound_to_json(const BoundResult& r);
nlohmann::json geodesic_to_json(const GeodesicSequence& g);
nlohmann::json witness_to_json(const UnsupportedWitness& w);
nlohmann::json classification_to_json(const std::vector<ClassificationRow>& rows);

// {"name": ..., "forbidden_triples": [[x,y,z]...]} or
// {"name": "cherlin_odd_perimeter", "K1": ..., "delta": ...}
TriangleFamily family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const TriangleFamily& f);

nlohmann::json read_json_file(const std::string& path);

}  // namespace sgm

#endif
