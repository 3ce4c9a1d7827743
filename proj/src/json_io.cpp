#include "sgm/json_io.hpp"

#include <fstream>

namespace sgm {

using nlohmann::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

json semigroup_to_json(const PosetSemigroup& m) {
    json j;
    j["elements"] = m.elements();
    j["op"] = m.op_table();
    json leq = json::array();
    for (const auto& row : m.leq_table()) {
        json r = json::array();
        for (char cell : row) r.push_back(cell != 0);
        leq.push_back(std::move(r));
    }
    j["leq"] = std::move(leq);
    return j;
}

SemigroupData semigroup_data_from_json(const json& j) {
    if (!j.is_object()) throw InputError("semigroup JSON must be an object");
    SemigroupData d;
    try {
        d.elements = j.at("elements").get<std::vector<std::string>>();
        d.op = j.at("op").get<std::vector<std::vector<int>>>();
        for (const auto& row : j.at("leq")) {
            std::vector<char> r;
            for (const auto& cell : row) r.push_back(cell.get<bool>() ? 1 : 0);
            d.leq.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("bad semigroup JSON: ") + e.what());
    }
    return d;
}

PosetSemigroup semigroup_from_json(const json& j) {
    return PosetSemigroup::from_data(semigroup_data_from_json(j));
}

json graph_to_json(const LabelledGraph& g) {
    json j;
    j["semigroup"] = semigroup_to_json(g.semigroup());
    j["vertices"] = g.vertices();
    json d = json::array();
    for (int u = 0; u < g.vertex_count(); ++u) {
        json row = json::array();
        for (int v = 0; v < g.vertex_count(); ++v) {
            auto dist = g.distance(u, v);
            if (!dist)
                row.push_back(nullptr);
            else if (dist->is_zero())
                row.push_back("0");
            else
                row.push_back(g.semigroup().label(dist->index()));
        }
        d.push_back(std::move(row));
    }
    j["d"] = std::move(d);
    return j;
}

json space_to_json(const MetricSpace& s) { return graph_to_json(s.graph()); }

LabelledGraph graph_from_json(const json& j, const std::string& base_dir) {
    if (!j.is_object()) throw InputError("space JSON must be an object");
    json sg = j.at("semigroup");
    if (sg.is_string()) {
        std::string path = sg.get<std::string>();
        if (!path.empty() && path[0] != '/') path = base_dir + "/" + path;
        sg = read_json_file(path);
    }
    auto semigroup = std::make_shared<const PosetSemigroup>(semigroup_from_json(sg));

    std::vector<std::string> vertices;
    try {
        vertices = j.at("vertices").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw InputError(std::string("bad space JSON: ") + e.what());
    }
    LabelledGraph g(semigroup, vertices);

    const auto& d = j.at("d");
    if (!d.is_array() || d.size() != vertices.size())
        throw InputError("space JSON: 'd' must be a square matrix over the vertices");
    for (std::size_t u = 0; u < vertices.size(); ++u) {
        const auto& row = d[u];
        if (!row.is_array() || row.size() != vertices.size())
            throw InputError("space JSON: 'd' must be a square matrix over the vertices");
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            const auto& cell = row[v];
            if (cell.is_null()) {
                if (u == v) throw InputError("space JSON: diagonal entries must be \"0\"");
                continue;
            }
            std::string label = cell.is_string() ? cell.get<std::string>() : cell.dump();
            if (label == "0") {
                if (u != v) throw InputError("space JSON: zero distance off the diagonal");
                continue;
            }
            auto idx = semigroup->index_of(label);
            if (!idx) throw InputError("space JSON: '" + label + "' is not a carrier element");
            Dist dist = Dist::element(*idx);
            auto prev = g.distance(static_cast<Vertex>(u), static_cast<Vertex>(v));
            if (prev && *prev != dist)
                throw InputError("space JSON: asymmetric distance between '" + vertices[u] +
                                 "' and '" + vertices[v] + "'");
            g.set_distance(static_cast<Vertex>(u), static_cast<Vertex>(v), dist);
        }
    }
    return g;
}

json validation_report_to_json(const ValidationReport& r) {
    json j;
    j["passed"] = r.passed;
    json vs = json::array();
    for (const auto& v : r.violations) vs.push_back(json{{"axiom", v.axiom}, {"witness", v.witness}});
    j["violations"] = std::move(vs);
    return j;
}

json triangle_report_to_json(const LabelledGraph& g, const TriangleReport& r) {
    json out = json::array();
    auto name = [&](Dist d) {
        return d.is_zero() ? std::string("0") : g.semigroup().label(d.index());
    };
    for (const auto& v : r.violations)
        out.push_back(json{{"vertices", {g.vertex_label(v.a), g.vertex_label(v.b), g.vertex_label(v.c)}},
                           {"distances", {name(v.dab), name(v.dac), name(v.dbc)}}});
    return out;
}

json axiom_report_to_json(const AxiomReport& r) {
    json out = json::array();
    for (const auto& a : r.axioms) {
        json row;
        row["axiom"] = a.axiom;
        row["passed"] = a.passed;
        row["trials"] = a.trials;
        row["seed"] = a.seed;
        row["counterexample"] = a.counterexample ? *a.counterexample : json(nullptr);
        out.push_back(std::move(row));
    }
    return out;
}

json amalgamation_report_to_json(const AmalgamationReport& r) {
    json j;
    j["semigroup"] = r.semigroup_name;
    j["base_bound"] = r.base_bound;
    j["passed"] = r.passed;
    j["bases_checked"] = r.bases_checked;
    j["pairs_checked"] = r.pairs_checked;
    if (r.witness) {
        const auto& m = r.witness->base.semigroup();
        auto vec_labels = [&](const std::vector<int>& vec) {
            json out = json::array();
            for (int x : vec) out.push_back(m.label(x));
            return out;
        };
        j["witness"] = json{{"base", space_to_json(r.witness->base)},
                            {"extension1", vec_labels(r.witness->extension1)},
                            {"extension2", vec_labels(r.witness->extension2)},
                            {"reason", r.witness->reason}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

json bound_to_json(const BoundResult& r) {
    json j;
    j["bound"] = r.bound ? json(*r.bound) : json(nullptr);
    j["max_len"] = r.max_len;
    return j;
}

json geodesic_to_json(const GeodesicSequence& g) {
    json j;
    j["space"] = space_to_json(g.space);
    json seq = json::array();
    for (Vertex v : g.seq) seq.push_back(g.space.vertex_label(v));
    j["seq"] = std::move(seq);
    return j;
}

json witness_to_json(const UnsupportedWitness& w) {
    json j;
    j["space"] = space_to_json(w.space);
    j["a"] = w.space.vertex_label(w.a);
    j["b"] = w.space.vertex_label(w.b);
    json c = json::array();
    for (Vertex v : w.C) c.push_back(w.space.vertex_label(v));
    j["C"] = std::move(c);
    return j;
}

json classification_to_json(const std::vector<ClassificationRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json row;
        row["encoding"] = r.encoding;
        row["elements"] = r.elements;
        row["valid"] = r.valid;
        row["archimedean"] = r.archimedean;
        row["has_maximum"] = r.has_maximum;
        row["all_binary_infima"] = r.all_binary_infima;
        row["amalgamation_pass"] = r.amalgamation_pass ? json(*r.amalgamation_pass) : json(nullptr);
        row["bound"] = r.bound ? json(*r.bound) : json(nullptr);
        row["one_supported_in_budget"] =
            r.one_supported_in_budget ? json(*r.one_supported_in_budget) : json(nullptr);
        out.push_back(std::move(row));
    }
    return out;
}

TriangleFamily family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("name"))
        throw InputError("family JSON must be an object with a 'name'");
    std::string name = j.at("name").get<std::string>();
    if (name == "cherlin_odd_perimeter" && j.contains("K1"))
        return TriangleFamily::cherlin_odd_perimeter(j.at("K1").get<int>(),
                                                     j.at("delta").get<int>());
    std::vector<std::array<std::string, 3>> triples;
    for (const auto& t : j.at("forbidden_triples")) {
        if (!t.is_array() || t.size() != 3)
            throw InputError("family JSON: each forbidden triple needs three entries");
        std::array<std::string, 3> triple;
        for (int i = 0; i < 3; ++i)
            triple[i] = t[i].is_string() ? t[i].get<std::string>() : t[i].dump();
        triples.push_back(std::move(triple));
    }
    return TriangleFamily(std::move(name), std::move(triples));
}

json family_to_json(const TriangleFamily& f) {
    json j;
    j["name"] = f.name();
    if (auto params = f.cherlin_params()) {
        j["K1"] = params->first;
        j["delta"] = params->second;
        return j;
    }
    json triples = json::array();
    for (const auto& t : f.forbidden_triples()) triples.push_back(json{t[0], t[1], t[2]});
    j["forbidden_triples"] = std::move(triples);
    return j;
}

}  // namespace sgm
