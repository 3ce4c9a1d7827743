// Command-line front end: every operation with JSON I/O, deterministic seeds
// and machine-readable reports. Exit codes: 0 = checks pass / result
// produced, 1 = mathematical finding (violation, witness, failure report),
// 2 = input or usage error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgm/fraisse.hpp"
#include "sgm/geodesic.hpp"
#include "sgm/independence.hpp"
#include "sgm/json_io.hpp"
#include "sgm/semigroup.hpp"
#include "sgm/space.hpp"

using nlohmann::json;

namespace {

struct GlobalOpts {
    bool json_output = false;
    std::string out_file;
    std::uint64_t seed = 0;
    int jobs = 1;
};

struct Report {
    std::string command;
    json parameters = json::object();
    std::string outcome;  // pass | fail | error
    json payload = json::object();
    std::uint64_t seed = 0;
};

int emit(const Report& report, const GlobalOpts& g,
         std::chrono::steady_clock::time_point start, const std::string& human) {
    json j;
    j["command"] = report.command;
    j["parameters"] = report.parameters;
    j["outcome"] = report.outcome;
    j["payload"] = report.payload;
    j["seed"] = report.seed;
    std::string text = j.dump(2) + "\n";

    if (!g.out_file.empty()) {
        std::ofstream out(g.out_file);
        if (!out) {
            std::cerr << "error: cannot write '" << g.out_file << "'\n";
            return 2;
        }
        out << text;
    }
    if (g.json_output) {
        // timing is deliberately left out: identical inputs must produce
        // byte-identical reports
        std::cout << text;
    } else {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cout << report.command << ": " << report.outcome << "\n";
        if (!human.empty()) std::cout << human << "\n";
        std::cout << "elapsed_ms: " << ms << "\n";
    }
    if (report.outcome == "pass") return 0;
    if (report.outcome == "fail") return 1;
    return 2;
}

struct SemigroupInput {
    std::optional<sgm::PosetSemigroup> semigroup;
    std::optional<std::array<sgm::Rational, 3>> sauer_witness;
    std::string spec;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

SemigroupInput load_semigroup(const std::string& arg) {
    SemigroupInput in;
    in.spec = arg;
    if (arg.rfind("path:", 0) == 0) {
        in.semigroup = sgm::path_semigroup(std::stoi(arg.substr(5)));
        return in;
    }
    if (arg.rfind("product:", 0) == 0) {
        auto parts = split(arg.substr(8), ',');
        if (parts.size() != 2) throw sgm::InputError("product spec needs n,k");
        in.semigroup = sgm::product_capped(std::stoi(parts[0]), std::stoi(parts[1]));
        return in;
    }
    if (arg.rfind("sauer:", 0) == 0) {
        std::vector<sgm::Rational> values;
        for (const auto& tok : split(arg.substr(6), ','))
            values.push_back(sgm::parse_rational(tok));
        auto r = sgm::sauer_semigroup(std::move(values));
        if (r.semigroup)
            in.semigroup = std::move(*r.semigroup);
        else
            in.sauer_witness = r.associativity_witness;
        return in;
    }
    in.semigroup = sgm::semigroup_from_json(sgm::read_json_file(arg));
    return in;
}

sgm::SemigroupPtr require_semigroup(const SemigroupInput& in) {
    if (in.semigroup) return std::make_shared<const sgm::PosetSemigroup>(*in.semigroup);
    std::string msg = "'" + in.spec + "' is not a semigroup";
    if (in.sauer_witness) {
        msg += ": operation not associative at (" + sgm::format_rational((*in.sauer_witness)[0]) +
               "," + sgm::format_rational((*in.sauer_witness)[1]) + "," +
               sgm::format_rational((*in.sauer_witness)[2]) + ")";
    }
    throw sgm::InputError(msg);
}

std::string dirname_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

std::optional<sgm::TriangleFamily> load_family(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return sgm::family_from_json(sgm::read_json_file(path));
}

json sauer_witness_json(const std::array<sgm::Rational, 3>& w) {
    return json{sgm::format_rational(w[0]), sgm::format_rational(w[1]),
                sgm::format_rational(w[2])};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite semigroup-valued metric spaces and their shortest-path independence"};
    app.require_subcommand(1);
    // let --json/--seed/--jobs/-o appear after the subcommand name
    app.fallthrough();

    GlobalOpts g;
    app.add_flag("--json", g.json_output, "machine-readable report on stdout");
    app.add_option("-o,--out", g.out_file, "also write the JSON report to this file");
    app.add_option("--seed", g.seed, "seed for randomized operations");
    app.add_option("--jobs", g.jobs, "worker threads for batch operations")
        ->check(CLI::Range(1, 256));

    std::string sg_arg;
    int max_len = 0;
    std::string suite = "sir";
    int trials = 1000;
    sgm::FragmentSpec fragment_spec;
    std::string fragment_mode = "mixed";
    int max_a = 3, max_b = 3, max_c = 4;
    int support_k = 1;
    int support_vertices = 5;
    int support_trials = 4000;
    std::string space_file, vertex_a, vertex_b, base_list;
    int base_bound = 3;
    std::string family_file;
    int rounds = 2, gen_max_base = 2, gen_max_vertices = 12;
    int max_size = 3;

    auto* validate = app.add_subcommand("validate", "check the semigroup axioms");
    validate->fallthrough();
    validate->add_option("semigroup", sg_arg, "JSON file or inline spec (path:4, product:3,2, sauer:1,2,3)")
        ->required();

    auto* bound = app.add_subcommand("bound", "boundedness constant of the independence relation");
    bound->fallthrough();
    bound->add_option("semigroup", sg_arg)->required();
    bound->add_option("--max-len", max_len, "search lengths up to this (default |M|)");

    auto* check = app.add_subcommand("check", "axiom suites on generated fragments");
    check->fallthrough();
    check->add_option("semigroup", sg_arg)->required();
    check->add_option("--suite", suite, "sir | metric-like | derived")
        ->check(CLI::IsMember({"sir", "metric-like", "derived"}));
    check->add_option("--trials", trials);
    check->add_option("--fragment-count", fragment_spec.count);
    check->add_option("--fragment-rounds", fragment_spec.rounds);
    check->add_option("--fragment-max-base", fragment_spec.max_base);
    check->add_option("--fragment-vertices", fragment_spec.max_vertices);
    check->add_option("--fragment-mode", fragment_mode)
        ->check(CLI::IsMember({"generic", "random", "mixed"}));
    check->add_option("--max-a", max_a);
    check->add_option("--max-b", max_b);
    check->add_option("--max-c", max_c);

    auto* support = app.add_subcommand("support",
                                       "support-set search: witness mode by default, "
                                       "enumeration mode with --space");
    support->fallthrough();
    support->add_option("semigroup", sg_arg)->required();
    support->add_option("--k", support_k, "support size bound");
    support->add_option("--max-vertices", support_vertices);
    support->add_option("--trials", support_trials);
    support->add_option("--space", space_file, "metric-space JSON for enumeration mode");
    support->add_option("--a", vertex_a);
    support->add_option("--b", vertex_b);
    support->add_option("--over", base_list, "comma-separated base vertex labels");

    auto* amalg = app.add_subcommand("amalgamation", "exhaustive strong-amalgamation check");
    amalg->fallthrough();
    amalg->add_option("semigroup", sg_arg)->required();
    amalg->add_option("--base", base_bound, "largest base size (up to 3)");
    amalg->add_option("--family", family_file, "forbidden-triangle family JSON");

    auto* generic = app.add_subcommand("generic", "grow a finite approximation of the generic space");
    generic->fallthrough();
    generic->add_option("semigroup", sg_arg)->required();
    generic->add_option("--rounds", rounds);
    generic->add_option("--max-base", gen_max_base);
    generic->add_option("--max-vertices", gen_max_vertices);
    generic->add_option("--family", family_file);

    auto* enumerate = app.add_subcommand("enumerate", "all semigroups up to relabelling");
    enumerate->fallthrough();
    enumerate->add_option("--max-size", max_size)->check(CLI::Range(1, 4));

    auto* classify = app.add_subcommand("classify", "flag table for enumerated semigroups");
    classify->fallthrough();
    classify->add_option("--max-size", max_size)->check(CLI::Range(1, 4));
    classify->add_option("--base", base_bound, "amalgamation base bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto start = std::chrono::steady_clock::now();
    Report report;
    report.seed = g.seed;
    std::string human;

    try {
        if (validate->parsed()) {
            report.command = "validate";
            report.parameters = json{{"semigroup", sg_arg}};
            SemigroupInput in = load_semigroup(sg_arg);
            if (in.sauer_witness) {
                report.outcome = "fail";
                report.payload = json{{"sauer_associativity_witness",
                                       sauer_witness_json(*in.sauer_witness)}};
                human = "operation is not associative";
                return emit(report, g, start, human);
            }
            sgm::SemigroupData data;
            sgm::ValidationReport vr;
            if (in.semigroup) {
                data = in.semigroup->data();
                vr = sgm::validate(data);
            }
            report.payload["validation"] = sgm::validation_report_to_json(vr);
            if (vr.passed) {
                const auto& m = *in.semigroup;
                auto arch = sgm::is_archimedean(m);
                report.payload["archimedean"] = arch.archimedean;
                report.payload["archimedean_witness"] =
                    arch.witness ? json{m.label(arch.witness->first), m.label(arch.witness->second)}
                                 : json(nullptr);
                auto top = sgm::maximum(m);
                report.payload["maximum"] = top ? json(m.label(*top)) : json(nullptr);
                human = "all axioms hold; archimedean: " +
                        std::string(arch.archimedean ? "yes" : "no");
            }
            report.outcome = vr.passed ? "pass" : "fail";
            return emit(report, g, start, human);
        }

        if (bound->parsed()) {
            report.command = "bound";
            auto m = require_semigroup(load_semigroup(sg_arg));
            if (max_len <= 0) max_len = m->size();
            report.parameters = json{{"semigroup", sg_arg}, {"max_len", max_len}};
            auto r = sgm::compute_bound(*m, max_len);
            report.payload = sgm::bound_to_json(r);
            report.outcome = "pass";
            human = r.bound ? "bound: " + std::to_string(*r.bound)
                            : "exceeds max_len " + std::to_string(max_len);
            return emit(report, g, start, human);
        }

        if (check->parsed()) {
            report.command = "check";
            auto m = require_semigroup(load_semigroup(sg_arg));
            fragment_spec.seed = g.seed;
            fragment_spec.mode = fragment_mode == "generic" ? sgm::FragmentSpec::Mode::generic
                                 : fragment_mode == "random" ? sgm::FragmentSpec::Mode::random
                                                             : sgm::FragmentSpec::Mode::mixed;
            sgm::CheckOptions opts;
            opts.trials = trials;
            opts.seed = g.seed;
            opts.jobs = g.jobs;
            opts.max_a = max_a;
            opts.max_b = max_b;
            opts.max_c = max_c;
            report.parameters = json{{"semigroup", sg_arg},
                                     {"suite", suite},
                                     {"trials", trials},
                                     {"fragments",
                                      {{"mode", fragment_mode},
                                       {"count", fragment_spec.count},
                                       {"rounds", fragment_spec.rounds},
                                       {"max_base", fragment_spec.max_base},
                                       {"max_vertices", fragment_spec.max_vertices}}},
                                     {"max_a", max_a},
                                     {"max_b", max_b},
                                     {"max_c", max_c}};
            sgm::FragmentSource source{m, fragment_spec};
            try {
                sgm::AxiomReport ar = suite == "sir"           ? sgm::check_sir_axioms(source, opts)
                                      : suite == "metric-like" ? sgm::check_metric_like(source, opts)
                                                               : sgm::check_derived(source, opts);
                report.payload = json{{"suite", suite}, {"axioms", sgm::axiom_report_to_json(ar)}};
                report.outcome = ar.all_passed() ? "pass" : "fail";
                int bad = 0;
                for (const auto& a : ar.axioms)
                    if (!a.passed) ++bad;
                human = std::to_string(ar.axioms.size() - bad) + "/" +
                        std::to_string(ar.axioms.size()) + " axioms passed";
            } catch (const sgm::FragmentBuildError& e) {
                report.payload = json{{"suite", suite}, {"fragment_failure", e.what()}};
                report.outcome = "fail";
                human = e.what();
            }
            return emit(report, g, start, human);
        }

        if (support->parsed()) {
            report.command = "support";
            auto m = require_semigroup(load_semigroup(sg_arg));
            if (!space_file.empty()) {
                auto graph = sgm::graph_from_json(sgm::read_json_file(space_file),
                                                  dirname_of(space_file));
                if (!(graph.semigroup() == *m))
                    throw sgm::InputError("space semigroup differs from the given one");
                auto completed = sgm::complete_shortest_path(graph);
                if (!completed.ok()) {
                    report.outcome = "fail";
                    report.payload = json{{"completion_failure",
                                           completed.infimum_error
                                               ? json(*completed.infimum_error)
                                               : sgm::triangle_report_to_json(graph, completed.failure)}};
                    return emit(report, g, start, "space cannot be completed");
                }
                const auto& s = *completed.space;
                auto need = [&](const std::string& label) {
                    auto v = s.vertex_index(label);
                    if (!v) throw sgm::InputError("unknown vertex '" + label + "'");
                    return *v;
                };
                sgm::Vertex va = need(vertex_a), vb = need(vertex_b);
                std::vector<sgm::Vertex> base;
                if (!base_list.empty())
                    for (const auto& tok : split(base_list, ',')) base.push_back(need(tok));
                report.parameters = json{{"semigroup", sg_arg}, {"space", space_file},
                                         {"a", vertex_a},      {"b", vertex_b},
                                         {"over", base_list},  {"k", support_k}};
                auto supports = sgm::support_sets(s, va, base, vb, support_k);
                json sup = json::array();
                for (const auto& sub : supports) {
                    json labels = json::array();
                    for (sgm::Vertex v : sub) labels.push_back(s.vertex_label(v));
                    sup.push_back(std::move(labels));
                }
                report.payload = json{{"supports", std::move(sup)}};
                report.outcome = "pass";
                human = std::to_string(supports.size()) + " support sets of size <= " +
                        std::to_string(support_k);
                return emit(report, g, start, human);
            }

            sgm::SearchBudget budget;
            budget.max_vertices = support_vertices;
            budget.trials = support_trials;
            budget.seed = g.seed;
            report.parameters = json{{"semigroup", sg_arg},
                                     {"k", support_k},
                                     {"max_vertices", support_vertices},
                                     {"trials", support_trials}};
            auto witness = sgm::find_unsupported_witness(m, support_k, budget);
            report.payload =
                json{{"k", support_k},
                     {"witness", witness ? sgm::witness_to_json(*witness) : json(nullptr)}};
            report.outcome = witness ? "fail" : "pass";
            human = witness ? "relation is not " + std::to_string(support_k) + "-supported"
                            : "no witness within budget";
            return emit(report, g, start, human);
        }

        if (amalg->parsed()) {
            report.command = "amalgamation";
            auto m = require_semigroup(load_semigroup(sg_arg));
            auto family = load_family(family_file);
            report.parameters = json{{"semigroup", sg_arg},
                                     {"base_bound", base_bound},
                                     {"family", family ? sgm::family_to_json(*family) : json(nullptr)}};
            auto r = sgm::check_amalgamation(m, base_bound, family, g.jobs);
            report.payload = sgm::amalgamation_report_to_json(r);
            report.outcome = r.passed ? "pass" : "fail";
            human = r.passed ? "amalgamation holds for all bases up to size " +
                                   std::to_string(base_bound)
                             : "found a failing configuration";
            return emit(report, g, start, human);
        }

        if (generic->parsed()) {
            report.command = "generic";
            auto m = require_semigroup(load_semigroup(sg_arg));
            auto family = load_family(family_file);
            report.parameters = json{{"semigroup", sg_arg},
                                     {"rounds", rounds},
                                     {"max_base", gen_max_base},
                                     {"max_vertices", gen_max_vertices},
                                     {"family", family ? sgm::family_to_json(*family) : json(nullptr)}};
            auto r = sgm::build_generic(m, rounds, gen_max_base, gen_max_vertices, g.seed, family);
            if (r.ok()) {
                report.payload = json{{"space", sgm::space_to_json(*r.space)}};
                report.outcome = "pass";
                human = std::to_string(r.space->vertex_count()) + " vertices";
            } else {
                report.payload = json{{"failure", *r.failure}};
                report.outcome = "fail";
                human = *r.failure;
            }
            return emit(report, g, start, human);
        }

        if (enumerate->parsed()) {
            report.command = "enumerate";
            report.parameters = json{{"max_size", max_size}};
            auto all = sgm::enumerate_pocs(max_size);
            json list = json::array();
            for (const auto& m : all) list.push_back(sgm::semigroup_to_json(m));
            report.payload = json{{"count", all.size()}, {"semigroups", std::move(list)}};
            report.outcome = "pass";
            human = std::to_string(all.size()) + " semigroups up to relabelling";
            return emit(report, g, start, human);
        }

        if (classify->parsed()) {
            report.command = "classify";
            report.parameters = json{{"max_size", max_size}, {"base_bound", base_bound}};
            auto rows = sgm::classify_semigroups(max_size, base_bound, g.jobs);
            report.payload = json{{"rows", sgm::classification_to_json(rows)}};
            report.outcome = "pass";
            human = std::to_string(rows.size()) + " rows";
            return emit(report, g, start, human);
        }
    } catch (const sgm::InputError& e) {
        report.outcome = "error";
        report.payload = json{{"message", e.what()}};
        return emit(report, g, start, e.what());
    } catch (const std::exception& e) {
        report.outcome = "error";
        report.payload = json{{"message", e.what()}};
        return emit(report, g, start, e.what());
    }

    return 2;
}
