// ctxkit command-line front end: scenario construction and export, model
// analysis, and the built-in verification suites.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ctxkit/catalog.hpp"
#include "ctxkit/errors.hpp"
#include "ctxkit/exclusivity.hpp"
#include "ctxkit/graphs.hpp"
#include "ctxkit/json_io.hpp"
#include "ctxkit/logic.hpp"
#include "ctxkit/protocols.hpp"
#include "ctxkit/stabilizer.hpp"

using namespace ctxkit;

namespace {

constexpr int kExitVerificationFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitCapExceeded = 3;

struct StabilizerArgs {
    int qudits = 0;
    int d = 0;
};

StabilizerArgs parse_stabilizer_args(const std::vector<std::string>& tokens) {
    StabilizerArgs spec;
    for (const auto& t : tokens) {
        if (t.rfind("n=", 0) == 0)
            spec.qudits = std::stoi(t.substr(2));
        else if (t.rfind("d=", 0) == 0)
            spec.d = std::stoi(t.substr(2));
        else
            throw input_error("bad --stabilizer token '" + t + "' (expected n=<int> d=<int>)");
    }
    if (spec.qudits < 1 || spec.d < 2)
        throw input_error("--stabilizer needs n=<qudits> and d=<arity>");
    return spec;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw input_error("bad JSON in '" + path + "': " + e.what());
    }
    return j;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n')
            std::cout << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw input_error("cannot write '" + out_path + "'");
    out << text;
}

long default_hv_cap() {
    if (const char* env = std::getenv("CTXKIT_CAP_HV")) {
        try {
            return std::stol(env);
        } catch (const std::exception&) {
            throw input_error("CTXKIT_CAP_HV is not an integer");
        }
    }
    return 1L << 20;
}

StateVector load_state(const std::string& state_file, const std::string& state_name) {
    if (!state_file.empty()) {
        std::ifstream in(state_file);
        if (!in)
            throw input_error("cannot open '" + state_file + "'");
        return parse_amplitude_file(in);
    }
    return catalog_state(state_name);
}

// --- scenario subcommand ------------------------------------------------------

struct ScenarioSource {
    bool bell = false;
    std::vector<std::string> stabilizer_tokens;
    std::string in_file;

    MeasurementScenario resolve() const {
        const int given = (bell ? 1 : 0) + (stabilizer_tokens.empty() ? 0 : 1) +
                          (in_file.empty() ? 0 : 1);
        if (given != 1)
            throw input_error("choose exactly one scenario source: --bell, --stabilizer or --in");
        if (bell)
            return bell_scenario();
        if (!stabilizer_tokens.empty()) {
            const auto spec = parse_stabilizer_args(stabilizer_tokens);
            return stabilizer_scenario(spec.qudits, spec.d).scenario;
        }
        return scenario_from_json(read_json_file(in_file));
    }
};

int cmd_scenario_build(const ScenarioSource& source, const std::string& out_path) {
    const auto s = source.resolve();
    write_output(out_path, scenario_to_json(s).dump(2) + "\n");
    return 0;
}

int cmd_scenario_export(const ScenarioSource& source, const std::string& out_path,
                        const std::string& map_path) {
    const auto s = source.resolve();
    const auto g = exclusivity_graph(s);
    std::ostringstream graph_out, map_out;
    write_dimacs_with_map(g, s, graph_out, map_out);
    write_output(out_path, graph_out.str());
    if (!map_path.empty())
        write_output(map_path, map_out.str());
    return 0;
}

// --- analyze subcommand -------------------------------------------------------

struct AnalyzeArgs {
    std::string catalog;
    std::string model_file;
    std::vector<std::string> stabilizer_tokens;
    std::string state_file;
    std::string state_name;
    bool mixed_state = false;
    std::string dimacs_file;
    std::string csw;
    std::vector<std::string> checks{"nonsignalling", "thm3", "thm2", "lp"};
    int cap_vertices = 2000;
    long cap_hv = 0;  // 0 = default/env
    int threads = 0;
    std::string out_path;
};

int cmd_analyze_dimacs(const AnalyzeArgs& args) {
    std::ifstream in(args.dimacs_file);
    if (!in)
        throw input_error("cannot open '" + args.dimacs_file + "'");
    const BitGraph g = BitGraph::read_dimacs(in);
    MisOptions opt;
    opt.vertex_cap = args.cap_vertices;
    const auto alpha = independence_number(g, opt);

    Json j;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["independence_number"] = format_rational(alpha.value);
    Json witness = Json::array();
    for (int v : alpha.witness)
        witness.push_back(v + 1);  // DIMACS vertices are 1-indexed
    j["witness"] = std::move(witness);
    const bool want_scan =
        std::find(args.checks.begin(), args.checks.end(), "thm2") != args.checks.end();
    if (want_scan && g.vertex_count() > 0) {
        const auto min = minimal_independence_number(g, args.threads, opt);
        j["minimal_independence"] = min.value;
        j["minimal_independence_vertex"] = min.witness_vertex + 1;
    }
    write_output(args.out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_analyze(const AnalyzeArgs& args) {
    for (const auto& check : args.checks) {
        if (check != "nonsignalling" && check != "thm3" && check != "thm2" && check != "lp" &&
            check != "protocols" && check != "csw")
            throw input_error("unknown check '" + check + "'");
    }
    if (args.cap_vertices <= 0 || args.cap_hv < 0 || args.threads < 0)
        throw input_error("caps and thread counts must be positive");
    if (!args.dimacs_file.empty())
        return cmd_analyze_dimacs(args);

    const int sources = (args.catalog.empty() ? 0 : 1) + (args.model_file.empty() ? 0 : 1) +
                        (args.stabilizer_tokens.empty() ? 0 : 1);
    if (sources != 1)
        throw input_error("choose exactly one input: --catalog, --model or --stabilizer");

    std::optional<EmpiricalModel> model;
    Json input_desc;
    if (!args.catalog.empty()) {
        input_desc["catalog"] = args.catalog;
        if (is_catalog_model(args.catalog)) {
            model = catalog_model(args.catalog);
        } else if (is_catalog_state(args.catalog)) {
            // A bare state names a stabilizer-scenario model; for amplitude
            // files the scenario shape follows from the header (d from the
            // conductor, n from the dimension).
            const StateVector psi = catalog_state(args.catalog);
            const int d = psi.conductor == 4 ? 2 : psi.conductor;
            int qudits = 0;
            long dim = 1;
            while (dim < static_cast<long>(psi.amplitudes.size())) {
                dim *= d;
                ++qudits;
            }
            if (dim != static_cast<long>(psi.amplitudes.size()) || qudits < 1)
                throw input_error("state dimension " + std::to_string(psi.amplitudes.size()) +
                                  " is not a power of the arity " + std::to_string(d));
            const auto ss = stabilizer_scenario(qudits, d);
            model = quantum_empirical_model(ss, psi);
        } else {
            throw input_error("unknown catalog name '" + args.catalog + "'");
        }
    } else if (!args.model_file.empty()) {
        input_desc["model_file"] = args.model_file;
        model = model_from_json(read_json_file(args.model_file));
    } else {
        const auto spec = parse_stabilizer_args(args.stabilizer_tokens);
        input_desc["stabilizer"] = {{"n", spec.qudits}, {"d", spec.d}};
        const auto ss = stabilizer_scenario(spec.qudits, spec.d);
        const int state_sources = (args.state_file.empty() ? 0 : 1) +
                                  (args.state_name.empty() ? 0 : 1) + (args.mixed_state ? 1 : 0);
        if (state_sources != 1)
            throw input_error(
                "stabilizer input needs exactly one of --state, --state-name or --mixed");
        if (args.mixed_state) {
            input_desc["state"] = "maximally_mixed";
            model = quantum_empirical_model(ss, maximally_mixed_state(spec.qudits, spec.d));
        } else {
            input_desc["state"] = args.state_file.empty() ? args.state_name : args.state_file;
            model = quantum_empirical_model(ss, load_state(args.state_file, args.state_name));
        }
    }

    const auto& s = model->scenario();
    Json out;
    out["input"] = std::move(input_desc);
    out["scenario"] = {{"measurements", s.measurement_count()},
                       {"contexts", s.context_count()},
                       {"outcome_arity", s.outcome_arity()},
                       {"formal_events", s.total_event_count()}};

    auto requested = [&](const char* name) {
        return std::find(args.checks.begin(), args.checks.end(), name) != args.checks.end();
    };

    const bool only_nonsignalling =
        args.checks.size() == 1 && args.checks.front() == "nonsignalling";
    if (only_nonsignalling) {
        const auto ns = is_nonsignalling(*model);
        out["nonsignalling"] = ns.holds;
        if (!ns.holds)
            out["violating_contexts"] = {ns.violating_pair->first, ns.violating_pair->second};
        write_output(args.out_path, out.dump(2) + "\n");
        return 0;
    }

    ClassificationOptions opt;
    opt.vertex_cap = args.cap_vertices;
    opt.hidden_variable_cap = args.cap_hv > 0 ? args.cap_hv : default_hv_cap();
    opt.threads = args.threads;
    opt.run_lps = requested("lp");
    opt.full_minimal_independence = requested("thm2");

    const auto report = classify(*model, opt);
    Json rj = report_to_json(report, s);
    for (auto& [key, value] : rj.items())
        out[key] = value;

    if (!args.csw.empty()) {
        std::vector<EventWeight> weights;
        if (args.csw == "chsh") {
            if (!(s == bell_scenario()))
                throw input_error("--csw chsh applies to the Bell scenario only");
            weights = chsh_weights();
        } else {
            weights = weights_from_json(read_json_file(args.csw), s);
        }
        const auto eval = evaluate_csw(*model, weights, args.cap_vertices);
        out["csw"] = {{"value", format_rational(eval.value)},
                      {"classical_bound", format_rational(eval.classical_bound)},
                      {"violated", eval.violated}};
    }

    if (requested("protocols")) {
        const auto t4 = verify_theorem4(s);
        out["theorem4"] = {{"isomorphic", t4.isomorphic},
                           {"protocols", t4.protocol_count},
                           {"hyperedges", t4.hyperedge_count}};
    }

    write_output(args.out_path, out.dump(2) + "\n");
    return 0;
}

// --- verify subcommand --------------------------------------------------------

int cmd_verify_appendix_b(int qubits, const std::string& out_path) {
    const auto report = mermin_square_check(qubits);
    Json j;
    j["check"] = "appendixB";
    j["qubits"] = qubits;
    j["lines_commute"] = report.lines_commute;
    j["row_signs"] = report.row_signs;
    j["column_signs"] = report.column_signs;
    j["one_minus_sign"] = report.one_minus_sign;
    j["valuation_exists"] = report.valuation_exists;
    j["valuations_tried"] = report.valuations_tried;
    j["pass"] = report.passed();
    write_output(out_path, j.dump(2) + "\n");
    return report.passed() ? 0 : kExitVerificationFailed;
}

int cmd_verify_appendix_c(const ScenarioSource& source, int random_count, long cap,
                          const std::string& out_path) {
    Json j;
    j["check"] = "appendixC";
    bool all_pass = true;
    if (source.bell || !source.stabilizer_tokens.empty() || !source.in_file.empty()) {
        const auto s = source.resolve();
        const auto report = verify_theorem4(s, cap);
        j["scenario"] = {{"isomorphic", report.isomorphic},
                         {"protocols", report.protocol_count},
                         {"hyperedges", report.hyperedge_count}};
        all_pass = all_pass && report.isomorphic;
    }
    if (random_count > 0) {
        std::mt19937 rng(2026);
        int passed = 0;
        for (int i = 0; i < random_count; ++i) {
            const auto s = sample_scenario(rng, 3, 3, 2);
            if (verify_theorem4(s, cap).isomorphic)
                ++passed;
            else
                all_pass = false;
        }
        j["random_scenarios"] = {{"total", random_count}, {"passed", passed}};
    }
    j["pass"] = all_pass;
    write_output(out_path, j.dump(2) + "\n");
    return all_pass ? 0 : kExitVerificationFailed;
}

int cmd_verify_lemma1(int random_count, const std::string& out_path) {
    std::mt19937 rng(4096);
    int passed = 0;
    for (int i = 0; i < random_count; ++i) {
        // random scenario and assignment; round-trip both directions
        const auto s = sample_scenario(rng, 5, 4, 2 + i % 2);
        const auto lambda = sample_hidden_variable(rng, s);
        const auto events = independent_set_from_hidden_variable(s, lambda);
        if (hidden_variable_from_independent_set(s, events) == lambda &&
            static_cast<int>(events.size()) == s.context_count())
            ++passed;
    }
    Json j;
    j["check"] = "lemma1";
    j["total"] = random_count;
    j["passed"] = passed;
    j["pass"] = passed == random_count;
    write_output(out_path, j.dump(2) + "\n");
    return passed == random_count ? 0 : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contextuality toolkit: exclusivity graphs, graph invariants and the "
                 "contextuality hierarchy over exact rationals"};
    app.require_subcommand(1);

    // scenario
    auto* scenario_cmd = app.add_subcommand("scenario", "build or export measurement scenarios");
    scenario_cmd->require_subcommand(1);
    ScenarioSource sc_source;
    std::string sc_out, sc_map;
    auto add_source_flags = [&](CLI::App* cmd) {
        cmd->add_flag("--bell", sc_source.bell, "the standard Bell scenario");
        cmd->add_option("--stabilizer", sc_source.stabilizer_tokens,
                        "stabilizer scenario, e.g. --stabilizer n=2 d=3")
            ->expected(2);
        cmd->add_option("--in", sc_source.in_file, "scenario JSON file");
        cmd->add_option("--out", sc_out, "output file (default stdout)");
    };
    auto* build_cmd = scenario_cmd->add_subcommand("build", "emit scenario JSON");
    add_source_flags(build_cmd);
    auto* export_cmd =
        scenario_cmd->add_subcommand("export-graph", "emit the exclusivity graph as DIMACS");
    add_source_flags(export_cmd);
    export_cmd->add_option("--map", sc_map, "vertex map sidecar JSON file");

    // analyze
    AnalyzeArgs an;
    auto* analyze_cmd = app.add_subcommand("analyze", "classify an empirical model");
    analyze_cmd->add_option("--catalog", an.catalog,
                            "catalog input: bell_table, pr_box, hardy, ghz, cs_state or file:<amplitudes>");
    analyze_cmd->add_option("--model", an.model_file, "model JSON file");
    analyze_cmd->add_option("--stabilizer", an.stabilizer_tokens,
                            "stabilizer scenario, e.g. --stabilizer n=2 d=2")
        ->expected(2);
    analyze_cmd->add_option("--state", an.state_file, "state amplitude file");
    analyze_cmd->add_option("--state-name", an.state_name, "catalog state name");
    analyze_cmd->add_flag("--mixed", an.mixed_state, "use the maximally mixed state");
    analyze_cmd->add_option("--dimacs", an.dimacs_file,
                            "standalone mode: solve a DIMACS graph instead of a model");
    analyze_cmd->add_option("--csw", an.csw, "CSW weighting: 'chsh' or a weights JSON file");
    analyze_cmd->add_option("--checks", an.checks,
                            "checks to run: nonsignalling thm3 thm2 lp protocols");
    analyze_cmd->add_option("--cap-vertices", an.cap_vertices, "MIS solver vertex cap");
    analyze_cmd->add_option("--cap-hv", an.cap_hv, "hidden-variable LP cap (d^|M|)");
    analyze_cmd->add_option("--threads", an.threads, "worker threads (0 = all cores)");
    analyze_cmd->add_option("--out", an.out_path, "report file (default stdout)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a built-in verification suite");
    verify_cmd->require_subcommand(1);
    int vb_qubits = 2;
    std::string v_out;
    auto* vb = verify_cmd->add_subcommand("appendixB", "Peres-Mermin square check");
    vb->add_option("--n", vb_qubits, "number of qubits (>= 2)");
    vb->add_option("--out", v_out, "report file (default stdout)");
    ScenarioSource vc_source;
    int vc_random = 0;
    long vc_cap = 1000000;
    auto* vc = verify_cmd->add_subcommand("appendixC",
                                          "exclusivity graph vs protocol hypergraph");
    vc->add_flag("--bell", vc_source.bell, "check the Bell scenario");
    vc->add_option("--scenario", vc_source.in_file, "scenario JSON file");
    vc->add_option("--random", vc_random, "also check this many random small scenarios");
    vc->add_option("--cap", vc_cap, "protocol count cap");
    vc->add_option("--out", v_out, "report file (default stdout)");
    int vl_random = 100;
    auto* vl = verify_cmd->add_subcommand("lemma1", "hidden-variable/independent-set round trip");
    vl->add_option("--random", vl_random, "number of random scenarios");
    vl->add_option("--out", v_out, "report file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build_cmd->parsed())
            return cmd_scenario_build(sc_source, sc_out);
        if (export_cmd->parsed())
            return cmd_scenario_export(sc_source, sc_out, sc_map);
        if (analyze_cmd->parsed())
            return cmd_analyze(an);
        if (vb->parsed())
            return cmd_verify_appendix_b(vb_qubits, v_out);
        if (vc->parsed())
            return cmd_verify_appendix_c(vc_source, vc_random, vc_cap, v_out);
        if (vl->parsed())
            return cmd_verify_lemma1(vl_random, v_out);
    } catch (const cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return 0;
}
