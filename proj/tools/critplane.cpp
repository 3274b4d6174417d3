// critplane: command-line front end.
//
// Exit codes: 0 success, 1 anomaly / violated check / exhausted budget,
// 2 usage or input parse error.

#include <critplane/criticality.hpp>
#include <critplane/discharge/certificates.hpp>
#include <critplane/discharge/dsl.hpp>
#include <critplane/discharge/engine.hpp>
#include <critplane/edge_coloring.hpp>
#include <critplane/error.hpp>
#include <critplane/io_formats.hpp>
#include <critplane/plane_graph.hpp>
#include <critplane/search_harness.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace critplane;
using nlohmann::json;

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_anomaly = 1;
    constexpr int exit_usage = 2;

    constexpr const char * grammar =
        "usage: critplane <subcommand> [options]\n"
        "  faces           --in PATH [--format F]\n"
        "  color           --in PATH [--format F]\n"
        "  chromatic-index --in PATH [--format F] [--budget N]\n"
        "  critical        --in PATH --k K [--extract] [--budget N]\n"
        "  discharge       --in PATH --rules FILE.dsl\n"
        "  certify         --in PATH --theorem 1|2 [--ledger]\n"
        "  scan            --in PATH --tasks LIST [--threads N] [--budget N]\n"
        "common: --format graph6|planar_code|json (sniffed when omitted), --output json|text,\n"
        "        --in - reads stdin; CRITPLANE_BUDGET sets the default search budget.\n"
        "tasks: classify, certify-critical(k), theorem1, theorem2, lemma-bounds, figure1-heredity\n";

    struct Options
    {
        std::string in;
        std::string format;
        std::string output;
        std::uint64_t budget = default_search_budget;
        int k = 0;
        bool extract = false;
        std::string rules;
        int theorem = 0;
        bool ledger = false;
        std::string tasks;
        unsigned threads = 0;
    };

    auto budget_from_env() -> std::uint64_t
    {
        if (const char * env = std::getenv("CRITPLANE_BUDGET")) {
            try {
                return std::stoull(env);
            }
            catch (const std::exception &) {
                throw Error(ErrorKind::Usage, "CRITPLANE_BUDGET is not a number");
            }
        }
        return default_search_budget;
    }

    auto open_corpus(const Options & opt, bool needs_embedding) -> std::vector<CorpusRecord>
    {
        std::optional<CorpusFormat> format;
        if (! opt.format.empty())
            format = parse_format_name(opt.format);
        auto stream = CorpusStream::open(opt.in, format);
        if (needs_embedding && stream.format() == CorpusFormat::Graph6)
            throw Error(ErrorKind::Usage, "graph6 carries no embedding; this subcommand needs planar_code or JSON rotations");
        auto records = stream.read_all();
        if (needs_embedding)
            for (const auto & r : records)
                if (! r.embedded())
                    throw Error(ErrorKind::Usage, "record " + std::to_string(r.index) + " has no embedding");
        return records;
    }

    auto want_text(const Options & opt, bool text_by_default) -> bool
    {
        if (opt.output.empty())
            return text_by_default;
        if (opt.output != "json" && opt.output != "text")
            throw Error(ErrorKind::Usage, "--output must be json or text");
        return opt.output == "text";
    }

    void emit(const json & value)
    {
        std::cout << value.dump() << "\n";
    }

    auto graph_json(const CorpusRecord & r) -> json
    {
        return r.plane ? rotations_to_json(*r.plane) : edges_to_json(r.graph);
    }

    auto run_faces(const Options & opt) -> int
    {
        bool text = want_text(opt, false);
        for (const auto & r : open_corpus(opt, true)) {
            const auto & g = *r.plane;
            json faces = json::array();
            for (const auto & f : g.faces()) {
                json walk = json::array();
                for (const auto & d : f.walk)
                    walk.push_back(d.tail);
                faces.push_back({{"id", f.id}, {"degree", f.degree()}, {"walk", walk},
                                 {"adjacent_degrees", adjacent_face_degrees(g, f)}});
            }
            json counts = json::array();
            for (VertexId v = 0 ; v < g.slot_count() ; ++v)
                if (g.has_vertex(v))
                    counts.push_back(incident_3face_count(g, v));
            json out{{"graph", rotations_to_json(g)}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()},
                     {"faces", faces}, {"incident_3faces", counts}, {"face_excess_sum", face_excess_sum(g)}};
            if (g.is_connected())
                out["euler_characteristic"] = euler_characteristic(g);
            else
                out["euler_characteristic"] = nullptr;

            if (! text) {
                emit(out);
                continue;
            }
            std::cout << "graph " << r.index << ": V=" << g.vertex_count() << " E=" << g.edge_count()
                      << " F=" << g.face_count() << " euler=" << out["euler_characteristic"].dump() << "\n";
            for (const auto & f : g.faces()) {
                std::cout << "  face " << f.id << " degree " << f.degree() << ":";
                for (const auto & d : f.walk)
                    std::cout << " " << d.tail;
                std::cout << "\n";
            }
        }
        return exit_ok;
    }

    auto run_color(const Options & opt) -> int
    {
        bool text = want_text(opt, false);
        for (const auto & r : open_corpus(opt, false)) {
            auto coloring = vizing_color(r.graph);
            if (text) {
                std::cout << "graph " << r.index << ": " << coloring.k << " colours (max degree "
                          << r.graph.max_degree() << ")\n";
                continue;
            }
            json colored = json::array();
            for (int e = 0 ; e < r.graph.edge_count() ; ++e)
                colored.push_back({r.graph.edge(e).u, r.graph.edge(e).v, coloring.colors[e]});
            emit({{"graph", graph_json(r)}, {"max_degree", r.graph.max_degree()}, {"colors_used", coloring.k},
                  {"proper", is_proper(r.graph, coloring)}, {"coloring", colored}});
        }
        return exit_ok;
    }

    auto run_chromatic_index(const Options & opt) -> int
    {
        bool text = want_text(opt, true);
        for (const auto & r : open_corpus(opt, false)) {
            auto index = chromatic_index_exact(r.graph, opt.budget);
            if (text) {
                std::cout << index.value << "\n";
                continue;
            }
            emit({{"graph", graph_json(r)}, {"chromatic_index", index.value}, {"max_degree", index.max_degree},
                  {"class", index.value == index.max_degree ? 1 : 2}, {"witness", index.witness.colors},
                  {"lower_bound", to_string(index.lower_bound)}, {"search_nodes", index.nodes}});
        }
        return exit_ok;
    }

    auto run_critical(const Options & opt) -> int
    {
        bool text = want_text(opt, false);
        int status = exit_ok;
        for (const auto & r : open_corpus(opt, false)) {
            json out{{"k", opt.k}};
            std::optional<CriticalityCertificate> cert;
            const SimpleGraph * certified = &r.graph;
            std::optional<CriticalSubgraph> sub;

            if (opt.extract) {
                sub = r.plane ? extract_critical_subgraph(*r.plane, opt.k, opt.budget)
                              : extract_critical_subgraph(r.graph, opt.k, opt.budget);
                cert = sub->certificate;
                certified = &sub->graph;
                out["verdict"] = "critical";
                out["deleted_edges"] = sub->deleted_edges;
                out["original_ids"] = sub->original_ids;
                out["graph"] = sub->embedding ? rotations_to_json(*sub->embedding) : edges_to_json(sub->graph);
            }
            else {
                auto result = is_critical(r.graph, opt.k, opt.budget);
                if (auto * refusal = std::get_if<CriticalityRefusal>(&result)) {
                    out["verdict"] = to_string(refusal->reason);
                    out["detail"] = refusal->detail;
                    if (refusal->edge)
                        out["edge"] = {refusal->edge->u, refusal->edge->v};
                    if (refusal->witness)
                        out["witness"] = refusal->witness->colors;
                }
                else {
                    cert = std::get<CriticalityCertificate>(std::move(result));
                    out["verdict"] = "critical";
                }
                out["graph"] = graph_json(r);
            }

            if (cert) {
                if (auto problem = audit_certificate(*cert) ; ! problem.empty()) {
                    out["audit"] = problem;
                    status = exit_anomaly;
                }
                out["certificate"] = certificate_to_json(*cert);
                try {
                    out["lemma_bounds"] = lemma_verdict_to_json(check_lemma_bounds(*cert, *certified));
                }
                catch (const Error & e) {
                    out["lemma_bounds"] = {{"status", "Violated"}, {"detail", e.what()}};
                    status = exit_anomaly;
                }
            }

            if (text)
                std::cout << "graph " << r.index << ": " << out["verdict"].get<std::string>() << "\n";
            else
                emit(out);
        }
        return status;
    }

    auto read_file(const std::string & path) -> std::string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw Error(ErrorKind::Usage, "cannot open '" + path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    auto run_discharge_command(const Options & opt) -> int
    {
        bool text = want_text(opt, true);
        auto rules = parse_ruleset(read_file(opt.rules));
        int status = exit_ok;
        for (const auto & r : open_corpus(opt, true)) {
            auto ledger = run_discharge(*r.plane, rules);
            if (ledger.total_initial() != ledger.total_final())
                status = exit_anomaly;
            if (text)
                std::cout << ledger_to_table(ledger, *r.plane);
            else
                emit(ledger_to_json(ledger, *r.plane));
        }
        return status;
    }

    auto run_certify(const Options & opt) -> int
    {
        bool text = want_text(opt, false);
        int status = exit_ok;
        for (const auto & r : open_corpus(opt, true)) {
            json out;
            try {
                auto verdict = opt.theorem == 1 ? theorem1_certificate(*r.plane) : theorem2_certificate(*r.plane);
                out = verdict_to_json(verdict, opt.ledger, *r.plane);
            }
            catch (const Error & e) {
                switch (e.kind()) {
                    case ErrorKind::NonNegativityFailure:
                    case ErrorKind::DerivedFactFailure:
                    case ErrorKind::Internal:
                        status = exit_anomaly;
                        [[fallthrough]];
                    case ErrorKind::Disconnected:
                    case ErrorKind::DegenerateGraph:
                        out = {{"theorem", opt.theorem}, {"verdict", to_string(e.kind())}, {"detail", e.what()}};
                        break;
                    default:
                        throw;
                }
            }
            if (text) {
                std::cout << "graph " << r.index << ": " << out["verdict"].get<std::string>();
                if (out.contains("total"))
                    std::cout << " (total " << out["total"].get<std::string>() << ")";
                std::cout << "\n";
            }
            else
                emit(out);
        }
        return status;
    }

    auto run_scan(const Options & opt) -> int
    {
        ScanOptions options;
        options.tasks = parse_tasks(opt.tasks);
        if (options.tasks.empty())
            throw Error(ErrorKind::Usage, "--tasks lists no task");
        options.budget = opt.budget;
        options.threads = opt.threads;
        auto records = open_corpus(opt, options.tasks.needs_embedding());
        auto report = scan(records, options);
        if (want_text(opt, false))
            std::cout << report_to_text(report);
        else
            std::cout << report_to_json(report).dump(2) << "\n";
        return report.healthy() ? exit_ok : exit_anomaly;
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{"Edge-colouring and discharging toolkit for plane graphs", "critplane"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Options opt;
    try {
        opt.budget = budget_from_env();
    }
    catch (const Error & e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    }

    auto add_common = [&] (CLI::App * sub) {
        sub->add_option("--in", opt.in, "input path, - for stdin")->required();
        sub->add_option("--format", opt.format, "graph6 | planar_code | json");
        sub->add_option("--output", opt.output, "json | text");
    };

    auto * faces = app.add_subcommand("faces", "faces, degrees and 3-face incidences of plane graphs");
    add_common(faces);
    auto * color = app.add_subcommand("color", "constructive colouring with at most max degree + 1 colours");
    add_common(color);
    auto * chromatic = app.add_subcommand("chromatic-index", "exact chromatic index");
    add_common(chromatic);
    chromatic->add_option("--budget", opt.budget, "search node limit");
    auto * critical = app.add_subcommand("critical", "certify k-criticality or extract a k-critical subgraph");
    add_common(critical);
    critical->add_option("--k", opt.k, "maximum degree")->required();
    critical->add_flag("--extract", opt.extract, "extract a critical subgraph first");
    critical->add_option("--budget", opt.budget, "search node limit");
    auto * discharge = app.add_subcommand("discharge", "run a discharging rule set");
    add_common(discharge);
    discharge->add_option("--rules", opt.rules, "rule set file")->required();
    auto * certify = app.add_subcommand("certify", "run a theorem certificate");
    add_common(certify);
    certify->add_option("--theorem", opt.theorem, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
    certify->add_flag("--ledger", opt.ledger, "include the charge ledger");
    auto * scan_cmd = app.add_subcommand("scan", "scan a corpus");
    add_common(scan_cmd);
    scan_cmd->add_option("--tasks", opt.tasks, "comma-separated task list")->required();
    scan_cmd->add_option("--threads", opt.threads, "worker threads (0: all cores)");
    scan_cmd->add_option("--budget", opt.budget, "search node limit per search");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        std::cerr << e.what() << "\n" << grammar;
        return exit_usage;
    }

    try {
        if (*faces) return run_faces(opt);
        if (*color) return run_color(opt);
        if (*chromatic) return run_chromatic_index(opt);
        if (*critical) return run_critical(opt);
        if (*discharge) return run_discharge_command(opt);
        if (*certify) return run_certify(opt);
        if (*scan_cmd) return run_scan(opt);
    }
    catch (const Error & e) {
        std::cerr << "critplane: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::Usage:
                std::cerr << grammar;
                return exit_usage;
            case ErrorKind::BudgetExceeded:
            case ErrorKind::BoundViolated:
            case ErrorKind::NonNegativityFailure:
            case ErrorKind::DerivedFactFailure:
            case ErrorKind::Internal:
                return exit_anomaly;
            default:
                return exit_usage;
        }
    }
    return exit_usage;
}
