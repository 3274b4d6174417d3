#include <critplane/criticality.hpp>
#include <critplane/discharge/certificates.hpp>
#include <critplane/error.hpp>
#include <critplane/search_harness.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

using nlohmann::json;

namespace critplane
{
    auto TaskSet::needs_embedding() const -> bool
    {
        return theorem1 || theorem2 || figure1_heredity;
    }

    auto TaskSet::empty() const -> bool
    {
        return ! classify && certify_critical.empty() && ! theorem1 && ! theorem2 && ! lemma_bounds && ! figure1_heredity;
    }

    auto parse_tasks(std::string_view text) -> TaskSet
    {
        TaskSet tasks;
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find(',', start);
            if (end == std::string_view::npos)
                end = text.size();
            auto item = text.substr(start, end - start);
            while (! item.empty() && item.front() == ' ')
                item.remove_prefix(1);
            while (! item.empty() && item.back() == ' ')
                item.remove_suffix(1);
            start = end + 1;
            if (item.empty())
                continue;

            if (item == "classify")
                tasks.classify = true;
            else if (item == "theorem1")
                tasks.theorem1 = true;
            else if (item == "theorem2")
                tasks.theorem2 = true;
            else if (item == "lemma-bounds")
                tasks.lemma_bounds = true;
            else if (item == "figure1-heredity")
                tasks.figure1_heredity = true;
            else if (item.starts_with("certify-critical(") && item.ends_with(")")) {
                auto digits = item.substr(17, item.size() - 18);
                if (digits.empty() || ! std::all_of(digits.begin(), digits.end(), [] (char c) { return c >= '0' && c <= '9'; }))
                    throw Error(ErrorKind::Usage, "bad k in '" + std::string(item) + "'");
                tasks.certify_critical.push_back(std::stoi(std::string(digits)));
            }
            else
                throw Error(ErrorKind::Usage, "unknown task '" + std::string(item)
                        + "' (classify, certify-critical(k), theorem1, theorem2, lemma-bounds, figure1-heredity)");
        }
        return tasks;
    }

    namespace
    {
        auto refused(const Error & e) -> std::string
        {
            return "refused:" + std::string(to_string(e.kind()));
        }

        void check_critical_plane_graph(const PlaneGraph & g, int k, GraphRecord & out, const std::string & which)
        {
            if (k == 5 && ! find_3face_with_small_neighbour(g))
                out.anomalies.push_back(which + " is a 5-critical plane graph with no 3-face adjacent to a 3- or 4-face");
            if (k == 6 && max_incident_3faces(g).second < 4)
                out.anomalies.push_back(which + " is a 6-critical plane graph with no vertex on four 3-faces");
        }

        void record_certificate(const CriticalityCertificate & cert, const std::optional<PlaneGraph> & plane,
                const ScanOptions & options, GraphRecord & out, const std::string & which)
        {
            if (auto problem = audit_certificate(cert) ; ! problem.empty())
                out.anomalies.push_back(which + " certificate fails audit: " + problem);
            if (plane)
                check_critical_plane_graph(*plane, cert.k, out, which);
            if (options.tasks.lemma_bounds) {
                try {
                    auto verdict = check_lemma_bounds(cert, cert.graph);
                    out.lemma_bounds[cert.k] = verdict.status == LemmaStatus::Holds ? "Holds" : "NotApplicable";
                }
                catch (const Error & e) {
                    out.lemma_bounds[cert.k] = "Violated";
                    out.anomalies.push_back(which + ": " + e.what());
                }
            }
        }

        void certify(const CorpusRecord & record, int k, const ScanOptions & options, GraphRecord & out)
        {
            auto & verdict = out.criticality[k];
            if (record.graph.max_degree() != k) {
                verdict = "wrong_delta";
                return;
            }
            try {
                auto result = is_critical(record.graph, k, options.budget);
                if (auto * cert = std::get_if<CriticalityCertificate>(&result)) {
                    verdict = "critical";
                    out.critical_details[k] = {{"vertices", cert->graph.vertex_count()}, {"edges", cert->graph.edge_count()},
                        {"refutation", to_string(cert->class2_refutation)}};
                    record_certificate(*cert, record.plane, options, out, "graph");
                    return;
                }
                const auto & refusal = std::get<CriticalityRefusal>(result);
                switch (refusal.reason) {
                    case RefusalReason::NotClass2:    verdict = "class1"; return;
                    case RefusalReason::Disconnected: verdict = "disconnected"; return;
                    case RefusalReason::WrongDelta:   verdict = "wrong_delta"; return;
                    case RefusalReason::NonCriticalEdge: break;
                }
                auto sub = record.plane ? extract_critical_subgraph(*record.plane, k, options.budget)
                                        : extract_critical_subgraph(record.graph, k, options.budget);
                verdict = "extracted";
                out.critical_details[k] = {{"vertices", sub.graph.vertex_count()}, {"edges", sub.graph.edge_count()},
                    {"deleted_edges", sub.deleted_edges}, {"original_ids", sub.original_ids},
                    {"refutation", to_string(sub.certificate.class2_refutation)}};
                record_certificate(sub.certificate, sub.embedding, options, out, "extracted subgraph");
            }
            catch (const Error & e) {
                if (e.kind() == ErrorKind::BudgetExceeded)
                    verdict = "budget_exceeded";
                else
                    throw;
            }
        }

        void theorem_task(int which, const PlaneGraph & g, GraphRecord & out)
        {
            auto & field = which == 1 ? out.theorem1 : out.theorem2;
            try {
                auto verdict = which == 1 ? theorem1_certificate(g) : theorem2_certificate(g);
                field = std::string(to_string(verdict.status));
                const int k = which == 1 ? 6 : 5;
                auto it = out.criticality.find(k);
                if (verdict.status != CertificateStatus::PremiseFails && it != out.criticality.end() && it->second == "critical")
                    out.anomalies.push_back("certified " + std::to_string(k) + "-critical graph satisfies the premise of theorem"
                            + std::to_string(which));
            }
            catch (const Error & e) {
                switch (e.kind()) {
                    case ErrorKind::Disconnected:
                    case ErrorKind::DegenerateGraph:
                        field = refused(e);
                        break;
                    default:
                        field = "failure:" + std::string(to_string(e.kind()));
                        out.anomalies.push_back(std::string("theorem") + std::to_string(which) + ": " + e.what());
                }
            }
        }

        auto heredity_witness(const PlaneGraph & g) -> std::optional<json>
        {
            for (VertexId u = 0 ; u < g.slot_count() ; ++u) {
                if (! g.has_vertex(u))
                    continue;
                auto without = delete_vertex(g, u);
                for (VertexId v = 0 ; v < g.slot_count() ; ++v) {
                    if (v == u || ! g.has_vertex(v))
                        continue;
                    int before = incident_3face_count(g, v);
                    int after = incident_3face_count(without, v);
                    if (after > before)
                        return json{{"deleted", u}, {"vertex", v}, {"before", before}, {"after", after}};
                }
            }
            return std::nullopt;
        }
    }

    auto analyse_graph(const CorpusRecord & record, const ScanOptions & options) -> GraphRecord
    {
        auto started = std::chrono::steady_clock::now();
        GraphRecord out;
        out.index = record.index;
        out.vertices = record.plane ? record.plane->vertex_count() : record.graph.vertex_count();
        out.edges = record.graph.edge_count();
        out.max_degree = record.graph.max_degree();

        try {
            if (options.tasks.classify) {
                try {
                    auto verdict = is_class_one(record.graph, options.budget);
                    out.class_verdict = verdict.class_one ? "class1" : "class2";
                    out.chromatic_index = verdict.chromatic_index;
                }
                catch (const Error & e) {
                    if (e.kind() != ErrorKind::BudgetExceeded)
                        throw;
                    out.class_verdict = "budget_exceeded";
                }
            }
            for (int k : options.tasks.certify_critical)
                certify(record, k, options, out);
            if (options.tasks.lemma_bounds)
                for (int k : options.tasks.certify_critical)
                    out.lemma_bounds.try_emplace(k, "NotApplicable");
            if (record.plane) {
                if (options.tasks.theorem1)
                    theorem_task(1, *record.plane, out);
                if (options.tasks.theorem2)
                    theorem_task(2, *record.plane, out);
                if (options.tasks.figure1_heredity) {
                    auto witness = heredity_witness(*record.plane);
                    out.heredity_witness = witness ? *witness : json(nullptr);
                }
            }
        }
        catch (const std::exception & e) {
            out.anomalies.push_back(std::string("unexpected failure: ") + e.what());
        }

        out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        return out;
    }

    auto scan(const std::vector<CorpusRecord> & corpus, const ScanOptions & options) -> ScanReport
    {
        if (options.tasks.needs_embedding())
            for (const auto & r : corpus)
                if (! r.embedded())
                    throw Error(ErrorKind::Usage, "record " + std::to_string(r.index)
                            + " has no embedding; theorem1, theorem2 and figure1-heredity need planar_code or JSON rotations");

        ScanReport report;
        report.records.resize(corpus.size());

        unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
        threads = std::min<unsigned>(threads, std::max<std::size_t>(corpus.size(), 1));
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++ ; i < corpus.size() ; i = next++)
                report.records[i] = analyse_graph(corpus[i], options);
        };
        if (threads <= 1)
            worker();
        else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0 ; t < threads ; ++t)
                pool.emplace_back(worker);
        }

        auto & s = report.summary;
        s["graphs"] = corpus.size();
        for (const auto & r : report.records) {
            if (! r.class_verdict.empty())
                ++s[r.class_verdict];
            for (const auto & [k, verdict] : r.criticality)
                ++s["critical(" + std::to_string(k) + "):" + verdict];
            if (! r.theorem1.empty())
                ++s["theorem1:" + r.theorem1];
            if (! r.theorem2.empty())
                ++s["theorem2:" + r.theorem2];
            for (const auto & [k, verdict] : r.lemma_bounds)
                ++s["lemma(" + std::to_string(k) + "):" + verdict];
            if (r.heredity_witness && ! r.heredity_witness->is_null())
                ++s["heredity_witnesses"];
            for (const auto & a : r.anomalies)
                report.anomalies.push_back("graph " + std::to_string(r.index) + ": " + a);
        }
        s["anomalies"] = report.anomalies.size();
        return report;
    }

    auto scan(CorpusStream & corpus, const ScanOptions & options) -> ScanReport
    {
        return scan(corpus.read_all(), options);
    }

    auto record_to_json(const GraphRecord & r, bool include_timing) -> json
    {
        json out{{"id", r.index}, {"n", r.vertices}, {"edges", r.edges}, {"max_degree", r.max_degree}};
        if (! r.class_verdict.empty()) {
            out["class"] = r.class_verdict;
            if (r.chromatic_index >= 0)
                out["chromatic_index"] = r.chromatic_index;
        }
        if (! r.criticality.empty()) {
            json crit = json::object();
            for (const auto & [k, verdict] : r.criticality) {
                json entry{{"verdict", verdict}};
                if (auto it = r.critical_details.find(k) ; it != r.critical_details.end())
                    entry["detail"] = it->second;
                crit[std::to_string(k)] = entry;
            }
            out["criticality"] = crit;
        }
        if (! r.theorem1.empty())
            out["theorem1"] = r.theorem1;
        if (! r.theorem2.empty())
            out["theorem2"] = r.theorem2;
        if (! r.lemma_bounds.empty()) {
            json lemma = json::object();
            for (const auto & [k, verdict] : r.lemma_bounds)
                lemma[std::to_string(k)] = verdict;
            out["lemma_bounds"] = lemma;
        }
        if (r.heredity_witness)
            out["heredity_witness"] = *r.heredity_witness;
        if (! r.anomalies.empty())
            out["anomalies"] = r.anomalies;
        if (include_timing)
            out["millis"] = r.millis;
        return out;
    }

    auto report_to_json(const ScanReport & report, bool include_timing) -> json
    {
        json records = json::array();
        for (const auto & r : report.records)
            records.push_back(record_to_json(r, include_timing));
        return json{{"summary", report.summary}, {"anomalies", report.anomalies}, {"records", records}};
    }

    auto report_to_text(const ScanReport & report) -> std::string
    {
        std::ostringstream out;
        std::size_t width = 0;
        for (const auto & [key, _] : report.summary)
            width = std::max(width, key.size());
        for (const auto & [key, value] : report.summary)
            out << key << std::string(width - key.size() + 2, ' ') << value << "\n";
        for (const auto & a : report.anomalies)
            out << "ANOMALY " << a << "\n";
        return out.str();
    }
}
