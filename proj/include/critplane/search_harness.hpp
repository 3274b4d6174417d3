#pragma once

#include <critplane/edge_coloring.hpp>
#include <critplane/io_formats.hpp>

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace critplane
{
    struct TaskSet
    {
        bool classify = false;
        std::vector<int> certify_critical;      // k values
        bool theorem1 = false;
        bool theorem2 = false;
        bool lemma_bounds = false;
        bool figure1_heredity = false;

        auto needs_embedding() const -> bool;
        auto empty() const -> bool;
    };

    /// Comma-separated: classify, certify-critical(k), theorem1, theorem2,
    /// lemma-bounds, figure1-heredity. Throws Usage.
    auto parse_tasks(std::string_view text) -> TaskSet;

    struct ScanOptions
    {
        TaskSet tasks;
        std::uint64_t budget = default_search_budget;     // per graph, per search
        unsigned threads = 0;                             // 0: hardware concurrency
    };

    /// Outcome for one corpus graph. String fields are empty when the task did
    /// not run.
    struct GraphRecord
    {
        std::uint64_t index = 0;
        int vertices = 0;
        int edges = 0;
        int max_degree = 0;
        std::string class_verdict;          // class1 | class2 | budget_exceeded
        int chromatic_index = -1;
        std::map<int, std::string> criticality;   // k -> critical | extracted | class1 | wrong_delta | ...
        std::map<int, nlohmann::json> critical_details;
        std::string theorem1;               // NotSixCritical | PremiseFails | refused:<kind>
        std::string theorem2;
        std::map<int, std::string> lemma_bounds;
        std::optional<nlohmann::json> heredity_witness;
        std::vector<std::string> anomalies;
        double millis = 0;
    };

    struct ScanReport
    {
        std::vector<GraphRecord> records;
        std::map<std::string, std::uint64_t> summary;
        std::vector<std::string> anomalies;     // "graph <index>: <what>"

        auto healthy() const -> bool { return anomalies.empty(); }
    };

    /// Analyses one graph. Never throws for per-graph failures; budget
    /// exhaustion downgrades the affected field.
    auto analyse_graph(const CorpusRecord & record, const ScanOptions & options) -> GraphRecord;

    /// Runs analyse_graph over the corpus on a worker pool; records come back
    /// in corpus order. Throws Usage if face-dependent tasks meet a record
    /// without an embedding.
    auto scan(const std::vector<CorpusRecord> & corpus, const ScanOptions & options) -> ScanReport;
    auto scan(CorpusStream & corpus, const ScanOptions & options) -> ScanReport;

    auto record_to_json(const GraphRecord & record, bool include_timing = true) -> nlohmann::json;
    auto report_to_json(const ScanReport & report, bool include_timing = true) -> nlohmann::json;
    auto report_to_text(const ScanReport & report) -> std::string;
}
