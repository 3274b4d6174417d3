#pragma once

#include <critplane/graph.hpp>
#include <critplane/plane_graph.hpp>

#include <json.hpp>

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace critplane
{
    enum class CorpusFormat
    {
        Graph6,
        PlanarCode,
        Json
    };

    auto to_string(CorpusFormat format) -> std::string_view;

    /// Accepts "graph6", "planar_code", "json". Throws Usage otherwise.
    auto parse_format_name(std::string_view name) -> CorpusFormat;

    /// Guesses the format from the first bytes of a stream.
    auto sniff_format(std::string_view prefix) -> CorpusFormat;

    inline constexpr std::string_view planar_code_header = ">>planar_code<<";
    inline constexpr std::string_view graph6_header = ">>graph6<<";

    // graph6: one record, without the trailing newline.
    auto parse_graph6(std::string_view record) -> SimpleGraph;
    auto emit_graph6(const SimpleGraph & g) -> std::string;

    // planar_code: whole stream, header included, 1-byte vertex form only.
    auto parse_planar_code(std::string_view bytes) -> std::vector<PlaneGraph>;
    auto emit_planar_code(std::span<const PlaneGraph> graphs) -> std::string;
    auto emit_planar_code_record(const PlaneGraph & g) -> std::string;

    // JSON rotation format: {"n": 3, "rotations": [[1,2],[2,0],[0,1]]}.
    auto parse_json_rotations(std::string_view text) -> PlaneGraph;
    auto emit_json_rotations(const PlaneGraph & g) -> std::string;
    auto rotations_to_json(const PlaneGraph & g) -> nlohmann::json;
    auto rotations_from_json(const nlohmann::json & value) -> PlaneGraph;

    // Abstract graphs in JSON: {"n": 3, "edges": [[0,1],[0,2],[1,2]]}.
    auto edges_to_json(const SimpleGraph & g) -> nlohmann::json;
    auto edges_from_json(const nlohmann::json & value) -> SimpleGraph;

    /// One decoded corpus entry. `plane` is set iff the source format carries
    /// an embedding; `graph` is always the abstract graph.
    struct CorpusRecord
    {
        std::uint64_t index = 0;
        SimpleGraph graph;
        std::optional<PlaneGraph> plane;

        auto embedded() const -> bool { return plane.has_value(); }
    };

    /// Sequential reader over an in-memory copy of a stream. Yields records in
    /// file order; a malformed record throws CorpusError with its position.
    class CorpusStream
    {
        public:
            CorpusStream(std::string bytes, std::optional<CorpusFormat> format = std::nullopt);

            static auto from_istream(std::istream & in, std::optional<CorpusFormat> format = std::nullopt) -> CorpusStream;

            /// "-" reads stdin. Throws Usage when the file cannot be opened.
            static auto open(const std::string & path, std::optional<CorpusFormat> format = std::nullopt) -> CorpusStream;

            auto format() const -> CorpusFormat { return _format; }
            auto next() -> std::optional<CorpusRecord>;
            auto read_all() -> std::vector<CorpusRecord>;

            auto records_read() const -> std::uint64_t { return _record; }
            auto byte_offset() const -> std::uint64_t { return _offset; }

        private:
            auto next_graph6() -> std::optional<CorpusRecord>;
            auto next_planar_code() -> std::optional<CorpusRecord>;
            auto next_json() -> std::optional<CorpusRecord>;

            std::string _bytes;
            CorpusFormat _format;
            std::uint64_t _offset = 0;
            std::uint64_t _record = 0;
            std::vector<nlohmann::json> _json_items;
            bool _json_loaded = false;
    };
}
