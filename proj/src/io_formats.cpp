#include <critplane/error.hpp>
#include <critplane/io_formats.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using nlohmann::json;

namespace critplane
{
    auto to_string(CorpusFormat format) -> std::string_view
    {
        switch (format) {
            case CorpusFormat::Graph6:     return "graph6";
            case CorpusFormat::PlanarCode: return "planar_code";
            case CorpusFormat::Json:       return "json";
        }
        return "unknown";
    }

    auto parse_format_name(std::string_view name) -> CorpusFormat
    {
        if (name == "graph6" || name == "g6")
            return CorpusFormat::Graph6;
        if (name == "planar_code" || name == "pc")
            return CorpusFormat::PlanarCode;
        if (name == "json")
            return CorpusFormat::Json;
        throw Error(ErrorKind::Usage, "unknown format '" + std::string(name) + "' (graph6, planar_code, json)");
    }

    auto sniff_format(std::string_view prefix) -> CorpusFormat
    {
        if (prefix.starts_with(">>planar_code"))
            return CorpusFormat::PlanarCode;
        auto first = prefix.find_first_not_of(" \t\r\n");
        if (first != std::string_view::npos && (prefix[first] == '{' || prefix[first] == '['))
            return CorpusFormat::Json;
        return CorpusFormat::Graph6;
    }

    // graph6 ------------------------------------------------------------------

    auto parse_graph6(std::string_view record) -> SimpleGraph
    {
        if (record.starts_with(graph6_header))
            record.remove_prefix(graph6_header.size());
        if (record.empty())
            throw Error(ErrorKind::BadHeader, "empty graph6 record");

        auto digit = [&] (std::size_t pos) -> unsigned {
            auto c = static_cast<unsigned char>(record[pos]);
            if (c < 63 || c > 126)
                throw Error(ErrorKind::BadHeader, "byte " + std::to_string(c) + " at offset " + std::to_string(pos)
                        + " is outside the graph6 range 63..126");
            return c - 63;
        };

        std::size_t pos = 0;
        std::uint64_t n = 0;
        if (static_cast<unsigned char>(record[0]) != 126) {
            n = digit(0);
            pos = 1;
        }
        else {
            std::size_t width = 3;
            pos = 1;
            if (record.size() > 1 && static_cast<unsigned char>(record[1]) == 126) {
                width = 6;
                pos = 2;
            }
            if (record.size() < pos + width)
                throw Error(ErrorKind::TruncatedBits, "vertex count field cut short");
            for (std::size_t i = 0 ; i < width ; ++i)
                n = (n << 6) | digit(pos + i);
            pos += width;
        }
        if (n > 100000)
            throw Error(ErrorKind::BadHeader, "vertex count " + std::to_string(n) + " too large");

        const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
        const std::uint64_t needed = (bits + 5) / 6;
        if (record.size() - pos < needed)
            throw Error(ErrorKind::TruncatedBits,
                    "expected " + std::to_string(needed) + " adjacency bytes, found " + std::to_string(record.size() - pos));
        if (record.size() - pos > needed)
            throw Error(ErrorKind::NonCanonicalPadding,
                    std::to_string(record.size() - pos - needed) + " trailing bytes after the adjacency bits");

        std::vector<Edge> edges;
        std::uint64_t k = 0;
        for (int j = 1 ; j < static_cast<int>(n) ; ++j)
            for (int i = 0 ; i < j ; ++i, ++k) {
                unsigned chunk = digit(pos + k / 6);
                if ((chunk >> (5 - k % 6)) & 1u)
                    edges.push_back({i, j});
            }
        if (bits % 6 != 0) {
            unsigned last = digit(pos + needed - 1);
            unsigned pad_mask = (1u << (6 - bits % 6)) - 1;
            if (last & pad_mask)
                throw Error(ErrorKind::NonCanonicalPadding, "padding bits are not zero");
        }
        return SimpleGraph::from_edges(static_cast<int>(n), std::move(edges));
    }

    auto emit_graph6(const SimpleGraph & g) -> std::string
    {
        const std::uint64_t n = g.vertex_count();
        std::string out;
        if (n <= 62)
            out.push_back(static_cast<char>(63 + n));
        else if (n <= 258047) {
            out.push_back(126);
            for (int shift = 12 ; shift >= 0 ; shift -= 6)
                out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
        }
        else {
            out.push_back(126);
            out.push_back(126);
            for (int shift = 30 ; shift >= 0 ; shift -= 6)
                out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
        }

        const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
        std::vector<unsigned char> chunks((bits + 5) / 6, 0);
        std::uint64_t k = 0;
        for (int j = 1 ; j < static_cast<int>(n) ; ++j)
            for (int i = 0 ; i < j ; ++i, ++k)
                if (g.find_edge(i, j) >= 0)
                    chunks[k / 6] |= static_cast<unsigned char>(1u << (5 - k % 6));
        for (auto c : chunks)
            out.push_back(static_cast<char>(63 + c));
        return out;
    }

    // planar_code -------------------------------------------------------------

    namespace
    {
        struct PlanarCodeCursor
        {
            std::string_view bytes;
            std::size_t offset = 0;
            std::uint64_t record = 0;

            auto at_end() const -> bool { return offset >= bytes.size(); }

            auto next_graph() -> PlaneGraph
            {
                const std::size_t start = offset;
                unsigned n = static_cast<unsigned char>(bytes[offset++]);
                if (n == 0)
                    throw CorpusError(ErrorKind::UnsupportedWideEncoding, record, start,
                            "two-byte planar_code records are not supported");
                std::vector<std::vector<VertexId>> rotations(n);
                for (unsigned v = 0 ; v < n ; ++v) {
                    while (true) {
                        if (offset >= bytes.size())
                            throw CorpusError(ErrorKind::DanglingRecord, record, offset,
                                    "stream ends inside the rotation of vertex " + std::to_string(v + 1));
                        unsigned w = static_cast<unsigned char>(bytes[offset++]);
                        if (w == 0)
                            break;
                        rotations[v].push_back(static_cast<VertexId>(w) - 1);
                    }
                }
                try {
                    return PlaneGraph::from_rotations(static_cast<int>(n), std::move(rotations));
                }
                catch (const CorpusError &) {
                    throw;
                }
                catch (const Error & e) {
                    throw CorpusError(e.kind(), record, start, e.what());
                }
            }
        };

        auto check_planar_code_header(std::string_view bytes) -> void
        {
            if (! bytes.starts_with(planar_code_header))
                throw CorpusError(ErrorKind::BadHeader, 0, 0, "stream does not start with >>planar_code<<");
        }
    }

    auto parse_planar_code(std::string_view bytes) -> std::vector<PlaneGraph>
    {
        check_planar_code_header(bytes);
        PlanarCodeCursor cursor{bytes, planar_code_header.size(), 0};
        std::vector<PlaneGraph> result;
        while (! cursor.at_end()) {
            result.push_back(cursor.next_graph());
            ++cursor.record;
        }
        return result;
    }

    auto emit_planar_code_record(const PlaneGraph & g) -> std::string
    {
        auto rotations = g.compacted_rotations();
        if (rotations.empty() || rotations.size() > 255)
            throw Error(ErrorKind::UnsupportedWideEncoding,
                    "one-byte planar_code needs 1..255 vertices, got " + std::to_string(rotations.size()));
        std::string out;
        out.push_back(static_cast<char>(rotations.size()));
        for (const auto & rot : rotations) {
            for (auto w : rot)
                out.push_back(static_cast<char>(w + 1));
            out.push_back('\0');
        }
        return out;
    }

    auto emit_planar_code(std::span<const PlaneGraph> graphs) -> std::string
    {
        std::string out(planar_code_header);
        for (const auto & g : graphs)
            out += emit_planar_code_record(g);
        return out;
    }

    // JSON ----------------------------------------------------------------------

    namespace
    {
        auto unwrap(const json & value) -> const json &
        {
            if (value.is_object() && value.contains("graph") && ! value.contains("n"))
                return value.at("graph");
            return value;
        }

        auto require_count(const json & obj) -> int
        {
            if (! obj.is_object())
                throw Error(ErrorKind::SchemaViolation, "graph must be a JSON object");
            if (! obj.contains("n"))
                throw Error(ErrorKind::SchemaViolation, "missing \"n\" key");
            const auto & n = obj.at("n");
            if (! n.is_number_integer() || n.get<long long>() < 0)
                throw Error(ErrorKind::SchemaViolation, "\"n\" must be a non-negative integer");
            return n.get<int>();
        }

        auto require_int_list(const json & list, const std::string & where) -> std::vector<VertexId>
        {
            if (! list.is_array())
                throw Error(ErrorKind::SchemaViolation, where + " must be an array");
            std::vector<VertexId> result;
            for (const auto & x : list) {
                if (! x.is_number_integer())
                    throw Error(ErrorKind::SchemaViolation, where + " must hold integers");
                result.push_back(x.get<VertexId>());
            }
            return result;
        }

        auto parse_text(std::string_view text) -> json
        {
            try {
                return json::parse(text);
            }
            catch (const json::parse_error & e) {
                throw Error(ErrorKind::SchemaViolation, std::string("malformed JSON: ") + e.what());
            }
        }
    }

    auto rotations_to_json(const PlaneGraph & g) -> json
    {
        auto rotations = g.compacted_rotations();
        return json{{"n", rotations.size()}, {"rotations", rotations}};
    }

    auto rotations_from_json(const json & value) -> PlaneGraph
    {
        const auto & obj = unwrap(value);
        int n = require_count(obj);
        for (const auto & [key, _] : obj.items())
            if (key != "n" && key != "rotations")
                throw Error(ErrorKind::SchemaViolation, "unexpected key \"" + key + "\"");
        if (! obj.contains("rotations"))
            throw Error(ErrorKind::SchemaViolation, "missing \"rotations\" key");
        const auto & rots = obj.at("rotations");
        if (! rots.is_array())
            throw Error(ErrorKind::SchemaViolation, "\"rotations\" must be an array");
        std::vector<std::vector<VertexId>> rotations;
        for (std::size_t v = 0 ; v < rots.size() ; ++v)
            rotations.push_back(require_int_list(rots[v], "rotations[" + std::to_string(v) + "]"));
        if (static_cast<int>(rotations.size()) != n)
            throw Error(ErrorKind::SchemaViolation,
                    "\"n\" is " + std::to_string(n) + " but " + std::to_string(rotations.size()) + " rotations given");
        return PlaneGraph::from_rotations(n, std::move(rotations));
    }

    auto parse_json_rotations(std::string_view text) -> PlaneGraph
    {
        return rotations_from_json(parse_text(text));
    }

    auto emit_json_rotations(const PlaneGraph & g) -> std::string
    {
        return rotations_to_json(g).dump();
    }

    auto edges_to_json(const SimpleGraph & g) -> json
    {
        json edges = json::array();
        for (const auto & e : g.edges())
            edges.push_back({e.u, e.v});
        return json{{"n", g.vertex_count()}, {"edges", edges}};
    }

    auto edges_from_json(const json & value) -> SimpleGraph
    {
        const auto & obj = unwrap(value);
        int n = require_count(obj);
        if (! obj.contains("edges") || ! obj.at("edges").is_array())
            throw Error(ErrorKind::SchemaViolation, "missing \"edges\" array");
        std::vector<Edge> edges;
        for (const auto & item : obj.at("edges")) {
            auto pair = require_int_list(item, "edge");
            if (pair.size() != 2)
                throw Error(ErrorKind::SchemaViolation, "each edge must be a pair");
            edges.push_back({pair[0], pair[1]});
        }
        return SimpleGraph::from_edges(n, std::move(edges));
    }

    // CorpusStream --------------------------------------------------------------

    CorpusStream::CorpusStream(std::string bytes, std::optional<CorpusFormat> format) :
        _bytes(std::move(bytes)),
        _format(format.value_or(sniff_format(std::string_view(_bytes).substr(0, 64))))
    {
        if (_format == CorpusFormat::PlanarCode) {
            check_planar_code_header(_bytes);
            _offset = planar_code_header.size();
        }
        else if (_format == CorpusFormat::Graph6 && std::string_view(_bytes).starts_with(graph6_header))
            _offset = graph6_header.size();
    }

    auto CorpusStream::from_istream(std::istream & in, std::optional<CorpusFormat> format) -> CorpusStream
    {
        std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        return CorpusStream(std::move(bytes), format);
    }

    auto CorpusStream::open(const std::string & path, std::optional<CorpusFormat> format) -> CorpusStream
    {
        if (path == "-")
            return from_istream(std::cin, format);
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw Error(ErrorKind::Usage, "cannot open '" + path + "'");
        return from_istream(in, format);
    }

    auto CorpusStream::next() -> std::optional<CorpusRecord>
    {
        switch (_format) {
            case CorpusFormat::Graph6:     return next_graph6();
            case CorpusFormat::PlanarCode: return next_planar_code();
            case CorpusFormat::Json:       return next_json();
        }
        return std::nullopt;
    }

    auto CorpusStream::read_all() -> std::vector<CorpusRecord>
    {
        std::vector<CorpusRecord> result;
        while (auto r = next())
            result.push_back(std::move(*r));
        return result;
    }

    auto CorpusStream::next_graph6() -> std::optional<CorpusRecord>
    {
        while (_offset < _bytes.size()) {
            auto end = _bytes.find('\n', _offset);
            if (end == std::string::npos)
                end = _bytes.size();
            std::string_view line(_bytes.data() + _offset, end - _offset);
            auto start = _offset;
            _offset = end + 1;
            if (! line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            if (line.empty())
                continue;
            try {
                CorpusRecord r{_record, parse_graph6(line), std::nullopt};
                ++_record;
                return r;
            }
            catch (const Error & e) {
                throw CorpusError(e.kind(), _record, start, e.what());
            }
        }
        return std::nullopt;
    }

    auto CorpusStream::next_planar_code() -> std::optional<CorpusRecord>
    {
        if (_offset >= _bytes.size())
            return std::nullopt;
        PlanarCodeCursor cursor{_bytes, static_cast<std::size_t>(_offset), _record};
        auto g = cursor.next_graph();
        _offset = cursor.offset;
        CorpusRecord r{_record, g.abstract_graph(), std::move(g)};
        ++_record;
        return r;
    }

    auto CorpusStream::next_json() -> std::optional<CorpusRecord>
    {
        if (! _json_loaded) {
            _json_loaded = true;
            try {
                auto doc = json::parse(_bytes);
                if (doc.is_array())
                    _json_items = doc.get<std::vector<json>>();
                else
                    _json_items.push_back(std::move(doc));
            }
            catch (const json::parse_error &) {
                // JSON Lines
                std::istringstream lines(_bytes);
                std::string line;
                std::uint64_t index = 0;
                while (std::getline(lines, line)) {
                    if (line.find_first_not_of(" \t\r") == std::string::npos)
                        continue;
                    try {
                        _json_items.push_back(json::parse(line));
                    }
                    catch (const json::parse_error & e) {
                        throw CorpusError(ErrorKind::SchemaViolation, index, 0, e.what());
                    }
                    ++index;
                }
            }
        }
        if (_record >= _json_items.size())
            return std::nullopt;
        const auto & item = _json_items[_record];
        try {
            const auto & obj = unwrap(item);
            CorpusRecord r;
            r.index = _record;
            if (obj.is_object() && obj.contains("rotations")) {
                r.plane = rotations_from_json(obj);
                r.graph = r.plane->abstract_graph();
            }
            else
                r.graph = edges_from_json(obj);
            ++_record;
            return r;
        }
        catch (const Error & e) {
            throw CorpusError(e.kind(), _record, 0, e.what());
        }
    }
}
