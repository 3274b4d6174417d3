#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace critplane
{
    enum class ErrorKind
    {
        // plane_graph
        LoopEdge,
        ParallelEdge,
        AsymmetricRotation,
        VertexOutOfRange,
        MissingElement,
        Disconnected,
        DegenerateGraph,
        // io_formats
        BadHeader,
        TruncatedBits,
        NonCanonicalPadding,
        UnsupportedWideEncoding,
        DanglingRecord,
        SchemaViolation,
        // edge_coloring / criticality
        BudgetExceeded,
        WrongDelta,
        NotClass2,
        BoundViolated,
        // discharge
        LexError,
        ParseError,
        TypeError,
        DivisionByZero,
        NonNegativityFailure,
        DerivedFactFailure,
        // generic
        Usage,
        Internal
    };

    auto to_string(ErrorKind kind) -> std::string_view;

    /// Every failure raised by the library carries a kind so callers (the CLI,
    /// the scan harness) can map it to an exit code or a per-record status.
    class Error : public std::runtime_error
    {
        public:
            Error(ErrorKind kind, const std::string & message);

            auto kind() const noexcept -> ErrorKind { return _kind; }

        private:
            ErrorKind _kind;
    };

    /// Decoding failure inside a corpus: record index and byte offset.
    class CorpusError : public Error
    {
        public:
            CorpusError(ErrorKind kind, std::uint64_t record, std::uint64_t offset, const std::string & message);

            auto record() const noexcept -> std::uint64_t { return _record; }
            auto offset() const noexcept -> std::uint64_t { return _offset; }

        private:
            std::uint64_t _record;
            std::uint64_t _offset;
    };
}
