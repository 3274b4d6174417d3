#include <critplane/error.hpp>

namespace critplane
{
    auto to_string(ErrorKind kind) -> std::string_view
    {
        switch (kind) {
            case ErrorKind::LoopEdge:                return "LoopEdge";
            case ErrorKind::ParallelEdge:            return "ParallelEdge";
            case ErrorKind::AsymmetricRotation:      return "AsymmetricRotation";
            case ErrorKind::VertexOutOfRange:        return "VertexOutOfRange";
            case ErrorKind::MissingElement:          return "MissingElement";
            case ErrorKind::Disconnected:            return "Disconnected";
            case ErrorKind::DegenerateGraph:         return "DegenerateGraph";
            case ErrorKind::BadHeader:               return "BadHeader";
            case ErrorKind::TruncatedBits:           return "TruncatedBits";
            case ErrorKind::NonCanonicalPadding:     return "NonCanonicalPadding";
            case ErrorKind::UnsupportedWideEncoding: return "UnsupportedWideEncoding";
            case ErrorKind::DanglingRecord:          return "DanglingRecord";
            case ErrorKind::SchemaViolation:         return "SchemaViolation";
            case ErrorKind::BudgetExceeded:          return "BudgetExceeded";
            case ErrorKind::WrongDelta:              return "WrongDelta";
            case ErrorKind::NotClass2:               return "NotClass2";
            case ErrorKind::BoundViolated:           return "BoundViolated";
            case ErrorKind::LexError:                return "LexError";
            case ErrorKind::ParseError:              return "ParseError";
            case ErrorKind::TypeError:               return "TypeError";
            case ErrorKind::DivisionByZero:          return "DivisionByZero";
            case ErrorKind::NonNegativityFailure:    return "NonNegativityFailure";
            case ErrorKind::DerivedFactFailure:      return "DerivedFactFailure";
            case ErrorKind::Usage:                   return "Usage";
            case ErrorKind::Internal:                return "Internal";
        }
        return "Unknown";
    }

    Error::Error(ErrorKind kind, const std::string & message) :
        std::runtime_error(std::string(to_string(kind)) + ": " + message),
        _kind(kind)
    {
    }

    CorpusError::CorpusError(ErrorKind kind, std::uint64_t record, std::uint64_t offset, const std::string & message) :
        Error(kind, "record " + std::to_string(record) + " (byte " + std::to_string(offset) + "): " + message),
        _record(record),
        _offset(offset)
    {
    }
}
