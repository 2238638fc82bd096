#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace finscheme {

enum class ErrorCode {
    InvalidArgument,
    SizeGuard,
    NotSubset,
    NotOpen,
    NotNested,
    NotContinuous,
    NotMember,
    SNotMember,
    NoLowerBound,
    NotDirected,
    Mismatch,
    NotLocalRing,
    IncompatibleFamily,
    WellDefinednessFailure,
    UncoveredPoint,
    RingAxioms,
    ParseError,
    UnknownKind,
    BadTables,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::SizeGuard: return "SizeGuard";
        case ErrorCode::NotSubset: return "NotSubset";
        case ErrorCode::NotOpen: return "NotOpen";
        case ErrorCode::NotNested: return "NotNested";
        case ErrorCode::NotContinuous: return "NotContinuous";
        case ErrorCode::NotMember: return "NotMember";
        case ErrorCode::SNotMember: return "SNotMember";
        case ErrorCode::NoLowerBound: return "NoLowerBound";
        case ErrorCode::NotDirected: return "NotDirected";
        case ErrorCode::Mismatch: return "Mismatch";
        case ErrorCode::NotLocalRing: return "NotLocalRing";
        case ErrorCode::IncompatibleFamily: return "IncompatibleFamily";
        case ErrorCode::WellDefinednessFailure: return "WellDefinednessFailure";
        case ErrorCode::UncoveredPoint: return "UncoveredPoint";
        case ErrorCode::RingAxioms: return "RingAxioms";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownKind: return "UnknownKind";
        case ErrorCode::BadTables: return "BadTables";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Raised when an enumeration would exceed its configured bound. Callers that
// orchestrate suites turn this into a "skipped" verdict.
class GuardError : public Error {
public:
    GuardError(const std::string& what, std::uint64_t requested, std::uint64_t bound)
        : Error(ErrorCode::SizeGuard, what + " (requested " + std::to_string(requested) +
                                          ", bound " + std::to_string(bound) + ")"),
          requested_(requested), bound_(bound) {}
    std::uint64_t requested() const noexcept { return requested_; }
    std::uint64_t bound() const noexcept { return bound_; }

private:
    std::uint64_t requested_;
    std::uint64_t bound_;
};

struct Guards {
    std::uint64_t max_subsets = std::uint64_t{1} << 20;   // 2^|R| candidate subsets
    std::uint64_t max_sections = std::uint64_t{1} << 16;  // value tuples / section families
    std::uint64_t max_covers = 4096;                      // covers enumerated per open
    std::uint64_t max_ring_size = 4096;                   // constructed carriers
};

// Saturating product, used when sizing enumerations against a guard.
inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

}  // namespace finscheme
