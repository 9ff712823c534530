#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace waring {

enum class ErrorKind {
    ParseError,
    DegreeMismatch,
    UnknownVariable,
    InvalidPartition,
    ZeroLinearForm,
    ZeroForm,
    NotIndependentSum,
    MinorTooLarge,
    NotInDerivs,
    LinearSubspace,
    CertificateRejected,
    UnsupportedDegree,
    NotConcise,
    NotInLocus,
    DimensionNotCertified,
    NotBinary,
    NumericWitness,
    VariableCollision,
    ZeroSummand,
    HypothesisFails,
    EvidenceRejected,
    InternalConsistency,
    SchemaError,
    InvalidArgument,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::ZeroLinearForm: return "ZeroLinearForm";
    case ErrorKind::ZeroForm: return "ZeroForm";
    case ErrorKind::NotIndependentSum: return "NotIndependentSum";
    case ErrorKind::MinorTooLarge: return "MinorTooLarge";
    case ErrorKind::NotInDerivs: return "NotInDerivs";
    case ErrorKind::LinearSubspace: return "LinearSubspace";
    case ErrorKind::CertificateRejected: return "CertificateRejected";
    case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorKind::NotConcise: return "NotConcise";
    case ErrorKind::NotInLocus: return "NotInLocus";
    case ErrorKind::DimensionNotCertified: return "DimensionNotCertified";
    case ErrorKind::NotBinary: return "NotBinary";
    case ErrorKind::NumericWitness: return "NumericWitness";
    case ErrorKind::VariableCollision: return "VariableCollision";
    case ErrorKind::ZeroSummand: return "ZeroSummand";
    case ErrorKind::HypothesisFails: return "HypothesisFails";
    case ErrorKind::EvidenceRejected: return "EvidenceRejected";
    case ErrorKind::InternalConsistency: return "InternalConsistency";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Library-wide exception. `summand()` is set for per-summand failures
/// raised by the additivity routes (0-based, npos otherwise).
class Error : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Error(ErrorKind kind, const std::string& message, std::size_t summand = npos)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind), summand_(summand) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::size_t summand() const noexcept { return summand_; }

private:
    ErrorKind kind_;
    std::size_t summand_;
};

} // namespace waring
