#include "quadpencil/error.hpp"

namespace qp {

std::string_view error_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::FullRank: return "FullRank";
    case ErrorKind::AmbiguousNullspace: return "AmbiguousNullspace";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::DegeneratePencil: return "DegeneratePencil";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::SingularTransform: return "SingularTransform";
    case ErrorKind::InvalidLambdas: return "InvalidLambdas";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::RootAtInfinity: return "RootAtInfinity";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::NotGeneral: return "NotGeneral";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotPoised: return "NotPoised";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::InconsistentSamples: return "InconsistentSamples";
    case ErrorKind::DegenerateRecovery: return "DegenerateRecovery";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
      kind_(kind), detail_(detail) {}

} // namespace qp
