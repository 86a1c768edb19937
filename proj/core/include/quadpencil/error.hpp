#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qp {

enum class ErrorKind {
    DegenerateInput,
    NoConvergence,
    FullRank,
    AmbiguousNullspace,
    LengthMismatch,
    DimensionMismatch,
    NotSymmetric,
    DegeneratePencil,
    DegenerateForm,
    NotUnimodular,
    SingularTransform,
    InvalidLambdas,
    InvalidInput,
    NotRegular,
    RootAtInfinity,
    NotStable,
    NotGeneral,
    RankDeficient,
    NotPoised,
    IllConditioned,
    DimensionTooSmall,
    InconsistentSamples,
    DegenerateRecovery,
};

std::string_view error_name(ErrorKind kind);

// Every mathematical failure in the library is reported through this type.
// what() is "<Name>: <detail>"; name() is the bare error name.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return error_name(kind_); }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

} // namespace qp
