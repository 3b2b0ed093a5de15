#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pairwise {

/// Machine-readable failure codes shared by the library, the CLI and the
/// HTTP service.
enum class Errc {
  BadShape,
  NonFinite,
  NonMember,
  DiagonalNotIdentity,
  ReciprocityViolation,
  StrictModeViolation,
  UndefinedForGroup,
  NotATree,
  DuplicateEdge,
  IndexOutOfRange,
  SelfComparison,
  NonPositiveValue,
  NoRealRoot,
  ComplexEntries,
  NotPositive,
  NoConvergence,
  NotSymmetric,
  ZeroWeight,
  ZeroEntry,
  NotOrderable,
  NotTotallyOrdered,
  UnknownGroup,
  UnknownFixture,
  UnknownSession,
  DuplicateLabels,
  BadSize,
  ParseError,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::BadShape: return "BadShape";
    case Errc::NonFinite: return "NonFinite";
    case Errc::NonMember: return "NonMember";
    case Errc::DiagonalNotIdentity: return "DiagonalNotIdentity";
    case Errc::ReciprocityViolation: return "ReciprocityViolation";
    case Errc::StrictModeViolation: return "StrictModeViolation";
    case Errc::UndefinedForGroup: return "UndefinedForGroup";
    case Errc::NotATree: return "NotATree";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SelfComparison: return "SelfComparison";
    case Errc::NonPositiveValue: return "NonPositiveValue";
    case Errc::NoRealRoot: return "NoRealRoot";
    case Errc::ComplexEntries: return "ComplexEntries";
    case Errc::NotPositive: return "NotPositive";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::ZeroWeight: return "ZeroWeight";
    case Errc::ZeroEntry: return "ZeroEntry";
    case Errc::NotOrderable: return "NotOrderable";
    case Errc::NotTotallyOrdered: return "NotTotallyOrdered";
    case Errc::UnknownGroup: return "UnknownGroup";
    case Errc::UnknownFixture: return "UnknownFixture";
    case Errc::UnknownSession: return "UnknownSession";
    case Errc::DuplicateLabels: return "DuplicateLabels";
    case Errc::BadSize: return "BadSize";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace pairwise
