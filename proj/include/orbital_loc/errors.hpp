#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbital_loc {

enum class Errc {
  UnsupportedFamily,
  RankMismatch,
  NotInAlgebra,
  NonRegularPoint,
  ExtrapolationFailure,
  NonDominant,
  SchemeMismatch,
  MCVarianceOverflow,
  UnregisteredDerivative,
  QuadratureFailure,
  DegreeOverflow,
  GridTooCoarse,
  NotClosed,
  NoCriticalValue,
  NoRegularLevel,
  NonRegularLevel,
  NotInvariant,
  UsageError,
};

constexpr std::string_view to_string(Errc e) {
  switch (e) {
    case Errc::UnsupportedFamily: return "UnsupportedFamily";
    case Errc::RankMismatch: return "RankMismatch";
    case Errc::NotInAlgebra: return "NotInAlgebra";
    case Errc::NonRegularPoint: return "NonRegularPoint";
    case Errc::ExtrapolationFailure: return "ExtrapolationFailure";
    case Errc::NonDominant: return "NonDominant";
    case Errc::SchemeMismatch: return "SchemeMismatch";
    case Errc::MCVarianceOverflow: return "MCVarianceOverflow";
    case Errc::UnregisteredDerivative: return "UnregisteredDerivative";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::NotClosed: return "NotClosed";
    case Errc::NoCriticalValue: return "NoCriticalValue";
    case Errc::NoRegularLevel: return "NoRegularLevel";
    case Errc::NonRegularLevel: return "NonRegularLevel";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::UsageError: return "UsageError";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this type; `code()`
/// identifies the condition.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace orbital_loc
