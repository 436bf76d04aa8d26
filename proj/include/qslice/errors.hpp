#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qslice {

enum class Errc {
  NonUniqueSolution,
  InconsistentSystem,
  ShapeMismatch,
  RankTooHigh,
  NotNilpotent,
  SumMismatch,
  NegativeEntry,
  EmptyVariety,
  NotAdmissible,
  Unsatisfiable,
  NotTransversal,
  NotStable,
  WrongFraming,
  InvalidFlag,
  ParseError,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the harness in particular) can record it per case.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qslice
