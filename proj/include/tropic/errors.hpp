// errors.hpp — exception types shared by the tropic library.
//
// Every library error derives from tropic::Error and carries a stable
// module-qualified code ("spectrum.duplicate_energy", "envelope.out_of_domain",
// ...) so front-ends can map failures without string-matching messages.

#pragma once

#include <stdexcept>
#include <string>

namespace tropic {

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// ── spectrum ──────────────────────────────────────────────────────────────

struct EmptySpectrumError : Error {
  explicit EmptySpectrumError(const std::string& msg = "spectrum has no levels")
      : Error("spectrum.empty", msg) {}
};

struct DuplicateEnergyError : Error {
  explicit DuplicateEnergyError(const std::string& msg)
      : Error("spectrum.duplicate_energy", msg) {}
};

struct NonFiniteValueError : Error {
  explicit NonFiniteValueError(const std::string& msg)
      : Error("spectrum.non_finite", msg) {}
};

// ── parsing ───────────────────────────────────────────────────────────────

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error("io.parse", msg) {}
};

// ── envelope ──────────────────────────────────────────────────────────────

struct OutOfDomainError : Error {
  explicit OutOfDomainError(const std::string& msg)
      : Error("envelope.out_of_domain", msg) {}
};

struct IdenticalLevelsError : Error {
  explicit IdenticalLevelsError(const std::string& msg)
      : Error("envelope.identical_levels", msg) {}
};

// ── observables ───────────────────────────────────────────────────────────

struct BadIndexError : Error {
  explicit BadIndexError(const std::string& msg)
      : Error("observables.bad_index", msg) {}
};

struct ParallelLevelsError : Error {
  explicit ParallelLevelsError(const std::string& msg)
      : Error("observables.parallel_levels", msg) {}
};

// ── oracle / limits ───────────────────────────────────────────────────────

struct ZeroTemperatureError : Error {
  explicit ZeroTemperatureError(const std::string& msg = "temperature is zero")
      : Error("temperature.zero", msg) {}
};

struct BadArgumentError : Error {
  explicit BadArgumentError(const std::string& msg)
      : Error("argument.invalid", msg) {}
};

struct BoundedBelowSpectrumError : Error {
  explicit BoundedBelowSpectrumError(const std::string& msg)
      : Error("limits.bounded_below", msg) {}
};

struct GeneratorSpecError : Error {
  explicit GeneratorSpecError(const std::string& msg)
      : Error("limits.bad_generator", msg) {}
};

}  // namespace tropic
