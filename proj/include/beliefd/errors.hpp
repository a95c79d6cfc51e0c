#pragma once

#include <stdexcept>
#include <string>

namespace beliefd {

// Error categories, mapped to CLI exit codes by the front end.
enum class ErrorCode {
  Usage,
  Validation,
  Hypothesis,
  Convergence,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string tag, const std::string& what)
      : std::runtime_error(tag + ": " + what), code_(code), tag_(std::move(tag)) {}

  ErrorCode code() const { return code_; }
  const std::string& tag() const { return tag_; }

 private:
  ErrorCode code_;
  std::string tag_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string tag, const std::string& what)
      : Error(ErrorCode::Validation, std::move(tag), what) {}
};

class HypothesisViolated : public Error {
 public:
  explicit HypothesisViolated(const std::string& what)
      : Error(ErrorCode::Hypothesis, "HypothesisViolated", what) {}
};

class ConvergenceFailure : public Error {
 public:
  explicit ConvergenceFailure(const std::string& what)
      : Error(ErrorCode::Convergence, "ConvergenceFailure", what) {}
};

inline ValidationError zero_entry(const std::string& w) { return {"ZeroEntry", w}; }
inline ValidationError non_monotone_bias(const std::string& w) { return {"NonMonotoneBias", w}; }
inline ValidationError non_monotone_states(const std::string& w) { return {"NonMonotoneStates", w}; }
inline ValidationError marginal_mismatch(const std::string& w) { return {"MarginalMismatch", w}; }
inline ValidationError unordered_signals(const std::string& w) { return {"UnorderedSignals", w}; }
inline ValidationError not_binary(const std::string& w) { return {"NotBinary", w}; }
inline ValidationError shape_mismatch(const std::string& w) { return {"ShapeMismatch", w}; }
inline ValidationError zero_column(const std::string& w) { return {"ZeroColumn", w}; }
inline ValidationError kappa_out_of_range(const std::string& w) { return {"KappaOutOfRange", w}; }
inline ValidationError degenerate_bias(const std::string& w) { return {"DegenerateBias", w}; }
inline ValidationError parse_error(const std::string& w) { return {"ParseError", w}; }

}  // namespace beliefd
