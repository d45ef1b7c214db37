#pragma once

#include <stdexcept>
#include <string>

namespace solitons {

enum class ErrorCode {
  invalid_grid,
  invalid_spectrum,
  degenerate_spectrum,
  construction,
  range,
  numeric,
  spec,
  ordering,
  not_asymptotic,
  domain,
  config,
  io,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries a code so the CLI can map it
// onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_grid: return "invalid grid";
    case ErrorCode::invalid_spectrum: return "invalid spectrum";
    case ErrorCode::degenerate_spectrum: return "degenerate spectrum";
    case ErrorCode::construction: return "construction error";
    case ErrorCode::range: return "range error";
    case ErrorCode::numeric: return "numeric error";
    case ErrorCode::spec: return "spec error";
    case ErrorCode::ordering: return "ordering error";
    case ErrorCode::not_asymptotic: return "not asymptotic";
    case ErrorCode::domain: return "domain error";
    case ErrorCode::config: return "config error";
    case ErrorCode::io: return "io error";
  }
  return "error";
}

}  // namespace solitons
