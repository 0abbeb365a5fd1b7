#pragma once

#include <stdexcept>
#include <string>

namespace quasiroots {

enum class ErrorKind {
  BasisMismatch,
  Parameter,
  Precondition,
  WindowInvalid,
  DivisionHazard,
  OracleUnstable,
  UndefinedCondition,
  IllConditioned,
  Input,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::BasisMismatch: return "basis-mismatch";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::WindowInvalid: return "window-invalid";
    case ErrorKind::DivisionHazard: return "division-hazard";
    case ErrorKind::OracleUnstable: return "oracle-unstable";
    case ErrorKind::UndefinedCondition: return "undefined-condition";
    case ErrorKind::IllConditioned: return "ill-conditioned-input";
    case ErrorKind::Input: return "input";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace quasiroots
