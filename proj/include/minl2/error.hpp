#pragma once

#include <stdexcept>
#include <string>

namespace minl2 {

enum class ErrorKind {
  domain,        // point outside the domain, invalid geometry
  argument,      // caller passed an out-of-range argument
  numerical,     // a tolerance could not be reached or a factorization failed
  unsupported,   // operation not defined for this configuration
  precondition,  // structural precondition of an operation is violated
  config,        // configuration file could not be parsed or is inconsistent
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::argument: return "argument";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace minl2
