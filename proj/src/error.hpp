// Domain errors carry a machine-readable kind and a path into the offending
// input (JSON-pointer style), mirrored verbatim in CLI error payloads.
#pragma once

#include <stdexcept>
#include <string>

namespace parrep {

enum class ErrorKind {
  invalid_weight_sum,
  symbol_out_of_alphabet,
  empty_support,
  duplicate_entry,
  bad_request,
  alphabet_mismatch,
  budget_exceeded,
  zero_probability_event,
  index_out_of_range,
  unsupported,
  internal_error,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_weight_sum: return "invalid_weight_sum";
    case ErrorKind::symbol_out_of_alphabet: return "symbol_out_of_alphabet";
    case ErrorKind::empty_support: return "empty_support";
    case ErrorKind::duplicate_entry: return "duplicate_entry";
    case ErrorKind::bad_request: return "bad_request";
    case ErrorKind::alphabet_mismatch: return "alphabet_mismatch";
    case ErrorKind::budget_exceeded: return "budget_exceeded";
    case ErrorKind::zero_probability_event: return "zero_probability_event";
    case ErrorKind::index_out_of_range: return "index_out_of_range";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::internal_error: return "internal_error";
  }
  return "unknown";
}

class DomainError : public std::runtime_error {
public:
  DomainError(ErrorKind kind, std::string path, const std::string& message)
      : std::runtime_error(message), kind_(kind), path_(std::move(path)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& path() const { return path_; }

private:
  ErrorKind kind_;
  std::string path_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& path,
                              const std::string& message) {
  throw DomainError(kind, path, message);
}

}  // namespace parrep
