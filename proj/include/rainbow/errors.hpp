#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rainbow {

enum class ErrorKind {
    invalid_colour,
    invalid_reference,
    invalid_instance,
    switching_application,
    invalid_missing_colour,
    parameter,
    generation,
    cap_exceeded,
    invalid_algebra,
    no_witness,
    infeasible_scope,
    parse,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_colour: return "invalid-colour";
    case ErrorKind::invalid_reference: return "invalid-reference";
    case ErrorKind::invalid_instance: return "invalid-instance";
    case ErrorKind::switching_application: return "switching-application";
    case ErrorKind::invalid_missing_colour: return "invalid-missing-colour";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::generation: return "generation";
    case ErrorKind::cap_exceeded: return "cap-exceeded";
    case ErrorKind::invalid_algebra: return "invalid-algebra";
    case ErrorKind::no_witness: return "no-witness";
    case ErrorKind::infeasible_scope: return "infeasible-scope";
    case ErrorKind::parse: return "parse";
    }
    return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace rainbow
