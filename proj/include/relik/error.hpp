#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relik {

enum class Errc {
  foreign_world,
  invalid_preorder,
  not_strict,
  not_modular,
  invalid_algebra,
  invalid_relation,
  not_total_preorder,
  agreement_failure,
  resource_limit,
  parse_error,
  unknown_proposition,
  invalid_argument,
  io_error,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::foreign_world: return "ForeignWorld";
    case Errc::invalid_preorder: return "InvalidPreorder";
    case Errc::not_strict: return "NotStrict";
    case Errc::not_modular: return "NotModular";
    case Errc::invalid_algebra: return "InvalidAlgebra";
    case Errc::invalid_relation: return "InvalidRelation";
    case Errc::not_total_preorder: return "NotTotalPreorder";
    case Errc::agreement_failure: return "AgreementFailure";
    case Errc::resource_limit: return "ResourceLimit";
    case Errc::parse_error: return "ParseError";
    case Errc::unknown_proposition: return "UnknownProposition";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

/// Base exception for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Formula syntax error. `position` is a 0-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, const std::string& message)
      : Error(Errc::parse_error, describe(position, expected, message)),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string describe(std::size_t position, const std::vector<std::string>& expected,
                              const std::string& message) {
    std::string out = message + " at position " + std::to_string(position);
    if (!expected.empty()) {
      out += " (expected one of:";
      for (const auto& e : expected) out += " " + e;
      out += ")";
    }
    return out;
  }

  std::size_t position_;
  std::vector<std::string> expected_;
};

}  // namespace relik
