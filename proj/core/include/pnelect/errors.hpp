#pragma once

#include <stdexcept>
#include <string>

namespace pnelect {

// Error classes surfaced by the library. The CLI maps these onto exit codes,
// so the class is part of the public contract, not just the message text.
enum class ErrorCode {
    wrong_length,         // opinion vector length does not match the roster
    negative_weight,      // ballot weight < 1
    budget_violation,     // non-zero opinion count != declared opinion budget
    mode_violation,       // rejection (-1) entry in a binary profile
    invalid_roster,       // duplicate, empty, or unserializable candidate name
    invalid_k,            // committee size out of [1, n]
    too_large,            // C(n, k) exceeds the enumeration bound
    invalid_p,            // p <= 0, NaN, or infinite
    variant_mismatch,     // comparison keys from different variants/profiles
    mode_mismatch,        // ternary ballot passed to a binary-only distance
    parse_error,          // malformed ballot file (message carries line number)
    unknown_candidate,    // ballot names a candidate missing from the roster
    duplicate_candidate,  // candidate listed twice in a file header
};

std::string to_string(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(to_string(code) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace pnelect
