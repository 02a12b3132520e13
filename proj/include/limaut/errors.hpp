#pragma once

#include <stdexcept>
#include <string>

namespace limaut {

// Malformed user input: unparsable files, bad rationals, unknown names.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation applied outside its domain. code is a stable error id
// (NOT_BLANK_SKIPPING, WRONG_K, NOT_NONDET, GAP_OUT_OF_RANGE, ...).
struct DomainError : std::runtime_error {
    DomainError(std::string code_, const std::string& what)
        : std::runtime_error(code_ + ": " + what), code(std::move(code_)) {}
    std::string code;
};

}  // namespace limaut
