#pragma once

#include <stdexcept>
#include <string>

namespace tokmove {

/** Malformed data: bad vertex indices, broken file syntax, inconsistent sizes. */
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Operation asked to run on a problem variant it does not handle. */
struct UnsupportedVariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** A configured resource cap would be exceeded; the caller gets a refusal, not a wrong answer. */
struct CapExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** A generator was handed data it cannot turn into a certified instance. */
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** File parse failure with a 1-based line number. */
struct ParseError : InputError {
    int line;
    ParseError(int ln, const std::string& what)
        : InputError("line " + std::to_string(ln) + ": " + what), line(ln) {}
};

}  // namespace tokmove
