#pragma once

#include <stdexcept>
#include <string>

namespace explor {

// common base so callers can catch library errors in one place
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlphabetMismatch : Error { using Error::Error; };
struct ModeMismatch : Error { using Error::Error; };
struct NotAStep : Error { using Error::Error; };
struct IllegalMove : Error { using Error::Error; };
struct LetterClash : Error { using Error::Error; };
struct EncodingOverflow : Error { using Error::Error; };
struct GrammarLimit : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace explor
