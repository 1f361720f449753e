#pragma once

#include <stdexcept>
#include <string>

namespace lw {

enum class ErrorKind {
    InvalidInput,   // malformed or degenerate data supplied by the caller
    Precondition,   // an operation's contract was violated
    Internal,       // an invariant the construction itself guarantees failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

}  // namespace lw
