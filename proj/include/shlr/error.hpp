#pragma once

#include <stdexcept>
#include <string>

namespace shlr {

enum class ErrorCode {
    Argument,      // bad arguments, dimension mismatch, base mismatch
    Name,          // unknown or duplicate name
    Degree,        // degree constraint violated (e.g. positive algebra generator)
    Parse,         // DSL syntax error
    Window,        // degree window / weight cutoff infeasibility
    InvalidComplex // d^2 != 0 where a complex was required
};

struct Error : std::runtime_error {
    ErrorCode code;
    Error(ErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& what) { throw Error(c, what); }

inline const char* error_code_str(ErrorCode c) {
    switch (c) {
        case ErrorCode::Argument: return "argument";
        case ErrorCode::Name: return "name";
        case ErrorCode::Degree: return "degree";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Window: return "window";
        case ErrorCode::InvalidComplex: return "invalid-complex";
    }
    return "unknown";
}

} // namespace shlr
