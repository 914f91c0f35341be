#pragma once

#include <stdexcept>
#include <string>

namespace tame {

enum class ErrorKind {
    usage,            // bad arguments or inconsistent dimensions
    parse,            // malformed program text or file
    not_straight_line, // loop/branch construct in program text
    infeasible,       // no budget assignment satisfies the planning inequalities
    verification,     // a correctness check failed on otherwise valid inputs
    io,               // file system problem
    internal,         // broken invariant; indicates a bug, not bad input
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, int line = 0, int column = 0)
        : std::runtime_error(std::move(message)), kind(kind), line(line), column(column) {}

    ErrorKind kind;
    int line;    // 1-based, 0 if not tied to text
    int column;  // 1-based, 0 if unknown
};

[[noreturn]] inline void fail(ErrorKind kind, std::string message, int line = 0, int column = 0) {
    throw Error(kind, std::move(message), line, column);
}

inline void require(bool ok, ErrorKind kind, const std::string& message) {
    if (!ok) fail(kind, message);
}

} // namespace tame
