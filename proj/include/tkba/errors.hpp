#pragma once

#include <stdexcept>
#include <string>

namespace tkba {

struct UnsupportedQueryShape : std::runtime_error {
    explicit UnsupportedQueryShape(const std::string& what) : std::runtime_error(what) {}
};

struct NotTreeShaped : UnsupportedQueryShape {
    explicit NotTreeShaped(const std::string& what) : UnsupportedQueryShape(what) {}
};

struct UnsatisfiableTBox : std::runtime_error {
    explicit UnsatisfiableTBox(const std::string& what) : std::runtime_error(what) {}
};

struct BoundTooLarge : std::runtime_error {
    explicit BoundTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct NonDistinctWitnesses : std::runtime_error {
    explicit NonDistinctWitnesses(const std::string& what) : std::runtime_error(what) {}
};

struct InconsistentKB : std::runtime_error {
    explicit InconsistentKB(const std::string& what) : std::runtime_error(what) {}
};

struct InconsistentIntermediate : std::runtime_error {
    explicit InconsistentIntermediate(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownLetter : std::runtime_error {
    explicit UnknownLetter(const std::string& what) : std::runtime_error(what) {}
};

struct DeskScaleExceeded : std::runtime_error {
    explicit DeskScaleExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Parse errors carry a position; `expected` names what the parser wanted.
struct SyntaxError : std::runtime_error {
    int line;
    int column;
    std::string expected;

    SyntaxError(int line, int column, const std::string& expected)
        : std::runtime_error("syntax error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": expected " + expected),
          line(line),
          column(column),
          expected(expected) {}
};

}  // namespace tkba
