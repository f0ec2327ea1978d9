#ifndef INTENTLOG_ERRORS_HPP
#define INTENTLOG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace intentlog {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed surface text. `position` is a 0-based byte offset into the input;
// `expected` describes what the parser was looking for at that point.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, std::string expected)
        : Error("syntax error at offset " + std::to_string(position) +
                ": expected " + expected),
          position_(position),
          expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

// The intention operator was applied to a formula containing a modality.
class LayeringError : public Error {
public:
    explicit LayeringError(const std::string& msg) : Error(msg) {}
};

class UnknownProblem : public Error {
public:
    explicit UnknownProblem(const std::string& name)
        : Error("unknown problem: " + name) {}
};

class UnknownWorld : public Error {
public:
    explicit UnknownWorld(const std::string& name)
        : Error("unknown world: " + name) {}
};

class UnknownAtom : public Error {
public:
    explicit UnknownAtom(const std::string& name)
        : Error("undeclared atom: " + name) {}
};

// Two partition/world-set arguments range over different universes.
class DomainMismatch : public Error {
public:
    explicit DomainMismatch(const std::string& msg) : Error(msg) {}
};

class EmptyConativeSet : public Error {
public:
    EmptyConativeSet() : Error("conative set must be nonempty") {}
};

class EmptyFusion : public Error {
public:
    EmptyFusion() : Error("fusion of the empty problem set is undefined") {}
};

// A computation exceeded its configured budget (truth-table width, search
// steps, ...). `limit` is the offending count.
class ResourceLimit : public Error {
public:
    ResourceLimit(const std::string& what, std::size_t limit)
        : Error(what + " exceeds limit (" + std::to_string(limit) + ")"),
          limit_(limit) {}

    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t limit_;
};

// Structurally malformed model/scenario/derivation file.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

}  // namespace intentlog

#endif  // INTENTLOG_ERRORS_HPP
