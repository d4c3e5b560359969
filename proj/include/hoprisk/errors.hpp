#pragma once

#include <stdexcept>
#include <string>

namespace hoprisk {

// Raised when model parameters or call arguments violate a contract.
class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised for malformed input files (network JSON, PMF/sample CSV, rule JSON).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The exact engine refuses networks above its node cap.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, std::size_t nodes, std::size_t cap)
        : std::runtime_error(what), nodes_(nodes), cap_(cap) {}

    std::size_t nodes() const noexcept { return nodes_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t nodes_;
    std::size_t cap_;
};

}  // namespace hoprisk
