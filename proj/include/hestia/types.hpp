#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace hestia {

// One tick = one simulated second = one perception frame period.
using Tick = std::uint64_t;
using TaskId = std::uint64_t;

// Insertion-ordered json everywhere: trace lines and dumps are compared
// byte-for-byte, so field order must be stable.
using json = nlohmann::ordered_json;

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
    ValidationError(const std::string& what, std::vector<std::string> issues)
        : std::runtime_error(what), issues_(std::move(issues)) {}
    const std::vector<std::string>& issues() const { return issues_; }

private:
    std::vector<std::string> issues_;
};

// Lifecycle misuse: advancing a halted runtime, finalizing twice, etc.
class StateError : public std::runtime_error {
public:
    explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

class SequenceError : public std::runtime_error {
public:
    explicit SequenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hestia
