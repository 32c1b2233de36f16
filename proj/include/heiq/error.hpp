#pragma once

#include <stdexcept>
#include <string>

namespace heiq {

/// Base class for all reported errors (contract violations, bad input).
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension or field-context mismatch between operands.
class mismatch_error : public error {
public:
    explicit mismatch_error(const std::string& what) : error(what) {}
};

/// An enumeration or sweep would exceed its configured budget.
class budget_error : public error {
public:
    explicit budget_error(const std::string& what) : error(what) {}
};

}  // namespace heiq
