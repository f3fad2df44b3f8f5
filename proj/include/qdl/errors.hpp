// errors.hpp
// Error taxonomy shared by all qdl modules. Exit-code mapping lives in cli.
#pragma once

#include <stdexcept>
#include <string>

namespace qdl {

// A computation was refused because it would exceed the configured
// operation budget (distinct from a numerical failure).
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// A numerical procedure failed to reach its accuracy contract
// (quadrature non-convergence, Richardson disagreement, pole proximity).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// An input exceeded the range a precomputed table covers.
class table_error : public std::invalid_argument {
public:
    explicit table_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace qdl
