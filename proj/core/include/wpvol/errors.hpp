#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wpvol {

/// A (g, n) pair with 2g - 2 + n <= 0, or any other invalid surface type.
class UnstableSignature : public std::invalid_argument {
public:
    UnstableSignature(int g, int n)
        : std::invalid_argument("unstable signature (g=" + std::to_string(g) + ", n=" + std::to_string(n) + ")"),
          g_(g), n_(n) {}
    int g() const noexcept { return g_; }
    int n() const noexcept { return n_; }

private:
    int g_, n_;
};

/// A computation needed a moduli space of dimension above the configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(int g, int n, int budget)
        : std::runtime_error("budget exceeded: signature (g=" + std::to_string(g) + ", n=" + std::to_string(n) +
                             ") has dimension " + std::to_string(3 * g - 3 + n) + " > budget " +
                             std::to_string(budget)),
          g_(g), n_(n) {}
    int g() const noexcept { return g_; }
    int n() const noexcept { return n_; }

private:
    int g_, n_;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace wpvol
