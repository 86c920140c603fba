#pragma once

// Exact arithmetic in Q[pi, 1/pi]: rationals, single pi-monomials (PiScalar)
// and finite sums of them (PiPoly), plus the Bernoulli / zeta(2i) machinery
// that produces the recursion coefficients a_i and b_m.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wpvol {

using BigInt = mpz_class;

/// Reduced rational number backed by GMP. Zero is 0/1 and the denominator
/// is always positive.
class Rat {
public:
    Rat() = default;
    Rat(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    Rat(const BigInt& num, const BigInt& den);
    explicit Rat(mpq_class q);

    /// Parses "num/den" or "num" (optionally signed). Throws std::invalid_argument.
    static Rat parse(std::string_view text);

    const mpq_class& get() const noexcept { return q_; }
    BigInt num() const { return q_.get_num(); }
    BigInt den() const { return q_.get_den(); }

    bool is_zero() const noexcept { return sgn(q_) == 0; }
    int sign() const noexcept { return sgn(q_); }
    double to_double() const { return q_.get_d(); }

    /// Always "num/den", e.g. "12/1" or "-7/720".
    std::string str() const;

    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    Rat pow(int e) const;

private:
    mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

/// coeff * pi^pideg. Canonical zero has pideg 0.
class PiScalar {
public:
    PiScalar() = default;
    PiScalar(Rat coeff, int pideg = 0);  // NOLINT(google-explicit-constructor)

    static PiScalar zero() { return {}; }
    static PiScalar parse(std::string_view text);

    const Rat& coeff() const noexcept { return coeff_; }
    int pideg() const noexcept { return pideg_; }
    bool is_zero() const noexcept { return coeff_.is_zero(); }

    /// Adds a value of the same pi-degree. Either side may be zero;
    /// otherwise mismatched degrees throw std::domain_error.
    PiScalar& operator+=(const PiScalar& o);
    PiScalar& operator-=(const PiScalar& o) { return *this += -o; }
    PiScalar& operator*=(const PiScalar& o);
    PiScalar& operator/=(const PiScalar& o);

    friend PiScalar operator+(PiScalar a, const PiScalar& b) { return a += b; }
    friend PiScalar operator-(PiScalar a, const PiScalar& b) { return a -= b; }
    friend PiScalar operator*(PiScalar a, const PiScalar& b) { return a *= b; }
    friend PiScalar operator/(PiScalar a, const PiScalar& b) { return a /= b; }
    friend PiScalar operator-(const PiScalar& a) { return {-a.coeff_, a.pideg_}; }

    friend bool operator==(const PiScalar& a, const PiScalar& b) = default;

    PiScalar pow(int e) const;

    /// "num/den*pi^k", e.g. "7/720*pi^4".
    std::string str() const;

private:
    Rat coeff_;
    int pideg_ = 0;
};

std::ostream& operator<<(std::ostream& os, const PiScalar& x);

/// Finite sum of pi-monomials with rational coefficients; no zero terms stored.
class PiPoly {
public:
    using Terms = std::map<int, Rat, std::greater<>>;

    PiPoly() = default;
    PiPoly(const PiScalar& s);  // NOLINT(google-explicit-constructor)
    PiPoly(const Rat& r) : PiPoly(PiScalar(r)) {}  // NOLINT(google-explicit-constructor)
    PiPoly(long v) : PiPoly(PiScalar(Rat(v))) {}  // NOLINT(google-explicit-constructor)

    static PiPoly parse(std::string_view text);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Coefficient of pi^k (zero when absent).
    Rat coeff(int k) const;
    /// True and sets *out when the value is a single monomial (or zero).
    bool as_scalar(PiScalar* out) const;

    PiPoly& operator+=(const PiPoly& o);
    PiPoly& operator-=(const PiPoly& o);
    PiPoly& operator*=(const PiPoly& o);
    PiPoly& operator+=(const PiScalar& s);

    friend PiPoly operator+(PiPoly a, const PiPoly& b) { return a += b; }
    friend PiPoly operator-(PiPoly a, const PiPoly& b) { return a -= b; }
    friend PiPoly operator*(const PiPoly& a, const PiPoly& b);
    friend PiPoly operator-(const PiPoly& a);

    friend bool operator==(const PiPoly& a, const PiPoly& b) = default;

    PiPoly pow(int e) const;

    /// Terms joined by '+' in descending pi-degree; zero renders as "0/1*pi^0".
    std::string str() const;

private:
    void add_term(int k, const Rat& c);
    Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const PiPoly& x);

// Combinatorics.
BigInt factorial(unsigned n);
BigInt binomial(long n, long k);

/// m-th Bernoulli number with B_1 = -1/2. Results are cached.
Rat bernoulli(unsigned m);

/// zeta(2i) = (-1)^{i+1} B_{2i} (2 pi)^{2i} / (2 (2i)!). Throws for i == 0.
PiScalar zeta_even(unsigned i);

/// a_0 = 1/2, a_i = zeta(2i) (1 - 2^{1-2i}) for i >= 1. Cached.
const PiScalar& coeff_a(unsigned i);

/// b_m = m pi^{2m-2} / (2m+1)!. Throws for m == 0.
PiScalar coeff_b(unsigned m);

}  // namespace wpvol
