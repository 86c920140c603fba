#pragma once

// Certified numeric enclosures of exact values, backed by MPFR with
// outward (directed) rounding.

#include <string>

#include <mpfr.h>

#include "wpvol/exact_arith.hpp"

namespace wpvol {

/// RAII owner of an mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_ptr get() noexcept { return value_; }
    mpfr_srcptr get() const noexcept { return value_; }
    mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
    /// Scientific notation with `digits` significant digits.
    std::string str(int digits) const;

private:
    mpfr_t value_;
};

/// Closed interval [lo, hi] guaranteed to contain a real value.
class NumInterval {
public:
    NumInterval(BigFloat lo, BigFloat hi);

    const BigFloat& lo() const noexcept { return lo_; }
    const BigFloat& hi() const noexcept { return hi_; }

    bool contains(const NumInterval& inner) const;
    bool contains_zero() const;
    /// -1 / +1 when the whole interval is strictly negative / positive, 0 otherwise.
    int certain_sign() const;
    double width() const;
    /// Midpoint rounded to double.
    double mid() const;
    std::string mid_str(int digits) const;

private:
    BigFloat lo_, hi_;
};

/// Bits of working precision used for `digits` decimal digits.
mpfr_prec_t precision_for_digits(int digits);

NumInterval eval_numeric(const PiScalar& x, int precision_digits);
NumInterval eval_numeric(const PiPoly& x, int precision_digits);
NumInterval eval_numeric(const Rat& x, int precision_digits);

/// Shortcut for the midpoint of a 30-digit enclosure.
double to_double(const PiScalar& x);
double to_double(const PiPoly& x);

/// Three-way comparison of exact values. Symbolic when the difference is
/// exactly zero; otherwise refines enclosures from 50 digits, doubling up to
/// 3200. Throws std::runtime_error if the values cannot be separated.
int compare(const PiPoly& a, const PiPoly& b);

}  // namespace wpvol
