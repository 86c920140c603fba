#pragma once

// Expected counts of short multi-curves on a WP-random surface, evaluated in
// closed form from the volume polynomials, plus Poisson diagnostics and the
// probability upper-bound sums.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wpvol/exact_arith.hpp"
#include "wpvol/interval.hpp"
#include "wpvol/intersection.hpp"

namespace wpvol {

/// A cut-off length that is either a rational or a rational multiple of pi.
class CutoffLength {
public:
    enum class Kind { rational, rational_pi };

    static CutoffLength rational(Rat value);
    static CutoffLength times_pi(Rat value);
    /// "3/2" or "1/5pi" (also "1/5*pi"). Throws std::invalid_argument.
    static CutoffLength parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    const Rat& value() const noexcept { return value_; }

    /// L^e as an exact pi-monomial.
    PiScalar pow(int e) const;
    PiScalar exact() const { return pow(1); }
    double to_double() const;
    /// "rational" or "rational_pi".
    std::string kind_str() const;
    std::string str() const;

private:
    CutoffLength(Kind kind, Rat value);
    Kind kind_ = Kind::rational;
    Rat value_;
};

struct ExpectationResult {
    std::optional<PiPoly> exact;
    NumInterval numeric;
    double main_term = 0;
    /// |numeric / main_term - 1|.
    double rel_deviation = 0;
    std::vector<std::string> warnings;
};

/// A real value together with any out-of-regime warnings.
struct Flagged {
    double value = 0;
    std::vector<std::string> warnings;
};

/// 2 arcsinh(1), the largest L for which the pants counted by N are disjoint.
double collar_cutoff();

/// integral_0^L x^j dx = L^{j+1} / (j + 1).
PiScalar integrate_power(int j, const CutoffLength& L);

/// integral over {x_i >= 0, sum x_i <= T} of prod x_i^{a_i}
/// = prod a_i! T^{sum a_i + k} / (sum a_i + k)!.
PiScalar simplex_monomial_integral(std::span<const int> exponents, const CutoffLength& T);

/// E[N_{Gamma_J}(X, L)] summed over all k-pair families:
/// n! / (2^k (n - 2k)!) / V_{g,n} * integral_{[0,L]^k} V_{g,n-k}(x, 0) prod x_i dx.
/// main_term = (n)_{2k} V_{g,n-k} / V_{g,n} (2 cosh(L/2) - 2)^k.
ExpectationResult expected_pants_count(BracketEngine& engine, int g, int n, int k, const CutoffLength& L,
                                       int digits = 30);

/// The r-th factorial moment of the pants count; warns when L >= 2 arcsinh 1.
ExpectationResult factorial_moment(BracketEngine& engine, int g, int n, int r, const CutoffLength& L,
                                   int digits = 30);

/// log 2 / sqrt(4 pi (log 2 + pi)).
double poisson_regime_bound();

/// lambda(a, C) = a^2 / (4 pi^2) (cosh(pi C) - 1). Throws on negative input.
Flagged poisson_lambda(double a, double C);

double poisson_pmf(double lambda, int j);

struct SecondMoment {
    PiPoly mean;           ///< E[N]
    PiPoly falling2;       ///< E[N (N - 1)]
    PiPoly square;         ///< E[N^2]
    double bound = 0;      ///< E[N]^2 / E[N^2]
    Rat target;            ///< V_{g,n-1}^2 / (V_{g,n} V_{g,n-2})
    std::vector<std::string> warnings;
};

/// Requires n >= 4.
SecondMoment second_moment_bound(BracketEngine& engine, int g, int n, const CutoffLength& L, int digits = 30);

enum class ScaleVariant {
    sqrt_ratio,  ///< (sqrt(g) / n)^{1/2}
    case_two,    ///< g^{1/8} / n^{1/4}
};

/// Rational approximation of the cut-off scale, rounded to `digits` decimals.
CutoffLength length_scale(int g, int n, ScaleVariant variant = ScaleVariant::sqrt_ratio, int digits = 12);

/// log 2 / (2 pi).
double cheeger_regime_bound();

/// Upper bound for Prob(H(X) <= C):
/// sum_m sum_{I_m} sum_{k=1}^{n1} C(m, n) V_{g1,n1} V_{g2,n2} / V_{g,n}
///   (2 pi m C)^{2k} / (k! (2k)!) e^{2 pi m C}.
/// Throws std::invalid_argument for C <= 0.
Flagged cheeger_prob_upper(BracketEngine& engine, int g, int n, const Rat& C);

/// 1 / V_{g,n} sum_{m=2}^{chi/2} sum_{I_m} C(m, n) V_{g1,n1} V_{g2,n2} e^{L_m},
/// L_m = 2 pi m u + 3 (2 pi m u)^{2/3}. Requires 0 < u < log 2 / (2 pi).
double pvol2_sum(BracketEngine& engine, int g, int n, const Rat& u);

struct TwoCurveBound {
    PiPoly exact;
    double value = 0;
    /// value * (g + n).
    double scaled = 0;
};

/// 1 / V_{g,n} times the integral of V_{g-1,n+1}(x, y, 0, ...) x y over
/// {x, y >= 0, x + y <= 2 pi C}.
TwoCurveBound two_curve_expectation_bound(BracketEngine& engine, int g, int n, const Rat& C);

struct PoissonSample {
    std::vector<double> pmf;   ///< empirical frequencies of 0, 1, 2, ...
    double mean = 0;
    double variance = 0;
    /// factorial_moments[r - 1] is the empirical E[(N)_r], r = 1..4.
    std::vector<double> factorial_moments;
};

PoissonSample simulate_poisson(double lambda, std::int64_t trials, std::uint64_t seed);

}  // namespace wpvol
