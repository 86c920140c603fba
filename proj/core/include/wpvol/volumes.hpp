#pragma once

// Weil-Petersson volume polynomials assembled from brackets, exact volumes,
// and the volume-ratio diagnostics.

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wpvol/exact_arith.hpp"
#include "wpvol/intersection.hpp"

namespace wpvol {

struct SplitPair;

/// V_{g,n}(x_1, ..., x_n) as a table over multisets d: the entry for d is the
/// coefficient of prod x_i^{2 d_i} (boundary lengths x_i, not the doubled
/// variables), which is [prod tau_{d_i}]_{g,n} / (4^{|d|} prod (2 d_i + 1)!).
class VolumePolynomial {
public:
    static constexpr const char* kHeader = "wpvol v1";

    VolumePolynomial(Signature sig, std::map<std::vector<int>, PiScalar> coeffs);

    Signature signature() const noexcept { return sig_; }
    const std::map<std::vector<int>, PiScalar>& coefficients() const noexcept { return coeffs_; }

    /// Coefficient of prod x_i^{2 d_i}; `d` may be given in any order.
    PiScalar coefficient(std::span<const int> d) const;
    PiScalar constant_term() const;

    /// One line per coefficient, "g|n|v1:c1,...|num/den*pi^k", after the header.
    std::string dump() const;

private:
    Signature sig_;
    std::map<std::vector<int>, PiScalar> coeffs_;
};

/// Coefficient of prod x_i^{2 d_i} in V_{g,n}(x), from the bracket.
PiScalar volume_coefficient(BracketEngine& engine, int g, std::span<const int> d);

/// V_{g,n} = [tau_0^n]_{g,n}. Throws UnstableSignature.
PiScalar volume(BracketEngine& engine, int g, int n);

VolumePolynomial volume_poly(BracketEngine& engine, int g, int n);

/// Exact V_{g,n}(lengths). Cost grows with the number of nonzero lengths.
PiPoly volume_at(BracketEngine& engine, int g, int n, std::span<const PiPoly> lengths);

/// (2g - 2 + n) V_{g,n} / V_{g,n+1}; tends to 1 / (4 pi^2).
PiScalar mz_ratio(BracketEngine& engine, int g, int n);

/// V_{g,n}^2 / (V_{g,n-1} V_{g,n+1}). Exact rational.
Rat ratio_R(BracketEngine& engine, int g, int n);

struct IdentityCheck {
    PiScalar lhs;   ///< (2g - 2 + n) V_{g,n} / V_{g,n+1}
    PiPoly rhs;     ///< 1/2 sum_m (-1)^{m-1} b_m c_m(g, n)
    PiPoly residual;
    bool holds() const { return residual.is_zero(); }
};

IdentityCheck identity_check(BracketEngine& engine, int g, int n);

/// V_{g,n} sqrt(2g - 2 + n) / ((2g - 3 + n)! (4 pi^2)^{2g - 3 + n}). Requires 2g - 2 + n >= 1.
double cor1_bound_check(BracketEngine& engine, int g, int n);

/// (V_{g1,n1} V_{g2,n2} / V_{g,n},  m^m (chi - m)^{chi - m} / chi^chi).
std::pair<double, double> lratio_check(BracketEngine& engine, int m, const SplitPair& split, int g, int n);

}  // namespace wpvol
