#include "wpvol/cheeger_geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wpvol/interval.hpp"

namespace wpvol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDigits = 30;

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

double curve_H(const CurveData& c) {
    require(c.length > 0 && c.area_small > 0, "curve_H: length and area must be positive");
    return c.length / c.area_small;
}

double collar_halfwidth(double l) {
    require(l > 0, "collar_halfwidth: l must be positive");
    return std::asinh(1.0 / std::sinh(l / 2.0));
}

NeighborCurve neighbor_curve(double l, double t) {
    require(l > 0, "neighbor_curve: l must be positive");
    require(t >= 0, "neighbor_curve: t must be non-negative");
    return {l * std::cosh(t), l * std::sinh(t), t > collar_halfwidth(l)};
}

std::pair<double, double> H_to_h_bounds(double H) {
    require(H >= 0, "H_to_h_bounds: H must be non-negative");
    return {H / (1.0 + H), H};
}

double phi(double H, double t) {
    require(H > 0, "phi: H must be positive");
    require(t >= 0, "phi: t must be non-negative");
    return H * std::cosh(t) / (1.0 + H * std::sinh(t));
}

double phi_min(double H) {
    require(H > 0, "phi_min: H must be positive");
    return H / std::sqrt(1.0 + H * H);
}

double c_to_h_threshold(double C) {
    require(C >= 0, "c_to_h_threshold: C must be non-negative");
    return C / std::sqrt(1.0 + C * C);
}

double RegimeConstants::eps_threshold(double eps) {
    return (std::log(2.0) - 2.0 * kPi * eps) / (2.0 * kPi * (1.0 - eps) + std::log(2.0));
}

std::vector<std::pair<std::string, std::string>> RegimeConstants::rendered() const {
    const auto prec = precision_for_digits(kDigits);
    BigFloat pi(prec), log2(prec), t(prec), u(prec);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    mpfr_const_log2(log2.get(), MPFR_RNDN);
    std::vector<std::pair<std::string, std::string>> out;

    // log2 / sqrt(4 pi (log2 + pi))
    mpfr_add(t.get(), log2.get(), pi.get(), MPFR_RNDN);
    mpfr_mul(t.get(), t.get(), pi.get(), MPFR_RNDN);
    mpfr_mul_ui(t.get(), t.get(), 4, MPFR_RNDN);
    mpfr_sqrt(t.get(), t.get(), MPFR_RNDN);
    mpfr_div(u.get(), log2.get(), t.get(), MPFR_RNDN);
    out.emplace_back("poisson_bound", u.str(kDigits));

    // (1/4) (log2 / (log2 + 2 pi))^2
    mpfr_mul_ui(t.get(), pi.get(), 2, MPFR_RNDN);
    mpfr_add(t.get(), t.get(), log2.get(), MPFR_RNDN);
    mpfr_div(u.get(), log2.get(), t.get(), MPFR_RNDN);
    const BigFloat h_bound = u;
    mpfr_sqr(u.get(), u.get(), MPFR_RNDN);
    mpfr_div_ui(u.get(), u.get(), 4, MPFR_RNDN);
    out.emplace_back("spectral_bound", u.str(kDigits));

    // log2 / (2 pi)
    mpfr_mul_ui(t.get(), pi.get(), 2, MPFR_RNDN);
    mpfr_div(u.get(), log2.get(), t.get(), MPFR_RNDN);
    out.emplace_back("cheeger_bound", u.str(kDigits));

    out.emplace_back("cheeger_h_bound", h_bound.str(kDigits));
    return out;
}

RegimeConstants regime_constants() {
    const double l2 = std::log(2.0);
    const double r = l2 / (l2 + 2.0 * kPi);
    return {l2 / std::sqrt(4.0 * kPi * (l2 + kPi)), 0.25 * r * r, l2 / (2.0 * kPi), r};
}

double sphere_h_upper(int n) {
    if (n < 4) throw std::invalid_argument("sphere_h_upper: need n >= 4");
    return 30.0 * std::sqrt(2.0 * kPi * (n - 2)) / (2.0 * kPi * ((n - 2) / 2));
}

std::string RayleighBounds::upper_form() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g*c", upper_coef);
    return buf;
}

RayleighBounds rayq_bounds(double h) {
    require(h >= 0, "rayq_bounds: h must be non-negative");
    return {h * h / 4.0, h};
}

}  // namespace wpvol
