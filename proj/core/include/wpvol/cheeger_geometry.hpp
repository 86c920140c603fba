#pragma once

// Closed-form hyperbolic geometry behind the Cheeger estimates: collars,
// neighbouring curves, the geodesic Cheeger ratio and its conversions.

#include <string>
#include <utility>
#include <vector>

namespace wpvol {

struct CurveData {
    double length = 0;
    /// Area of the smaller side of the complement.
    double area_small = 0;
};

/// length / area_small. Throws std::invalid_argument on non-positive fields.
double curve_H(const CurveData& c);

/// arcsinh(1 / sinh(l / 2)).
double collar_halfwidth(double l);

struct NeighborCurve {
    double length = 0;        ///< l cosh t
    double area_offset = 0;   ///< l sinh t, added to or subtracted from the base area by the caller
    bool outside_collar = false;
};

/// Equidistant curve at distance t from a geodesic of length l.
NeighborCurve neighbor_curve(double l, double t);

/// (H / (1 + H), H).
std::pair<double, double> H_to_h_bounds(double H);

/// H cosh t / (1 + H sinh t).
double phi(double H, double t);
/// H / sqrt(1 + H^2), attained at t = arcsinh H.
double phi_min(double H);

/// C / sqrt(1 + C^2).
double c_to_h_threshold(double C);

struct RegimeConstants {
    double poisson_bound;     ///< log 2 / sqrt(4 pi (log 2 + pi))
    double spectral_bound;    ///< (1/4) (log 2 / (log 2 + 2 pi))^2
    double cheeger_bound;     ///< log 2 / (2 pi)
    double cheeger_h_bound;   ///< log 2 / (2 pi + log 2)

    /// (log 2 - 2 pi eps) / (2 pi (1 - eps) + log 2).
    static double eps_threshold(double eps);
    /// Name/value pairs rendered to 30 significant digits.
    std::vector<std::pair<std::string, std::string>> rendered() const;
};

RegimeConstants regime_constants();

/// 30 sqrt(2 pi (n - 2)) / (2 pi floor((n - 2) / 2)); requires n >= 4.
double sphere_h_upper(int n);

struct RayleighBounds {
    double lower;       ///< h^2 / 4
    double upper_coef;  ///< h, to be multiplied by Buser's unspecified constant c
    std::string upper_form() const;
};

RayleighBounds rayq_bounds(double h);

}  // namespace wpvol
