#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "wpvol/cheeger_geometry.hpp"

using namespace wpvol;

namespace {
constexpr double kPi = std::numbers::pi;
const double kLog2 = std::log(2.0);
}  // namespace

TEST(CurveH, Examples) {
    EXPECT_DOUBLE_EQ(curve_H({2 * kPi, 2 * kPi}), 1.0);
    EXPECT_DOUBLE_EQ(curve_H({1, 2 * kPi}), 1 / (2 * kPi));
    EXPECT_NEAR(curve_H({30 * std::sqrt(8 * kPi), 4 * kPi}), 15 * std::sqrt(2 * kPi) / kPi, 1e-12);
    EXPECT_THROW(curve_H({0, 1}), std::invalid_argument);
    EXPECT_THROW(curve_H({1, -1}), std::invalid_argument);
}

TEST(Collar, HalfWidth) {
    const double fixed = 2 * std::asinh(1.0);
    EXPECT_NEAR(collar_halfwidth(fixed), std::asinh(1.0), 1e-12);
    EXPECT_NEAR(collar_halfwidth(2), std::asinh(1 / std::sinh(1.0)), 1e-15);
    EXPECT_NEAR(collar_halfwidth(2), 0.771937, 1e-6);
    EXPECT_LT(collar_halfwidth(60), 1e-12);
}

TEST(NeighborCurve, Examples) {
    const auto same = neighbor_curve(2, 0);
    EXPECT_DOUBLE_EQ(same.length, 2);
    EXPECT_DOUBLE_EQ(same.area_offset, 0);
    const auto n = neighbor_curve(2, std::asinh(1.0));
    EXPECT_NEAR(n.length, 2 * std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(n.area_offset, 2, 1e-14);
    // arcsinh 1 exceeds the half-width 0.7719 of a length-2 collar.
    EXPECT_TRUE(n.outside_collar);
    EXPECT_FALSE(neighbor_curve(2, 0.7).outside_collar);
}

TEST(NeighborCurve, HyperbolicIdentity) {
    std::mt19937_64 rng(314);
    std::uniform_real_distribution<double> len(0.05, 5), dist(0, 3);
    for (int i = 0; i < 1000; ++i) {
        const double l = len(rng), t = dist(rng);
        const auto c = neighbor_curve(l, t);
        const double lhs = c.length * c.length - c.area_offset * c.area_offset;
        EXPECT_NEAR(lhs / (l * l), 1.0, 1e-12);
    }
}

TEST(Conversions, HToH) {
    EXPECT_EQ(H_to_h_bounds(0), std::make_pair(0.0, 0.0));
    EXPECT_EQ(H_to_h_bounds(1), std::make_pair(0.5, 1.0));
    const double H = kLog2 / (2 * kPi);
    const auto [lo, hi] = H_to_h_bounds(H);
    EXPECT_NEAR(lo, kLog2 / (2 * kPi + kLog2), 1e-15);
    EXPECT_DOUBLE_EQ(hi, H);
    for (double h = 0.01; h < 10; h *= 1.7) {
        const auto [a, b] = H_to_h_bounds(h);
        EXPECT_LT(a, b);
    }
}

TEST(Phi, GridMinimum) {
    for (double H : {0.05, 0.11, 0.5, 1.0, 2.0}) {
        EXPECT_DOUBLE_EQ(phi(H, 0), H);
        double best = phi(H, 0);
        for (int i = 1; i <= 50000; ++i) best = std::min(best, phi(H, i * 1e-4));
        EXPECT_NEAR(best, phi_min(H), 1e-6) << H;
        EXPECT_NEAR(phi_min(H), H / std::sqrt(1 + H * H), 1e-15);
        EXPECT_NEAR(phi(H, std::asinh(H)), phi_min(H), 1e-14);
        for (int i = 0; i <= 500; ++i) EXPECT_GE(phi(H, i * 1e-2), phi_min(H) - 1e-15);
    }
    EXPECT_NEAR(phi_min(1), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Conversions, CToH) {
    EXPECT_EQ(c_to_h_threshold(0), 0.0);
    EXPECT_NEAR(c_to_h_threshold(1), 1 / std::sqrt(2.0), 1e-15);
    double prev = -1;
    for (double c = 0; c < 50; c += 0.25) {
        const double v = c_to_h_threshold(c);
        EXPECT_GT(v, prev);
        EXPECT_LT(v, 1);
        prev = v;
    }
    // Inverse of phi_min: C = h / sqrt(1 - h^2).
    for (double H = 0.01; H < 20; H *= 1.3) {
        const double h = phi_min(H);
        EXPECT_NEAR(h / std::sqrt(1 - h * h), H, 1e-12 * std::max(1.0, H));
        EXPECT_NEAR(c_to_h_threshold(H), h, 1e-15);
    }
}

TEST(RegimeConstants, Values) {
    const auto r = regime_constants();
    EXPECT_NEAR(r.cheeger_bound, 0.110318, 1e-6);
    const double q = kLog2 / (kLog2 + 2 * kPi);
    EXPECT_NEAR(r.spectral_bound, q * q / 4, 1e-17);
    EXPECT_NEAR(r.spectral_bound, 0.00246795, 1e-8);
    EXPECT_NEAR(r.cheeger_h_bound, kLog2 / (2 * kPi + kLog2), 1e-15);
    EXPECT_NEAR(RegimeConstants::eps_threshold(0), r.cheeger_h_bound, 1e-15);
    EXPECT_NEAR(r.poisson_bound, kLog2 / std::sqrt(4 * kPi * (kLog2 + kPi)), 1e-15);
    const auto rendered = r.rendered();
    ASSERT_EQ(rendered.size(), 4u);
    EXPECT_EQ(rendered[2].first, "cheeger_bound");
    EXPECT_NEAR(std::stod(rendered[2].second), r.cheeger_bound, 1e-16);
}

TEST(Sphere, UpperBound) {
    EXPECT_NEAR(sphere_h_upper(4), 30 * std::sqrt(4 * kPi) / (2 * kPi), 1e-12);
    EXPECT_NEAR(sphere_h_upper(4), 16.93, 0.01);
    EXPECT_NEAR(sphere_h_upper(6), 15 * std::sqrt(2 * kPi) / kPi, 1e-12);
    for (int n = 100; n <= 3200; n *= 2) EXPECT_NEAR(sphere_h_upper(4 * n) / sphere_h_upper(n), 0.5, 0.01) << n;
    EXPECT_THROW(sphere_h_upper(3), std::invalid_argument);
}

TEST(Rayleigh, Bounds) {
    EXPECT_EQ(rayq_bounds(0).lower, 0.0);
    EXPECT_EQ(rayq_bounds(0).upper_form(), "0*c");
    EXPECT_EQ(rayq_bounds(1).lower, 0.25);
    EXPECT_EQ(rayq_bounds(1).upper_form(), "1*c");
    EXPECT_NEAR(rayq_bounds(0.2).lower, 0.01, 1e-17);
    EXPECT_EQ(rayq_bounds(0.2).upper_form(), "0.20000000000000001*c");
}
