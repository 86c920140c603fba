#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "wpvol/random_model.hpp"
#include "wpvol/topology.hpp"
#include "wpvol/volumes.hpp"

using namespace wpvol;

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int N) {
    std::vector<double> x(static_cast<std::size_t>(N)), w(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (N + 0.5)), dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = z;
            for (int j = 2; j <= N; ++j) {
                const double p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = N * (z * p1 - p0) / (z * z - 1);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[static_cast<std::size_t>(i)] = z;
        w[static_cast<std::size_t>(i)] = 2 / ((1 - z * z) * dp * dp);
    }
    return {x, w};
}

PiPoly rat_of(double v) { return PiPoly(Rat(mpq_class(v))); }

// E[N_k] by quadrature over volume_at; the integrand is polynomial, so
// 14 nodes per axis integrate it exactly up to rounding.
double quadrature_expectation(BracketEngine& e, int g, int n, int k, double L) {
    const auto [x, w] = gauss_legendre(14);
    double total = 0;
    std::vector<PiPoly> lengths(static_cast<std::size_t>(n - k));
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    while (true) {
        double weight = 1;
        for (int j = 0; j < k; ++j) {
            const double t = L / 2 * (x[idx[static_cast<std::size_t>(j)]] + 1);
            lengths[static_cast<std::size_t>(j)] = rat_of(t);
            weight *= L / 2 * w[idx[static_cast<std::size_t>(j)]] * t;
        }
        total += weight * to_double(volume_at(e, g, n - k, lengths));
        int j = 0;
        while (j < k && ++idx[static_cast<std::size_t>(j)] == x.size()) idx[static_cast<std::size_t>(j++)] = 0;
        if (j == k) break;
    }
    return total * pairing_multiplicity(n, k).get_d() / to_double(volume(e, g, n));
}

}  // namespace

TEST(CutoffLength, ParseAndRender) {
    const auto a = CutoffLength::parse("3/2");
    EXPECT_EQ(a.kind(), CutoffLength::Kind::rational);
    EXPECT_EQ(a.str(), "3/2");
    const auto b = CutoffLength::parse("1/5pi");
    EXPECT_EQ(b.kind(), CutoffLength::Kind::rational_pi);
    EXPECT_EQ(b.str(), "1/5*pi");
    EXPECT_EQ(CutoffLength::parse("1/5*pi").pow(2), PiScalar(Rat(1, 25), 2));
    EXPECT_NEAR(b.to_double(), kPi / 5, 1e-15);
    EXPECT_THROW(CutoffLength::parse("0"), std::invalid_argument);
    EXPECT_THROW(CutoffLength::parse("-1pi"), std::invalid_argument);
    EXPECT_THROW(CutoffLength::parse("abc"), std::invalid_argument);
}

TEST(Expectation, ClosedFormSmallCase) {
    BracketEngine e;
    const auto r = expected_pants_count(e, 1, 2, 1, CutoffLength::rational(Rat(1)));
    // integral_0^1 (x^2 + 4 pi^2) / 48 * x dx / (pi^4 / 4)
    const PiPoly expected = PiPoly(PiScalar(Rat(1, 48), -4)) + PiPoly(PiScalar(Rat(8, 48), -2));
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(*r.exact, expected);
    EXPECT_NEAR(r.numeric.mid(), (1 + 8 * kPi * kPi) / (48 * std::pow(kPi, 4)), 1e-16);
    const double main = 2 * (M_PI * M_PI / 12) / (M_PI * M_PI * M_PI * M_PI / 4) * (2 * std::cosh(0.5) - 2);
    EXPECT_NEAR(r.main_term, main, 1e-15);
    EXPECT_NEAR(r.rel_deviation, std::abs(r.numeric.mid() / main - 1), 1e-15);
    EXPECT_THROW(expected_pants_count(e, 1, 3, 2, CutoffLength::rational(Rat(1))), std::invalid_argument);
}

TEST(Expectation, AgreesWithQuadrature) {
    BracketEngine e;
    struct Case { int g, n, k; Rat L; };
    for (const auto& c : std::vector<Case>{{0, 5, 1, Rat(1, 2)}, {1, 4, 1, Rat(3, 2)}, {1, 4, 2, Rat(1)},
                                           {2, 4, 2, Rat(3, 4)}, {0, 7, 3, Rat(1, 2)}}) {
        const auto r = expected_pants_count(e, c.g, c.n, c.k, CutoffLength::rational(c.L));
        const double q = quadrature_expectation(e, c.g, c.n, c.k, c.L.to_double());
        EXPECT_NEAR(r.numeric.mid() / q, 1.0, 1e-12) << c.g << "," << c.n << " k=" << c.k;
    }
}

TEST(Expectation, NumericEnclosesExact) {
    BracketEngine e;
    const auto r = expected_pants_count(e, 2, 4, 2, CutoffLength::times_pi(Rat(1, 5)), 30);
    EXPECT_TRUE(r.numeric.contains(eval_numeric(*r.exact, 60)));
}

TEST(Expectation, SmallLengthLimit) {
    BracketEngine e;
    const Rat eps(BigInt(1), BigInt(1000000));
    for (int k = 1; k <= 2; ++k) {
        const auto r = expected_pants_count(e, 1, 5, k, CutoffLength::rational(eps));
        const double scaled = r.numeric.mid() / std::pow(eps.to_double(), 2 * k);
        const double limit = pairing_multiplicity(5, k).get_d() *
                             to_double(volume(e, 1, 5 - k) / volume(e, 1, 5)) * std::pow(0.5, k);
        EXPECT_NEAR(scaled / limit, 1.0, 1e-9) << k;
    }
}

TEST(FactorialMoment, WarningsAndErrors) {
    BracketEngine e;
    const auto ok = factorial_moment(e, 1, 4, 1, CutoffLength::rational(Rat(1)));
    EXPECT_TRUE(ok.warnings.empty());
    EXPECT_EQ(*ok.exact, *expected_pants_count(e, 1, 4, 1, CutoffLength::rational(Rat(1))).exact);
    const auto far = factorial_moment(e, 1, 4, 1, CutoffLength::rational(Rat(2)));
    EXPECT_EQ(far.warnings.size(), 1u);
    EXPECT_THROW(factorial_moment(e, 1, 4, 3, CutoffLength::rational(Rat(1))), std::invalid_argument);
}

TEST(Integration, SinhSeries) {
    // integral_0^L 2 sinh(x/2) dx = 4 cosh(L/2) - 4, using the Taylor series to order 30.
    for (const auto& L : {CutoffLength::rational(Rat(1)), CutoffLength::times_pi(Rat(1, 5)),
                          CutoffLength::rational(Rat(7, 4))}) {
        PiPoly acc;
        for (int j = 0; 2 * j + 1 <= 30; ++j) {
            const BigInt den = factorial(static_cast<unsigned>(2 * j + 1)) * (BigInt(1) << (2 * j));
            acc += PiPoly(PiScalar(Rat(BigInt(1), den)) * integrate_power(2 * j + 1, L));
        }
        const double l = L.to_double();
        EXPECT_NEAR(to_double(acc), 4 * std::cosh(l / 2) - 4, 1e-14) << L.str();
    }
}

TEST(Integration, SimplexMonteCarlo) {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0, 1);
    const auto T = CutoffLength::rational(Rat(1));
    for (int k = 1; k <= 4; ++k) {
        const std::vector<int> ones(static_cast<std::size_t>(k), 1);
        const double exact = to_double(simplex_monomial_integral(ones, T));
        EXPECT_NEAR(exact, 1.0 / std::tgamma(2 * k + 1.0), 1e-16);
        const int samples = 2000000;
        double s = 0, s2 = 0;
        for (int i = 0; i < samples; ++i) {
            double sum = 0, prod = 1;
            for (int j = 0; j < k; ++j) {
                const double x = u(rng);
                sum += x;
                prod *= x;
            }
            const double v = sum <= 1 ? prod : 0;
            s += v;
            s2 += v * v;
        }
        const double mean = s / samples, sigma = std::sqrt((s2 / samples - mean * mean) / samples);
        EXPECT_NEAR(mean, exact, 5 * sigma) << k;
    }
    const std::vector<int> tri{1, 1};
    EXPECT_EQ(simplex_monomial_integral(tri, CutoffLength::times_pi(Rat(2))), PiScalar(Rat(16, 24), 4));
}

TEST(Poisson, LambdaAndPmf) {
    const auto l = poisson_lambda(2 * kPi, std::log(3.0) / kPi);
    EXPECT_NEAR(l.value, 2.0 / 3, 1e-14);
    EXPECT_EQ(l.warnings.size(), 1u);
    EXPECT_EQ(poisson_lambda(3, 0).value, 0.0);
    EXPECT_NEAR(poisson_lambda(4, 0.1).value / poisson_lambda(2, 0.1).value, 4.0, 1e-14);
    EXPECT_TRUE(poisson_lambda(4, 0.05).warnings.empty());
    // log 2 / sqrt(4 pi (log 2 + pi)) is about 0.0998, so C = 0.1 is just outside.
    EXPECT_EQ(poisson_lambda(4, 0.1).warnings.size(), 1u);
    EXPECT_THROW(poisson_lambda(-1, 0.1), std::invalid_argument);
    EXPECT_EQ(poisson_pmf(0, 0), 1.0);
    EXPECT_NEAR(poisson_pmf(1, 1), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(poisson_pmf(2, 0), std::exp(-2.0), 1e-15);
    double total = 0;
    for (int j = 0; j < 60; ++j) total += poisson_pmf(3.5, j);
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Poisson, Simulation) {
    const auto zero = simulate_poisson(0, 1000, 1);
    ASSERT_EQ(zero.pmf.size(), 1u);
    EXPECT_EQ(zero.pmf[0], 1.0);

    const auto one = simulate_poisson(1, 1000000, 42);
    EXPECT_NEAR(one.mean, 1.0, 3 * 1e-3);
    EXPECT_NEAR(one.variance, 1.0, 0.01);

    const auto two = simulate_poisson(2, 1000000, 42);
    // sd of N(N-1) for Poisson(2) is sqrt(40); 5 sigma over 1e6 trials.
    EXPECT_NEAR(two.factorial_moments[1], 4.0, 5 * std::sqrt(40.0) / 1000);

    const auto again = simulate_poisson(2, 1000000, 42);
    EXPECT_EQ(two.pmf, again.pmf);
}

TEST(SecondMoment, DecompositionAndRange) {
    BracketEngine e;
    for (const auto& [g, n] : std::vector<std::pair<int, int>>{{1, 4}, {2, 5}, {3, 6}}) {
        for (const Rat& L : {Rat(1, 4), Rat(1), Rat(7, 4)}) {
            const auto s = second_moment_bound(e, g, n, CutoffLength::rational(L));
            EXPECT_EQ(s.square, s.mean + s.falling2);
            EXPECT_GE(s.bound, 0);
            EXPECT_LE(s.bound, 1);
            const double m = to_double(s.mean);
            EXPECT_NEAR(s.bound, m * m / to_double(s.square), 1e-14);
            const PiScalar t = volume(e, g, n - 1) * volume(e, g, n - 1) / (volume(e, g, n) * volume(e, g, n - 2));
            EXPECT_EQ(PiScalar(s.target), t);
        }
    }
    const auto tiny = second_moment_bound(e, 2, 5, CutoffLength::rational(Rat(BigInt(1), BigInt(100000))));
    EXPECT_LT(tiny.bound, 1e-8);
    EXPECT_THROW(second_moment_bound(e, 2, 3, CutoffLength::rational(Rat(1))), std::invalid_argument);
}

TEST(LengthScale, Examples) {
    EXPECT_EQ(length_scale(16, 4).value(), Rat(1));
    EXPECT_EQ(length_scale(1, 1).value(), Rat(1));
    EXPECT_EQ(length_scale(16, 8).value(), Rat(BigInt(707106781187), BigInt(1000000000000)));
    EXPECT_NEAR(length_scale(81, 1, ScaleVariant::case_two).to_double(), std::sqrt(3.0), 1e-11);
    EXPECT_THROW(length_scale(0, 1), std::invalid_argument);
}

TEST(CheegerUpper, HandAssembly) {
    BracketEngine e;
    const double c = 0.05, x = 2 * kPi * c;
    // (2,1) has chi = 3, so only m = 1 with splits (0,3|0,4), (0,3|1,2), (1,1|1,2); weight C(1,1) = 1.
    const double pi2 = kPi * kPi;
    const double v21 = 29 * std::pow(kPi, 8) / 192;
    const double ratios[3] = {2 * pi2 / v21, std::pow(kPi, 4) / 4 / v21, pi2 / 12 * std::pow(kPi, 4) / 4 / v21};
    const int n1s[3] = {3, 3, 1};
    double expected = 0;
    for (int s = 0; s < 3; ++s) {
        double series = 0;
        for (int k = 1; k <= n1s[s]; ++k) series += std::pow(x, 2 * k) / (std::tgamma(k + 1.0) * std::tgamma(2 * k + 1.0));
        expected += ratios[s] * series * std::exp(x);
    }
    const auto got = cheeger_prob_upper(e, 2, 1, Rat(1, 20));
    EXPECT_NEAR(got.value / expected, 1.0, 1e-13);
    EXPECT_TRUE(got.warnings.empty());
    EXPECT_GT(got.value, 0);
}

TEST(CheegerUpper, LimitsAndFlags) {
    BracketEngine e;
    EXPECT_LT(cheeger_prob_upper(e, 3, 2, Rat(BigInt(1), BigInt(1000000000))).value, 1e-12);
    EXPECT_TRUE(cheeger_prob_upper(e, 3, 2, Rat(1103, 10000)).warnings.empty());
    EXPECT_EQ(cheeger_prob_upper(e, 3, 2, Rat(1104, 10000)).warnings.size(), 1u);
    EXPECT_THROW(cheeger_prob_upper(e, 3, 2, Rat(0)), std::invalid_argument);
}

TEST(Pvol2, Values) {
    BracketEngine e;
    EXPECT_EQ(pvol2_sum(e, 1, 3, Rat(1, 20)), 0.0);
    // (3,1): chi = 5, m = 2 only, weight max_i C(1, i) = 1.
    double expected = 0;
    const double xm = 2 * kPi * 2 * 0.05;
    for (const auto& s : enumerate_splits(2, 3, 1))
        expected += to_double(volume(e, s.g1, s.n1) * volume(e, s.g2, s.n2)) / to_double(volume(e, 3, 1));
    expected *= std::exp(xm + 3 * std::cbrt(xm * xm));
    const double got = pvol2_sum(e, 3, 1, Rat(1, 20));
    EXPECT_GT(got, 0);
    EXPECT_NEAR(got / expected, 1.0, 1e-13);
    EXPECT_THROW(pvol2_sum(e, 3, 1, Rat(1, 9)), std::invalid_argument);
    EXPECT_THROW(pvol2_sum(e, 3, 1, Rat(0)), std::invalid_argument);
}

TEST(TwoCurve, SmallCLimit) {
    BracketEngine e;
    const Rat C(BigInt(1), BigInt(100000));
    const auto b = two_curve_expectation_bound(e, 2, 2, C);
    const double leading = to_double(volume(e, 1, 3) / volume(e, 2, 2)) * std::pow(2 * kPi, 4) / 24;
    EXPECT_NEAR(b.value / std::pow(C.to_double(), 4) / leading, 1.0, 1e-8);
    const auto mid = two_curve_expectation_bound(e, 2, 2, Rat(1, 20));
    EXPECT_GT(mid.value, 0);
    EXPECT_NEAR(mid.scaled, mid.value * 4, 1e-18);
    EXPECT_THROW(two_curve_expectation_bound(e, 0, 5, Rat(1, 20)), UnstableSignature);
}
