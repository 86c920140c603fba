#include <cmath>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "wpvol/interval.hpp"
#include "wpvol/topology.hpp"
#include "wpvol/volumes.hpp"

using namespace wpvol;

namespace {

const PiScalar kPi2(Rat(1), 2);

std::vector<Signature> stable_up_to(int dim) {
    std::vector<Signature> out;
    for (int g = 0; 3 * g - 3 <= dim; ++g)
        for (int n = 0; 3 * g - 3 + n <= dim; ++n)
            if (Signature{g, n}.stable()) out.push_back({g, n});
    return out;
}

PiPoly sum_pow(const std::vector<PiPoly>& xs, int e) {
    PiPoly s;
    for (const auto& x : xs) {
        PiPoly p(1);
        for (int i = 0; i < e; ++i) p *= x;
        s += p;
    }
    return s;
}

}  // namespace

TEST(Volume, PublishedValues) {
    BracketEngine e;
    EXPECT_EQ(volume(e, 0, 3), PiScalar(Rat(1)));
    EXPECT_EQ(volume(e, 0, 4), PiScalar(Rat(2), 2));
    EXPECT_EQ(volume(e, 1, 1), PiScalar(Rat(1, 12), 2));
    EXPECT_EQ(volume(e, 1, 2), PiScalar(Rat(1, 4), 4));
    EXPECT_EQ(volume(e, 0, 5), PiScalar(Rat(10), 4));
    EXPECT_EQ(volume(e, 0, 6), PiScalar(Rat(244, 3), 6));
    EXPECT_EQ(volume(e, 1, 3), PiScalar(Rat(14, 9), 6));
    EXPECT_EQ(volume(e, 2, 0), PiScalar(Rat(43, 2160), 6));
    EXPECT_EQ(volume(e, 2, 1), PiScalar(Rat(29, 192), 8));
    EXPECT_EQ(volume(e, 1, 4), PiScalar(Rat(529, 36), 8));
    EXPECT_THROW(volume(e, 0, 2), UnstableSignature);
    EXPECT_THROW(volume(e, 1, 0), UnstableSignature);
}

TEST(VolumePoly, SmallTables) {
    BracketEngine e;
    const auto v11 = volume_poly(e, 1, 1);
    EXPECT_EQ(v11.constant_term(), PiScalar(Rat(1, 12), 2));
    EXPECT_EQ(v11.coefficient(std::vector<int>{1}), PiScalar(Rat(1, 48)));
    EXPECT_EQ(v11.coefficients().size(), 2u);
    EXPECT_EQ(v11.dump(), "wpvol v1\n1|1|0:1|1/12*pi^2\n1|1|1:1|1/48*pi^0\n");

    const auto v04 = volume_poly(e, 0, 4);
    EXPECT_EQ(v04.constant_term(), PiScalar(Rat(2), 2));
    EXPECT_EQ(v04.coefficient(std::vector<int>{0, 0, 1, 0}), PiScalar(Rat(1, 2)));

    const auto v03 = volume_poly(e, 0, 3);
    EXPECT_EQ(v03.coefficients().size(), 1u);
    EXPECT_EQ(v03.constant_term(), PiScalar(Rat(1)));
}

// Closed forms from the literature, compared at random rational lengths.
TEST(VolumeAt, ClosedFormPolynomials) {
    BracketEngine e;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(0, 40);
    const PiPoly pi2(kPi2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<PiPoly> x;
        for (int i = 0; i < 5; ++i) x.emplace_back(Rat(BigInt(num(rng)), BigInt(7)));

        const std::vector<PiPoly> x1(x.begin(), x.begin() + 1), x2(x.begin(), x.begin() + 2),
            x4(x.begin(), x.begin() + 4);
        EXPECT_EQ(volume_at(e, 1, 1, x1), (sum_pow(x1, 2) + PiPoly(4) * pi2) * PiPoly(Rat(1, 48)));
        EXPECT_EQ(volume_at(e, 0, 4, x4), (sum_pow(x4, 2) + PiPoly(4) * pi2) * PiPoly(Rat(1, 2)));

        const PiPoly s2 = sum_pow(x2, 2);
        EXPECT_EQ(volume_at(e, 1, 2, x2),
                  (PiPoly(4) * pi2 + s2) * (PiPoly(12) * pi2 + s2) * PiPoly(Rat(1, 192)));

        const PiPoly q2 = sum_pow(x, 2), q4 = sum_pow(x, 4);
        // sum_{i<j} L_i^2 L_j^2 = (q2^2 - q4) / 2
        const PiPoly cross = (q2 * q2 - q4) * PiPoly(Rat(1, 2));
        EXPECT_EQ(volume_at(e, 0, 5, x), PiPoly(Rat(1, 8)) * q4 + PiPoly(Rat(1, 2)) * cross +
                                             PiPoly(3) * pi2 * q2 + PiPoly(PiScalar(Rat(10), 4)));
    }
}

TEST(VolumeAt, SpecExamplesAndErrors) {
    BracketEngine e;
    EXPECT_EQ(volume_at(e, 1, 1, std::vector<PiPoly>{PiPoly()}), PiPoly(PiScalar(Rat(1, 12), 2)));
    EXPECT_EQ(volume_at(e, 1, 1, std::vector<PiPoly>{PiPoly(1)}),
              PiPoly(PiScalar(Rat(1, 12), 2)) + PiPoly(Rat(1, 48)));
    const std::vector<PiPoly> two_pi{PiPoly(PiScalar(Rat(2), 1)), PiPoly(), PiPoly(), PiPoly()};
    EXPECT_EQ(volume_at(e, 0, 4, two_pi), PiPoly(PiScalar(Rat(4), 2)));
    EXPECT_THROW(volume_at(e, 1, 2, std::vector<PiPoly>{PiPoly(1)}), std::invalid_argument);
}

// volume_at against a direct sum over the stored coefficient table.
TEST(VolumeAt, AgreesWithCoefficientTable) {
    BracketEngine e;
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(0, 9);
    for (const auto s : std::vector<Signature>{{0, 6}, {1, 4}, {2, 2}, {3, 1}}) {
        std::vector<PiPoly> x;
        std::vector<Rat> xr;
        for (int i = 0; i < s.n; ++i) {
            xr.emplace_back(BigInt(num(rng)), BigInt(3));
            x.emplace_back(xr.back());
        }
        const auto poly = volume_poly(e, s.g, s.n);
        // Sum over all ordered index tuples with the given sorted multiset.
        PiPoly direct;
        std::vector<int> d(static_cast<std::size_t>(s.n), 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
            if (i == d.size()) {
                Rat mono(1);
                for (std::size_t j = 0; j < d.size(); ++j) mono *= xr[j].pow(2 * d[j]);
                direct += PiPoly(poly.coefficient(d) * PiScalar(mono));
                return;
            }
            for (int v = 0; v <= left; ++v) {
                d[i] = v;
                rec(i + 1, left - v);
            }
            d[i] = 0;
        };
        rec(0, s.dim());
        EXPECT_EQ(volume_at(e, s.g, s.n, x), direct) << s.g << "," << s.n;
    }
}

TEST(Ratios, SpecExamples) {
    BracketEngine e;
    EXPECT_EQ(mz_ratio(e, 1, 1), PiScalar(Rat(1, 3), -2));
    // (2 * 2 pi^2) / (10 pi^4)
    EXPECT_EQ(mz_ratio(e, 0, 4), PiScalar(Rat(2, 5), -2));
    EXPECT_EQ(mz_ratio(e, 0, 5), PiScalar(Rat(45, 122), -2));
    EXPECT_EQ(ratio_R(e, 0, 5), Rat(75, 122));
    EXPECT_EQ(ratio_R(e, 1, 2), Rat(27, 56));
    EXPECT_THROW(ratio_R(e, 2, 0), UnstableSignature);
    EXPECT_THROW(ratio_R(e, 0, 3), UnstableSignature);
}

TEST(Ratios, RBoundsOnGrid) {
    BracketEngine e;
    const double lower = 0.5 - M_PI * M_PI / 20;
    for (const auto s : stable_up_to(11)) {
        if (s.n < 1 || !Signature{s.g, s.n - 1}.stable()) continue;
        const Rat r = ratio_R(e, s.g, s.n);
        EXPECT_GE(r.to_double(), lower) << s.g << "," << s.n;
        EXPECT_LE(r, Rat(1)) << s.g << "," << s.n;
    }
}

TEST(Identity, ResidualZero) {
    BracketEngine e;
    for (const auto s : stable_up_to(9)) {
        const auto c = identity_check(e, s.g, s.n);
        EXPECT_TRUE(c.holds()) << s.g << "," << s.n << " residual " << c.residual;
    }
    // Same identity, hand-assembled for (1,1): V11/V12 = 1/3 pi^-2 and
    // 1/2 (b1 c1 - b2 c2) with c1 = 8/pi^2, c2 = [tau_2 tau_0]/V12 = 40/pi^4.
    const PiPoly rhs = PiPoly(Rat(1, 2)) * (PiPoly(PiScalar(Rat(1, 6)) * PiScalar(Rat(8), -2)) -
                                            PiPoly(PiScalar(Rat(1, 60), 2) * PiScalar(Rat(40), -4)));
    EXPECT_EQ(rhs, PiPoly(PiScalar(Rat(1, 3), -2)));
}

TEST(Cor1, Examples) {
    BracketEngine e;
    EXPECT_NEAR(cor1_bound_check(e, 0, 4), std::sqrt(2.0) / 2, 1e-12);
    EXPECT_NEAR(cor1_bound_check(e, 1, 1), M_PI * M_PI / 12, 1e-12);
    EXPECT_NEAR(cor1_bound_check(e, 1, 2), M_PI * M_PI * std::sqrt(2.0) / 16, 1e-12);
}

TEST(LRatio, Examples) {
    BracketEngine e;
    const auto [lhs, rhs] = lratio_check(e, 1, SplitPair{0, 3, 1, 2}, 1, 3);
    EXPECT_NEAR(lhs, 9 / (56 * M_PI * M_PI), 1e-15);
    EXPECT_NEAR(rhs, 4.0 / 27, 1e-15);
    // chi = 2m: m^m m^m / (2m)^{2m} = 4^{-m}
    const auto [l2, r2] = lratio_check(e, 2, SplitPair{0, 4, 0, 4}, 0, 6);
    EXPECT_GT(l2, 0);
    EXPECT_DOUBLE_EQ(r2, 1.0 / 16);
    EXPECT_THROW(lratio_check(e, 1, SplitPair{0, 3, 0, 9}, 1, 2), std::invalid_argument);
}

TEST(Invariants, Sandwich) {
    BracketEngine e;
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<long> num(0, 40);
    for (const auto s : stable_up_to(8)) {
        if (s.n == 0) continue;
        const double v = to_double(volume(e, s.g, s.n));
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<PiPoly> x;
            double half_sum = 0;
            for (int i = 0; i < s.n; ++i) {
                const Rat xi(BigInt(num(rng)), BigInt(10));
                half_sum += xi.to_double() / 2;
                x.emplace_back(xi);
            }
            const double vx = to_double(volume_at(e, s.g, s.n, x));
            EXPECT_LE(v, vx * (1 + 1e-12)) << s.g << "," << s.n;
            EXPECT_LE(vx, std::exp(half_sum) * v * (1 + 1e-12)) << s.g << "," << s.n;
        }
    }
}

TEST(Invariants, GenusTradeMonotone) {
    BracketEngine e;
    for (const auto s : stable_up_to(12)) {
        if (s.g < 1) continue;
        const int g = s.g, n = s.n - 2;
        if (n < 0 || !Signature{g - 1, n + 4}.stable()) continue;
        EXPECT_LE(compare(volume(e, g - 1, n + 4), volume(e, g, n + 2)), 0) << g << "," << n;
    }
}

TEST(Invariants, SinhBound) {
    BracketEngine e;
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> num(1, 30);
    for (const auto s : stable_up_to(12)) {
        if (s.n < 1 || s.n * s.n > s.g) continue;
        const double v = to_double(volume(e, s.g, s.n));
        for (int k = 1; k <= s.n; ++k)
            for (int trial = 0; trial < 4; ++trial) {
                std::vector<PiPoly> x(static_cast<std::size_t>(s.n));
                double bound = 1;
                for (int i = 0; i < k; ++i) {
                    const Rat xi(BigInt(num(rng)), BigInt(10));
                    x[static_cast<std::size_t>(i)] = PiPoly(Rat(2) * xi);
                    bound *= std::sinh(xi.to_double()) / xi.to_double();
                }
                EXPECT_LE(to_double(volume_at(e, s.g, s.n, x)) / v, bound) << s.g << "," << s.n << " k=" << k;
            }
    }
}

TEST(Invariants, AbelBounds) {
    BracketEngine e;
    const double lo_factor = 1.0 / 6 - M_PI * M_PI / 60;
    for (const auto s : stable_up_to(10)) {
        const int top = 3 * s.g - 2 + s.n;
        double sum = 0;
        for (int m = 1; m <= top; ++m)
            sum += (m % 2 ? 1 : -1) * to_double(coeff_b(static_cast<unsigned>(m)) * e.c_m(s.g, s.n, m));
        const double c1 = to_double(e.c_m(s.g, s.n, 1));
        const double b_next = to_double(coeff_b(static_cast<unsigned>(top + 1)));
        EXPECT_GE(sum, lo_factor * c1) << s.g << "," << s.n;
        EXPECT_LE(sum, c1 / 6 + b_next * c1) << s.g << "," << s.n;
    }
}
