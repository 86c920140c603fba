#include "wpvol/random_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "wpvol/topology.hpp"
#include "wpvol/volumes.hpp"

namespace wpvol {

namespace {

constexpr double kPi = std::numbers::pi;

double big_to_double(const BigInt& x) { return x.get_d(); }

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

CutoffLength::CutoffLength(Kind kind, Rat value) : kind_(kind), value_(std::move(value)) {
    if (value_.sign() <= 0) throw std::invalid_argument("cut-off length must be positive");
}

CutoffLength CutoffLength::rational(Rat value) { return {Kind::rational, std::move(value)}; }
CutoffLength CutoffLength::times_pi(Rat value) { return {Kind::rational_pi, std::move(value)}; }

CutoffLength CutoffLength::parse(std::string_view text) {
    std::string s(text);
    for (const char* suffix : {"*pi", "pi"}) {
        const std::string_view sv(suffix);
        if (s.size() > sv.size() && s.ends_with(sv)) return times_pi(Rat::parse(s.substr(0, s.size() - sv.size())));
    }
    return rational(Rat::parse(s));
}

PiScalar CutoffLength::pow(int e) const {
    return PiScalar(value_.pow(e), kind_ == Kind::rational_pi ? e : 0);
}

double CutoffLength::to_double() const { return wpvol::to_double(exact()); }

std::string CutoffLength::kind_str() const { return kind_ == Kind::rational ? "rational" : "rational_pi"; }

std::string CutoffLength::str() const { return value_.str() + (kind_ == Kind::rational_pi ? "*pi" : ""); }

double collar_cutoff() { return 2.0 * std::asinh(1.0); }

PiScalar integrate_power(int j, const CutoffLength& L) {
    if (j < 0) throw std::invalid_argument("integrate_power: negative exponent");
    return L.pow(j + 1) / PiScalar(Rat(j + 1));
}

PiScalar simplex_monomial_integral(std::span<const int> exponents, const CutoffLength& T) {
    BigInt num = 1;
    int total = static_cast<int>(exponents.size());
    for (int a : exponents) {
        if (a < 0) throw std::invalid_argument("simplex_monomial_integral: negative exponent");
        num *= factorial(static_cast<unsigned>(a));
        total += a;
    }
    return T.pow(total) * PiScalar(Rat(num, factorial(static_cast<unsigned>(total))));
}

ExpectationResult expected_pants_count(BracketEngine& engine, int g, int n, int k, const CutoffLength& L,
                                       int digits) {
    if (k < 1 || n < 2 * k)
        throw std::invalid_argument("expected_pants_count: need n >= 2k >= 2 (n=" + std::to_string(n) +
                                    ", k=" + std::to_string(k) + ")");
    const Signature inner{g, n - k};
    if (!Signature{g, n}.stable()) throw UnstableSignature(g, n);
    if (!inner.stable()) throw UnstableSignature(g, n - k);

    // integral_{[0,L]^k} V_{g,n-k}(x_1..x_k, 0..0) prod x_i dx, term by term.
    PiPoly integral;
    std::vector<int> d(static_cast<std::size_t>(n - k), 0);
    std::function<void(int, int)> rec = [&](int i, int room) {
        if (i == k) {
            PiScalar term = volume_coefficient(engine, g, d);
            if (term.is_zero()) return;
            for (int j = 0; j < k; ++j) term *= integrate_power(2 * d[static_cast<std::size_t>(j)] + 1, L);
            integral += term;
            return;
        }
        for (int e = 0; e <= room; ++e) {
            d[static_cast<std::size_t>(i)] = e;
            rec(i + 1, room - e);
        }
        d[static_cast<std::size_t>(i)] = 0;
    };
    rec(0, inner.dim());

    const PiScalar vn = volume(engine, g, n);
    const PiPoly exact = PiPoly(PiScalar(Rat(pairing_multiplicity(n, k), BigInt(1))) / vn) * integral;

    BigInt falling = 1;
    for (int i = 0; i < 2 * k; ++i) falling *= n - i;
    const double lv = L.to_double();
    const double main = big_to_double(falling) * to_double(volume(engine, g, n - k) / vn) *
                        std::pow(2.0 * std::cosh(lv / 2.0) - 2.0, k);

    ExpectationResult out{exact, eval_numeric(exact, digits), main, 0, {}};
    out.rel_deviation = std::abs(out.numeric.mid() / main - 1.0);
    return out;
}

ExpectationResult factorial_moment(BracketEngine& engine, int g, int n, int r, const CutoffLength& L, int digits) {
    ExpectationResult out = expected_pants_count(engine, g, n, r, L, digits);
    if (L.to_double() >= collar_cutoff())
        out.warnings.push_back("L=" + L.str() + " >= 2arcsinh(1): pants are not guaranteed disjoint");
    return out;
}

double poisson_regime_bound() { return std::log(2.0) / std::sqrt(4.0 * kPi * (std::log(2.0) + kPi)); }

Flagged poisson_lambda(double a, double C) {
    if (a < 0 || C < 0) throw std::invalid_argument("poisson_lambda: a and C must be non-negative");
    Flagged out{a * a / (4.0 * kPi * kPi) * (std::cosh(kPi * C) - 1.0), {}};
    if (C >= poisson_regime_bound())
        out.warnings.push_back("C=" + fmt(C) + " >= log2/sqrt(4pi(log2+pi))");
    return out;
}

double poisson_pmf(double lambda, int j) {
    if (lambda < 0 || j < 0) throw std::invalid_argument("poisson_pmf: negative argument");
    if (lambda == 0) return j == 0 ? 1.0 : 0.0;
    return std::exp(j * std::log(lambda) - lambda - std::lgamma(j + 1.0));
}

SecondMoment second_moment_bound(BracketEngine& engine, int g, int n, const CutoffLength& L, int digits) {
    if (n < 4) throw std::invalid_argument("second_moment_bound: need n >= 4");
    const ExpectationResult first = factorial_moment(engine, g, n, 1, L, digits);
    const ExpectationResult second = factorial_moment(engine, g, n, 2, L, digits);
    SecondMoment out;
    out.mean = *first.exact;
    out.falling2 = *second.exact;
    out.square = out.mean + out.falling2;
    out.warnings = first.warnings;
    const double m = eval_numeric(out.mean, digits).mid();
    out.bound = m * m / eval_numeric(out.square, digits).mid();
    out.target = ratio_R(engine, g, n - 1);
    return out;
}

CutoffLength length_scale(int g, int n, ScaleVariant variant, int digits) {
    if (g < 1 || n < 1) throw std::invalid_argument("length_scale: need g, n >= 1");
    const auto prec = precision_for_digits(digits + 10);
    BigFloat x(prec), t(prec);
    // sqrt_ratio: (g / n^2)^{1/4}; case_two: (g / n^2)^{1/8}.
    mpfr_set_si(x.get(), g, MPFR_RNDN);
    mpfr_div_si(x.get(), x.get(), n, MPFR_RNDN);
    mpfr_div_si(x.get(), x.get(), n, MPFR_RNDN);
    mpfr_rootn_ui(x.get(), x.get(), variant == ScaleVariant::sqrt_ratio ? 4 : 8, MPFR_RNDN);
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    mpfr_mul_z(t.get(), x.get(), scale.get_mpz_t(), MPFR_RNDN);
    mpfr_round(t.get(), t.get());
    BigInt num;
    mpfr_get_z(num.get_mpz_t(), t.get(), MPFR_RNDN);
    return CutoffLength::rational(Rat(num, scale));
}

double cheeger_regime_bound() { return std::log(2.0) / (2.0 * kPi); }

Flagged cheeger_prob_upper(BracketEngine& engine, int g, int n, const Rat& C) {
    if (C.sign() <= 0) throw std::invalid_argument("cheeger_prob_upper: C must be positive");
    const Signature sig{g, n};
    if (!sig.stable()) throw UnstableSignature(g, n);
    Flagged out;
    const double c = C.to_double();
    if (c >= cheeger_regime_bound()) out.warnings.push_back("C=" + C.str() + " >= log2/(2pi)");
    const int chi = sig.euler();
    if (chi < 2) return out;
    const PiScalar v = volume(engine, g, n);
    for (int m = 1; m <= chi / 2; ++m) {
        const double weight = big_to_double(split_weight(m, n));
        const double x = 2.0 * kPi * m * c;
        for (const SplitPair& s : enumerate_splits(m, g, n)) {
            const double ratio = to_double(volume(engine, s.g1, s.n1) * volume(engine, s.g2, s.n2) / v);
            double series = 0;
            for (int k = 1; k <= s.n1; ++k)
                series += std::pow(x, 2 * k) / (std::tgamma(k + 1.0) * std::tgamma(2 * k + 1.0));
            out.value += weight * ratio * series * std::exp(x);
        }
    }
    return out;
}

double pvol2_sum(BracketEngine& engine, int g, int n, const Rat& u) {
    const double uv = u.to_double();
    if (u.sign() <= 0 || uv >= cheeger_regime_bound())
        throw std::invalid_argument("pvol2_sum: u=" + u.str() + " outside (0, log2/(2pi))");
    const Signature sig{g, n};
    if (!sig.stable()) throw UnstableSignature(g, n);
    const int chi = sig.euler();
    if (chi < 4) return 0.0;
    const PiScalar v = volume(engine, g, n);
    double total = 0;
    for (int m = 2; m <= chi / 2; ++m) {
        const double x = 2.0 * kPi * m * uv;
        const double lm = x + 3.0 * std::cbrt(x * x);
        const double weight = big_to_double(split_weight(m, n));
        for (const SplitPair& s : enumerate_splits(m, g, n))
            total += weight * to_double(volume(engine, s.g1, s.n1) * volume(engine, s.g2, s.n2) / v) * std::exp(lm);
    }
    return total;
}

TwoCurveBound two_curve_expectation_bound(BracketEngine& engine, int g, int n, const Rat& C) {
    if (C.sign() <= 0) throw std::invalid_argument("two_curve_expectation_bound: C must be positive");
    if (!Signature{g, n}.stable()) throw UnstableSignature(g, n);
    const Signature inner{g - 1, n + 1};
    if (!inner.stable() || g < 1) throw UnstableSignature(g - 1, n + 1);
    const CutoffLength T = CutoffLength::times_pi(Rat(2) * C);
    PiPoly integral;
    std::vector<int> d(static_cast<std::size_t>(n + 1), 0);
    for (int a = 0; a <= inner.dim(); ++a) {
        for (int b = 0; a + b <= inner.dim(); ++b) {
            d[0] = a;
            d[1] = b;
            const PiScalar c = volume_coefficient(engine, inner.g, d);
            if (c.is_zero()) continue;
            const int exps[2] = {2 * a + 1, 2 * b + 1};
            integral += c * simplex_monomial_integral(exps, T);
        }
    }
    TwoCurveBound out;
    out.exact = PiPoly(PiScalar(Rat(1)) / volume(engine, g, n)) * integral;
    out.value = to_double(out.exact);
    out.scaled = out.value * (g + n);
    return out;
}

PoissonSample simulate_poisson(double lambda, std::int64_t trials, std::uint64_t seed) {
    if (lambda < 0 || trials < 1) throw std::invalid_argument("simulate_poisson: need lambda >= 0, trials >= 1");
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> counts(1, 0);
    if (lambda == 0) {
        counts[0] = trials;
    } else {
        std::poisson_distribution<int> dist(lambda);
        for (std::int64_t t = 0; t < trials; ++t) {
            const auto v = static_cast<std::size_t>(dist(rng));
            if (v >= counts.size()) counts.resize(v + 1, 0);
            ++counts[v];
        }
    }
    PoissonSample out;
    out.factorial_moments.assign(4, 0.0);
    const double nt = static_cast<double>(trials);
    double second = 0;
    for (std::size_t v = 0; v < counts.size(); ++v) {
        const double p = static_cast<double>(counts[v]) / nt;
        out.pmf.push_back(p);
        out.mean += p * static_cast<double>(v);
        second += p * static_cast<double>(v) * static_cast<double>(v);
        double falling = 1;
        for (int r = 1; r <= 4; ++r) {
            falling *= static_cast<double>(v) - (r - 1);
            out.factorial_moments[static_cast<std::size_t>(r - 1)] += p * falling;
        }
    }
    out.variance = second - out.mean * out.mean;
    return out;
}

}  // namespace wpvol
