#include "wpvol/volumes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "wpvol/interval.hpp"
#include "wpvol/topology.hpp"

namespace wpvol {

VolumePolynomial::VolumePolynomial(Signature sig, std::map<std::vector<int>, PiScalar> coeffs)
    : sig_(sig), coeffs_(std::move(coeffs)) {}

PiScalar VolumePolynomial::coefficient(std::span<const int> d) const {
    std::vector<int> key(d.begin(), d.end());
    std::sort(key.begin(), key.end(), std::greater<>());
    const auto it = coeffs_.find(key);
    return it == coeffs_.end() ? PiScalar::zero() : it->second;
}

PiScalar VolumePolynomial::constant_term() const {
    const std::vector<int> zeros(static_cast<std::size_t>(sig_.n), 0);
    return coefficient(zeros);
}

std::string VolumePolynomial::dump() const {
    // Sorted by degree, then descending lexicographic, like the bracket cache.
    std::vector<std::pair<BracketKey, PiScalar>> rows;
    rows.reserve(coeffs_.size());
    for (const auto& [d, c] : coeffs_) rows.emplace_back(BracketKey(sig_.g, d), c);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.indices() > b.first.indices();
    });
    std::ostringstream os;
    os << kHeader << '\n';
    for (const auto& [key, c] : rows)
        os << sig_.g << '|' << sig_.n << '|' << key.multiset_str() << '|' << c.str() << '\n';
    return os.str();
}

PiScalar volume_coefficient(BracketEngine& engine, int g, std::span<const int> d) {
    BigInt den = 1;
    int degree = 0;
    for (int di : d) {
        den *= factorial(static_cast<unsigned>(2 * di + 1));
        degree += di;
    }
    const BigInt four_pow = BigInt(1) << (2 * degree);
    return engine.bracket(g, d) * PiScalar(Rat(BigInt(1), den * four_pow));
}

PiScalar volume(BracketEngine& engine, int g, int n) {
    if (!Signature{g, n}.stable()) throw UnstableSignature(g, n);
    const std::vector<int> zeros(static_cast<std::size_t>(n), 0);
    return engine.bracket(g, zeros);
}

VolumePolynomial volume_poly(BracketEngine& engine, int g, int n) {
    const Signature sig{g, n};
    if (!sig.stable()) throw UnstableSignature(g, n);
    std::map<std::vector<int>, PiScalar> coeffs;
    for (auto& d : multisets_up_to(n, sig.dim())) {
        PiScalar c = volume_coefficient(engine, g, d);
        if (!c.is_zero()) coeffs.emplace(std::move(d), std::move(c));
    }
    return {sig, std::move(coeffs)};
}

PiPoly volume_at(BracketEngine& engine, int g, int n, std::span<const PiPoly> lengths) {
    const Signature sig{g, n};
    if (!sig.stable()) throw UnstableSignature(g, n);
    if (static_cast<int>(lengths.size()) != n)
        throw std::invalid_argument("volume_at: expected " + std::to_string(n) + " lengths, got " +
                                    std::to_string(lengths.size()));
    // Sweep the nonzero lengths one at a time. A state is the multiset of
    // positive exponents handed out so far; its value is the matching
    // monomial symmetric sum in the squared lengths seen so far.
    const int dim = sig.dim();
    std::map<std::vector<int>, PiPoly> states{{{}, PiPoly(1)}};
    for (const PiPoly& x : lengths) {
        if (x.is_zero()) continue;
        const PiPoly sq = x * x;
        std::vector<PiPoly> powers{PiPoly(1)};
        std::map<std::vector<int>, PiPoly> next;
        for (const auto& [parts, value] : states) {
            int used = 0;
            for (int p : parts) used += p;
            next[parts] += value;
            for (int e = 1; used + e <= dim; ++e) {
                if (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * sq);
                std::vector<int> grown = parts;
                grown.insert(std::upper_bound(grown.begin(), grown.end(), e, std::greater<>()), e);
                next[grown] += value * powers[static_cast<std::size_t>(e)];
            }
        }
        states = std::move(next);
    }
    PiPoly total;
    for (auto& [parts, value] : states) {
        std::vector<int> d = parts;
        d.resize(static_cast<std::size_t>(n), 0);
        const PiScalar c = volume_coefficient(engine, g, d);
        if (!c.is_zero()) total += PiPoly(c) * value;
    }
    return total;
}

PiScalar mz_ratio(BracketEngine& engine, int g, int n) {
    return PiScalar(Rat(2 * g - 2 + n)) * volume(engine, g, n) / volume(engine, g, n + 1);
}

Rat ratio_R(BracketEngine& engine, int g, int n) {
    if (n < 1 || !Signature{g, n - 1}.stable()) throw UnstableSignature(g, n - 1);
    const PiScalar v = volume(engine, g, n);
    const PiScalar r = v * v / (volume(engine, g, n - 1) * volume(engine, g, n + 1));
    if (r.pideg() != 0) throw std::logic_error("ratio_R: pi-degrees do not cancel");
    return r.coeff();
}

IdentityCheck identity_check(BracketEngine& engine, int g, int n) {
    IdentityCheck out;
    out.lhs = mz_ratio(engine, g, n);
    PiPoly sum;
    for (int m = 1; m <= 3 * g - 2 + n; ++m) {
        const PiScalar term = coeff_b(static_cast<unsigned>(m)) * engine.c_m(g, n, m);
        if (m % 2 == 1) sum += PiPoly(term);
        else sum -= PiPoly(term);
    }
    out.rhs = PiPoly(PiScalar(Rat(1, 2))) * sum;
    out.residual = PiPoly(out.lhs) - out.rhs;
    return out;
}

double cor1_bound_check(BracketEngine& engine, int g, int n) {
    const int chi = 2 * g - 2 + n;
    if (chi < 1) throw UnstableSignature(g, n);
    const int e = chi - 1;
    const PiScalar denom(Rat(factorial(static_cast<unsigned>(e)) * (BigInt(1) << (2 * e)), BigInt(1)), 2 * e);
    return to_double(volume(engine, g, n) / denom) * std::sqrt(static_cast<double>(chi));
}

std::pair<double, double> lratio_check(BracketEngine& engine, int m, const SplitPair& split, int g, int n) {
    if (!in_split_set(split, m, g, n))
        throw std::invalid_argument("lratio_check: " + split.str(n) + " is not in I_" + std::to_string(m));
    const int chi = 2 * g - 2 + n;
    const double lhs =
        to_double(volume(engine, split.g1, split.n1) * volume(engine, split.g2, split.n2) / volume(engine, g, n));
    // m^m (chi - m)^{chi - m} / chi^chi, exact then converted.
    const Rat rhs = Rat(m).pow(m) * Rat(chi - m).pow(chi - m) / Rat(chi).pow(chi);
    return {lhs, rhs.to_double()};
}

}  // namespace wpvol
