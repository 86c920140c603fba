#include "wpvol/exact_arith.hpp"

#include <charconv>
#include <mutex>
#include <sstream>
#include <vector>

namespace wpvol {

namespace {

bool is_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

BigInt parse_bigint(std::string_view s) {
    if (!is_integer_text(s)) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    if (s[0] == '+') s.remove_prefix(1);
    return BigInt(std::string(s), 10);
}

}  // namespace

// ---------------------------------------------------------------- Rat

Rat::Rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rat::Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rat Rat::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_bigint(text), BigInt(1));
    const BigInt den = parse_bigint(text.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("non-positive denominator in '" + std::string(text) + "'");
    return Rat(parse_bigint(text.substr(0, slash)), den);
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

std::string Rat::str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rat Rat::pow(int e) const {
    if (e < 0) return Rat(1) / pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rat(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

// ---------------------------------------------------------------- PiScalar

PiScalar::PiScalar(Rat coeff, int pideg) : coeff_(std::move(coeff)), pideg_(pideg) {
    if (coeff_.is_zero()) pideg_ = 0;
}

PiScalar PiScalar::parse(std::string_view text) {
    const auto star = text.find("*pi^");
    if (star == std::string_view::npos)
        throw std::invalid_argument("expected 'num/den*pi^k', got '" + std::string(text) + "'");
    const Rat c = Rat::parse(text.substr(0, star));
    const auto exp = text.substr(star + 4);
    int k = 0;
    const auto* end = exp.data() + exp.size();
    auto [ptr, ec] = std::from_chars(exp.data(), end, k);
    if (ec != std::errc{} || ptr != end || exp.empty())
        throw std::invalid_argument("malformed pi exponent in '" + std::string(text) + "'");
    if (c.is_zero() && k != 0)
        throw std::invalid_argument("non-canonical zero '" + std::string(text) + "'");
    return {c, k};
}

PiScalar& PiScalar::operator+=(const PiScalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (o.pideg_ != pideg_)
        throw std::domain_error("adding pi^" + std::to_string(o.pideg_) + " to pi^" + std::to_string(pideg_));
    coeff_ += o.coeff_;
    if (coeff_.is_zero()) pideg_ = 0;
    return *this;
}

PiScalar& PiScalar::operator*=(const PiScalar& o) {
    coeff_ *= o.coeff_;
    pideg_ = coeff_.is_zero() ? 0 : pideg_ + o.pideg_;
    return *this;
}

PiScalar& PiScalar::operator/=(const PiScalar& o) {
    coeff_ /= o.coeff_;
    pideg_ = coeff_.is_zero() ? 0 : pideg_ - o.pideg_;
    return *this;
}

PiScalar PiScalar::pow(int e) const {
    if (is_zero()) {
        if (e <= 0) throw std::domain_error("non-positive power of zero");
        return {};
    }
    return {coeff_.pow(e), pideg_ * e};
}

std::string PiScalar::str() const { return coeff_.str() + "*pi^" + std::to_string(pideg_); }

std::ostream& operator<<(std::ostream& os, const PiScalar& x) { return os << x.str(); }

// ---------------------------------------------------------------- PiPoly

PiPoly::PiPoly(const PiScalar& s) {
    if (!s.is_zero()) terms_.emplace(s.pideg(), s.coeff());
}

PiPoly PiPoly::parse(std::string_view text) {
    PiPoly out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto plus = text.find('+', start);
        if (plus == std::string_view::npos) plus = text.size();
        const PiScalar s = PiScalar::parse(text.substr(start, plus - start));
        out += s;
        start = plus + 1;
    }
    return out;
}

Rat PiPoly::coeff(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rat{} : it->second;
}

bool PiPoly::as_scalar(PiScalar* out) const {
    if (terms_.size() > 1) return false;
    if (out) *out = terms_.empty() ? PiScalar{} : PiScalar(terms_.begin()->second, terms_.begin()->first);
    return true;
}

void PiPoly::add_term(int k, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PiPoly& PiPoly::operator+=(const PiPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

PiPoly& PiPoly::operator+=(const PiScalar& s) {
    add_term(s.pideg(), s.coeff());
    return *this;
}

PiPoly& PiPoly::operator-=(const PiPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

PiPoly operator*(const PiPoly& a, const PiPoly& b) {
    PiPoly out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) out.add_term(ka + kb, ca * cb);
    return out;
}

PiPoly& PiPoly::operator*=(const PiPoly& o) { return *this = *this * o; }

PiPoly operator-(const PiPoly& a) {
    PiPoly out;
    for (const auto& [k, c] : a.terms_) out.terms_.emplace(k, -c);
    return out;
}

PiPoly PiPoly::pow(int e) const {
    if (e < 0) {
        PiScalar s;
        if (!as_scalar(&s)) throw std::domain_error("negative power of a non-monomial");
        return PiPoly(s.pow(e));
    }
    PiPoly result(1L), base = *this;
    for (unsigned u = static_cast<unsigned>(e); u; u >>= 1) {
        if (u & 1u) result *= base;
        if (u > 1) base *= base;
    }
    return result;
}

std::string PiPoly::str() const {
    if (terms_.empty()) return PiScalar{}.str();
    std::string out;
    for (const auto& [k, c] : terms_) {
        if (!out.empty()) out += '+';
        out += PiScalar(c, k).str();
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const PiPoly& x) { return os << x.str(); }

// ---------------------------------------------------------------- combinatorics

BigInt factorial(unsigned n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// ---------------------------------------------------------------- Bernoulli, zeta, a_i, b_m

namespace {

std::mutex& bernoulli_mutex() {
    static std::mutex m;
    return m;
}

std::vector<Rat>& bernoulli_table() {
    static std::vector<Rat> t{Rat(1)};
    return t;
}

std::mutex& a_mutex() {
    static std::mutex m;
    return m;
}

// std::map keeps references stable as the table grows.
std::map<unsigned, PiScalar>& a_table() {
    static std::map<unsigned, PiScalar> t;
    return t;
}

}  // namespace

Rat bernoulli(unsigned m) {
    std::lock_guard lock(bernoulli_mutex());
    auto& t = bernoulli_table();
    while (t.size() <= m) {
        const unsigned k = static_cast<unsigned>(t.size());
        // sum_{j=0}^{k} C(k+1, j) B_j = 0
        Rat acc;
        for (unsigned j = 0; j < k; ++j) acc += Rat(binomial(k + 1, j), 1) * t[j];
        t.push_back(-acc / Rat(BigInt(k + 1), BigInt(1)));
    }
    return t[m];
}

PiScalar zeta_even(unsigned i) {
    if (i == 0) throw std::domain_error("zeta_even: pole at i = 0");
    const Rat b = bernoulli(2 * i);
    const Rat two_pow = Rat(2).pow(static_cast<int>(2 * i));
    Rat c = b * two_pow / Rat(2 * factorial(2 * i), BigInt(1));
    if (i % 2 == 0) c = -c;
    return {c, static_cast<int>(2 * i)};
}

const PiScalar& coeff_a(unsigned i) {
    std::lock_guard lock(a_mutex());
    auto& t = a_table();
    auto it = t.find(i);
    if (it != t.end()) return it->second;
    PiScalar v;
    if (i == 0) {
        v = PiScalar(Rat(1, 2));
    } else {
        const Rat factor = Rat(1) - Rat(2).pow(1 - 2 * static_cast<int>(i));
        v = zeta_even(i) * PiScalar(factor);
    }
    return t.emplace(i, std::move(v)).first->second;
}

PiScalar coeff_b(unsigned m) {
    if (m == 0) throw std::domain_error("coeff_b: m must be positive");
    return {Rat(BigInt(m), factorial(2 * m + 1)), 2 * static_cast<int>(m) - 2};
}

}  // namespace wpvol
