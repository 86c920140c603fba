#include "wpvol/interval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace wpvol {

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(value_, o.precision());
    mpfr_set(value_, o.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(value_, o.precision());
    mpfr_swap(value_, o.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(value_, o.precision());
        mpfr_set(value_, o.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(value_, o.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::str(int digits) const {
    if (mpfr_zero_p(value_)) return "0";
    std::string fmt = "%." + std::to_string(std::max(digits - 1, 0)) + "Re";
    char* buf = nullptr;
    mpfr_asprintf(&buf, fmt.c_str(), value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

NumInterval::NumInterval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (mpfr_greater_p(lo_.get(), hi_.get())) throw std::logic_error("interval with lo > hi");
}

bool NumInterval::contains(const NumInterval& inner) const {
    return mpfr_lessequal_p(lo_.get(), inner.lo_.get()) && mpfr_lessequal_p(inner.hi_.get(), hi_.get());
}

bool NumInterval::contains_zero() const { return certain_sign() == 0; }

int NumInterval::certain_sign() const {
    if (mpfr_sgn(lo_.get()) > 0) return 1;
    if (mpfr_sgn(hi_.get()) < 0) return -1;
    return 0;
}

double NumInterval::width() const {
    BigFloat w(hi_.precision());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w.to_double(MPFR_RNDU);
}

double NumInterval::mid() const {
    BigFloat m(hi_.precision() + 1);
    mpfr_add(m.get(), hi_.get(), lo_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.to_double();
}

std::string NumInterval::mid_str(int digits) const {
    BigFloat m(hi_.precision() + 1);
    mpfr_add(m.get(), hi_.get(), lo_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.str(digits);
}

mpfr_prec_t precision_for_digits(int digits) {
    if (digits < 1) throw std::invalid_argument("precision_digits must be >= 1");
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 32;
}

namespace {

// Encloses pi^k for any integer k.
std::pair<BigFloat, BigFloat> pi_power(int k, mpfr_prec_t prec) {
    BigFloat lo(prec), hi(prec);
    if (k == 0) {
        mpfr_set_ui(lo.get(), 1, MPFR_RNDN);
        mpfr_set_ui(hi.get(), 1, MPFR_RNDN);
        return {std::move(lo), std::move(hi)};
    }
    BigFloat pl(prec), ph(prec);
    mpfr_const_pi(pl.get(), MPFR_RNDD);
    mpfr_const_pi(ph.get(), MPFR_RNDU);
    const unsigned long e = static_cast<unsigned long>(std::abs(k));
    if (k > 0) {
        mpfr_pow_ui(lo.get(), pl.get(), e, MPFR_RNDD);
        mpfr_pow_ui(hi.get(), ph.get(), e, MPFR_RNDU);
    } else {
        BigFloat t(prec);
        mpfr_pow_ui(t.get(), ph.get(), e, MPFR_RNDU);
        mpfr_ui_div(lo.get(), 1, t.get(), MPFR_RNDD);
        mpfr_pow_ui(t.get(), pl.get(), e, MPFR_RNDD);
        mpfr_ui_div(hi.get(), 1, t.get(), MPFR_RNDU);
    }
    return {std::move(lo), std::move(hi)};
}

void accumulate(const PiScalar& x, mpfr_prec_t prec, BigFloat& lo, BigFloat& hi) {
    if (x.is_zero()) return;
    BigFloat qlo(prec), qhi(prec);
    mpfr_set_q(qlo.get(), x.coeff().get().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(qhi.get(), x.coeff().get().get_mpq_t(), MPFR_RNDU);
    auto [plo, phi] = pi_power(x.pideg(), prec);
    BigFloat tlo(prec), thi(prec);
    if (x.coeff().sign() > 0) {
        mpfr_mul(tlo.get(), qlo.get(), plo.get(), MPFR_RNDD);
        mpfr_mul(thi.get(), qhi.get(), phi.get(), MPFR_RNDU);
    } else {
        mpfr_mul(tlo.get(), qlo.get(), phi.get(), MPFR_RNDD);
        mpfr_mul(thi.get(), qhi.get(), plo.get(), MPFR_RNDU);
    }
    mpfr_add(lo.get(), lo.get(), tlo.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi.get(), thi.get(), MPFR_RNDU);
}

}  // namespace

NumInterval eval_numeric(const PiScalar& x, int precision_digits) {
    const auto prec = precision_for_digits(precision_digits);
    BigFloat lo(prec), hi(prec);
    accumulate(x, prec, lo, hi);
    return {std::move(lo), std::move(hi)};
}

NumInterval eval_numeric(const PiPoly& x, int precision_digits) {
    const auto prec = precision_for_digits(precision_digits);
    BigFloat lo(prec), hi(prec);
    for (const auto& [k, c] : x.terms()) accumulate(PiScalar(c, k), prec, lo, hi);
    return {std::move(lo), std::move(hi)};
}

NumInterval eval_numeric(const Rat& x, int precision_digits) {
    return eval_numeric(PiScalar(x), precision_digits);
}

double to_double(const PiScalar& x) { return eval_numeric(x, 30).mid(); }
double to_double(const PiPoly& x) { return eval_numeric(x, 30).mid(); }

int compare(const PiPoly& a, const PiPoly& b) {
    const PiPoly diff = a - b;
    if (diff.is_zero()) return 0;
    for (int digits = 50; digits <= 3200; digits *= 2) {
        const int s = eval_numeric(diff, digits).certain_sign();
        if (s != 0) return s;
    }
    throw std::runtime_error("compare: could not separate " + a.str() + " and " + b.str() + " at 3200 digits");
}

}  // namespace wpvol
