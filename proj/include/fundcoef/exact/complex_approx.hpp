#pragma once

#include <mpfr.h>

#include <cmath>
#include <complex>
#include <limits>
#include <ostream>

#include "fundcoef/errors.hpp"
#include "fundcoef/exact/cyclotomic.hpp"

namespace fundcoef {

/// A complex float together with a guaranteed bound on its absolute error.
struct ComplexApprox {
    double re = 0.0;
    double im = 0.0;
    double err_bound = 0.0;

    std::complex<double> value() const { return {re, im}; }
    double abs() const { return std::hypot(re, im); }

    static ComplexApprox exact(std::complex<double> z) { return {z.real(), z.imag(), 0.0}; }
    static ComplexApprox from(std::complex<double> z, double err) { return {z.real(), z.imag(), err}; }
};

namespace detail {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

// Rounding slack for one floating operation producing a value of magnitude |z|.
inline double rounding_slack(std::complex<double> z) { return 4 * kUnitRoundoff * std::abs(z); }

class MpfrValue {
public:
    explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~MpfrValue() { mpfr_clear(v_); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

}  // namespace detail

inline ComplexApprox operator+(const ComplexApprox& a, const ComplexApprox& b) {
    std::complex<double> z = a.value() + b.value();
    return ComplexApprox::from(z, a.err_bound + b.err_bound + detail::rounding_slack(z));
}

inline ComplexApprox operator-(const ComplexApprox& a, const ComplexApprox& b) {
    std::complex<double> z = a.value() - b.value();
    return ComplexApprox::from(z, a.err_bound + b.err_bound + detail::rounding_slack(z));
}

inline ComplexApprox operator*(const ComplexApprox& a, const ComplexApprox& b) {
    std::complex<double> z = a.value() * b.value();
    double err = a.abs() * b.err_bound + b.abs() * a.err_bound + a.err_bound * b.err_bound +
                 8 * detail::kUnitRoundoff * a.abs() * b.abs();
    return ComplexApprox::from(z, err);
}

inline ComplexApprox operator/(const ComplexApprox& a, const ComplexApprox& b) {
    double bm = b.abs();
    if (bm <= b.err_bound) throw precondition_error("division by an approximation that may be zero");
    std::complex<double> z = a.value() / b.value();
    // |a/b - a'/b'| <= (|a|eb + |b|ea) / (|b|(|b|-eb)) up to first-order rounding.
    double err = (a.abs() * b.err_bound + bm * a.err_bound) / (bm * (bm - b.err_bound)) +
                 16 * detail::kUnitRoundoff * std::abs(z);
    return ComplexApprox::from(z, err);
}

inline std::ostream& operator<<(std::ostream& os, const ComplexApprox& z) {
    return os << "(" << z.re << ", " << z.im << " +- " << z.err_bound << ")";
}

/// Principal embedding zeta_m -> exp(2 pi i / m), evaluated with `precision` working bits.
inline ComplexApprox embed(const CycNumber& x, unsigned precision = 53) {
    require(precision >= 53, "embed: precision must be at least 53 bits");
    const unsigned m = x.order();
    const auto& c = x.coeffs();
    const mpfr_prec_t work = static_cast<mpfr_prec_t>(precision) + 16;
    detail::MpfrValue re(work), im(work), angle(work), cs(work), sn(work), coef(work), twopi(work);
    mpfr_set_zero(re.get(), 1);
    mpfr_set_zero(im.get(), 1);
    mpfr_const_pi(twopi.get(), MPFR_RNDN);
    mpfr_mul_ui(twopi.get(), twopi.get(), 2, MPFR_RNDN);
    double abs_sum = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        abs_sum += std::abs(c[k].get_d());
        mpfr_mul_ui(angle.get(), twopi.get(), static_cast<unsigned long>(k), MPFR_RNDN);
        mpfr_div_ui(angle.get(), angle.get(), m, MPFR_RNDN);
        mpfr_sin_cos(sn.get(), cs.get(), angle.get(), MPFR_RNDN);
        mpfr_set_q(coef.get(), c[k].get_mpq_t(), MPFR_RNDN);
        mpfr_mul(cs.get(), cs.get(), coef.get(), MPFR_RNDN);
        mpfr_mul(sn.get(), sn.get(), coef.get(), MPFR_RNDN);
        mpfr_add(re.get(), re.get(), cs.get(), MPFR_RNDN);
        mpfr_add(im.get(), im.get(), sn.get(), MPFR_RNDN);
    }
    ComplexApprox out;
    out.re = mpfr_get_d(re.get(), MPFR_RNDN);
    out.im = mpfr_get_d(im.get(), MPFR_RNDN);
    // Each term carries relative error below (k+8) * 2^-work (angle, sin/cos, product, sum);
    // doubling abs_sum covers the inexact double sum used for the bound itself.
    const double term_rel = static_cast<double>(c.size() + 8) * std::ldexp(1.0, -static_cast<int>(work) + 1);
    out.err_bound = 2 * abs_sum * term_rel * static_cast<double>(c.size() + 1) +
                    detail::kUnitRoundoff * (std::abs(out.re) + std::abs(out.im));
    return out;
}

/// Square root with arguments in (-pi, pi), hence nonnegative real part.
inline ComplexApprox principal_sqrt(const ComplexApprox& z) {
    // Distance from z to the closed negative real axis.
    double dist = z.re <= 0 ? std::abs(z.im) : z.abs();
    if (dist <= z.err_bound)
        throw branch_cut_error("principal_sqrt: argument within error of the branch cut");
    std::complex<double> w = std::sqrt(z.value());
    // Both candidate roots lie in the right half-plane, so |sqrt a + sqrt b| >= |sqrt a|.
    double err = z.err_bound / std::sqrt(std::max(z.abs() - z.err_bound, std::numeric_limits<double>::min())) +
                 detail::rounding_slack(w);
    return ComplexApprox::from(w, err);
}

/// exp(2 pi i x) for a floating phase x known to within `phase_err` (absolute).
inline ComplexApprox exp_2pi_i(std::complex<double> x, double phase_err = 0.0) {
    const double two_pi = 2 * std::acos(-1.0);
    std::complex<double> arg(-two_pi * x.imag(), two_pi * x.real());
    std::complex<double> v = std::exp(arg);
    double mag = std::abs(v);
    double arg_err = two_pi * (phase_err + 4 * detail::kUnitRoundoff * std::abs(x)) + 4 * detail::kUnitRoundoff;
    // |exp(a+e) - exp(a)| <= |exp(a)| * (exp(|e|) - 1)
    double err = mag * std::expm1(arg_err) + detail::rounding_slack(v);
    return ComplexApprox::from(v, err);
}

}  // namespace fundcoef
