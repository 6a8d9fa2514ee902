#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "fundcoef/errors.hpp"
#include "fundcoef/exact/complex_approx.hpp"
#include "fundcoef/numth/arith.hpp"
#include "fundcoef/quadform/half_integral.hpp"

namespace fundcoef {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// 2x2 integer matrix (a b; c d).
struct SL2Element {
    long long a, b, c, d;
};

/// j(g, tau) = (c/d) eps_d^-1 sqrt(c tau + d) for g in Gamma_0(4), principal square root.
inline ComplexApprox half_integral_j(const SL2Element& g, Complex tau) {
    require(g.a * g.d - g.b * g.c == 1, "half_integral_j: determinant must be 1");
    require(numth::mod(g.c, 4) == 0, "half_integral_j: c must be divisible by 4");
    require(tau.imag() > 0, "half_integral_j: tau must lie in the upper half-plane");
    const int symbol = numth::shimura_symbol(g.c, g.d);
    // eps_d = 1 for d = 1 mod 4, i for d = 3 mod 4
    const Complex eps_inv = numth::mod(g.d, 4) == 1 ? Complex(1, 0) : Complex(0, -1);
    Complex w = static_cast<double>(g.c) * tau + static_cast<double>(g.d);
    ComplexApprox root = principal_sqrt(ComplexApprox::from(w, detail::rounding_slack(w)));
    ComplexApprox factor = ComplexApprox::exact(static_cast<double>(symbol) * eps_inv);
    return factor * root;
}

namespace detail {

inline Complex quad_form(const IntMatrix& gram, const ComplexVector& x, const ComplexVector& y) {
    // x^t T y with T = gram / 2
    Complex s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * (0.5 * static_cast<double>(gram(i, j))) * y[j];
    return s;
}

inline double real_quad_form(const IntMatrix& gram, const std::vector<double>& x) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) s += x[i] * 0.5 * static_cast<double>(gram(i, j)) * x[j];
    return s;
}

// Lower bound for the smallest eigenvalue of T.
inline double min_eigen_lower_bound(const HalfIntegralMatrix& t) {
    const auto& g = t.gram();
    const std::size_t n = t.n();
    if (n == 1) return 0.5 * static_cast<double>(g(0, 0));
    if (n == 2) {
        double a = 0.5 * g(0, 0), b = 0.5 * g(0, 1), c = 0.5 * g(1, 1);
        double tr = a + c, det = a * c - b * b;
        double disc = std::sqrt(std::max(0.0, tr * tr - 4 * det));
        // (tr - disc)/2 = 2 det / (tr + disc), the stable form
        return (2 * det / (tr + disc)) * (1 - 1e-12);
    }
    // product of the remaining n-1 eigenvalues is at most (tr/(n-1))^(n-1)
    double tr = static_cast<double>(t.trace());
    double det = determinant(t.gram()).get_d() / std::pow(2.0, static_cast<double>(n));
    return det / std::pow(tr / static_cast<double>(n - 1), static_cast<double>(n - 1)) * (1 - 1e-12);
}

inline std::vector<double> mu_tilde(const HalfIntegralMatrix& t, const IntVector& mu) {
    // (2T)^-1 mu = adj(2T) mu / det(2T)
    BigMatrix adj = adjugate(t.gram());
    double det = determinant(t.gram()).get_d();
    std::vector<double> out(t.n(), 0.0);
    for (std::size_t i = 0; i < t.n(); ++i) {
        BigInt s = 0;
        for (std::size_t j = 0; j < t.n(); ++j) s += adj[i][j] * static_cast<long>(mu[j]);
        out[i] = s.get_d() / det;
    }
    return out;
}

}  // namespace detail

/// Bound on sum over ||l||_inf > radius of |exp(T[l + mu~] tau + 2 (l + mu~)^t T z)|.
inline double theta_tail_bound(const HalfIntegralMatrix& t, const IntVector& mu, Complex tau, const ComplexVector& z,
                               long long radius) {
    require(tau.imag() > 0, "theta: Im(tau) must be positive");
    const std::size_t n = t.n();
    const double y = tau.imag();
    std::vector<double> v(n), w(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = z[i].imag();
    auto mt = detail::mu_tilde(t, mu);
    double shift = 0;
    for (std::size_t i = 0; i < n; ++i) shift = std::max(shift, std::abs(mt[i] + v[i] / y));
    // |term| = exp(2 pi T[v]/y) exp(-2 pi y T[x + v/y]) and T[u] >= lambda |u|^2 >= lambda (|l|_inf - shift)^2
    const double lambda = detail::min_eigen_lower_bound(t);
    const double pre = std::exp(2 * M_PI * detail::real_quad_form(t.gram(), v) / y);
    const double alpha = 2 * M_PI * y * lambda;
    if (static_cast<double>(radius) + 1 - shift < 1) return std::numeric_limits<double>::infinity();
    double sum = 0;
    const double nn = static_cast<double>(n);
    for (long long k = radius + 1;; ++k) {
        double dist = static_cast<double>(k) - shift;
        double shell = 2 * nn * std::pow(2.0 * static_cast<double>(k) + 1, nn - 1);
        double term = shell * std::exp(-alpha * dist * dist);
        sum += term;
        // The remaining terms decay at least geometrically with ratio below 1/2 once this holds.
        double ratio = std::pow((2.0 * k + 3) / (2.0 * k + 1), nn - 1) * std::exp(-alpha * (2 * dist + 1));
        if (ratio < 0.5 && term < 1e-300 * std::max(1.0, sum)) break;
        if (ratio < 0.5 && term <= sum * 1e-17) {
            sum += term * ratio / (1 - ratio);
            break;
        }
        if (k > radius + 100000) return std::numeric_limits<double>::infinity();
    }
    return pre * sum;
}

/// Smallest box radius whose tail bound is at most `target`.
inline long long theta_radius(const HalfIntegralMatrix& t, const IntVector& mu, Complex tau, const ComplexVector& z,
                              double target) {
    for (long long b = 1; b < 10000; ++b)
        if (theta_tail_bound(t, mu, tau, z, b) <= target) return b;
    throw precondition_error("theta_radius: no radius below 10000 reaches the tail target");
}

/// Theta_{mu,T}(tau, z) summed over ||l||_inf <= radius, with the tail included in err_bound.
inline ComplexApprox theta_eval(const HalfIntegralMatrix& t, const IntVector& mu, Complex tau, const ComplexVector& z,
                                long long radius) {
    require(tau.imag() > 0, "theta_eval: Im(tau) must be positive");
    require(mu.size() == t.n() && z.size() == t.n(), "theta_eval: dimension mismatch");
    if (!t.is_positive_definite()) throw precondition_error("theta_eval: T must be positive definite");
    require(radius >= 0, "theta_eval: radius must be nonnegative");
    const std::size_t n = t.n();
    auto mt = detail::mu_tilde(t, mu);
    std::vector<long long> l(n, -radius);
    Complex sum = 0;
    double abs_sum = 0, phase_err = 0;
    ComplexVector x(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(l[i]) + mt[i];
        Complex arg = detail::quad_form(t.gram(), x, x) * tau + 2.0 * detail::quad_form(t.gram(), x, z);
        Complex term = std::exp(Complex(-2 * M_PI * arg.imag(), 2 * M_PI * arg.real()));
        sum += term;
        double mag = std::abs(term);
        abs_sum += mag;
        // relative error of one term: rounding in arg (scaled by its size) and in exp
        phase_err += mag * (2 * M_PI * std::abs(arg) * 16 * detail::kUnitRoundoff + 8 * detail::kUnitRoundoff);
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++l[i] <= radius) break;
            l[i] = -radius;
        }
        if (i == n) break;
    }
    const std::size_t terms = static_cast<std::size_t>(std::pow(2.0 * radius + 1, static_cast<double>(n)));
    double err = theta_tail_bound(t, mu, tau, z, radius) + phase_err +
                 abs_sum * static_cast<double>(terms) * detail::kUnitRoundoff;
    return ComplexApprox::from(sum, err);
}

/// theta_eval with the radius chosen so the tail is below `tail_target`.
inline ComplexApprox theta_eval_auto(const HalfIntegralMatrix& t, const IntVector& mu, Complex tau, const ComplexVector& z,
                                     double tail_target = 1e-12) {
    return theta_eval(t, mu, tau, z, theta_radius(t, mu, tau, z, tail_target));
}

/// (Theta_mu |_{n/2,T} g)(tau, z) = Theta_mu(g tau, z/(c tau + d)) sqrt(c tau + d)^-n exp(-c T[z]/(c tau + d)).
inline ComplexApprox theta_slash(const HalfIntegralMatrix& t, const IntVector& mu, const SL2Element& g, Complex tau,
                                 const ComplexVector& z, double tail_target = 1e-12) {
    require(g.a * g.d - g.b * g.c == 1, "theta_slash: determinant must be 1");
    const Complex j = static_cast<double>(g.c) * tau + static_cast<double>(g.d);
    const Complex gtau = (static_cast<double>(g.a) * tau + static_cast<double>(g.b)) / j;
    ComplexVector zz(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) zz[i] = z[i] / j;
    ComplexApprox th = theta_eval_auto(t, mu, gtau, zz, tail_target);
    ComplexApprox root = principal_sqrt(ComplexApprox::from(j, detail::rounding_slack(j)));
    ComplexApprox pow = ComplexApprox::exact(1.0);
    for (std::size_t i = 0; i < t.n(); ++i) pow = pow * root;
    const Complex phase = -static_cast<double>(g.c) * detail::quad_form(t.gram(), z, z) / j;
    ComplexApprox e = exp_2pi_i(phase, 64 * detail::kUnitRoundoff * (std::abs(phase) + 1));
    return th * e / pow;
}

struct LawCheck {
    bool pass = false;
    ComplexApprox lhs;
    ComplexApprox rhs;
    double deviation = 0;  // |lhs - rhs| as floats
    double err_bound = 0;  // combined error of both sides
};

/// Passes when the certified distance deviation + err_bound is at most tol.
inline LawCheck finish_law_check(const ComplexApprox& lhs, const ComplexApprox& rhs, double tol) {
    LawCheck out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.deviation = std::abs(lhs.value() - rhs.value());
    out.err_bound = lhs.err_bound + rhs.err_bound;
    out.pass = out.deviation + out.err_bound <= tol;
    return out;
}

/// Theta_mu |_{n/2,T} (1 1; 0 1) = exp(T^-1[mu/2]) Theta_mu. `phase` overrides T^-1[mu/2].
inline LawCheck theta_T_law_check(const HalfIntegralMatrix& t, const IntVector& mu, Complex tau, const ComplexVector& z,
                                  double tol, std::optional<Rational> phase = std::nullopt) {
    const Rational ph = phase ? *phase : inverse_form_half(t, mu);
    ComplexApprox lhs = theta_slash(t, mu, {1, 1, 0, 1}, tau, z);
    ComplexApprox rhs = embed(CycNumber(1)) * theta_eval_auto(t, mu, tau, z);
    Rational frac = ph - Rational(mpz_class(ph.get_num() / ph.get_den()));
    ComplexApprox e = exp_2pi_i(Complex(frac.get_d(), 0), detail::kUnitRoundoff);
    return finish_law_check(lhs, e * rhs, tol);
}

/// Theta_mu |_{n/2,T} (0 -1; 1 0) = det(2T)^-1/2 exp(-i pi n/4) sum_nu exp(-nu^t (2T)^-1 mu) Theta_nu.
inline LawCheck theta_S_law_check(const HalfIntegralMatrix& t, const IntVector& mu, Complex tau, const ComplexVector& z,
                                  double tol) {
    ComplexApprox lhs = theta_slash(t, mu, {0, -1, 1, 0}, tau, z);
    const BigInt det = determinant(t.gram());
    const BigMatrix adj = adjugate(t.gram());
    ComplexApprox sum = ComplexApprox::exact(0.0);
    for (const auto& nu : cosets(t)) {
        BigInt num = 0;
        for (std::size_t i = 0; i < t.n(); ++i)
            for (std::size_t j = 0; j < t.n(); ++j) num += big(nu[i]) * adj[i][j] * static_cast<long>(mu[j]);
        // exp(-nu^t (2T)^-1 mu) as an exact root of unity of order det(2T)
        CycNumber phase = CycNumber::root_of_unity(-to_ll(num % det), to_ll(det));
        sum = sum + embed(phase) * theta_eval_auto(t, nu, tau, z);
    }
    const double n = static_cast<double>(t.n());
    const Complex pre = std::pow(det.get_d(), -0.5) * std::exp(Complex(0, -M_PI * n / 4));
    ComplexApprox rhs = ComplexApprox::from(pre, 8 * detail::kUnitRoundoff * std::abs(pre)) * sum;
    return finish_law_check(lhs, rhs, tol);
}

}  // namespace fundcoef
