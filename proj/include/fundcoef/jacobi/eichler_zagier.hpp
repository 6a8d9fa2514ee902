#pragma once

#include <string>

#include "fundcoef/jacobi/decompose.hpp"
#include "fundcoef/numth/arith.hpp"

namespace fundcoef {

/// Index p of a Jacobi form with scalar index, checked to be an odd prime coprime to 2N.
inline long long ez_index_prime(const JacobiFormData& phi) {
    const auto& t = phi.index();
    if (t.n() != 1) throw precondition_error("ez_twist: index must be scalar");
    const long long p = t.gram()(0, 0) / 2;
    if (p == 2 || !numth::is_prime(p)) throw precondition_error("ez_twist: index " + std::to_string(p) + " is not an odd prime");
    if (numth::gcd(2 * p, phi.level()) != 1) throw precondition_error("ez_twist: gcd(2p, N) must be 1");
    return p;
}

/// eps(-1) = chi(-1) (-1)^k, the condition under which the twist can be nonzero.
inline bool ez_parity_matches(const JacobiFormData& phi, const DirichletCharacter& eps) {
    const int sign = phi.weight() % 2 == 0 ? 1 : -1;
    return eps.parity() == phi.character().parity() * sign;
}

/// h_eps(tau) = sum_mu eps(mu) h_mu(4p tau): the n-th coefficient is sum over mu mod 2p with mu^2 = -n mod 4p
/// of eps(mu) c_mu((n + mu^2) / 4p).
inline CycSeries ez_twist(const JacobiFormData& phi, const DirichletCharacter& eps, const std::string& chi_p_label = "chi_p") {
    const long long p = ez_index_prime(phi);
    if (eps.modulus() != 1 && eps.modulus() != p)
        throw precondition_error("ez_twist: eps must be defined modulo 1 or p = " + std::to_string(p));
    const long long f_eps = eps.conductor();
    if (f_eps != 1 && f_eps != p) throw precondition_error("ez_twist: conductor of eps must be 1 or p");

    const ThetaComponents h = theta_decompose(phi);
    const long long four_p = 4 * p;
    const long long bound = std::max(0LL, four_p * phi.maxn() - (2 * p - 1) * (2 * p - 1));

    CharacterLabel label = label_of(eps);
    label.times(label_of(phi.character()));
    label.times(chi_p_label, -1);
    CycSeries out(bound, 0, QMeta{2 * phi.weight() - 1, four_p * phi.level() * f_eps, label});

    for (long long mu = 0; mu < 2 * p; ++mu) {
        const CycNumber e = eps(mu);
        if (e.is_zero()) continue;
        const QSeries& hm = h.at(IntVector{mu});
        for (const auto& [l, c] : hm.coeffs()) {
            const long long n = four_p * l - mu * mu;
            if (n < 0) throw invariant_error("ez_twist: negative exponent");
            if (n < bound) out.add(n, e * CycNumber(c));
        }
    }
    return out;
}

}  // namespace fundcoef
