#pragma once

#include <map>
#include <string>
#include <vector>

#include "fundcoef/jacobi/form_data.hpp"
#include "fundcoef/jacobi/qexpansion.hpp"

namespace fundcoef {

using ThetaComponents = std::map<IntVector, QSeries>;

/// h_mu = sum_l c_mu(l) q^(l - T^-1[mu/2]) for every coset mu, truncated at l < maxn.
inline ThetaComponents theta_decompose(const JacobiFormData& phi) {
    const auto& t = phi.index();
    const QMeta meta{2 * phi.weight() - static_cast<long long>(t.n()), phi.level(), label_of(phi.character())};
    ThetaComponents out;
    for (const auto& mu : cosets(t)) out.emplace(mu, QSeries(phi.maxn(), -inverse_form_half(t, mu), meta));
    for (const auto& [key, c] : phi.canonical()) {
        if (key.ell < 0) throw invariant_error("theta_decompose: negative exponent index");
        if (key.ell >= phi.maxn()) continue;
        out.at(key.mu).set(key.ell, c);
    }
    return out;
}

/// Number of stored classes whose index l lies beyond the truncation of the components.
inline std::size_t beyond_bound(const JacobiFormData& phi) {
    std::size_t count = 0;
    for (const auto& [key, c] : phi.canonical())
        if (key.ell >= phi.maxn()) ++count;
    return count;
}

/// Jacobi data with c(l, mu) = c_mu(l), one record per nonzero coefficient, r = mu.
inline JacobiFormData expand_theta_components(long long k, const HalfIntegralMatrix& t, long long level,
                                              const std::string& character_spec, long long maxn,
                                              const ThetaComponents& h) {
    JacobiFormData phi(k, t, level, character_spec, maxn);
    for (const auto& [mu, series] : h) {
        require(reduce_mod_2T(t, mu) == mu, "expand_theta_components: mu is not a reduced representative");
        require(series.offset() == -inverse_form_half(t, mu), "expand_theta_components: offset does not match mu");
        for (const auto& [l, c] : series.coeffs())
            if (l < maxn) phi.add(l, mu, c);
    }
    return phi;
}

struct RecomposeResult {
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    std::size_t beyond = 0;
    bool ok() const { return mismatches == 0; }
};

/// Compares every stored c(n, r) with the coefficient of q^(n - T^-1[r/2]) in h_(r mod 2T).
inline RecomposeResult recompose_check(const JacobiFormData& phi, const ThetaComponents& h) {
    RecomposeResult res;
    for (const auto& rec : phi.records()) {
        JacobiKey key = canonical_key(phi.index(), rec.n, rec.r);
        auto it = h.find(key.mu);
        if (it == h.end()) {
            ++res.mismatches;
            continue;
        }
        if (key.ell >= it->second.bound()) {
            ++res.beyond;
            continue;
        }
        Rational exponent = Rational(static_cast<long>(rec.n)) - inverse_form_half(phi.index(), rec.r);
        ++res.checked;
        if (exponent != Rational(static_cast<long>(key.ell)) + it->second.offset() ||
            it->second.coefficient(key.ell) != rec.coeff)
            ++res.mismatches;
    }
    return res;
}

struct PrimitiveComponents {
    std::vector<IntVector> mus;
    bool inconclusive = false;  // no primitive nonzero component within truncation
};

inline PrimitiveComponents primitive_components(const ThetaComponents& h, const HalfIntegralMatrix& t) {
    PrimitiveComponents out;
    for (const auto& [mu, series] : h)
        if (!series.is_zero() && is_primitive_mu(t, mu)) out.mus.push_back(mu);
    out.inconclusive = out.mus.empty();
    return out;
}

inline PrimitiveComponents primitive_components(const JacobiFormData& phi) {
    return primitive_components(theta_decompose(phi), phi.index());
}

}  // namespace fundcoef
