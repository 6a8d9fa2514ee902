#pragma once

#include <vector>

#include "fundcoef/jacobi/form_data.hpp"
#include "fundcoef/jacobi/qexpansion.hpp"

namespace fundcoef {

inline void check_fj_block(const SiegelFormData& f, const HalfIntegralMatrix& sub) {
    require(f.genus() >= 2, "Fourier-Jacobi: genus must be at least 2");
    if (sub.n() + 1 != f.genus())
        throw precondition_error("Fourier-Jacobi: block has size " + std::to_string(sub.n()) + ", expected " +
                                 std::to_string(f.genus() - 1));
    if (!sub.is_positive_definite()) throw precondition_error("Fourier-Jacobi: block must be positive definite");
}

/// phi_S with c(n, r) = a_F([[n, r/2], [r^t/2, S]]), known for n <= maxtrace - tr(S).
inline JacobiFormData fourier_jacobi_extract(const SiegelFormData& f, const HalfIntegralMatrix& sub) {
    check_fj_block(f, sub);
    const long long maxn = std::max(0LL, f.maxtrace() - sub.trace() + 1);
    JacobiFormData phi(f.weight().value_or(0), sub, f.level(), f.character_spec(), maxn);
    for (const auto& t : f.order()) {
        BlockSplit b = block_split(t);
        if (b.sub == sub) phi.add(b.t, b.r, f.coefficient(t));
    }
    return phi;
}

/// m-th coefficient sum_{t2} a_F([[m, t2], [t2^t, S]]) prod_j t2_j^lambda_j over positive definite blocks,
/// with the scalar (2 pi i)^|lambda| / lambda! removed.
inline QSeries taylor_slice_coeff(const SiegelFormData& f, const HalfIntegralMatrix& sub, const std::vector<int>& lambda) {
    check_fj_block(f, sub);
    require(lambda.size() == sub.n(), "taylor_slice_coeff: multi-index has the wrong length");
    long long total = 0;
    for (int l : lambda) {
        require(l >= 0, "taylor_slice_coeff: multi-index entries must be nonnegative");
        total += l;
    }
    const long long maxn = std::max(0LL, f.maxtrace() - sub.trace() + 1);
    QMeta meta{2 * (f.weight().value_or(0) + total), f.level(), CharacterLabel::parse(parse_character(f.character_spec()).label())};
    QSeries out(maxn, 0, meta);
    for (const auto& [t, a] : f.coeffs()) {
        BlockSplit b = block_split(t);
        if (!(b.sub == sub) || a == 0 || !t.is_positive_definite()) continue;
        Rational mono = 1;
        for (std::size_t j = 0; j < lambda.size(); ++j) {
            Rational half(static_cast<long>(b.r[j]), 2);
            half.canonicalize();
            for (int e = 0; e < lambda[j]; ++e) mono *= half;
        }
        out.add(b.t, a * mono);
    }
    return out;
}

/// d_T = D(S) (n - S^-1[r/2]) for T = [[n, r/2], [r^t/2, S]], D the maximal denominator of S^-1[mu/2].
inline bool det_block_identity_holds(long long n, const IntVector& r, const HalfIntegralMatrix& sub) {
    HalfIntegralMatrix t = assemble(n, r, sub);
    Rational rhs = Rational(static_cast<long>(max_mu_denominator(sub))) * (Rational(static_cast<long>(n)) - inverse_form_half(sub, r));
    return Rational(static_cast<long>(discriminant(t))) == rhs;
}

}  // namespace fundcoef
