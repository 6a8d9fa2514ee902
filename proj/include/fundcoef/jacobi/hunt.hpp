#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fundcoef/jacobi/decompose.hpp"
#include "fundcoef/jacobi/fourier_jacobi.hpp"
#include "fundcoef/jacobi/sieve.hpp"

namespace fundcoef {

struct HuntResult {
    std::vector<HalfIntegralMatrix> found;
    bool inconclusive = false;
    std::string reason;  // set when nothing was found
};

/// Stored T with a_F(T) != 0, T fundamental and gcd(d_T, N) = 1, in storage order.
inline HuntResult hunt_fundamental(const SiegelFormData& f, long long coprime_to) {
    require(coprime_to >= 1, "hunt_fundamental: coprimality modulus must be positive");
    HuntResult res;
    bool any_nonzero = false, any_fundamental = false;
    for (const auto& t : f.order()) {
        if (f.coefficient(t) == 0) continue;
        any_nonzero = true;
        if (!t.is_positive_definite() || !is_fundamental(t)) continue;
        any_fundamental = true;
        if (numth::gcd(discriminant(t), coprime_to) == 1) res.found.push_back(t);
    }
    if (res.found.empty()) {
        res.inconclusive = true;
        if (!any_nonzero)
            res.reason = "no nonzero coefficient within bound";
        else if (!any_fundamental)
            res.reason = "no fundamental T within bound";
        else
            res.reason = "coprimality filter";
    }
    return res;
}

struct HuntTraceStep {
    std::string stage;  // extract, decompose, primitive, support, assemble
    std::string detail;
};

struct HuntTrace {
    std::vector<HuntTraceStep> steps;
    std::optional<HalfIntegralMatrix> result;
};

/// Follows extract -> decompose -> primitive component -> odd square-free support for each positive definite
/// lower-right block of a stored nonzero coefficient, stopping at the first fundamental T coprime to N.
inline HuntTrace hunt_explain(const SiegelFormData& f, long long coprime_to) {
    require(coprime_to >= 1, "hunt_explain: coprimality modulus must be positive");
    HuntTrace trace;
    if (f.genus() < 2) {
        trace.steps.push_back({"extract", "genus " + std::to_string(f.genus()) + " has no Fourier-Jacobi expansion"});
        return trace;
    }
    std::set<HalfIntegralMatrix> seen;
    std::vector<HalfIntegralMatrix> blocks;
    for (const auto& t : f.order()) {
        if (f.coefficient(t) == 0) continue;
        HalfIntegralMatrix sub = block_split(t).sub;
        if (sub.is_positive_definite() && seen.insert(sub).second) blocks.push_back(sub);
    }
    for (const auto& sub : blocks) {
        JacobiFormData phi = fourier_jacobi_extract(f, sub);
        trace.steps.push_back({"extract", "S=" + sub.to_string() + " records=" + std::to_string(phi.records().size()) +
                                              " maxn=" + std::to_string(phi.maxn())});
        ThetaComponents h = theta_decompose(phi);
        std::size_t nonzero = 0;
        for (const auto& [mu, s] : h)
            if (!s.is_zero()) ++nonzero;
        trace.steps.push_back({"decompose", "cosets=" + std::to_string(h.size()) + " nonzero=" + std::to_string(nonzero)});
        PrimitiveComponents prim = primitive_components(h, sub);
        if (prim.inconclusive) {
            trace.steps.push_back({"primitive", "none within bound"});
            continue;
        }
        const long long den = max_mu_denominator(sub);
        for (const auto& mu : prim.mus) {
            const QSeries& hm = h.at(mu);
            trace.steps.push_back({"primitive", "mu=" + vector_to_string(mu) + " denominator=" + std::to_string(den)});
            // exponents (l - S^-1[mu/2]) * D are the discriminants of the assembled blocks
            const Rational shift = hm.offset() * Rational(static_cast<long>(den));
            if (!is_integer(shift)) throw invariant_error("hunt_explain: primitive offset times D is not integral");
            const long long bound = den * hm.bound();
            QSeries g(bound, 0, hm.meta());
            for (const auto& [l, c] : hm.coeffs()) g.set(den * l + to_ll(shift.get_num()), c);
            std::vector<long long> support = odd_squarefree_support(g, coprime_to);
            std::string list;
            for (long long m : support) list += (list.empty() ? "" : ",") + std::to_string(m);
            trace.steps.push_back({"support", "odd square-free d coprime to " + std::to_string(coprime_to) + ": [" + list + "]"});
            for (long long m : support) {
                for (const auto& rec : phi.records()) {
                    if (rec.coeff == 0) continue;
                    JacobiKey key = canonical_key(sub, rec.n, rec.r);
                    if (key.mu != mu || den * key.ell + to_ll(shift.get_num()) != m) continue;
                    HalfIntegralMatrix t = assemble(rec.n, rec.r, sub);
                    if (!is_fundamental(t) || discriminant(t) != m) throw invariant_error("hunt_explain: assembled T does not match d");
                    trace.steps.push_back({"assemble", "T=" + t.to_string() + " d_T=" + std::to_string(m) +
                                                           " a_F=" + to_fraction_string(rec.coeff)});
                    trace.result = t;
                    return trace;
                }
            }
        }
    }
    return trace;
}

}  // namespace fundcoef
