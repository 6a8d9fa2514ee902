#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fundcoef/charsums/dirichlet.hpp"
#include "fundcoef/errors.hpp"
#include "fundcoef/exact/rational.hpp"
#include "fundcoef/quadform/half_integral.hpp"

namespace fundcoef {

/// Class of (n, r) under r -> r + 2T lambda: the reduced representative mu and the shifted exponent index l,
/// so that n - T^-1[r/2] = l - T^-1[mu/2].
struct JacobiKey {
    IntVector mu;
    long long ell;

    friend bool operator<(const JacobiKey& a, const JacobiKey& b) {
        return a.mu != b.mu ? a.mu < b.mu : a.ell < b.ell;
    }
    friend bool operator==(const JacobiKey& a, const JacobiKey& b) { return a.mu == b.mu && a.ell == b.ell; }
};

/// Writes r = mu + 2T lambda and returns (mu, n - lambda^t mu - T[lambda]).
inline JacobiKey canonical_key(const HalfIntegralMatrix& t, long long n, const IntVector& r) {
    require(r.size() == t.n(), "canonical_key: r has the wrong length");
    IntVector mu = reduce_mod_2T(t, r);
    const std::size_t dim = t.n();
    BigMatrix adj = adjugate(t.gram());
    BigInt det = det_gram(t);
    IntVector lambda(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        BigInt s = 0;
        for (std::size_t j = 0; j < dim; ++j) s += adj[i][j] * big(r[j] - mu[j]);
        if (s % det != 0) throw invariant_error("canonical_key: r - mu is not in 2T Z^n");
        lambda[i] = to_ll(BigInt(s / det));
    }
    BigInt lm = 0;
    for (std::size_t i = 0; i < dim; ++i) lm += big(lambda[i]) * big(mu[i]);
    Rational tl = evaluate(t, lambda);
    return {std::move(mu), to_ll(BigInt(big(n) - lm - tl.get_num()))};
}

/// Coefficients c(n, r) of a Jacobi form of weight k and index T, known for 0 <= n < maxn.
class JacobiFormData {
public:
    struct Record {
        long long n;
        IntVector r;
        Rational coeff;
    };

    JacobiFormData(long long k, HalfIntegralMatrix index, long long level, std::string character_spec, long long maxn)
        : k_(k), index_(std::move(index)), level_(level), char_spec_(std::move(character_spec)),
          character_(parse_character(char_spec_)), maxn_(maxn) {
        require(level_ >= 1, "JacobiFormData: level must be positive");
        require(maxn_ >= 0, "JacobiFormData: maxn must be nonnegative");
        if (!index_.is_positive_definite()) throw precondition_error("JacobiFormData: index must be positive definite");
    }

    long long weight() const noexcept { return k_; }
    const HalfIntegralMatrix& index() const noexcept { return index_; }
    long long level() const noexcept { return level_; }
    const std::string& character_spec() const noexcept { return char_spec_; }
    const DirichletCharacter& character() const noexcept { return character_; }
    long long maxn() const noexcept { return maxn_; }
    const std::vector<Record>& records() const noexcept { return records_; }
    const std::map<JacobiKey, Rational>& canonical() const noexcept { return canonical_; }

    /// Ingests c(n, r). Redundant records must agree with the class already stored.
    JacobiFormData& add(long long n, const IntVector& r, const Rational& c) {
        require(n >= 0 && n < maxn_, "JacobiFormData: n = " + std::to_string(n) + " outside [0, maxn)");
        require(r.size() == index_.n(), "JacobiFormData: r has the wrong length");
        if (c != 0 && !assemble(n, r, index_).is_positive_semidefinite())
            throw precondition_error("JacobiFormData: nonzero c(n, r) with [[n, r/2], [r/2, T]] not positive semidefinite at n=" +
                                     std::to_string(n) + " r=" + vector_to_string(r));
        JacobiKey key = canonical_key(index_, n, r);
        auto [it, inserted] = canonical_.emplace(key, c);
        if (!inserted && it->second != c)
            throw inconsistent_data_error("conflicting coefficients for class mu=" + vector_to_string(key.mu) +
                                          " l=" + std::to_string(key.ell) + ": " + to_fraction_string(it->second) +
                                          " vs " + to_fraction_string(c));
        records_.push_back({n, r, c});
        return *this;
    }

    /// c(n, r); nullopt when the class was never stored.
    std::optional<Rational> coefficient(long long n, const IntVector& r) const {
        auto it = canonical_.find(canonical_key(index_, n, r));
        if (it == canonical_.end()) return std::nullopt;
        return it->second;
    }

    bool is_zero() const {
        for (const auto& [k, c] : canonical_)
            if (c != 0) return false;
        return true;
    }

private:
    long long k_;
    HalfIntegralMatrix index_;
    long long level_;
    std::string char_spec_;
    DirichletCharacter character_;
    long long maxn_;
    std::vector<Record> records_;
    std::map<JacobiKey, Rational> canonical_;
};

/// Fourier coefficients a_F(T) of a genus n Siegel form, known for tr(T) <= maxtrace.
class SiegelFormData {
public:
    SiegelFormData(std::size_t genus, long long level, std::string character_spec, long long maxtrace,
                   std::optional<long long> weight = std::nullopt)
        : genus_(genus), level_(level), char_spec_(std::move(character_spec)), maxtrace_(maxtrace), weight_(weight) {
        require(genus_ >= 1, "SiegelFormData: genus must be positive");
        require(level_ >= 1, "SiegelFormData: level must be positive");
        parse_character(char_spec_);
    }

    std::size_t genus() const noexcept { return genus_; }
    long long level() const noexcept { return level_; }
    const std::string& character_spec() const noexcept { return char_spec_; }
    long long maxtrace() const noexcept { return maxtrace_; }
    const std::optional<long long>& weight() const noexcept { return weight_; }
    const std::map<HalfIntegralMatrix, Rational>& coeffs() const noexcept { return coeffs_; }
    const std::vector<HalfIntegralMatrix>& order() const noexcept { return order_; }

    SiegelFormData& add(const HalfIntegralMatrix& t, const Rational& c) {
        if (t.n() != genus_)
            throw precondition_error("SiegelFormData: key " + t.to_string() + " has size " + std::to_string(t.n()) +
                                     ", expected genus " + std::to_string(genus_));
        if (!t.is_positive_semidefinite())
            throw precondition_error("SiegelFormData: key " + t.to_string() + " is not positive semidefinite");
        require(t.trace() <= maxtrace_, "SiegelFormData: key " + t.to_string() + " exceeds maxtrace");
        auto [it, inserted] = coeffs_.emplace(t, c);
        if (!inserted) {
            if (it->second != c) throw inconsistent_data_error("conflicting coefficients for " + t.to_string());
            return *this;
        }
        order_.push_back(t);
        return *this;
    }

    Rational coefficient(const HalfIntegralMatrix& t) const {
        auto it = coeffs_.find(t);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

private:
    std::size_t genus_;
    long long level_;
    std::string char_spec_;
    long long maxtrace_;
    std::optional<long long> weight_;
    std::map<HalfIntegralMatrix, Rational> coeffs_;
    std::vector<HalfIntegralMatrix> order_;
};

}  // namespace fundcoef
