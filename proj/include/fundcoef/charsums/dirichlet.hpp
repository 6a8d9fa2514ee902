#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fundcoef/errors.hpp"
#include "fundcoef/exact/cyclotomic.hpp"
#include "fundcoef/numth/arith.hpp"

namespace fundcoef {

/// Formal product of named characters, used as metadata on q-expansions.
/// Factors with a finite order have their exponents reduced modulo it.
class CharacterLabel {
public:
    CharacterLabel() = default;
    explicit CharacterLabel(const std::string& name, int order = 0) { times(name, 1, order); }

    CharacterLabel& times(const std::string& name, int exponent = 1, int order = 0) {
        if (name.empty() || name == "1" || name.rfind("trivial", 0) == 0) return *this;
        auto& f = factors_[name];
        if (order > 0) f.order = order;
        f.exponent += exponent;
        if (f.order > 0) f.exponent = static_cast<int>(numth::mod(f.exponent, f.order));
        if (f.exponent == 0) factors_.erase(name);
        return *this;
    }
    CharacterLabel& times(const CharacterLabel& other, int sign = 1) {
        for (const auto& [name, f] : other.factors_) times(name, sign * f.exponent, f.order);
        return *this;
    }
    CharacterLabel inverse() const {
        CharacterLabel out;
        return out.times(*this, -1);
    }

    bool is_trivial() const { return factors_.empty(); }

    /// "1" for the trivial label, otherwise e.g. "chi*eps5*chi_p^-1".
    std::string to_string() const {
        if (factors_.empty()) return "1";
        std::string s;
        for (const auto& [name, f] : factors_) {
            if (!s.empty()) s += "*";
            s += name;
            if (f.exponent != 1) s += "^" + std::to_string(f.exponent);
        }
        return s;
    }

    /// Inverse of to_string. Names starting with "eps", "legendre" or "kron" are taken to be quadratic.
    static CharacterLabel parse(const std::string& text) {
        CharacterLabel out;
        std::string t;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
        if (t.empty() || t == "1") return out;
        std::stringstream ss(t);
        std::string part;
        while (std::getline(ss, part, '*')) {
            if (part.empty()) throw parse_error("empty factor in character label '" + text + "'");
            int exponent = 1;
            auto caret = part.find('^');
            std::string name = part.substr(0, caret);
            if (caret != std::string::npos) {
                try {
                    std::size_t used = 0;
                    exponent = std::stoi(part.substr(caret + 1), &used);
                    if (used != part.size() - caret - 1) throw std::invalid_argument("trailing");
                } catch (const std::exception&) {
                    throw parse_error("bad exponent in character label '" + text + "'");
                }
            }
            out.times(name, exponent, is_quadratic_name(name) ? 2 : 0);
        }
        return out;
    }

    static bool is_quadratic_name(const std::string& name) {
        return name.rfind("eps", 0) == 0 || name.rfind("legendre", 0) == 0 || name.rfind("kron", 0) == 0;
    }

    friend bool operator==(const CharacterLabel& a, const CharacterLabel& b) { return a.to_string() == b.to_string(); }

private:
    struct Factor {
        int exponent = 0;
        int order = 0;
    };
    std::map<std::string, Factor> factors_;
};

/// Dirichlet character modulo N. Values are powers of zeta_L, L the exponent of (Z/N)^x.
class DirichletCharacter {
public:
    struct Generator {
        long long prime_power;  // modulus of the local factor (Z/q)^x
        long long residue_mod_n;  // generator lifted to Z/N, = 1 modulo N/q
        long long order;
    };

    DirichletCharacter() : DirichletCharacter(trivial(1)) {}

    static DirichletCharacter trivial(long long modulus) {
        return from_exponent_table(modulus, [](long long) { return 0LL; }, "trivial:" + std::to_string(modulus));
    }

    /// a -> zeta_den^num given as a function of units a mod N; den must divide the group exponent.
    static DirichletCharacter from_function(long long modulus, const std::function<std::pair<long long, long long>(long long)>& f,
                                            std::string label) {
        const long long lambda = group_exponent(modulus);
        return from_exponent_table(
            modulus,
            [&](long long a) {
                auto [num, den] = f(a);
                require(den >= 1 && lambda % den == 0, "character value order does not divide the group exponent");
                return numth::mod(num, den) * (lambda / den);
            },
            std::move(label));
    }

    /// Real character a -> kronecker(D, a). Fails unless this is periodic modulo N.
    static DirichletCharacter kronecker(long long d, long long modulus) {
        return from_function(
            modulus,
            [d](long long a) {
                int k = numth::kronecker_symbol(d, a);
                if (k == 0) throw precondition_error("kronecker character vanishes on a unit");
                return std::pair<long long, long long>(k == 1 ? 0 : 1, 2);
            },
            "kron:" + std::to_string(d) + ":" + std::to_string(modulus));
    }

    static DirichletCharacter legendre(long long p) {
        require(p > 2 && numth::is_prime(p), "legendre: p must be an odd prime");
        return from_function(
            p, [p](long long a) { return std::pair<long long, long long>(numth::jacobi_symbol(a, p) == 1 ? 0 : 1, 2); },
            "legendre:" + std::to_string(p));
    }

    /// Kronecker symbol of the discriminant of Q(sqrt p): p if p = 1 mod 4, else 4p.
    static DirichletCharacter epsilon_p(long long p) {
        require(p > 2 && numth::is_prime(p), "epsilon_p: p must be an odd prime");
        long long disc = (p % 4 == 1) ? p : 4 * p;
        DirichletCharacter c = kronecker(disc, disc);
        c.label_ = "eps:" + std::to_string(p);
        return c;
    }

    /// chi(g_j) = zeta_{ord_j}^{e_j} on the canonical generators.
    static DirichletCharacter from_generator_exponents(long long modulus, const std::vector<long long>& exps) {
        auto gens = generators(modulus);
        require(exps.size() == gens.size(), "from_generator_exponents: expected " + std::to_string(gens.size()) +
                                                " exponents modulo " + std::to_string(modulus));
        DirichletCharacter chi;
        chi.modulus_ = modulus;
        chi.lambda_ = group_exponent(modulus);
        chi.gens_ = gens;
        chi.gen_exps_.resize(gens.size());
        for (std::size_t j = 0; j < gens.size(); ++j) chi.gen_exps_[j] = numth::mod(exps[j], gens[j].order);
        chi.fill_table();
        std::string lab = "gen:" + std::to_string(modulus) + ":";
        for (std::size_t j = 0; j < exps.size(); ++j) lab += (j ? "," : "") + std::to_string(chi.gen_exps_[j]);
        chi.label_ = lab;
        return chi;
    }

    /// Canonical generators of (Z/N)^x: a primitive root for each odd p^e; -1 and 5 for 2^e.
    static std::vector<Generator> generators(long long modulus) {
        require(modulus >= 1, "character modulus must be positive");
        std::vector<Generator> gens;
        if (modulus == 1) return gens;
        for (const auto& pp : numth::factorize(modulus)) {
            const long long q = pp.value();
            const long long rest = modulus / q;
            auto lift = [&](long long g) { return rest == 1 ? numth::mod(g, q) : numth::crt(numth::mod(g, q), q, 1, rest); };
            if (pp.prime == 2) {
                if (pp.exponent >= 2) gens.push_back({q, lift(-1), 2});
                if (pp.exponent >= 3) gens.push_back({q, lift(5), q / 4});
            } else {
                gens.push_back({q, lift(numth::primitive_root_odd(pp.prime, pp.exponent)), q / pp.prime * (pp.prime - 1)});
            }
        }
        return gens;
    }

    static long long group_exponent(long long modulus) {
        long long l = 1;
        for (const auto& g : generators(modulus)) l = numth::lcm(l, g.order);
        return l;
    }

    long long modulus() const noexcept { return modulus_; }
    long long exponent_order() const noexcept { return lambda_; }
    const std::string& label() const noexcept { return label_; }
    DirichletCharacter& set_label(std::string l) {
        label_ = std::move(l);
        return *this;
    }
    const std::vector<Generator>& gens() const noexcept { return gens_; }
    const std::vector<long long>& generator_exponents() const noexcept { return gen_exps_; }

    /// chi(a) = zeta_L^k; -1 when gcd(a, N) > 1.
    long long log_value(long long a) const { return table_[static_cast<std::size_t>(numth::mod(a, modulus_))]; }

    CycNumber operator()(long long a) const {
        long long k = log_value(a);
        if (k < 0) return CycNumber(0);
        return CycNumber::root_of_unity(k, lambda_);
    }

    bool is_trivial() const {
        for (long long v : table_)
            if (v > 0) return false;
        return true;
    }

    /// Real-valued characters take only the values +-1 on units.
    bool is_real() const {
        for (long long v : table_)
            if (v > 0 && 2 * v != lambda_) return false;
        return true;
    }

    /// +1 or -1.
    int parity() const { return log_value(-1) == 0 ? 1 : -1; }

    /// Smallest divisor M of N such that chi is trivial on units congruent to 1 mod M.
    long long conductor() const {
        for (long long m : numth::divisors(modulus_)) {
            bool ok = true;
            for (long long a = 1; a < modulus_ && ok; a += m)
                if (table_[static_cast<std::size_t>(a)] > 0) ok = false;
            if (ok) return m;
        }
        return modulus_;
    }

    bool is_primitive() const { return conductor() == modulus_; }

    DirichletCharacter induce(long long new_modulus) const {
        require(new_modulus % modulus_ == 0, "induce: new modulus must be a multiple");
        const long long scale = group_exponent(new_modulus) / lambda_;
        return from_exponent_table(
            new_modulus, [&](long long a) { return log_value(a) * scale; },
            label_);
    }

    DirichletCharacter conj() const {
        return from_exponent_table(
            modulus_, [&](long long a) { return numth::mod(-log_value(a), lambda_); }, label_ + "^-1");
    }

    friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
        const long long m = numth::lcm(a.modulus_, b.modulus_);
        const long long lambda = group_exponent(m);
        return from_exponent_table(
            m,
            [&](long long x) {
                return a.log_value(x) * (lambda / a.lambda_) + b.log_value(x) * (lambda / b.lambda_);
            },
            a.label_ + "*" + b.label_);
    }

    /// Same modulus and values.
    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.modulus_ == b.modulus_ && a.table_ == b.table_;
    }

    /// Same values on integers coprime to both moduli (i.e. induced from a common character).
    bool equivalent(const DirichletCharacter& o) const {
        const long long m = numth::lcm(modulus_, o.modulus_);
        const long long lambda = group_exponent(m);
        for (long long x = 1; x < m; ++x) {
            if (numth::gcd(x, m) != 1) continue;
            if (log_value(x) * (lambda / lambda_) % lambda != o.log_value(x) * (lambda / o.lambda_) % lambda) return false;
        }
        return true;
    }

private:
    template <class F>
    static DirichletCharacter from_exponent_table(long long modulus, F&& f, std::string label) {
        DirichletCharacter chi(0);
        chi.modulus_ = modulus;
        chi.lambda_ = group_exponent(modulus);
        chi.gens_ = generators(modulus);
        chi.gen_exps_.resize(chi.gens_.size());
        for (std::size_t j = 0; j < chi.gens_.size(); ++j) {
            long long k = numth::mod(f(chi.gens_[j].residue_mod_n), chi.lambda_);
            long long step = chi.lambda_ / chi.gens_[j].order;
            if (k % step != 0) throw precondition_error("character value has order exceeding the generator order");
            chi.gen_exps_[j] = k / step;
        }
        chi.fill_table();
        for (long long a = 0; a < modulus; ++a) {
            if (chi.table_[static_cast<std::size_t>(a)] < 0) continue;
            if (numth::mod(f(a), chi.lambda_) != chi.table_[static_cast<std::size_t>(a)])
                throw precondition_error("not a Dirichlet character modulo " + std::to_string(modulus) + " (" + label + ")");
        }
        chi.label_ = std::move(label);
        return chi;
    }

    explicit DirichletCharacter(int) {}

    void fill_table() {
        table_.assign(static_cast<std::size_t>(modulus_), -1);
        if (modulus_ == 1) {
            table_[0] = 0;
            return;
        }
        std::vector<long long> k(gens_.size(), 0);
        while (true) {
            long long a = 1, e = 0;
            for (std::size_t j = 0; j < gens_.size(); ++j) {
                a = numth::mul_mod(a, numth::pow_mod(gens_[j].residue_mod_n, static_cast<unsigned long long>(k[j]), modulus_), modulus_);
                e += gen_exps_[j] * k[j] * (lambda_ / gens_[j].order);
            }
            table_[static_cast<std::size_t>(a)] = numth::mod(e, lambda_);
            std::size_t j = 0;
            for (; j < gens_.size(); ++j) {
                if (++k[j] < gens_[j].order) break;
                k[j] = 0;
            }
            if (j == gens_.size()) break;
        }
    }

    long long modulus_ = 1;
    long long lambda_ = 1;
    std::vector<Generator> gens_;
    std::vector<long long> gen_exps_;
    std::vector<long long> table_;
    std::string label_;
};

/// Parses "1", "trivial:N", "kron:D:N", "legendre:p", "eps:p", "gen:N:e1,e2,..." and '*'-products.
inline DirichletCharacter parse_character(const std::string& spec) {
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw parse_error("empty character spec");
    auto star = s.find('*');
    if (star != std::string::npos) {
        DirichletCharacter out = parse_character(s.substr(0, star)) * parse_character(s.substr(star + 1));
        return out.set_label(s);
    }
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    auto num = [&](const std::string& t) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(t, &used);
            if (used != t.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw parse_error("malformed integer '" + t + "' in character spec '" + spec + "'");
        }
    };
    const std::string& kind = parts[0];
    try {
        if (s == "1" || (kind == "trivial" && parts.size() == 1)) return DirichletCharacter::trivial(1);
        if (kind == "trivial" && parts.size() == 2) return DirichletCharacter::trivial(num(parts[1]));
        if (kind == "kron" && parts.size() == 3) return DirichletCharacter::kronecker(num(parts[1]), num(parts[2]));
        if (kind == "legendre" && parts.size() == 2) return DirichletCharacter::legendre(num(parts[1]));
        if (kind == "eps" && parts.size() == 2) return DirichletCharacter::epsilon_p(num(parts[1]));
        if (kind == "gen" && (parts.size() == 3 || parts.size() == 2)) {
            std::vector<long long> exps;
            if (parts.size() == 3) {
                std::stringstream es(parts[2]);
                for (std::string e; std::getline(es, e, ',');) exps.push_back(num(e));
            }
            return DirichletCharacter::from_generator_exponents(num(parts[1]), exps);
        }
    } catch (const precondition_error& e) {
        throw parse_error(std::string("invalid character spec '") + spec + "': " + e.what());
    }
    throw parse_error("unknown character spec '" + spec + "'");
}

inline CharacterLabel label_of(const DirichletCharacter& chi) {
    if (chi.is_trivial()) return {};
    return CharacterLabel::parse(chi.label());
}

}  // namespace fundcoef
