#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fundcoef/charsums/gauss_sum.hpp"
#include "fundcoef/cli/report.hpp"
#include "fundcoef/epsmat/epsilon_matrix.hpp"
#include "fundcoef/io/formats.hpp"
#include "fundcoef/jacobi/decompose.hpp"
#include "fundcoef/jacobi/eichler_zagier.hpp"
#include "fundcoef/jacobi/hunt.hpp"
#include "fundcoef/jacobi/sieve.hpp"
#include "fundcoef/jacobi/theta.hpp"

namespace fundcoef::cli {

namespace detail {

inline std::string fixed7(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.7f", x);
    std::string s = buf;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

inline std::string sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

inline std::string join(const std::vector<long long>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

}  // namespace detail

/// "re + im i" with seven decimals and trailing zeros removed, e.g. "0 + 1.7320508i".
inline std::string format_complex(Complex z) {
    std::string re = detail::fixed7(z.real());
    std::string im = detail::fixed7(std::abs(z.imag()));
    bool negative = z.imag() < 0 && im != "0";
    return re + (negative ? " - " : " + ") + im + "i";
}

inline Report cmd_gauss(long long a, long long b, long long c, bool closed_form_check) {
    Stopwatch clock;
    Report r;
    r.subcommand = "gauss";
    r.params = {{"a", std::to_string(a)}, {"b", std::to_string(b)}, {"c", std::to_string(c)}};
    r.columns = {"item", "value", "status"};
    CycNumber g = gauss_sum(a, b, c);
    ComplexApprox e = embed(g);
    r.add_row({"value", g.to_string(), "-"});
    r.add_row({"embedding", format_complex(e.value()), "-"});
    if (closed_form_check) {
        if (c % 2 == 1 && numth::gcd(a, c) == 1) {
            // |G(a, b, c)|^2 = c for odd c and gcd(a, c) = 1
            CycNumber norm = g * g.conj();
            r.add_row({"|G|^2 = c", norm.to_string(), norm == CycNumber(c) ? "pass" : "fail"});
            if (b == 0) {
                const double root = std::sqrt(static_cast<double>(c));
                Complex eps_c = numth::mod(c, 4) == 1 ? Complex(1, 0) : Complex(0, 1);
                Complex closed = static_cast<double>(numth::jacobi_symbol(a, c)) * eps_c * root;
                double dev = std::abs(closed - e.value());
                double bound = e.err_bound + 8 * fundcoef::detail::kUnitRoundoff * root;
                r.add_row({"(a/c) eps_c sqrt(c)", format_complex(closed), dev <= bound + 1e-12 * root ? "pass" : "fail"});
            }
        } else {
            r.add_row({"closed form", "requires odd c with gcd(a, c) = 1", "-"});
        }
    }
    r.seconds = clock.seconds();
    return r;
}

inline Report cmd_rank_check(long long dmax, EpsCase kind, unsigned jobs) {
    Stopwatch clock;
    Report r;
    r.subcommand = "rank-check";
    r.params = {{"dmax", std::to_string(dmax)}, {"case", to_string(kind)}, {"jobs", std::to_string(jobs)}};
    r.columns = {"case", "d", "a", "s0", "rows", "cols", "rank", "expected", "method", "status"};
    auto reports = rank_sweep(dmax, kind, jobs);
    std::size_t exact = 0;
    for (const auto& x : reports) {
        if (x.method == "exact") ++exact;
        r.add_row({to_string(x.kind), std::to_string(x.d), std::to_string(x.a), std::to_string(x.s0), std::to_string(x.rows),
                   std::to_string(x.cols), std::to_string(x.rank), std::to_string(x.expected), x.method,
                   x.method.rfind("error", 0) == 0 ? "error" : (x.pass ? "pass" : "fail")});
    }
    r.notes.push_back(std::to_string(reports.size()) + " triples, " + std::to_string(exact) + " settled by exact elimination");
    r.seconds = clock.seconds();
    return r;
}

struct ThetaFixture {
    std::string name;
    HalfIntegralMatrix t;
};

inline ThetaFixture parse_theta_fixture(const std::string& spec) {
    std::string s;
    for (char ch : spec)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.rfind("T=", 0) == 0) {
        long long v = io::detail::parse_int(s.substr(2), 0);
        return {s, HalfIntegralMatrix::scalar(v)};
    }
    if (s.rfind("gram=", 0) == 0) return {s, io::detail::parse_gram(s.substr(5), 0)};
    throw precondition_error("theta fixture '" + spec + "' must be T=<integer> or gram=[[...]]");
}

inline std::vector<ThetaFixture> default_theta_fixtures() {
    std::vector<ThetaFixture> out;
    for (const char* s : {"T=1", "T=2", "T=3", "T=5", "gram=[[2,1],[1,2]]", "gram=[[2,1],[1,8]]", "gram=[[4,1],[1,4]]"})
        out.push_back(parse_theta_fixture(s));
    return out;
}

/// "default", a file with one fixture per line, or fixtures separated by ';'.
inline std::vector<ThetaFixture> parse_theta_fixtures(const std::string& arg) {
    if (arg.empty() || arg == "default") return default_theta_fixtures();
    std::vector<std::string> specs;
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r") != std::string::npos) specs.push_back(line);
        }
    } else {
        std::stringstream ss(arg);
        std::string item;
        while (std::getline(ss, item, ';'))
            if (!item.empty()) specs.push_back(item);
    }
    std::vector<ThetaFixture> out;
    for (const auto& s : specs) out.push_back(parse_theta_fixture(s));
    return out;
}

struct ThetaPoint {
    Complex tau;
    ComplexVector z;
    IntVector mu;
};

/// Five sample points per index; mu runs through the cosets.
inline std::vector<ThetaPoint> theta_sample_points(const HalfIntegralMatrix& t) {
    const std::vector<Complex> taus = {{0, 1}, {0.25, 1.5}, {0.5, 1.2}, {-0.3, 0.9}, {1, 2}};
    const auto reps = cosets(t);
    std::vector<ThetaPoint> out;
    for (std::size_t k = 0; k < taus.size(); ++k) {
        ThetaPoint p;
        p.tau = taus[k];
        for (std::size_t j = 0; j < t.n(); ++j)
            p.z.emplace_back(0.3 - 0.1 * static_cast<double>(k) + 0.07 * static_cast<double>(j),
                             0.05 * static_cast<double>(j + 1) - 0.02 * static_cast<double>(k));
        p.mu = reps[(k * 7 + 1) % reps.size()];
        out.push_back(std::move(p));
    }
    return out;
}

inline Report cmd_theta_check(const std::vector<ThetaFixture>& fixtures, double tol, const std::string& fixture_arg = "default") {
    Stopwatch clock;
    Report r;
    r.subcommand = "theta-check";
    r.params = {{"fixtures", fixture_arg}, {"tol", detail::sci(tol)}};
    r.columns = {"fixture", "point", "law", "mu", "deviation", "err_bound", "max_deviation", "status"};
    double worst = 0;
    for (const auto& f : fixtures) {
        auto points = theta_sample_points(f.t);
        for (std::size_t k = 0; k < points.size(); ++k) {
            const auto& p = points[k];
            for (const char* law : {"T", "S"}) {
                try {
                    LawCheck c = std::string(law) == "T" ? theta_T_law_check(f.t, p.mu, p.tau, p.z, tol)
                                                         : theta_S_law_check(f.t, p.mu, p.tau, p.z, tol);
                    worst = std::max(worst, c.deviation + c.err_bound);
                    r.add_row({f.name, std::to_string(k), law, vector_to_string(p.mu), detail::sci(c.deviation),
                               detail::sci(c.err_bound), detail::sci(c.deviation + c.err_bound), c.pass ? "pass" : "fail"});
                } catch (const std::exception& e) {
                    r.add_row({f.name, std::to_string(k), law, vector_to_string(p.mu), "-", "-", "-", "error"});
                    r.notes.push_back(f.name + " point " + std::to_string(k) + " " + law + ": " + e.what());
                }
            }
        }
    }
    r.notes.push_back("max deviation (incl. error bound) " + detail::sci(worst));
    r.seconds = clock.seconds();
    return r;
}

inline std::string qexp_text(const QSeries& f) {
    std::ostringstream os;
    io::write_qexpansion(os, f);
    return os.str();
}

inline std::string mu_tag(const IntVector& mu) {
    std::string s = "h";
    for (long long x : mu) s += "_" + std::to_string(x);
    return s;
}

inline Report cmd_decompose(const std::string& path, const std::string& out_dir) {
    Stopwatch clock;
    Report r;
    r.subcommand = "decompose";
    r.params = {{"file", path}, {"out", out_dir.empty() ? "-" : out_dir}};
    r.columns = {"mu", "offset", "nonzero", "primitive", "output", "status"};
    JacobiFormData phi = io::read_jacobi_file(path);
    ThetaComponents h = theta_decompose(phi);
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    for (const auto& [mu, series] : h) {
        std::string file = "-";
        if (!out_dir.empty()) {
            file = (std::filesystem::path(out_dir) / (mu_tag(mu) + ".qexp")).string();
            io::write_file(file, series, [](std::ostream& o, const QSeries& s) { io::write_qexpansion(o, s); });
        }
        r.add_row({vector_to_string(mu), to_fraction_string(series.offset()), std::to_string(series.coeffs().size()),
                   is_primitive_mu(phi.index(), mu) ? "yes" : "no", file, "-"});
    }
    RecomposeResult rc = recompose_check(phi, h);
    r.add_row({"recompose", "-", std::to_string(rc.checked), "-", std::to_string(rc.mismatches) + " mismatches",
               rc.ok() ? "pass" : "fail"});
    // components -> Jacobi data -> components, compared as serialized text
    JacobiFormData again = expand_theta_components(phi.weight(), phi.index(), phi.level(), phi.character_spec(), phi.maxn(), h);
    ThetaComponents h2 = theta_decompose(again);
    bool identical = h2.size() == h.size();
    for (const auto& [mu, series] : h) identical = identical && h2.count(mu) && qexp_text(h2.at(mu)) == qexp_text(series);
    r.add_row({"reassembly", "-", std::to_string(again.records().size()), "-", identical ? "byte-identical" : "differs",
               identical ? "pass" : "fail"});
    if (std::size_t beyond = beyond_bound(phi)) r.notes.push_back(std::to_string(beyond) + " stored classes lie beyond maxn");
    r.params.emplace_back("components", std::to_string(h.size()));
    r.seconds = clock.seconds();
    return r;
}

inline Report cmd_ez(const std::string& path, const std::string& eps_spec, const std::string& chi_p, const std::string& out) {
    Stopwatch clock;
    Report r;
    r.subcommand = "ez";
    r.params = {{"file", path}, {"eps", eps_spec}, {"chi_p", chi_p}, {"out", out.empty() ? "-" : out}};
    r.columns = {"item", "value", "status"};
    JacobiFormData phi = io::read_jacobi_file(path);
    DirichletCharacter eps = parse_character(eps_spec);
    CycSeries h = ez_twist(phi, eps, chi_p);
    const bool parity = ez_parity_matches(phi, eps);
    r.add_row({"parity eps(-1) = chi(-1)(-1)^k", parity ? "match" : "mismatch", "-"});
    r.add_row({"meta", "weight2=" + std::to_string(h.meta().weight2) + " level=" + std::to_string(h.meta().level) +
                           " char=" + h.meta().character.to_string(), "-"});
    for (const auto& [n, c] : h.coeffs()) r.add_row({"coeff n=" + std::to_string(n), c.to_string(), "-"});
    if (!parity)
        r.add_row({"vanishing", h.is_zero() ? "zero output (parity mismatch)" : "nonzero despite parity mismatch",
                   h.is_zero() ? "pass" : "fail"});
    else if (h.is_zero()) {
        r.add_row({"vanishing", "zero within bound " + std::to_string(h.bound()), "-"});
        r.truncation_limited = true;
    } else {
        r.add_row({"vanishing", "nonzero", "pass"});
    }
    if (!out.empty() && out != "-") {
        QSeries q = to_rational_series(h);
        io::write_file(out, q, [](std::ostream& o, const QSeries& s) { io::write_qexpansion(o, s); });
    }
    r.seconds = clock.seconds();
    return r;
}

inline Report cmd_hunt(const std::string& path, long long coprime_to, bool explain) {
    Stopwatch clock;
    Report r;
    r.subcommand = "hunt";
    r.params = {{"file", path}, {"coprime_to", std::to_string(coprime_to)}, {"explain", explain ? "yes" : "no"}};
    r.columns = {"kind", "T", "detail", "status"};
    SiegelFormData f = io::read_siegel_file(path);
    HuntResult res = hunt_fundamental(f, coprime_to);
    for (const auto& t : res.found)
        r.add_row({"found", t.to_string(), "d_T=" + std::to_string(discriminant(t)) + " a_F=" + to_fraction_string(f.coefficient(t)),
                   "pass"});
    if (res.found.empty()) {
        r.add_row({"none", "-", "inconclusive within bound: " + res.reason, "-"});
        r.truncation_limited = true;
    }
    if (explain) {
        HuntTrace tr = hunt_explain(f, coprime_to);
        for (const auto& s : tr.steps) r.add_row({"trace", s.stage, s.detail, "-"});
        if (tr.result) {
            bool ok = is_fundamental(*tr.result) && numth::gcd(discriminant(*tr.result), coprime_to) == 1 &&
                      f.coefficient(*tr.result) != 0;
            r.add_row({"trace-result", tr.result->to_string(), "fundamental, coprime to " + std::to_string(coprime_to),
                       ok ? "pass" : "fail"});
        } else {
            r.add_row({"trace-result", "-", "pipeline found no primitive odd square-free candidate", "-"});
        }
    }
    r.seconds = clock.seconds();
    return r;
}

inline Report cmd_sieve(const std::string& path, const std::vector<long long>& primes, const std::string& out) {
    Stopwatch clock;
    Report r;
    r.subcommand = "sieve";
    r.params = {{"file", path}, {"primes", primes.empty() ? "-" : detail::join(primes)}, {"out", out.empty() ? "-" : out}};
    r.columns = {"step", "p", "branch", "level", "char", "l", "status"};
    QSeries f = io::read_qexpansion_file(path);
    SieveChainResult chain = sieve_chain(f, primes);
    long long level = f.meta().level;
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
        const auto& s = chain.steps[i];
        std::string status = "pass";
        if (s.branch == "error") {
            status = "error";
            r.notes.push_back("step " + std::to_string(i + 1) + ": " + s.error);
        } else {
            long long expected = s.branch == "sieve" ? level * s.p * s.p : level / s.p;
            if (expected != s.level) status = "fail";
            level = s.level;
        }
        r.add_row({std::to_string(i + 1), std::to_string(s.p), s.branch, std::to_string(s.level), s.character,
                   std::to_string(s.ell), status});
    }
    const bool relation = verify_chain_relation(f, chain);
    r.add_row({"relation", "-", "a_gt(n) = a_g0(l n)", std::to_string(chain.result.meta().level),
               chain.result.meta().character.to_string(), std::to_string(chain.ell), relation ? "pass" : "fail"});
    std::string support;
    for (const auto& [n, c] : chain.result.coeffs()) support += (support.empty() ? "" : " ") + std::to_string(n) + ":" + to_fraction_string(c);
    r.notes.push_back("result " + (support.empty() ? std::string("0") : support));
    if (!out.empty() && out != "-") io::write_file(out, chain.result, [](std::ostream& o, const QSeries& s) { io::write_qexpansion(o, s); });
    r.seconds = clock.seconds();
    return r;
}

}  // namespace fundcoef::cli
