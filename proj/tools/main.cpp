#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fundcoef/cli/commands.hpp"

namespace {

std::vector<long long> parse_prime_list(const std::string& text) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        long long v = std::stoll(item, &pos);
        if (pos != item.size()) throw fundcoef::precondition_error("malformed prime '" + item + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace fundcoef;
    CLI::App app{"Verification driver for fundamental Fourier coefficients of Siegel modular forms"};
    app.require_subcommand(1);
    app.fallthrough();
    cli::RenderOptions render;
    app.add_flag("--tsv", render.tsv, "Tab-separated output");
    app.add_flag("--failures-only", render.failures_only, "Print only failing rows");

    long long ga = 0, gb = 0, gc = 1;
    bool closed_form = false;
    auto* gauss = app.add_subcommand("gauss", "Exact generalized quadratic Gauss sum G(a, b, c)");
    gauss->add_option("a", ga)->required();
    gauss->add_option("b", gb)->required();
    gauss->add_option("c", gc)->required()->check(CLI::PositiveNumber);
    gauss->add_flag("--closed-form-check", closed_form, "Check |G|^2 = c and the closed form for odd c");

    long long dmax = 1;
    std::string case_name = "lemma";
    unsigned jobs = 1;
    auto* rank = app.add_subcommand("rank-check", "Exhaustive rank check of the epsilon matrices");
    rank->add_option("--dmax", dmax)->required()->check(CLI::PositiveNumber);
    rank->add_option("--case", case_name, "lemma, odd or even")->check(CLI::IsMember({"lemma", "odd", "even"}));
    rank->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::string fixtures = "default";
    double tol = 1e-8;
    auto* theta = app.add_subcommand("theta-check", "Numerical check of the theta transformation laws");
    theta->add_option("--fixtures", fixtures, "default, a fixture file, or specs such as T=1;gram=[[2,1],[1,2]]");
    theta->add_option("--tol", tol)->check(CLI::PositiveNumber);

    std::string jac_file, out_dir;
    auto* decompose = app.add_subcommand("decompose", "Theta decomposition of Jacobi coefficient data");
    decompose->add_option("file", jac_file)->required();
    decompose->add_option("--out-dir", out_dir, "Directory for one Q-expansion file per coset");

    std::string ez_file, eps_spec = "1", chi_p = "chi_p", ez_out;
    auto* ez = app.add_subcommand("ez", "Twisted Eichler-Zagier map of prime-index Jacobi data");
    ez->add_option("file", ez_file)->required();
    ez->add_option("--eps", eps_spec, "Character modulo 1 or p (1, legendre:p, gen:p:e)");
    ez->add_option("--chi-p", chi_p, "Label of the character chi_p in the output metadata");
    ez->add_option("--out", ez_out, "Q-expansion output file");

    std::string siegel_file;
    long long coprime_to = 1;
    bool explain = false;
    auto* hunt = app.add_subcommand("hunt", "Search for a fundamental nonzero coefficient");
    hunt->add_option("file", siegel_file)->required();
    hunt->add_option("--coprime-to", coprime_to)->check(CLI::PositiveNumber);
    hunt->add_flag("--explain", explain, "Trace extract, decompose, primitive component and support steps");

    std::string q_file, primes_text, sieve_out;
    auto* sieve = app.add_subcommand("sieve", "Sieve and rescale chain on a Q-expansion");
    sieve->add_option("file", q_file)->required();
    sieve->add_option("--primes", primes_text, "Comma-separated primes");
    sieve->add_option("--out", sieve_out, "Q-expansion output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        cli::Report report;
        if (*gauss)
            report = cli::cmd_gauss(ga, gb, gc, closed_form);
        else if (*rank)
            report = cli::cmd_rank_check(dmax, parse_eps_case(case_name), jobs);
        else if (*theta)
            report = cli::cmd_theta_check(cli::parse_theta_fixtures(fixtures), tol, fixtures);
        else if (*decompose)
            report = cli::cmd_decompose(jac_file, out_dir);
        else if (*ez)
            report = cli::cmd_ez(ez_file, eps_spec, chi_p, ez_out);
        else if (*hunt)
            report = cli::cmd_hunt(siegel_file, coprime_to, explain);
        else if (*sieve)
            report = cli::cmd_sieve(q_file, parse_prime_list(primes_text), sieve_out);
        cli::render(std::cout, report, render);
        return cli::exit_code(report.outcome());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
