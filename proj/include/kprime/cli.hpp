#pragma once

#include "kprime/intervals.hpp"
#include "kprime/ramanujan.hpp"
#include "kprime/report_io.hpp"
#include "kprime/residue.hpp"
#include "kprime/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#ifndef KPRIME_FIXTURE_DIR
#define KPRIME_FIXTURE_DIR "fixtures"
#endif

namespace kprime::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_usage = 2,
    exit_resource_limit = 3,
};

namespace detail {

inline SmallIntervalTheorem theorem_from(const std::optional<std::uint64_t>& x0,
                                         const std::optional<std::string>& delta,
                                         const SmallIntervalTheorem& fallback)
{
    if (!x0 && !delta)
        return fallback;
    if (!x0 || !delta)
        throw CLI::ValidationError("--x0 and --delta must be given together");
    return SmallIntervalTheorem(*x0, Fraction::parse(*delta));
}

inline std::string fraction_text(const Fraction& f)
{
    return f.den == 1 ? std::to_string(f.num) : std::to_string(f.num) + "/" + std::to_string(f.den);
}

} // namespace detail

/// Runs one command line (without the program name). Data goes to `out`,
/// diagnostics and progress to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Generalized Ramanujan primes, N_k(m) thresholds and prime-free intervals"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_name = "bfile";
    std::uint64_t max_memory_mb = 1024;
    app.add_option("--format", format_name, "bfile, csv or json")
        ->check(CLI::IsMember({"bfile", "csv", "json"}));
    app.add_option("--max-memory", max_memory_mb, "Sieve memory cap in MiB");

    // ramanujan
    auto* ram = app.add_subcommand("ramanujan", "R_v(m) or C_v(m) for m = 1..count");
    std::string ram_v, ram_kind = "ramanujan";
    std::uint64_t ram_count = 0;
    ram->add_option("--v", ram_v, "Ratio P/Q > 1 in lowest terms")->required();
    ram->add_option("--count", ram_count)->required()->check(CLI::PositiveNumber);
    ram->add_option("--kind", ram_kind)->check(CLI::IsMember({"ramanujan", "chebyshev"}));

    // nk
    auto* nk = app.add_subcommand("nk", "N_k(m) for m = 1..count");
    std::uint64_t nk_k = 0, nk_count = 0;
    bool nk_closed = false;
    std::optional<std::uint64_t> nk_bound;
    nk->add_option("--k", nk_k)->required()->check(CLI::PositiveNumber);
    nk->add_option("--count", nk_count)->required()->check(CLI::PositiveNumber);
    nk->add_flag("--closed", nk_closed, "Count primes in [kn, (k+1)n]");
    nk->add_option("--n-bound", nk_bound, "Proven descent start for uncertified k");

    // gaps
    auto* gaps = app.add_subcommand("gaps", "a(k) for k in [k-min, k-max]");
    std::uint64_t k_min = 0, k_max = 0, n_max = default_gap_scan_limit;
    unsigned jobs = 1;
    gaps->add_option("--k-min", k_min)->required()->check(CLI::PositiveNumber);
    gaps->add_option("--k-max", k_max)->required()->check(CLI::PositiveNumber);
    gaps->add_option("--n-max", n_max)->check(CLI::Range(std::uint64_t{2}, ~std::uint64_t{0}));
    gaps->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    // residue
    auto* res = app.add_subcommand("residue", "(v,P)-Ramanujan numbers or N^(P)_k(m)");
    std::uint64_t res_mod = 0, res_res = 0, res_count = 0;
    std::optional<std::string> res_v, res_delta;
    std::optional<std::uint64_t> res_k, res_x0;
    res->add_option("--mod", res_mod)->required();
    res->add_option("--res", res_res)->required();
    auto* res_v_opt = res->add_option("--v", res_v, "Ratio for R^(P)_v");
    auto* res_k_opt = res->add_option("--k", res_k, "Interval family k for N^(P)_k");
    res_v_opt->excludes(res_k_opt);
    res->add_option("--count", res_count)->required()->check(CLI::PositiveNumber);
    res->add_option("--x0", res_x0);
    res->add_option("--delta", res_delta, "Delta as integer, decimal or P/Q");

    // capacity
    auto* cap = app.add_subcommand("capacity", "Largest m with (1+1/delta)^m < (k+1)/k");
    std::uint64_t cap_k = 0;
    std::optional<std::uint64_t> cap_x0;
    std::optional<std::string> cap_delta;
    cap->add_option("--k", cap_k)->required()->check(CLI::PositiveNumber);
    cap->add_option("--x0", cap_x0);
    cap->add_option("--delta", cap_delta);

    // verify
    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    std::string suite;
    std::string fixture_dir = KPRIME_FIXTURE_DIR;
    std::uint64_t ver_k_max = 100000, ver_count = 100;
    ver->add_option("--suite", suite)->required()->check(
        CLI::IsMember({"prop8", "fixtures", "theorem1"}));
    ver->add_option("--fixtures", fixture_dir, "Fixture directory");
    ver->add_option("--k-max", ver_k_max, "Upper k for the theorem1 scan");
    ver->add_option("--count", ver_count, "m_max for the prop8 suite");
    ver->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    const OutputFormat format = parse_format(format_name);
    SieveOptions sieve;
    sieve.max_bytes = static_cast<std::size_t>(max_memory_mb) << 20;

    try {
        if (ram->parsed()) {
            const Rational v = Rational::parse(ram_v);
            const auto kind =
                ram_kind == "chebyshev" ? RamanujanKind::Chebyshev : RamanujanKind::Ramanujan;
            write_sequence(out, format,
                           {ram_kind, v.to_string(), sequence(kind, v, ram_count, sieve)});
            return exit_ok;
        }
        if (nk->parsed()) {
            NkOptions options;
            options.closed_endpoints = nk_closed;
            options.n_bound = nk_bound;
            options.sieve = sieve;
            write_nk(out, format, nk_sequence(nk_k, nk_count, options));
            return exit_ok;
        }
        if (gaps->parsed()) {
            if (k_max < k_min) {
                err << "error: --k-max must not be below --k-min\n";
                return exit_usage;
            }
            const auto reports = theorem1_scan(k_min, k_max, n_max, jobs);
            write_gaps(out, format, reports);
            const auto anomalies =
                std::count_if(reports.begin(), reports.end(), [](auto& r) { return r.is_anomaly(); });
            err << "scanned " << reports.size() << " values of k, " << anomalies << " anomalies\n";
            return anomalies == 0 ? exit_ok : exit_verification_failed;
        }
        if (res->parsed()) {
            if (!res_v && !res_k) {
                err << "error: residue needs --v or --k\n";
                return exit_usage;
            }
            const ResidueClass P(res_mod, res_res);
            const auto thm =
                detail::theorem_from(res_x0, res_delta, SmallIntervalTheorem::cullinan_hajir());
            if (res_v) {
                const Rational v = Rational::parse(*res_v);
                write_sequence(out, format,
                               {"residue", v.to_string(), residue_sequence(P, v, res_count, thm, sieve)});
            } else {
                const Rational v = Rational::successor_ratio(*res_k);
                write_sequence(out, format,
                               {"nk_residue", v.to_string(),
                                nk_sequence_P(P, *res_k, res_count, thm, sieve)});
            }
            return exit_ok;
        }
        if (cap->parsed()) {
            const auto thm =
                detail::theorem_from(cap_x0, cap_delta, SmallIntervalTheorem::ramare_saouter());
            const Rational v = Rational::successor_ratio(cap_k);
            write_capacity(out, format,
                           {v.to_string(), thm.x0, detail::fraction_text(thm.delta), capacity(v, thm)});
            return exit_ok;
        }
        if (ver->parsed()) {
            std::vector<Check> checks;
            if (suite == "prop8")
                checks = verify_prop8_suite(ver_count);
            else if (suite == "fixtures")
                checks = verify_fixtures(fixture_dir);
            else
                checks = verify_theorem1(fixture_dir, ver_k_max, jobs);
            write_checks(out, format, suite, checks);
            const bool passed =
                std::all_of(checks.begin(), checks.end(), [](auto& c) { return c.passed; });
            return passed ? exit_ok : exit_verification_failed;
        }
    } catch (const resource_limit_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_resource_limit;
    } catch (const certification_failed_error& e) {
        err << "verification failed: " << e.what() << '\n';
        return exit_verification_failed;
    } catch (const std::logic_error& e) {
        // invalid_argument, out_of_range and internal cross-check failures
        if (dynamic_cast<const std::invalid_argument*>(&e) ||
            dynamic_cast<const std::out_of_range*>(&e)) {
            err << "error: " << e.what() << '\n';
            return exit_usage;
        }
        err << "verification failed: " << e.what() << '\n';
        return exit_verification_failed;
    } catch (const capacity_exceeded_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const not_certified_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return exit_resource_limit;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

} // namespace kprime::cli
