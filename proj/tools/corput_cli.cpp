// Command-line surface for the van der Corput discrepancy library.
//
// Exit codes: 0 success, 2 invalid arguments, 3 violated invariant or
// broken guaranteed bound, 4 resource cap exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corput/corput.hpp"

namespace {

struct Config {
    std::uint32_t base = 2;
    std::uint64_t n = 0;
    std::uint64_t m_literal = 0;
    unsigned m_exp = 0;
    unsigned m_digits = 0; // moments / moment-bound digit count
    unsigned order = 2;
    unsigned k_power = 2;
    double p = 2.0;
    bool sup = false;
    double lambda = 3.0;
    double a_const = 1.0;
    double lambda_min = -4.0;
    double lambda_max = 4.0;
    double lambda_step = 0.25;
    std::string statistic = "s";
    std::int64_t ell = 1;
    unsigned random_count = 0;
    std::uint64_t seed = 0;
    std::string f_descriptor;
    std::string mode = "exact";
    std::string format;
    std::string out_path;
    unsigned threads = 0;
};

std::ofstream open_out_file(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw corput::ValidationError("cannot open output file: " + path);
    return f;
}

corput::ScanMode parse_mode(const std::string& mode) {
    if (mode == "exact") return corput::ScanMode::exact;
    if (mode == "fast") return corput::ScanMode::fast;
    throw corput::ValidationError("mode must be exact or fast");
}

bool parse_format_json(const std::string& format, bool json_default) {
    if (format.empty()) return json_default;
    if (format == "csv") return false;
    if (format == "json") return true;
    throw corput::ValidationError("format must be csv or json");
}

unsigned effective_threads(unsigned requested) {
    if (requested) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

std::uint64_t resolve_m(const CLI::App* sub, const Config& cfg, corput::Base b) {
    const bool has_m = sub->count("--m") > 0;
    const bool has_exp = sub->count("--m-exp") > 0;
    if (has_m && has_exp)
        throw corput::ValidationError("provide only one of --m and --m-exp");
    if (has_m) return cfg.m_literal;
    if (has_exp) return corput::pow_u64(b, cfg.m_exp);
    throw corput::ValidationError("provide --m or --m-exp");
}

std::vector<double> build_grid(const Config& cfg) {
    if (!(cfg.lambda_step > 0.0))
        throw corput::ValidationError("lambda step must be positive");
    if (cfg.lambda_max < cfg.lambda_min)
        throw corput::ValidationError("lambda range is empty");
    const auto count =
        std::uint64_t((cfg.lambda_max - cfg.lambda_min) / cfg.lambda_step + 1.5);
    std::vector<double> grid(count);
    for (std::uint64_t i = 0; i < count; ++i)
        grid[i] = cfg.lambda_min + double(i) * cfg.lambda_step;
    return grid;
}

const char* bool_str(bool v) { return v ? "true" : "false"; }

int cmd_seq(const Config& cfg, std::ostream& os, bool json) {
    const corput::Base b(cfg.base);
    if (json)
        corput::write_sequence_json(os, cfg.n, b);
    else
        corput::write_sequence_csv(os, cfg.n, b);
    return 0;
}

int cmd_s(const Config& cfg, std::ostream& os) {
    const corput::Base b(cfg.base);
    if (cfg.n > corput::caps::scan_exact)
        throw corput::ResourceLimitError("N exceeds the configured cap");
    const corput::Rational s = corput::s_of_n_digits(cfg.n, b);
    os << "{\"N\":" << cfg.n << ",\"S\":\"" << corput::to_fraction_string(s) << "\"}\n";
    return 0;
}

int cmd_lp(const Config& cfg, std::ostream& os) {
    const corput::Base b(cfg.base);
    if (cfg.n == 0) throw corput::ValidationError("N must be positive");
    const auto profile = corput::DiscrepancyProfile::build(cfg.n, b);
    os << "{\"N\":" << cfg.n << ",\"base\":" << cfg.base;
    if (cfg.sup) {
        os << ",\"p\":\"sup\",\"value\":" << corput::fmt_g15(corput::sup_norm(profile))
           << ",\"exact_integrand\":true}\n";
        return 0;
    }
    const corput::LpValue v = corput::lp_norm(profile, cfg.p);
    os << ",\"p\":" << corput::fmt_g15(cfg.p) << ",\"value\":" << corput::fmt_g15(v.value)
       << ",\"exact_integrand\":" << bool_str(v.exact_integrand) << "}\n";
    return 0;
}

int cmd_clt(const Config& cfg, const CLI::App* sub, std::ostream& os, bool json) {
    const corput::Base b(cfg.base);
    corput::CltStatistic stat;
    if (cfg.statistic == "s")
        stat.kind = corput::CltStatistic::Kind::s;
    else if (cfg.statistic == "lp")
        stat.kind = corput::CltStatistic::Kind::lp;
    else
        throw corput::ValidationError("statistic must be s or lp");
    stat.p = cfg.p;
    const corput::CltReport rep =
        corput::clt_scan(resolve_m(sub, cfg, b), b, build_grid(cfg), stat,
                         parse_mode(cfg.mode), effective_threads(cfg.threads));
    if (json)
        corput::write_clt_json(os, rep);
    else
        corput::write_clt_csv(os, rep);
    return 0;
}

int cmd_tail(const Config& cfg, const CLI::App* sub, std::ostream& os) {
    const corput::Base b(cfg.base);
    const corput::TailReport rep = corput::tail_scan(resolve_m(sub, cfg, b), b, cfg.lambda,
                                                     effective_threads(cfg.threads));
    corput::write_tail_json(os, rep);
    return rep.satisfied ? 0 : 3; // a proved bound: failure signals a defect
}

int cmd_lp_tail(const Config& cfg, const CLI::App* sub, std::ostream& os) {
    const corput::Base b(cfg.base);
    const corput::TailReport rep =
        corput::lp_tail_scan(resolve_m(sub, cfg, b), b, cfg.p, cfg.lambda, cfg.a_const);
    corput::write_tail_json(os, rep);
    return 0; // the constant A is existential; a large fraction is data, not a defect
}

int cmd_expsum(const Config& cfg, std::ostream& os) {
    const corput::Base b(cfg.base);
    const corput::ExpSumResult r = corput::exp_sum(cfg.ell, cfg.n, b);
    const bool ok = corput::exp_sum_bound_holds(r);
    os << "{\"ell\":" << r.ell << ",\"N\":" << r.n_points << ",\"base\":" << r.base
       << ",\"re\":" << corput::fmt_g15(r.value.real()) << ",\"im\":"
       << corput::fmt_g15(r.value.imag()) << ",\"abs\":" << corput::fmt_g15(std::abs(r.value))
       << ",\"s_min\":" << r.s_min << ",\"bound\":" << corput::fmt_g15(r.bound)
       << ",\"satisfied\":" << bool_str(ok) << "}\n";
    return ok ? 0 : 3;
}

void write_fourier_row(std::ostream& os, const corput::FourierCheck& c, bool ok) {
    os << "{\"base\":" << c.base << ",\"N\":" << c.n_points << ",\"ell\":" << c.ell
       << ",\"lhs_re\":" << corput::fmt_g15(c.lhs.real()) << ",\"lhs_im\":"
       << corput::fmt_g15(c.lhs.imag()) << ",\"rhs_re\":" << corput::fmt_g15(c.rhs.real())
       << ",\"rhs_im\":" << corput::fmt_g15(c.rhs.imag()) << ",\"residual\":"
       << corput::fmt_g15(c.residual) << ",\"satisfied\":" << bool_str(ok) << '}';
}

int cmd_fourier(const Config& cfg, const CLI::App* sub, std::ostream& os) {
    constexpr double tol = 1e-10;
    if (sub->count("--random") == 0) {
        const corput::Base b(cfg.base);
        if (cfg.n == 0) throw corput::ValidationError("N must be positive");
        const auto c = corput::fourier_identity_check(cfg.n, b, cfg.ell);
        const bool ok = c.residual < tol;
        write_fourier_row(os, c, ok);
        os << '\n';
        return ok ? 0 : 3;
    }
    // Seeded random sweep over (base, N, ell) triples. Raw engine words are
    // reduced by hand so the draw is identical on every platform.
    std::mt19937_64 rng(cfg.seed);
    const std::uint32_t bases[3] = {2, 3, 5};
    bool all_ok = true;
    os << '[';
    for (unsigned i = 0; i < cfg.random_count; ++i) {
        const corput::Base b(bases[rng() % 3]);
        const std::uint64_t n = 1 + rng() % 2048;
        std::int64_t ell = 0;
        while (ell == 0) ell = std::int64_t(rng() % 101) - 50;
        const auto c = corput::fourier_identity_check(n, b, ell);
        const bool ok = c.residual < tol;
        all_ok = all_ok && ok;
        if (i) os << ',';
        write_fourier_row(os, c, ok);
    }
    os << "]\n";
    return all_ok ? 0 : 3;
}

int cmd_qmc(const Config& cfg, std::ostream& os) {
    const corput::Base b(cfg.base);
    const corput::Integrand f = corput::Integrand::parse(cfg.f_descriptor);
    const corput::QmcDecomposition d = corput::qmc_decompose(f, cfg.n, b);
    const corput::KoksmaReport k = corput::koksma_gap(f, cfg.n, b);
    os << "{\"f\":\"" << corput::json_escape(d.f_id) << "\",\"N\":" << d.n_points
       << ",\"base\":" << d.base << ",\"sum_f\":" << corput::fmt_g15(d.sum_f)
       << ",\"mean_term\":" << corput::fmt_g15(d.mean_term) << ",\"jump_term\":"
       << corput::fmt_g15(d.jump_term) << ",\"remainder\":" << corput::fmt_g15(d.remainder);
    if (d.exact)
        os << ",\"remainder_exact\":\"" << corput::to_fraction_string(d.remainder_exact)
           << '"';
    os << ",\"bound\":" << corput::fmt_g15(d.bound) << ",\"satisfied\":"
       << bool_str(d.satisfied) << ",\"koksma_gap\":" << corput::fmt_g15(k.gap)
       << ",\"koksma_envelope\":" << corput::fmt_g15(k.envelope) << ",\"koksma_satisfied\":"
       << bool_str(k.satisfied) << "}\n";
    return d.satisfied && k.satisfied ? 0 : 3;
}

int cmd_moments(const Config& cfg, std::ostream& os) {
    const corput::Base b(cfg.base);
    const corput::BruteMoments mom = corput::brute_moments(b, cfg.m_digits, cfg.order);
    os << "{\"base\":" << cfg.base << ",\"m\":" << cfg.m_digits << ",\"order\":" << cfg.order
       << ",\"mean\":\"" << corput::to_fraction_string(mom.mean) << "\",\"expected_mean\":\""
       << corput::to_fraction_string(corput::expected_s(b, cfg.m_digits)) << '"';
    if (cfg.order >= 2)
        os << ",\"variance\":\"" << corput::to_fraction_string(mom.central[2]) << '"';
    os << ",\"central\":[";
    for (std::size_t k = 0; k < mom.central.size(); ++k) {
        if (k) os << ',';
        os << '"' << corput::to_fraction_string(mom.central[k]) << '"';
    }
    os << "]}\n";
    return 0;
}

int cmd_moment_bound_check(const Config& cfg, std::ostream& os) {
    const corput::Base b(cfg.base);
    if (cfg.k_power < 1 || cfg.k_power > 2)
        throw corput::ValidationError("k must be 1 or 2");
    const corput::WeakDepFamily family = corput::standard_family_for_s(b, cfg.m_digits);
    const bool identity = corput::standard_family_identity_holds(family, b);
    const corput::MomentBoundReport rep =
        corput::check_moment_bound(family, b, cfg.k_power);
    os << "{\"base\":" << cfg.base << ",\"m\":" << cfg.m_digits << ",\"k\":" << cfg.k_power
       << ",\"arity\":2,\"q\":" << corput::fmt_g15(corput::moment_bound_q(2, std::log(2.0)))
       << ",\"moment\":\"" << corput::to_fraction_string(rep.moment) << "\",\"moment_value\":"
       << corput::fmt_g15(rep.moment_value) << ",\"bound\":" << corput::fmt_g15(rep.bound)
       << ",\"identity_holds\":" << bool_str(identity) << ",\"satisfied\":"
       << bool_str(rep.satisfied) << "}\n";
    return identity && rep.satisfied ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{"exact discrepancy statistics of the base-b van der Corput sequence"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool with_format) {
        sub->add_option("--base", cfg.base, "sequence base, >= 2")->capture_default_str();
        sub->add_option("--out", cfg.out_path, "write output to a file instead of stdout");
        if (with_format) sub->add_option("--format", cfg.format, "csv or json");
        return sub;
    };
    auto add_m = [&](CLI::App* sub) {
        sub->add_option("--m", cfg.m_literal, "scan length M");
        sub->add_option("--m-exp", cfg.m_exp, "scan length as a power: M = base^exp");
        return sub;
    };

    CLI::App* seq = add_common(app.add_subcommand("seq", "emit x_0..x_{N-1}"), true);
    seq->add_option("--n", cfg.n, "number of points")->required();

    CLI::App* s = add_common(app.add_subcommand("s", "running sum S(N), exact"), false);
    s->add_option("--n", cfg.n, "prefix length N")->required();

    CLI::App* scan = add_m(add_common(
        app.add_subcommand("scan", "table of S(n) for n < M with normalized deviations"),
        true));
    scan->add_option("--mode", cfg.mode, "exact or fast")->capture_default_str();
    scan->add_option("--threads", cfg.threads, "worker threads (0 = auto)");

    CLI::App* lp = add_common(app.add_subcommand("lp", "Lp norm of the discrepancy profile"),
                              false);
    lp->add_option("--n", cfg.n, "prefix length N")->required();
    lp->add_option("--p", cfg.p, "exponent p >= 1")->capture_default_str();
    lp->add_flag("--sup", cfg.sup, "report the sup norm instead of an Lp norm");

    CLI::App* clt = add_m(add_common(
        app.add_subcommand("clt", "empirical CDF of the normalized statistic vs normal"),
        true));
    clt->add_option("--lambda-min", cfg.lambda_min, "grid start")->capture_default_str();
    clt->add_option("--lambda-max", cfg.lambda_max, "grid end")->capture_default_str();
    clt->add_option("--lambda-step", cfg.lambda_step, "grid step")->capture_default_str();
    clt->add_option("--statistic", cfg.statistic, "s or lp")->capture_default_str();
    clt->add_option("--p", cfg.p, "exponent for the lp statistic")->capture_default_str();
    clt->add_option("--mode", cfg.mode, "exact or fast")
        ->default_val(std::string("fast"))
        ->capture_default_str();
    clt->add_option("--threads", cfg.threads, "worker threads (0 = auto)");

    CLI::App* tail = add_m(add_common(
        app.add_subcommand("tail", "large-deviation tail fraction vs the proved bound"),
        false));
    tail->add_option("--lambda", cfg.lambda, "deviation parameter, >= 3")->required();
    tail->add_option("--threads", cfg.threads, "worker threads (0 = auto)");

    CLI::App* lp_tail = add_m(add_common(
        app.add_subcommand("lp-tail", "per-N Lp-norm tail fraction vs e^{-sqrt(lambda)}"),
        false));
    lp_tail->add_option("--p", cfg.p, "exponent p >= 1")->capture_default_str();
    lp_tail->add_option("--lambda", cfg.lambda, "deviation parameter, >= 1")->required();
    lp_tail->add_option("--A", cfg.a_const, "threshold constant")->capture_default_str();

    CLI::App* expsum = add_common(
        app.add_subcommand("expsum", "exponential sum over the sequence vs its ceiling"),
        false);
    expsum->add_option("--ell", cfg.ell, "nonzero frequency")->required();
    expsum->add_option("--n", cfg.n, "prefix length N")->required();

    CLI::App* fourier = add_common(
        app.add_subcommand("fourier", "Fourier coefficient of the profile, two routes"),
        false);
    fourier->add_option("--n", cfg.n, "prefix length N");
    fourier->add_option("--ell", cfg.ell, "nonzero frequency");
    fourier->add_option("--random", cfg.random_count, "check K random (base, N, ell) triples");
    fourier->add_option("--seed", cfg.seed, "seed for --random")->capture_default_str();

    CLI::App* qmc = add_common(
        app.add_subcommand("qmc", "integration error decomposition for an integrand"),
        false);
    qmc->add_option("--f", cfg.f_descriptor,
                    "integrand: poly:c0,c1,... | trig:sin|cos,k,amp | exp:a")
        ->required();
    qmc->add_option("--n", cfg.n, "prefix length N")->required();

    CLI::App* moments = add_common(
        app.add_subcommand("moments", "exact central moments of S over N < base^m"), false);
    moments->add_option("--m", cfg.m_digits, "digit count m")->required();
    moments->add_option("--order", cfg.order, "highest central moment, even")
        ->capture_default_str();

    CLI::App* moment_bound = add_common(
        app.add_subcommand("moment-bound",
                           "weak-dependence moment bound for the digit family of S"),
        false);
    moment_bound->add_option("--m", cfg.m_digits, "digit count m, >= 2")->required();
    moment_bound->add_option("--k", cfg.k_power, "moment order parameter, 1 or 2")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::ofstream out_file;
        std::ostream* os = &std::cout;
        if (!cfg.out_path.empty()) {
            out_file = open_out_file(cfg.out_path);
            os = &out_file;
        }
        int rc = 0;
        if (app.got_subcommand(seq))
            rc = cmd_seq(cfg, *os, parse_format_json(cfg.format, false));
        else if (app.got_subcommand(s))
            rc = cmd_s(cfg, *os);
        else if (app.got_subcommand(scan)) {
            const corput::Base b(cfg.base);
            corput::scan_s_to_stream(*os, resolve_m(scan, cfg, b), b, parse_mode(cfg.mode),
                                     effective_threads(cfg.threads),
                                     parse_format_json(cfg.format, false));
        } else if (app.got_subcommand(lp))
            rc = cmd_lp(cfg, *os);
        else if (app.got_subcommand(clt))
            rc = cmd_clt(cfg, clt, *os, parse_format_json(cfg.format, false));
        else if (app.got_subcommand(tail))
            rc = cmd_tail(cfg, tail, *os);
        else if (app.got_subcommand(lp_tail))
            rc = cmd_lp_tail(cfg, lp_tail, *os);
        else if (app.got_subcommand(expsum))
            rc = cmd_expsum(cfg, *os);
        else if (app.got_subcommand(fourier))
            rc = cmd_fourier(cfg, fourier, *os);
        else if (app.got_subcommand(qmc))
            rc = cmd_qmc(cfg, *os);
        else if (app.got_subcommand(moments))
            rc = cmd_moments(cfg, *os);
        else if (app.got_subcommand(moment_bound))
            rc = cmd_moment_bound_check(cfg, *os);
        os->flush();
        if (!*os) {
            std::cerr << "error: failed to write output\n";
            return 4;
        }
        return rc;
    } catch (const corput::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const corput::InvariantError& e) {
        std::cerr << e.what() << '\n';
        return 3;
    } catch (const corput::ResourceLimitError& e) {
        std::cerr << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
}
