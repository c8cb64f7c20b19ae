#include "edsp/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "edsp/config.hpp"
#include "edsp/errors.hpp"
#include "edsp/report_json.hpp"
#include "edsp/solver.hpp"
#include "edsp/term_cache.hpp"
#include "edsp/verify.hpp"

namespace edsp::cli {

namespace {

struct Flags {
    std::string config;
    std::optional<Index> max_n;
    std::optional<unsigned> ell;
    std::optional<std::string> power_set;
    bool assume_complete = false;
    std::optional<std::uint64_t> budget;
    std::optional<std::string> format;
    std::optional<std::string> cache;
    std::optional<std::uint64_t> max_p;
    std::optional<std::uint64_t> rs_max;
    std::optional<Index> max_index;
    std::optional<Index> scan_bound;
    unsigned threads = 0;
};

JobConfig resolve(const Flags& f) {
    JobConfig cfg = load_config(f.config);
    if (f.ell)
        cfg.ell = *f.ell;
    if (f.power_set) {
        cfg.power_set = parse_index_list(*f.power_set);
        cfg.assume_complete = f.assume_complete;
    } else if (f.assume_complete) {
        cfg.assume_complete = true;
    }
    if (f.scan_bound) {
        cfg.scan_bound = *f.scan_bound;
        if (!f.power_set)
            cfg.power_set.reset();
    }
    if (f.budget)
        cfg.budget = *f.budget;
    if (f.format) {
        if (*f.format != "text" && *f.format != "jsonl")
            throw ConfigError("format must be 'text' or 'jsonl'");
        cfg.format = *f.format;
    }
    if (f.max_index)
        cfg.max_index = *f.max_index;
    if (cfg.ell && *cfg.ell < 2)
        throw ConfigError("ell must be at least 2");
    return cfg;
}

std::unique_ptr<EdsSequence> open_sequence(const JobConfig& cfg, const Flags& f) {
    auto seq = std::make_unique<EdsSequence>(make_curve(cfg), make_point(cfg));
    if (f.cache && std::filesystem::exists(*f.cache))
        load_term_cache(*seq, *f.cache);
    return seq;
}

void store_cache(const EdsSequence& seq, const Flags& f) {
    if (f.cache)
        save_term_cache(seq, *f.cache);
}

std::string index_list(const std::set<Index>& s) {
    std::string out;
    for (Index n : s)
        out += (out.empty() ? "" : ",") + std::to_string(n);
    return out;
}

int cmd_gen(const Flags& f, std::ostream& out) {
    const JobConfig cfg = resolve(f);
    const Index max_n = f.max_n.value_or(12);
    if (max_n == 0)
        throw ConfigError("--max-n must be positive");
    auto seq = open_sequence(cfg, f);
    if (cfg.format == "text" && seq->normalized())
        out << "# normalized by B_1 = " << seq->raw_b1() << "\n";
    for (Index n = 1; n <= max_n; ++n) {
        const Integer& b = seq->b(n);
        if (cfg.format == "jsonl")
            out << nlohmann::json{{"n", n}, {"B", b.get_str()}}.dump() << "\n";
        else
            out << n << " " << b << "\n";
    }
    store_cache(*seq, f);
    return ok;
}

int cmd_powers(const Flags& f, std::ostream& out) {
    const JobConfig cfg = resolve(f);
    if (!cfg.ell)
        throw ConfigError("powers needs --ell or an ell in the config");
    const Index max_n = f.max_n.value_or(cfg.scan_bound.value_or(12));
    if (max_n == 0)
        throw ConfigError("--max-n must be positive");
    auto seq = open_sequence(cfg, f);
    const PowerSet ps = seq->scan_powers(*cfg.ell, max_n);
    if (cfg.format == "jsonl") {
        out << nlohmann::json{{"ell", ps.ell},
                              {"indices", ps.indices},
                              {"N", ps.n()},
                              {"M", ps.m()},
                              {"provenance", to_string(ps.provenance)},
                              {"scan_bound", ps.scan_bound}}
                   .dump()
            << "\n";
    } else {
        out << "P_" << ps.ell << " = {" << index_list(ps.indices) << "}  N = " << ps.n() << ", M = " << ps.m()
            << "  (scanned up to " << ps.scan_bound << ")\n";
    }
    store_cache(*seq, f);
    return ok;
}

int cmd_solve(const Flags& f, std::ostream& out, std::ostream& err) {
    const JobConfig cfg = resolve(f);
    auto seq = open_sequence(cfg, f);
    const PowerSet ps = make_power_set(cfg, *seq);
    const PrimeTable table(cfg.sieve_limit);
    SolverOptions opt;
    opt.budget = cfg.budget;
    opt.threads = f.threads;
    opt.max_index = cfg.max_index;
    opt.horizon = cfg.horizon;
    const SearchReport report = solve(*seq, ps, table, opt);
    if (cfg.format == "jsonl") {
        for (const auto& s : report.solutions)
            out << to_json(s).dump() << "\n";
        out << to_json(report).dump() << "\n";
    } else {
        out << "ell = " << ps.ell << ", P = {" << index_list(ps.indices) << "} (" << to_string(ps.provenance)
            << ")\n";
        out << "k_max = " << report.certificate.k_max << ", max m + d = "
            << report.certificate.md_bound_per_k.rbegin()->second << "\n";
        out << "    m     d     k  y\n";
        for (const auto& s : report.solutions)
            out << std::setw(5) << s.m << " " << std::setw(5) << s.d << " " << std::setw(5) << s.k << "  " << s.y
                << "\n";
        out << report.solutions.size() << " solutions, "
            << (report.truncated ? "TRUNCATED: " + report.truncation : std::string("complete"))
            << (report.conditional ? " (conditional: power set not asserted complete)" : "") << "\n";
        out << "candidates " << report.stats.candidates << ", pruned by coprime term "
            << report.stats.pruned_coprime << ", by W0 " << report.stats.pruned_w0 << ", by valuation "
            << report.stats.pruned_valuation << ", products tested " << report.stats.products_tested << "\n";
    }
    store_cache(*seq, f);
    if (report.truncated) {
        err << "search truncated: " << report.truncation << "\n";
        return budget_truncation;
    }
    return ok;
}

int cmd_verify(const Flags& f, std::ostream& out, std::ostream& err) {
    const JobConfig cfg = resolve(f);
    auto seq = open_sequence(cfg, f);
    VerifyOptions opt;
    opt.max_n = f.max_n.value_or(60);
    opt.max_p = f.max_p.value_or(50);
    opt.rs_max = f.rs_max.value_or(100'000);
    const PrimeTable table(std::max<std::uint64_t>(cfg.sieve_limit, opt.rs_max));
    const VerifyReport report = run_property_suite(*seq, table, opt);
    if (cfg.format == "jsonl") {
        out << to_json(report).dump() << "\n";
    } else {
        for (const auto& [name, n] : report.checks)
            out << std::setw(8) << n << "  " << name << "  (" << report.violations_of(name) << " violations)\n";
        for (const auto& v : report.violations)
            out << "VIOLATION " << v.identity << ": " << v.detail << "\n";
        out << report.total_checks() << " checks, " << report.violations.size() << " violations\n";
    }
    for (const auto& w : report.warnings)
        err << "warning: " << w << "\n";
    return report.passed() ? ok : verification_failure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Elliptic divisibility sequences and perfect powers in products of their terms", "edsp"};
    app.require_subcommand(1);
    Flags f;

    auto common = [&f](CLI::App* sub) {
        sub->add_option("--config", f.config, "JSON job config")->required();
        sub->add_option("--format", f.format, "text or jsonl");
        sub->add_option("--cache", f.cache, "JSON term cache to resume from and update");
    };

    auto* gen = app.add_subcommand("gen", "print B_1 .. B_max_n");
    common(gen);
    gen->add_option("--max-n", f.max_n, "last index");

    auto* powers = app.add_subcommand("powers", "indices n <= max_n with B_n an ell-th power");
    common(powers);
    powers->add_option("--max-n", f.max_n, "scan bound");
    powers->add_option("--ell", f.ell, "exponent");

    auto* solve_cmd = app.add_subcommand("solve", "all (m, d, k, y) with B_m ... B_(m+(k-1)d) = y^ell");
    common(solve_cmd);
    solve_cmd->add_option("--ell", f.ell, "exponent");
    solve_cmd->add_option("--power-set", f.power_set, "indices of ell-th power terms, e.g. 1,2,3,4,7,12");
    solve_cmd->add_flag("--assume-complete", f.assume_complete, "the power set lists every ell-th power term");
    solve_cmd->add_option("--scan-bound", f.scan_bound, "derive the power set by scanning 1..N instead");
    solve_cmd->add_option("--budget", f.budget, "candidate budget for k > 48");
    solve_cmd->add_option("--max-index", f.max_index, "only blocks with m + (k-1) d <= N");
    solve_cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");

    auto* verify = app.add_subcommand("verify", "check the divisibility identities and prime bounds");
    common(verify);
    verify->add_option("--max-n", f.max_n, "largest sequence index");
    verify->add_option("--max-p", f.max_p, "largest prime");
    verify->add_option("--rs-max", f.rs_max, "check prime-counting bounds on [17, N] (0 skips)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*gen)
            return cmd_gen(f, out);
        if (*powers)
            return cmd_powers(f, out);
        if (*solve_cmd)
            return cmd_solve(f, out, err);
        return cmd_verify(f, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return config_error;
    }
}

}  // namespace edsp::cli
