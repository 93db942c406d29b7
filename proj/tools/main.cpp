#include <CLI11.hpp>

#include "cyclat/cli.hpp"

#include <iostream>

using namespace cyclat;

namespace {

int mapped_run(const std::function<int()>& body) {
    try {
        return body();
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return cli::kExitPrecondition;
    } catch (const FalsificationError& e) {
        std::cerr << "falsification: " << e.what() << "\n";
        return cli::kExitFalsification;
    } catch (const ResourceError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return cli::kExitResource;
    } catch (const ConfigError& e) {
        std::cerr << "config: " << e.what() << "\n";
        return cli::kExitConfig;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyclat: exact cyclotomic Construction A lattice scanner"};
    app.require_subcommand(1);

    // scan
    auto* scan = app.add_subcommand("scan", "scan the q+1 lifted lattices and emit certificates");
    std::string m_str, primorial_str, epsilon_str = "1/10", radius_str, out_dir = ".";
    std::string prime_str, prime_lower_str;
    bool sw_window = false, symplectic = false, force = false;
    std::uint64_t ball_guard = 10000000ULL;
    auto* m_opt = scan->add_option("--m", m_str, "conductor m (>= 3, not 2 mod 4)");
    auto* pri_opt = scan->add_option("--primorial", primorial_str,
                                     "use m = product of primes <= X (canonicalized)");
    scan->add_option("--prime", prime_str, "explicit split prime p = 1 mod m");
    scan->add_option("--prime-lower", prime_lower_str, "search the smallest split prime >= this");
    scan->add_flag("--sw-window", sw_window,
                   "search inside the Siegel-Walfisz window [x/2, x], x = (m^3 log m)^phi(m)");
    scan->add_flag("--force", force, "allow sw-window searches beyond 2^64");
    scan->add_option("--epsilon", epsilon_str, "target slack (rational in (0,1), default 1/10)");
    scan->add_flag("--symplectic", symplectic, "use the symplectic base lattice");
    scan->add_option("--radius-sq", radius_str, "exact rational override for r^2");
    scan->add_option("--out-dir", out_dir, "artifact directory (certificate.json, summary.csv)");
    scan->add_option("--ball-guard", ball_guard, "abort if the ball exceeds this many points");

    // verify
    auto* verify = app.add_subcommand("verify", "re-check every exact claim of a certificate");
    std::string cert_path;
    verify->add_option("certificate", cert_path, "path to certificate.json")->required();

    // primorial
    auto* prim = app.add_subcommand("primorial", "primorial conductor report (Mertens ratio)");
    unsigned long prim_x = 0;
    prim->add_option("X", prim_x, "primorial bound")->required();

    // conds
    auto* conds = app.add_subcommand("conds", "finite-regime report for the growth conditions");
    std::string conds_m, conds_prime;
    bool conds_symp = false;
    conds->add_option("--m", conds_m, "conductor")->required();
    conds->add_option("--prime", conds_prime, "split prime (default: smallest)");
    conds->add_flag("--symplectic", conds_symp, "evaluate over the symplectic base");

    CLI11_PARSE(app, argc, argv);

    if (scan->parsed()) {
        return mapped_run([&] {
            if ((m_opt->count() == 0) == (pri_opt->count() == 0))
                throw ConfigError("exactly one of --m / --primorial is required");
            cert::RunConfig cfg;
            cfg.m_input = m_opt->count() ? m_str : ("primorial:" + primorial_str);
            cfg.epsilon = rat_from_string(epsilon_str);
            if (!(cfg.epsilon > 0 && cfg.epsilon < 1))
                throw ConfigError("epsilon must lie in (0,1)");
            cfg.symplectic = symplectic;
            cfg.force = force;
            cfg.ball_guard = ball_guard;
            cfg.out_dir = out_dir;
            if (!radius_str.empty()) cfg.radius_sq = rat_from_string(radius_str);
            int prime_modes = (!prime_str.empty()) + (!prime_lower_str.empty()) + sw_window;
            if (prime_modes > 1)
                throw ConfigError("--prime, --prime-lower and --sw-window are exclusive");
            if (!prime_str.empty()) {
                cfg.prime_mode = "explicit";
                cfg.prime_value = int_from_string(prime_str);
            } else if (!prime_lower_str.empty()) {
                cfg.prime_mode = "auto";
                cfg.prime_value = int_from_string(prime_lower_str);
            } else if (sw_window) {
                cfg.prime_mode = "sw-window";
            }
            cli::CostLedger ledger;
            cli::ScanOutcome out = cli::run_scan(cfg, &ledger);
            std::cout << "m = " << to_string(out.report.m) << ", p = " << to_string(out.report.p)
                      << ", root = " << to_string(out.report.root) << ", base = "
                      << out.report.base_kind << "\n";
            std::cout << "r^2 = " << to_string(out.report.r_sq) << " (" << out.report.radius_constraint
                      << "), |ball| = " << out.report.ball_count << "\n";
            std::cout << "best line " << out.report.lines[out.report.best_index].line.str()
                      << ": count = " << out.report.lines[out.report.best_index].ball_count
                      << ", delta = " << out.report.best_delta_str << "\n";
            std::cout << "density target (1-eps) m / 2^n = " << out.report.target_density_str << "\n";
            std::cout << "invariants: " << (out.invariants_ok ? "all passed" : "FAILED") << "\n";
            std::cout << "artifacts: " << out.json_path << ", " << out.csv_path << "\n";
            std::cout << "cost: primes tested = " << ledger.primes_tested
                      << ", enumeration nodes = " << ledger.enum_stats.nodes
                      << ", exact checks = " << ledger.enum_stats.exact_checks
                      << ", wall = " << ledger.wall_seconds << " s\n";
            std::cout << "predicted construction cost exp(1.5 n log n) = " << ledger.predicted_cost
                      << "\n";
            return out.invariants_ok ? cli::kExitOk : cli::kExitFalsification;
        });
    }

    if (verify->parsed()) {
        return mapped_run([&] {
            cli::run_verify(cert_path);
            std::cout << "certificate verified: all exact claims re-checked\n";
            return cli::kExitOk;
        });
    }

    if (prim->parsed()) {
        return mapped_run([&] {
            cli::PrimorialReport rep = cli::primorial_report(prim_x);
            if (!rep.note.empty()) std::cout << "note: " << rep.note << "\n";
            std::cout << "m = " << to_string(rep.m_raw) << ", canonical = "
                      << to_string(rep.m_canonical) << ", phi = " << to_string(rep.phi)
                      << ", n = 2 phi = " << rep.n << "\n";
            std::cout << "m / phi(m) = " << rep.ratio_str << " vs e^gamma log log m = "
                      << rep.mertens_str << ", quotient = " << rep.quotient_str
                      << " (asymptotic comparison, not asserted)\n";
            return cli::kExitOk;
        });
    }

    if (conds->parsed()) {
        return mapped_run([&] {
            Int m = cli::resolve_conductor(conds_m);
            cyclo::CyclotomicField field(m);
            ideals::SplitPrime P =
                conds_prime.empty()
                    ? ideals::find_split_prime(field, Int(2))
                    : ideals::find_split_prime(field, int_from_string(conds_prime));
            symplectic::CondsReport rep = symplectic::conds_predicate(field, P, conds_symp);
            std::cout << cli::conds_text(rep);
            return cli::kExitOk;
        });
    }
    return cli::kExitConfig;
}
