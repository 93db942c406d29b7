#include "cyclat/cli.hpp"

#include "cyclat/arith.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cyclat::cli {

Int resolve_conductor(const std::string& m_input, std::string* note) {
    Int m;
    if (m_input.rfind("primorial:", 0) == 0) {
        unsigned long x = std::stoul(m_input.substr(10));
        if (x < 2) throw ConfigError("primorial bound must be >= 2");
        m = primorial(x);
    } else {
        m = int_from_string(m_input);
    }
    if (m % 4 == 2) {
        Int half = m / 2;
        if (note)
            *note = "m = " + to_string(m) + " is 2 mod 4; using the canonical conductor " +
                    to_string(half) + " (same field)";
        m = half;
    }
    if (m < 3) throw ConfigError("conductor must be >= 3 after canonicalization");
    return m;
}

namespace {

std::string predicted_cost_string(unsigned long n) {
    // exp(1.5 n log n)
    BigFloat v(128);
    mpfr_set_ui(v.get(), n, MPFR_RNDN);
    mpfr_log(v.get(), v.get(), MPFR_RNDN);
    mpfr_mul_ui(v.get(), v.get(), 3 * n, MPFR_RNDN);
    mpfr_div_ui(v.get(), v.get(), 2, MPFR_RNDN);
    mpfr_exp(v.get(), v.get(), MPFR_RNDN);
    return v.str(6);
}

}  // namespace

ScanOutcome run_scan(cert::RunConfig cfg, CostLedger* ledger) {
    auto t0 = std::chrono::steady_clock::now();
    std::string note;
    cfg.m = resolve_conductor(cfg.m_input, &note);
    cyclo::CyclotomicField field(cfg.m);

    ideals::PrimeSearchStats pstats;
    ideals::SplitPrime P = [&] {
        if (cfg.prime_mode == "explicit") {
            if (!is_prime(cfg.prime_value))
                throw ConfigError("p = " + to_string(cfg.prime_value) + " is not prime");
            if (cfg.prime_value % cfg.m != 1)
                throw ConfigError("p = " + to_string(cfg.prime_value) + " is not 1 mod " +
                                  to_string(cfg.m));
            return ideals::find_split_prime(field, cfg.prime_value, cfg.prime_value, &pstats);
        }
        if (cfg.prime_mode == "sw-window") {
            auto [lo, hi] = ideals::siegel_walfisz_window(cfg.m);
            if (hi > (Int(1) << 64) && !cfg.force)
                throw ConfigError("Siegel-Walfisz window upper bound " + to_string(hi) +
                                  " exceeds 2^64; pass --force to search anyway");
            return ideals::find_split_prime(field, lo, hi, &pstats);
        }
        return ideals::find_split_prime(field, cfg.prime_value < 2 ? Int(2) : cfg.prime_value,
                                        Int(0), &pstats);
    }();

    lattice::EnumStats estats;
    ScanOutcome out{lift::ScanReport{}, "", "", "", "", false};
    std::vector<symplectic::SymplecticCertificate> certs;
    if (cfg.symplectic) {
        symplectic::SymplecticBase sb = symplectic::build_symplectic_base(field, P);
        lift::RadiusChoice rc = lift::choose_radius(sb.pair, cfg.epsilon, cfg.radius_sq, &estats);
        out.report = symplectic::symplectic_scan(sb, rc.r_sq, rc.constraint, cfg.epsilon, &certs,
                                                 cfg.ball_guard, &estats);
    } else {
        lift::BasePair base = lift::make_plain_base(field, P);
        lift::RadiusChoice rc = lift::choose_radius(base, cfg.epsilon, cfg.radius_sq, &estats);
        out.report =
            lift::family_scan(base, rc.r_sq, rc.constraint, cfg.epsilon, cfg.ball_guard, &estats);
    }

    out.json = cert::certificate_json(cfg, field, P, out.report, certs);
    out.csv = cert::summary_csv(out.report);
    out.invariants_ok = out.report.all_ok();

    std::filesystem::create_directories(cfg.out_dir);
    out.json_path = (std::filesystem::path(cfg.out_dir) / "certificate.json").string();
    out.csv_path = (std::filesystem::path(cfg.out_dir) / "summary.csv").string();
    {
        std::ofstream jf(out.json_path, std::ios::binary);
        jf << out.json;
        std::ofstream cf(out.csv_path, std::ios::binary);
        cf << out.csv;
    }

    if (ledger) {
        ledger->primes_tested = pstats.candidates_tested;
        ledger->enum_stats = estats;
        ledger->predicted_cost = predicted_cost_string(2 * field.phi());
        ledger->wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return out;
}

void run_verify(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open certificate: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    cert::verify_certificate(ss.str());
}

PrimorialReport primorial_report(unsigned long x) {
    if (x < 2) throw ConfigError("primorial bound must be >= 2");
    PrimorialReport rep;
    rep.m_raw = primorial(x);
    rep.m_canonical = (rep.m_raw % 4 == 2) ? Int(rep.m_raw / 2) : rep.m_raw;
    if (rep.m_canonical != rep.m_raw)
        rep.note = "m = " + to_string(rep.m_raw) + " is 2 mod 4; canonical conductor is " +
                   to_string(rep.m_canonical);
    rep.phi = euler_phi(rep.m_raw);
    rep.n = 2 * static_cast<unsigned long>(rep.phi.get_ui());

    const mpfr_prec_t prec = 128;
    BigFloat v(prec);
    Rat ratio = make_rat(rep.m_raw, rep.phi);
    mpfr_set_q(v.get(), ratio.get_mpq_t(), MPFR_RNDN);
    rep.ratio_str = v.str(10);
    // e^gamma log log m
    BigFloat g(prec), llm(prec);
    mpfr_const_euler(g.get(), MPFR_RNDN);
    mpfr_exp(g.get(), g.get(), MPFR_RNDN);
    mpfr_set_z(llm.get(), rep.m_raw.get_mpz_t(), MPFR_RNDN);
    mpfr_log(llm.get(), llm.get(), MPFR_RNDN);
    mpfr_log(llm.get(), llm.get(), MPFR_RNDN);
    mpfr_mul(g.get(), g.get(), llm.get(), MPFR_RNDN);
    rep.mertens_str = g.str(10);
    BigFloat quot(prec);
    mpfr_set_q(quot.get(), ratio.get_mpq_t(), MPFR_RNDN);
    mpfr_div(quot.get(), quot.get(), g.get(), MPFR_RNDN);
    rep.quotient_str = quot.str(10);
    return rep;
}

std::string conds_text(const symplectic::CondsReport& rep) {
    std::ostringstream os;
    os << "conds report: m = " << to_string(rep.m) << ", q = " << to_string(rep.q)
       << (rep.symplectic ? " (symplectic base)" : " (orthogonal base)") << "\n";
    os << "  (i)  phi(m) tau(Lambda_0) / rho_m = " << rep.ratio_str
       << "  [asymptotic hypothesis: -> 0; value reported, not asserted]\n";
    os << "  (ii) rho_m^2 = " << rep.rho_sq_str << " vs mu^2(P Lambda_0)/4 = "
       << rep.mu_quarter_str << ": rho_m < mu/2 is "
       << (rep.decided ? (rep.rho_lt_half_mu ? "TRUE" : "FALSE") : "UNDECIDED") << "\n";
    os << "  m^phi(m) < q: " << (rep.m_pow_lt_q ? "TRUE" : "FALSE");
    if (rep.m_pow_lt_q)
        os << "; intermediate bound rho_m < (1/2) sqrt(phi) q^(1/phi): "
           << (rep.intermediate_ok ? "TRUE" : "FALSE");
    os << "\n";
    os << "  binding scan constraint: " << rep.binding << "\n";
    return os.str();
}

}  // namespace cyclat::cli
