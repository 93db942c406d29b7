#pragma once

#include "cyclat/lift.hpp"
#include "cyclat/symplectic.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace cyclat::cert {

struct RunConfig {
    std::string m_input;  // "5" or "primorial:7"
    Int m;                // canonical conductor
    std::string prime_mode = "auto";  // "auto" | "explicit" | "sw-window"
    Int prime_value = 2;              // explicit p, or the lower search bound
    Rat epsilon = make_rat(1, 10);
    bool symplectic = false;
    std::optional<Rat> radius_sq;
    std::string out_dir = ".";
    std::uint64_t ball_guard = 10000000ULL;
    bool force = false;
};

// Canonical certificate JSON ("cyclat-certificate-v1"): stable key order,
// integers and rationals as decimal strings, scalars as {e, D, coeffs}.
// Identical inputs produce identical bytes.
std::string certificate_json(const RunConfig& cfg, const cyclo::CyclotomicField& field,
                             const ideals::SplitPrime& P, const lift::ScanReport& rep,
                             const std::vector<symplectic::SymplecticCertificate>& certs);

// One row per line: m,p,line,count,mu_sq,vol_sq,delta,symplectic.
std::string summary_csv(const lift::ScanReport& rep);

// Re-checks every exact claim of a certificate without re-running the scan:
// field/prime derivation, radius admissibility, per-line volumes and minima
// via fresh SVP, symplectic certification, aggregate arithmetic, and the
// HNF-canonicalized best basis. Throws ConfigError on schema problems and
// FalsificationError (with a witness) on any failed claim.
void verify_certificate(const std::string& json_text);

}  // namespace cyclat::cert
