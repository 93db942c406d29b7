#pragma once

#include "cyclat/certificate.hpp"

#include <string>

namespace cyclat::cli {

// Exit codes: 0 pass, 2 precondition, 3 falsification, 4 resource guard,
// 5 config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitFalsification = 3;
inline constexpr int kExitResource = 4;
inline constexpr int kExitConfig = 5;

struct CostLedger {
    unsigned long long primes_tested = 0;
    lattice::EnumStats enum_stats;
    double wall_seconds = 0.0;
    std::string predicted_cost;  // exp(1.5 n log n) for the chosen n
};

struct ScanOutcome {
    lift::ScanReport report;
    std::string json;
    std::string csv;
    std::string json_path;
    std::string csv_path;
    bool invariants_ok = false;
};

// Resolve the conductor from cfg.m_input ("17" or "primorial:7"), rejecting
// m = 2 mod 4 with the canonical replacement named, unless it resolves it.
Int resolve_conductor(const std::string& m_input, std::string* note = nullptr);

// Full pipeline: field, prime, base, radius, scan, artifacts. Writes
// certificate.json and summary.csv under cfg.out_dir. Throws the error types
// mapped to exit codes above.
ScanOutcome run_scan(cert::RunConfig cfg, CostLedger* ledger = nullptr);

// Re-check a certificate file; throws on failure.
void run_verify(const std::string& path);

struct PrimorialReport {
    Int m_raw;
    Int m_canonical;
    Int phi;
    unsigned long n;  // 2 phi
    std::string ratio_str;     // m / phi(m)
    std::string mertens_str;   // e^gamma log log m
    std::string quotient_str;  // (m/phi) / (e^gamma log log m) -> 1 asymptotically
    std::string note;          // canonicalization warning if any
};

PrimorialReport primorial_report(unsigned long x);

// Human-readable finite-regime report for the conds inequalities.
std::string conds_text(const symplectic::CondsReport& rep);

}  // namespace cyclat::cli
