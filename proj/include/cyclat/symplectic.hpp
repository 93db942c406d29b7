#pragma once

#include "cyclat/lift.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyclat::symplectic {

// Lambda_0 = alpha^{-1} O_K x alpha P^{-1} O_K^# with alpha^2 = t the root of
// X^phi - q|d_K|. Coordinates are the unscaled ideal bases; the scaling lives
// in the Gram blocks t^{-1} G_1 and t G_2. sigma_coord is the action of
// sigma(x1, x2) = (-conj(x2), conj(x1)) on ambient coordinates (t-laden);
// sigma_pairing is the rational form J with J(x, y) = <sigma(x), y>, where
// the alpha factors cancel.
struct SymplecticBase {
    lift::BasePair pair;
    MatS sigma_coord;
    MatQ sigma_pairing;
};

SymplecticBase build_symplectic_base(const cyclo::CyclotomicField& field,
                                     const ideals::SplitPrime& P);

struct SymplecticCertificate {
    bool pairing_integral = false;
    bool det_unimodular = false;
    bool vol_one = false;
    MatZ pairing;  // valid when pairing_integral
    Int det = 0;
    std::string witness;  // first failed entry / value, empty when ok

    bool ok() const { return pairing_integral && det_unimodular && vol_one; }
};

// Certifies sigma(L) = L^# and sigma^2 = -Id for a lattice built over the
// symplectic base: the pairing matrix M_ij = <sigma(b_i), b_j> is computed
// through the t-laden sigma route (asserting the t-coefficients vanish) and
// cross-checked against the rational pairing form, then tested for
// integrality, |det M| = 1 and Vol(L)^2 = 1.
SymplecticCertificate verify_symplectic(const SymplecticBase& base,
                                        const lattice::LatticeInstance& L);

// family_scan over the symplectic base; every line additionally carries a
// symplecticity certificate. Certificates are returned in line order.
lift::ScanReport symplectic_scan(const SymplecticBase& base, const Rat& r_sq,
                                 const std::string& constraint, const Rat& epsilon,
                                 std::vector<SymplecticCertificate>* certs = nullptr,
                                 std::uint64_t guard = 10000000ULL,
                                 lattice::EnumStats* stats = nullptr);

struct CondsReport {
    Int m, q;
    bool symplectic = false;
    std::string ratio_str;        // phi(m) tau(Lambda_0) / rho_m, 30 digits
    std::string rho_sq_str;       // rho_m^2
    std::string mu_quarter_str;   // mu^2(P Lambda_0) / 4
    bool rho_lt_half_mu = false;  // condition (ii), certified
    bool decided = false;         // interval certification converged
    bool m_pow_lt_q = false;      // m^phi(m) < q, exact
    bool intermediate_ok = false; // rho_m < (1/2) sqrt(phi) q^(1/phi), certified
    std::string binding;          // which precondition binds the scan radius
};

// Finite-m instantiation of the growth conditions: evaluates the inequalities
// the asymptotic argument relies on, with certified interval comparisons for
// the transcendental factor pi*e.
CondsReport conds_predicate(const cyclo::CyclotomicField& field, const ideals::SplitPrime& P,
                            bool symplectic_base, lattice::EnumStats* stats = nullptr);

}  // namespace cyclat::symplectic
