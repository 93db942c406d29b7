#pragma once

#include "cyclat/cyclo.hpp"
#include "cyclat/ideals.hpp"
#include "cyclat/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cyclat::lift {

// Normalized line of F_p^2: (0,1) or (1,b) with b in [0, p).
struct ProjectiveLine {
    Int p;
    Int u1, u2;
    bool operator==(const ProjectiveLine& o) const {
        return p == o.p && u1 == o.u1 && u2 == o.u2;
    }
    std::string str() const { return to_string(u1) + ":" + to_string(u2); }
};

// The q+1 lines, ordered (0:1), (1:0), (1:1), ..., (1:p-1).
std::vector<ProjectiveLine> lines(const ideals::SplitPrime& P);

// Lambda_0 = A_1 x A_2 with per-component squared scalings applied to the
// Gram only (coordinates stay integral w.r.t. the stacked ideal bases), plus
// the residue machinery for Lambda_0 / P Lambda_0 = F_p^2.
struct BasePair {
    cyclo::CyclotomicField field;
    ideals::SplitPrime P;
    ideals::FractionalIdeal ideal1, ideal2;
    AlgebraicScalar scale1_sq, scale2_sq;

    MatS ambient_gram;      // 2phi x 2phi, block diagonal
    MatZ pl0_coords;        // coords of P Lambda_0 in the ambient basis (HNF blocks)
    MatZ pl0_reduced;       // LLL-reduced basis of the same lattice
    MatZ zeta_mat;          // multiplication by zeta on ambient coordinates
    // Residue functionals psi_i: component coords -> F_p, normalized so the
    // chosen generator row maps to 1; kernel is exactly P A_i.
    std::vector<Int> psi1, psi2;
    size_t gen1 = 0, gen2 = 0;

    unsigned phi() const { return field.phi(); }
    unsigned dim() const { return 2 * field.phi(); }

    lattice::LatticeInstance lambda0() const;
    lattice::LatticeInstance p_lambda0() const;
    AlgebraicScalar lambda0_volume_sq() const;

    // Residue of an ambient coordinate vector, as a pair in [0,p)^2.
    std::pair<Int, Int> residue(const std::vector<Int>& coords) const;
    // Integral ambient coordinates of the standard lift of codeword (c1, c2).
    std::vector<Int> codeword_lift(const Int& c1, const Int& c2) const;
};

BasePair make_base_pair(const cyclo::CyclotomicField& field, const ideals::SplitPrime& P,
                        const ideals::FractionalIdeal& a1, const ideals::FractionalIdeal& a2,
                        const AlgebraicScalar& scale1_sq, const AlgebraicScalar& scale2_sq);

// Lambda_0 = O_K^2, both scales 1.
BasePair make_plain_base(const cyclo::CyclotomicField& field, const ideals::SplitPrime& P);

// Lambda_C = pi^{-1}(C) as an HNF-basis instance; checks both indices
// [Lambda_0 : Lambda_C] = p and [Lambda_C : P Lambda_0] = p.
lattice::LatticeInstance lift_line(const BasePair& base, const ProjectiveLine& C);

// wt(c)^2: squared distance of the codeword lift to P Lambda_0.
AlgebraicScalar coset_weight(const BasePair& base, const Int& c1, const Int& c2,
                             lattice::EnumStats* stats = nullptr);

// |B-bar(r)| via |Lambda_0 cap B(r)|; requires r_sq < mu^2(P Lambda_0)/4.
std::uint64_t discrete_ball_count(const BasePair& base, const Rat& r_sq,
                                  std::uint64_t guard = 10000000ULL,
                                  lattice::EnumStats* stats = nullptr);

struct MinimumCheck {
    AlgebraicScalar mu_sq;    // SVP of Lambda_C
    AlgebraicScalar d_sq;     // min coset weight over the nonzero codewords of C
    AlgebraicScalar mu_p_sq;  // SVP of P Lambda_0
};

// Verifies mu(Lambda_C)^2 = min{d^2, mu(P Lambda_0)^2} exactly.
MinimumCheck lattice_minimum_check(const BasePair& base, const ProjectiveLine& C,
                                   lattice::EnumStats* stats = nullptr);

struct RadiusChoice {
    Rat r_sq;
    std::string constraint;  // "min_half" | "target_volume" | "override"
};

// Largest dyadic r^2 strictly below both mu^2(P Lambda_0)/4 and the
// target-volume radius for epsilon; reports which constraint bound it.
RadiusChoice choose_radius(const BasePair& base, const Rat& epsilon,
                           const std::optional<Rat>& r_sq_override = std::nullopt,
                           lattice::EnumStats* stats = nullptr);

struct LineReport {
    ProjectiveLine line;
    std::uint64_t ball_count = 0;      // |B-bar(r) cap (C \ {0})|
    AlgebraicScalar min_weight_sq;     // d^2
    AlgebraicScalar vol_sq;
    AlgebraicScalar mu_sq;
    std::string delta_str;             // 30 significant digits
    bool dens_formula_checked = false; // min-distance density-formula comparison ran
    bool dens_formula_ok = false;
};

struct ScanReport {
    Int m, p, root;
    std::string base_kind;  // "orthogonal" | "symplectic"
    Rat r_sq;
    std::string radius_constraint;
    Rat epsilon;

    AlgebraicScalar mu_pl0_sq;
    AlgebraicScalar vol0_sq;
    std::uint64_t ball_count = 0;  // |B-bar(r)| including 0
    std::vector<LineReport> lines;
    std::uint64_t total_nonzero = 0;

    bool partition_ok = false;   // sum counts == ball_count - 1
    bool average_ok = false;     // strict average bound over the lines
    bool orbit_ok = false;       // every count == 0 mod m
    bool volume_ok = false;      // Vol(Lambda_C)^2 == q^2 Vol0^2 per line
    bool minimum_ok = false;     // mu^2 == min{d^2, mu_P^2} per line
    bool density_ok = false;     // per-line density-formula route agreement
    bool empty_svp_ok = false;   // every empty line has mu^2 > r^2 by fresh SVP
    bool empty_line_exists = false;
    bool empty_bound_ok = false;  // Delta(best) > Vol(B(r))/(2^n q Vol0), when empty
    bool svp_exceeds_r_ok = false;  // mu^2(best) > r^2, when empty

    size_t best_index = 0;
    MatZ best_basis;  // HNF rows of the best Lambda_C in ambient coords
    std::string best_delta_str;
    std::string empty_bound_str;  // the certified lower bound when applicable
    std::string target_density_str;   // (1-eps) m / 2^n for the report

    bool all_ok() const {
        return partition_ok && average_ok && orbit_ok && volume_ok && minimum_ok &&
               density_ok && empty_svp_ok &&
               (!empty_line_exists || (empty_bound_ok && svp_exceeds_r_ok));
    }
};

// Full scan: one ball enumeration, residue-line classification, and the
// per-line exact checks of the construction identities.
ScanReport family_scan(const BasePair& base, const Rat& r_sq, const std::string& constraint,
                       const Rat& epsilon, std::uint64_t guard = 10000000ULL,
                       lattice::EnumStats* stats = nullptr);

}  // namespace cyclat::lift
