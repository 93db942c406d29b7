#pragma once

#include "cyclat/cyclo.hpp"
#include "cyclat/fractional_ideal.hpp"
#include "cyclat/interval.hpp"
#include "cyclat/matrix.hpp"
#include "cyclat/scalar.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cyclat::lattice {

struct EnumStats {
    unsigned long long nodes = 0;
    unsigned long long exact_checks = 0;
};

// Lattice spanned by coord_num/coord_den rows over an ambient basis whose
// Gram matrix has AlgebraicScalar entries. The k x k Gram of the generators
// is cached at construction. Immutable; safe to share across threads.
class LatticeInstance {
  public:
    LatticeInstance(MatS ambient_gram, MatZ coord_num, Int coord_den = Int(1));

    static LatticeInstance from_ideal(const cyclo::CyclotomicField& field,
                                      const ideals::FractionalIdeal& a);

    size_t rank() const { return coord_num_.rows(); }
    size_t ambient_dim() const { return ambient_gram_.rows(); }

    const MatS& ambient_gram() const { return ambient_gram_; }
    const MatZ& coord_num() const { return coord_num_; }
    const Int& coord_den() const { return coord_den_; }
    const MatS& gram() const { return gram_; }
    bool gram_is_rational() const { return gram_rational_; }
    const MatQ& gram_q() const { return gram_q_; }

    AlgebraicScalar volume_sq() const { return det(gram_); }

    // x G x^T for integer coordinates in this basis.
    AlgebraicScalar norm_sq(const std::vector<Int>& x) const;
    // (x - c) G (x - c)^T for integer x and rational shift c.
    AlgebraicScalar dist_sq(const std::vector<Int>& x, const std::vector<Rat>& c) const;

  private:
    MatS ambient_gram_;
    MatZ coord_num_;
    Int coord_den_;
    MatS gram_;
    bool gram_rational_ = false;
    MatQ gram_q_;
};

// Exact LLL on the cached Gram; the Lovasz condition is decided by exact
// scalar signs. Returns the reduced instance; `transform`, when given,
// receives the unimodular row transform U with reduced = U * original.
LatticeInstance lll_reduce(const LatticeInstance& L, const Rat& delta = make_rat(99, 100),
                           MatZ* transform = nullptr);

struct SvpResult {
    std::vector<Int> coords;  // in the instance's basis
    AlgebraicScalar norm_sq;
};

// Exact shortest nonzero vector: float-guided Fincke-Pohst enumeration with
// exact re-verification of every candidate; ties broken lexicographically.
SvpResult shortest_vector(const LatticeInstance& L, EnumStats* stats = nullptr);

// All vectors with norm^2 <= r_sq (exact comparisons), including 0,
// in lexicographic order. Throws ResourceError past `guard` points.
std::vector<std::vector<Int>> enumerate_ball(const LatticeInstance& L,
                                             const AlgebraicScalar& r_sq,
                                             std::uint64_t guard = 10000000ULL,
                                             EnumStats* stats = nullptr);

struct CvpResult {
    std::vector<Int> coords;
    AlgebraicScalar dist_sq;
};

// Exact closest vector to a rational target given in ambient coordinates
// (must lie in the span; instance must be square full-rank).
CvpResult closest_vector(const LatticeInstance& L, const std::vector<Rat>& target_ambient,
                         EnumStats* stats = nullptr);

// Basis of the dual lattice in the same ambient coordinates; requires a
// rational ambient Gram and square coordinate matrix.
LatticeInstance dual_basis(const LatticeInstance& L);

// Squared covering bound tau^2 = (n/4) (|d_K| Vol(A)^2)^(1/n), n = phi(m),
// as an exact scalar in the tower (n, |d_K| Vol(A)^2).
AlgebraicScalar covering_radius_upper(const cyclo::CyclotomicField& field,
                                      const ideals::FractionalIdeal& a);

// Vol(B(r)) for even n with r^2 given as an interval: pi^(n/2) (r^2)^(n/2) / (n/2)!.
FInterval ball_volume_from_rsq(unsigned n, const FInterval& r_sq, mpfr_prec_t prec);

struct DensityReport {
    AlgebraicScalar mu_sq;
    AlgebraicScalar vol_sq;
    AlgebraicScalar center_density_sq;  // (mu^2/4)^n / Vol^2, exact
    std::string delta_str;              // 30 significant digits
    double delta;
};

DensityReport density_report(const LatticeInstance& L, EnumStats* stats = nullptr);

struct RadiusResult {
    // Certified enclosure of r^2 with Vol(B(r)) = target_volume.
    Rat r_sq_lo;
    Rat r_sq_hi;
};

// Radius with Vol(B(r)) = (1-eps) m q Vol0 in dimension n, solved by Newton
// iteration on the log-volume at 256-bit precision and certified by interval
// bracketing.
RadiusResult target_radius(const Rat& epsilon, const Int& m, const Int& q,
                           const AlgebraicScalar& vol0_sq, unsigned n);

}  // namespace cyclat::lattice
