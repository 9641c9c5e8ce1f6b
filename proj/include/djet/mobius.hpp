#pragma once

#include <complex>
#include <stdexcept>

namespace djet {

using cplx = std::complex<double>;

// z^n by repeated squaring, n >= 0. Exact group-power semantics for integer
// exponents; avoids the branch ambiguity of pow(complex, double).
cplx cpow_int(cplx z, int n);

// A point of the open unit disk. Construction enforces 1 - |z| >= 1e-12; the
// library computes strictly in the open disk.
class DiskPoint {
  public:
    explicit DiskPoint(cplx v);
    cplx value() const { return v_; }

  private:
    cplx v_;
};

struct PointPair {
    DiskPoint z;
    DiskPoint w;  // z == w allowed (diagonal)
};

// Disk automorphism z -> (alpha z + beta) / (conj(beta) z + conj(alpha)) with
// |alpha|^2 - |beta|^2 = 1, stored sign-canonically: the first of (alpha,
// beta) with modulus > 1e-9 has argument in (-pi/2, pi/2]. The pair and its
// negation act identically; canonical form makes equality comparable.
class Mobius {
  public:
    Mobius();  // identity
    // Rescales (alpha, beta) by the measured determinant before storing, so
    // inputs only need |alpha|^2 - |beta|^2 > 0 and close to 1.
    Mobius(cplx alpha, cplx beta);
    // Trusts that the determinant is already 1 to roundoff and stores the pair
    // without rescaling (canonicalization still applied). Used where rescaling
    // from rounded values would inject noise, e.g. ball enumeration.
    static Mobius from_unit_determinant(cplx alpha, cplx beta);

    cplx alpha() const { return a_; }
    cplx beta() const { return b_; }

    DiskPoint operator()(const DiskPoint& z) const;
    // Same map without the disk-membership re-check on the result; for use on
    // interior quadrature nodes where the image provably stays interior.
    cplx apply_raw(cplx z) const;
    // d(gz)/dz = 1 / (conj(beta) z + conj(alpha))^2
    cplx derivative(cplx z) const;
    Mobius inverse() const;
    // |(|alpha|^2 - |beta|^2) - 1| measured in extended precision.
    double det_residual() const;

  private:
    struct unit_det_t {};
    Mobius(unit_det_t, cplx a, cplx b);
    cplx a_, b_;
};

// Matrix product in SU(1,1), renormalized in extended precision and rounded
// once to double, so chains of compositions do not accumulate determinant
// drift.
Mobius compose(const Mobius& g, const Mobius& h);
inline Mobius operator*(const Mobius& g, const Mobius& h) { return compose(g, h); }

// Max modulus of entrywise difference of the canonical forms.
double distance(const Mobius& g, const Mobius& h);
bool near_identity(const Mobius& g, double tol = 1e-9);

// Fiber coordinate t = (w - z) / (1 - conj(z) w) and its inverse in w.
cplx t_coord(const PointPair& p);
DiskPoint w_from_t(const DiskPoint& z, cplx t);  // rejects |t| >= 1

// Invariant weight delta = 1 - |t|^2 = (1-|z|^2)(1-|w|^2)/|1 - conj(z) w|^2,
// in (0, 1].
double delta(const PointPair& p);

// Coefficient of the invariant 1-form (w-z) dtau / ((w-tau)(tau-z)).
// Rejects tau within 1e-14 of z or w (pole) and z == w (degenerate pair).
cplx bracket(const DiskPoint& w, cplx tau, const DiskPoint& z);

}  // namespace djet
