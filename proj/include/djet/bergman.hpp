#pragma once

#include <vector>

#include "djet/jetext.hpp"
#include "djet/mobius.hpp"
#include "djet/quadrature.hpp"
#include "djet/specfun.hpp"

namespace djet {

// A sequence of fiber-coefficient squared norms (n, ||phi_n||^2), n strictly
// increasing, sq_norm >= 0 and finite.
struct LadderEntry {
    long n;
    double sq_norm;
};

// pi * Sum fiber_weight(n, alpha) * sq_norm over the list; alpha > -1.
// For the alpha -> -1 (Hardy) limit use hardy_partial: the limit norm
// diverges for every non-constant function and is not exposed as a norm.
double weighted_norm(const std::vector<LadderEntry>& entries, double alpha);

// Norm of the extension of a unit seed through the closed form:
// pi * psi_sq_norm * c_alpha(N, alpha).
double i_image_norm(int N, double alpha, double psi_sq_norm);

// Partial Hardy sum pi * Sum_{m=0..M} norm_ratio(N, m). Divergent in M like
// K_N * ln M; exposed as partial sums only so callers observe the divergence.
double hardy_partial(int N, long M);

// User-supplied quadrature over a fundamental domain: Sum f(tau) * weight
// approximates Int_F f dlambda (Euclidean area measure). Whether the domain
// actually is fundamental for the caller's group is the caller's contract.
struct SurfaceSample {
    DiskPoint tau;
    double weight;  // > 0
};

struct SurfaceQuadrature {
    std::vector<SurfaceSample> samples;

    // Tensor rule on the Euclidean disk |tau| <= rho: Gauss-Legendre radially,
    // uniform midpoints angularly. A test region, not a fundamental domain.
    static SurfaceQuadrature disk(double rho, int radial, int angular);
};

// Sum |psi(tau)|^2 * ((1-|tau|^2)^2/2)^N * 4/(1-|tau|^2)^2 * weight:
// the squared surface L2 norm of an order-N density in the metric
// normalization |dz^N|^2 = ((1-|z|^2)^2/2)^N with area form 4 dlambda/(1-|z|^2)^2.
double surface_norm(const NDifferential& psi, const SurfaceQuadrature& q);

// One basis family for truncated kernel assembly: an order-N density with its
// squared surface norm (used to normalize; families are assumed mutually
// orthogonal -- check with family_gram).
struct KernelFamily {
    NDifferential psi;
    double sq_norm;  // > 0
};

struct KernelBasis {
    int genus;  // >= 2
    std::vector<KernelFamily> families;
};

// Constant term Gamma(alpha+2) / (pi^2 (4g - 4)) of the weighted Bergman
// kernel of the diagonal quotient (volume normalization pi(4g-4)).
double kernel_constant(int genus, double alpha);

// Truncated weighted Bergman kernel
//   K(p, p2) = kernel_constant + (1/pi) Sum_fam (1/c_alpha(N, alpha))
//              * E(p) * conj(E(p2)),   E = extend(psi/||psi||, .).
// Rejects sq_norm <= 0. Families are normalized, never orthogonalized.
cplx kernel_assemble(const KernelBasis& basis, double alpha, const PointPair& p,
                     const PointPair& p2, const QuadratureSpec& q = {});

// Surface Gram matrix of the basis families under the given quadrature.
// Families of different order pair to exact 0 (sections of different bundles);
// same-order pairs integrate psi_i conj(psi_j) against the order's weight.
// Diagnostic for the orthogonality input contract of kernel_assemble.
std::vector<std::vector<cplx>> family_gram(const KernelBasis& basis, const SurfaceQuadrature& q);

}  // namespace djet
