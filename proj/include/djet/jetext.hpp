#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "djet/fuchsian.hpp"
#include "djet/mobius.hpp"
#include "djet/quadrature.hpp"

namespace djet {

// A holomorphic density psi(tau) of tensor order N >= 0 on the disk. Three
// bodies: a finite power series at 0, a truncated Poincare density over a
// GroupBall, or an opaque evaluator. Immutable after construction; cheap to
// copy; safe for concurrent evaluation (opaque evaluators must themselves be
// thread-safe).
class NDifferential {
  public:
    static NDifferential power_series(int order, std::vector<cplx> coeffs);
    static NDifferential poincare(int order, std::shared_ptr<const GroupBall> ball);
    static NDifferential evaluator(int order, std::function<cplx(cplx)> fn);

    int order() const { return order_; }
    cplx operator()(cplx tau) const;

    bool is_power_series() const { return kind_ == Kind::kSeries; }
    // Power-series coefficients; throws std::domain_error for other bodies.
    const std::vector<cplx>& coeffs() const;
    // True for a Poincare body of order < 2, whose full series need not
    // converge. Results remain computable; callers surface the flag.
    bool convergence_warning() const;

  private:
    enum class Kind { kSeries, kPoincare, kEvaluator };
    NDifferential(Kind k, int order) : kind_(k), order_(order) {}
    Kind kind_;
    int order_;
    std::vector<cplx> coeffs_;
    std::shared_ptr<const GroupBall> ball_;
    std::function<cplx(cplx)> fn_;
};

// Jet extension: the holomorphic function of (z, w) whose fiber jets along
// the diagonal reproduce psi,
//   extend(psi)(z, w) = (w-z)^N Int_0^1 ((1-s)s)^{N-1}/B(N,N) psi(z+s(w-z)) ds,
// evaluated by Gauss-Legendre quadrature on the full integrand (exact for
// power-series psi once 2*nodes >= 2N-1+deg psi). Order 0 returns psi(z).
// |w - z| < 1e-12 returns exact 0 for N >= 1 (the value is O(|w-z|^N)).
cplx extend(const NDifferential& psi, const PointPair& p, const QuadratureSpec& q = {});

// Same value through the path-integral form
//   1/B(N,N) (w-z)^{1-N} Int_path ((w-tau)(tau-z))^{N-1} psi(tau) dtau
// along the polyline z -> waypoints... -> w. The integrand is holomorphic, so
// the value is path independent; this is the cross-check for the segment
// form.
cplx extend_via_path(const NDifferential& psi, const PointPair& p,
                     const std::vector<DiskPoint>& waypoints, const QuadratureSpec& q = {});

// Taylor jet of extend(psi) at z = 0 in closed form, m = 0..M:
//   f_{N+m}(0) = Gamma(2N)/Gamma(N) * Gamma(N+m)/Gamma(2N+m) * c_m.
// Requires a power-series body (coefficients give exact derivatives at 0).
std::vector<cplx> taylor_at_zero(const NDifferential& psi, int M);

struct SeriesEval {
    cplx value;
    double last_term = 0.0;  // magnitude of the m = M term, truncation indicator
};

// Sum_{m<=M} f_{N+m}(0) w^{N+m}: the series route to extend(psi, (0, w)).
SeriesEval eval_series_at_zero(const NDifferential& psi, const DiskPoint& w, int M);

// Sampling circle for jet extraction in the fiber coordinate. radius <= 0
// requests the default 0.5*(1-|z|); any radius is clamped so the w-circle
// stays inside the disk with margin 0.1*(1-|z|).
struct JetSpec {
    double radius = 0.0;
    int nodes = 256;  // >= 8
};

using BidiskFn = std::function<cplx(cplx z, cplx w)>;

// n-th fiber Taylor coefficient f_n(z) of f at z by the trapezoidal Cauchy
// integral over the t-circle (spectrally accurate for holomorphic f):
//   f_n(z) = 1/(K r^n) Sum_k f(z, w_from_t(z, r e^{i theta_k})) e^{-i n theta_k}.
// Throws std::domain_error if |f| exceeds 1e100 on the circle (overflow guard).
cplx jet_extract(const BidiskFn& f, const DiskPoint& z, int n, const JetSpec& j = {});

// Max of the central-difference Cauchy-Riemann residuals |df/dzbar| and
// |df/dwbar| at p. Steps below 1e-8 are rejected (cancellation).
double cr_residual(const BidiskFn& f, const PointPair& p, double h = 1e-4);

// Residual of the fiber-coefficient recurrence
//   d f_n / d zbar + n z/(1-|z|^2) f_n + (n-1)/(1-|z|^2) f_{n-1} = 0
// at z, with the zbar-derivative by central differences of jet_extract and
// the jet radius resolved once at z and held fixed across the stencil. For
// n = 0 returns |d f_0 / d zbar|.
double recurrence_residual(const BidiskFn& f, const DiskPoint& z, int n,
                           const JetSpec& j = {}, double h = 1e-4);

// Residual |Box u - lambda u| of the weight-n Laplace operator
//   Box u = -(1/g) (d^2u/dz dzbar - n * 2 zbar/(1-|z|^2) * du/dzbar),
// g = 2/(1-|z|^2)^2, by second-order central differences with step h.
double laplacian_residual(const std::function<cplx(cplx)>& u, int n, const DiskPoint& z,
                          double h, double lambda);

// The transformed density tau -> psi(g tau) * (g'(tau))^N of the same order;
// extend(pullback(g, psi), (z, w)) == extend(psi, (gz, gw)).
NDifferential pullback(const Mobius& g, const NDifferential& psi);

}  // namespace djet
