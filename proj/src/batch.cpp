#include "djet/batch.hpp"

#include <set>
#include <stdexcept>

namespace djet {

// The parallel variants evaluate the same scalar routine per point with no
// cross-point arithmetic, so results are bitwise equal to the serial ones.
// Quadrature tables are warmed and argument validation runs before the
// parallel region, so the loop body cannot throw across the OpenMP boundary.

std::vector<cplx> extend_grid_serial(const NDifferential& psi, std::span<const PointPair> pts,
                                     const QuadratureSpec& q) {
    std::vector<cplx> out(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) out[i] = extend(psi, pts[i], q);
    return out;
}

std::vector<cplx> extend_grid(const NDifferential& psi, std::span<const PointPair> pts,
                              const QuadratureSpec& q) {
    gauss_legendre(q.nodes);
    std::vector<cplx> out(pts.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pts.size()); ++i)
        out[static_cast<size_t>(i)] = extend(psi, pts[static_cast<size_t>(i)], q);
    return out;
}

std::vector<SeriesTerm> pair_series_grid_serial(const GroupBall& ball, int N,
                                                std::span<const PointPair> pts) {
    std::vector<SeriesTerm> out(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) out[i] = pair_series(ball, N, pts[i]);
    return out;
}

std::vector<SeriesTerm> pair_series_grid(const GroupBall& ball, int N,
                                         std::span<const PointPair> pts) {
    if (N < 0) throw std::domain_error("pair_series: N must be >= 0");
    std::vector<SeriesTerm> out(pts.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pts.size()); ++i)
        out[static_cast<size_t>(i)] = pair_series(ball, N, pts[static_cast<size_t>(i)]);
    return out;
}

std::vector<SeriesTerm> poincare_density_grid_serial(const GroupBall& ball, int N,
                                                     std::span<const DiskPoint> taus) {
    std::vector<SeriesTerm> out(taus.size());
    for (size_t i = 0; i < taus.size(); ++i) out[i] = poincare_density(ball, N, taus[i]);
    return out;
}

std::vector<SeriesTerm> poincare_density_grid(const GroupBall& ball, int N,
                                              std::span<const DiskPoint> taus) {
    if (N < 0) throw std::domain_error("poincare_density: N must be >= 0");
    std::vector<SeriesTerm> out(taus.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(taus.size()); ++i)
        out[static_cast<size_t>(i)] = poincare_density(ball, N, taus[static_cast<size_t>(i)]);
    return out;
}

std::vector<cplx> kernel_grid_serial(const KernelBasis& basis, double alpha,
                                     std::span<const PairOfPairs> pts, const QuadratureSpec& q) {
    std::vector<cplx> out(pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
        out[i] = kernel_assemble(basis, alpha, pts[i][0], pts[i][1], q);
    return out;
}

std::vector<cplx> kernel_grid(const KernelBasis& basis, double alpha,
                              std::span<const PairOfPairs> pts, const QuadratureSpec& q) {
    gauss_legendre(q.nodes);
    kernel_constant(basis.genus, alpha);
    std::set<int> orders;
    for (const KernelFamily& fam : basis.families) {
        if (!(fam.sq_norm > 0.0)) throw std::domain_error("kernel_assemble: sq_norm must be > 0");
        if (orders.insert(fam.psi.order()).second) c_alpha(fam.psi.order(), alpha);
    }
    std::vector<cplx> out(pts.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pts.size()); ++i)
        out[static_cast<size_t>(i)] =
            kernel_assemble(basis, alpha, pts[static_cast<size_t>(i)][0],
                            pts[static_cast<size_t>(i)][1], q);
    return out;
}

}  // namespace djet
