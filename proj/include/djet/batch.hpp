#pragma once

#include <array>
#include <span>
#include <vector>

#include "djet/bergman.hpp"
#include "djet/fuchsian.hpp"
#include "djet/jetext.hpp"

namespace djet {

// Point-parallel kernels (OpenMP over independent points) next to their
// serial references. Each parallel variant performs bitwise-identical
// per-point arithmetic in input order, so outputs equal the serial ones
// exactly; the serial variants are kept as the comparison baseline and for
// builds without OpenMP.

std::vector<cplx> extend_grid(const NDifferential& psi, std::span<const PointPair> pts,
                              const QuadratureSpec& q = {});
std::vector<cplx> extend_grid_serial(const NDifferential& psi, std::span<const PointPair> pts,
                                     const QuadratureSpec& q = {});

std::vector<SeriesTerm> pair_series_grid(const GroupBall& ball, int N,
                                         std::span<const PointPair> pts);
std::vector<SeriesTerm> pair_series_grid_serial(const GroupBall& ball, int N,
                                                std::span<const PointPair> pts);

std::vector<SeriesTerm> poincare_density_grid(const GroupBall& ball, int N,
                                              std::span<const DiskPoint> taus);
std::vector<SeriesTerm> poincare_density_grid_serial(const GroupBall& ball, int N,
                                                     std::span<const DiskPoint> taus);

using PairOfPairs = std::array<PointPair, 2>;

std::vector<cplx> kernel_grid(const KernelBasis& basis, double alpha,
                              std::span<const PairOfPairs> pts, const QuadratureSpec& q = {});
std::vector<cplx> kernel_grid_serial(const KernelBasis& basis, double alpha,
                                     std::span<const PairOfPairs> pts,
                                     const QuadratureSpec& q = {});

}  // namespace djet
