// Benchmark: OpenMP-parallel grid kernels against the serial reference
// implementations. Also reports the max elementwise difference, which must
// be exactly zero (both paths run identical per-point arithmetic).
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "djet/batch.hpp"
#include "djet/bergman.hpp"
#include "djet/fuchsian.hpp"
#include "djet/jetext.hpp"
#include "djet/mobius.hpp"

using namespace djet;

namespace {

std::mt19937_64 eng(2024);
double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
cplx disk(double rmax) {
    return std::polar(rmax * std::sqrt(unit()), 2.0 * M_PI * unit());
}

template <typename F>
double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

double max_diff(const std::vector<SeriesTerm>& a, const std::vector<SeriesTerm>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i].value - b[i].value));
        d = std::max(d, std::abs(a[i].tail_indicator - b[i].tail_indicator));
    }
    return d;
}

void report(const char* name, double serial_ms, double parallel_ms, double diff) {
    std::printf("%-24s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   max|diff| %g\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms, diff);
}

}  // namespace

int main(int argc, char** argv) {
    int scale = argc > 1 ? std::atoi(argv[1]) : 1;
    if (scale < 1) scale = 1;

    {
        std::vector<cplx> c(9);
        for (cplx& v : c) v = {2.0 * unit() - 1.0, 2.0 * unit() - 1.0};
        NDifferential psi = NDifferential::power_series(2, std::move(c));
        std::vector<PointPair> pairs;
        for (int i = 0; i < 20000 * scale; ++i)
            pairs.push_back({DiskPoint(disk(0.8)), DiskPoint(disk(0.8))});
        std::vector<cplx> vs, vp;
        double ts = time_ms([&] { vs = extend_grid_serial(psi, pairs, {64}); });
        double tp = time_ms([&] { vp = extend_grid(psi, pairs, {64}); });
        report("extend_grid", ts, tp, max_diff(vs, vp));
    }

    GroupBall ball = enumerate_ball(octagon_generators(), 3);
    {
        std::vector<PointPair> pairs;
        for (int i = 0; i < 400 * scale; ++i)
            pairs.push_back({DiskPoint(disk(0.5)), DiskPoint(disk(0.5))});
        std::vector<SeriesTerm> vs, vp;
        double ts = time_ms([&] { vs = pair_series_grid_serial(ball, 4, pairs); });
        double tp = time_ms([&] { vp = pair_series_grid(ball, 4, pairs); });
        report("pair_series_grid", ts, tp, max_diff(vs, vp));
    }
    {
        std::vector<DiskPoint> pts;
        for (int i = 0; i < 2000 * scale; ++i) pts.emplace_back(disk(0.5));
        std::vector<SeriesTerm> vs, vp;
        double ts = time_ms([&] { vs = poincare_density_grid_serial(ball, 4, pts); });
        double tp = time_ms([&] { vp = poincare_density_grid(ball, 4, pts); });
        report("poincare_density_grid", ts, tp, max_diff(vs, vp));
    }
    {
        KernelBasis basis{2, {}};
        for (int N = 1; N <= 3; ++N) {
            std::vector<cplx> c(4);
            for (cplx& v : c) v = {2.0 * unit() - 1.0, 2.0 * unit() - 1.0};
            basis.families.push_back({NDifferential::power_series(N, std::move(c)), 1.0 + N});
        }
        std::vector<PairOfPairs> pts;
        for (int i = 0; i < 2000 * scale; ++i)
            pts.push_back({PointPair{DiskPoint(disk(0.6)), DiskPoint(disk(0.6))},
                           PointPair{DiskPoint(disk(0.6)), DiskPoint(disk(0.6))}});
        std::vector<cplx> vs, vp;
        double ts = time_ms([&] { vs = kernel_grid_serial(basis, 0.5, pts, {64}); });
        double tp = time_ms([&] { vp = kernel_grid(basis, 0.5, pts, {64}); });
        report("kernel_grid", ts, tp, max_diff(vs, vp));
    }
    return 0;
}
