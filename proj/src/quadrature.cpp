#include "djet/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace djet {

namespace {

// Legendre P_n(x) and P_n'(x) on [-1,1] by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = (n == 0) ? p0 : p1;
    dp = (n == 0) ? 0.0 : n * (x * p1 - p0) / (x * x - 1.0);
}

GaussLegendre build(int n) {
    GaussLegendre g;
    g.x.resize(n);
    g.w.resize(n);
    // Roots come in +- pairs; solve the upper half by Newton from the
    // Chebyshev-like initial guess, then mirror.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p, dp;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, p, dp);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre(n, x, p, dp);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map [-1,1] -> [0,1]; x descending on the upper half makes the
        // mapped lower-half nodes ascending.
        g.x[i] = 0.5 * (1.0 - x);
        g.w[i] = 0.5 * w;
        g.x[n - 1 - i] = 0.5 * (1.0 + x);
        g.w[n - 1 - i] = 0.5 * w;
    }
    return g;
}

}  // namespace

const GaussLegendre& gauss_legendre(int nodes) {
    if (nodes < 4) throw std::domain_error("gauss_legendre: node count must be >= 4");
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(nodes);
    if (it == cache.end()) it = cache.emplace(nodes, build(nodes)).first;
    return it->second;
}

}  // namespace djet
