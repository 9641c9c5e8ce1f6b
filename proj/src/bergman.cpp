#include "djet/bergman.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace djet {

namespace {
constexpr long double kPiL = 3.141592653589793238462643383279503L;
}

double weighted_norm(const std::vector<LadderEntry>& entries, double alpha) {
    if (!(alpha > -1.0))
        throw std::domain_error("weighted_norm: alpha <= -1 rejected (use hardy_partial)");
    long prev = -1;
    double sum = 0.0;
    for (const LadderEntry& e : entries) {
        if (e.n <= prev) throw std::invalid_argument("weighted_norm: n must be strictly increasing");
        if (!(e.sq_norm >= 0.0) || !std::isfinite(e.sq_norm))
            throw std::invalid_argument("weighted_norm: sq_norm must be finite and >= 0");
        prev = e.n;
        sum += fiber_weight(e.n, alpha) * e.sq_norm;
    }
    return M_PI * sum;
}

double i_image_norm(int N, double alpha, double psi_sq_norm) {
    if (!(psi_sq_norm >= 0.0))
        throw std::invalid_argument("i_image_norm: psi_sq_norm must be >= 0");
    return M_PI * psi_sq_norm * c_alpha(N, alpha).value;  // c_alpha validates N, alpha
}

double hardy_partial(int N, long M) {
    if (N < 1) throw std::domain_error("hardy_partial: requires N >= 1");
    if (M < 0) throw std::domain_error("hardy_partial: requires M >= 0");
    long double n = N;
    long double term = 1.0L;  // norm_ratio(N, 0)
    long double sum = 0.0L, comp = 0.0L;
    for (long m = 0;; ++m) {
        long double y = term - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (m == M) break;
        long double x = m;
        term *= ((n + x) * (n + x)) / ((x + 1.0L) * (2.0L * n + x));
    }
    return static_cast<double>(kPiL * sum);
}

SurfaceQuadrature SurfaceQuadrature::disk(double rho, int radial, int angular) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("disk quadrature: rho must be in (0,1)");
    if (angular < 4) throw std::domain_error("disk quadrature: angular count must be >= 4");
    const GaussLegendre& gl = gauss_legendre(radial);
    SurfaceQuadrature q;
    q.samples.reserve(static_cast<size_t>(radial) * static_cast<size_t>(angular));
    double dtheta = 2.0 * M_PI / angular;
    for (int i = 0; i < radial; ++i) {
        double r = rho * gl.x[static_cast<size_t>(i)];
        double wr = rho * gl.w[static_cast<size_t>(i)] * r * dtheta;  // r dr dtheta
        for (int jt = 0; jt < angular; ++jt) {
            double theta = dtheta * (jt + 0.5);
            q.samples.push_back({DiskPoint(std::polar(r, theta)), wr});
        }
    }
    return q;
}

double surface_norm(const NDifferential& psi, const SurfaceQuadrature& q) {
    int N = psi.order();
    double sum = 0.0;
    for (const SurfaceSample& s : q.samples) {
        if (!(s.weight > 0.0)) throw std::invalid_argument("surface_norm: weights must be > 0");
        cplx tau = s.tau.value();
        double om = 1.0 - std::norm(tau);
        // |psi|^2 in the order-N fiber metric times the area density
        sum += std::norm(psi(tau)) * std::pow(om * om / 2.0, N) * (4.0 / (om * om)) * s.weight;
    }
    return sum;
}

double kernel_constant(int genus, double alpha) {
    if (genus < 2) throw std::domain_error("kernel_constant: genus must be >= 2");
    if (!(alpha > -1.0)) throw std::domain_error("kernel_constant: alpha <= -1 rejected");
    return std::exp(log_gamma(alpha + 2.0)) / (M_PI * M_PI * (4.0 * genus - 4.0));
}

cplx kernel_assemble(const KernelBasis& basis, double alpha, const PointPair& p,
                     const PointPair& p2, const QuadratureSpec& q) {
    cplx acc = kernel_constant(basis.genus, alpha);
    std::map<int, double> c_by_order;
    for (const KernelFamily& fam : basis.families) {
        if (!(fam.sq_norm > 0.0)) throw std::domain_error("kernel_assemble: sq_norm must be > 0");
        int N = fam.psi.order();
        auto it = c_by_order.find(N);
        if (it == c_by_order.end()) it = c_by_order.emplace(N, c_alpha(N, alpha).value).first;
        double inv_norm = 1.0 / std::sqrt(fam.sq_norm);
        cplx e1 = extend(fam.psi, p, q) * inv_norm;
        cplx e2 = extend(fam.psi, p2, q) * inv_norm;
        acc += (1.0 / M_PI) * (1.0 / it->second) * e1 * std::conj(e2);
    }
    return acc;
}

std::vector<std::vector<cplx>> family_gram(const KernelBasis& basis, const SurfaceQuadrature& q) {
    size_t n = basis.families.size();
    std::vector<std::vector<cplx>> g(n, std::vector<cplx>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i; j < n; ++j) {
            const NDifferential& pi = basis.families[i].psi;
            const NDifferential& pj = basis.families[j].psi;
            if (pi.order() != pj.order()) continue;  // different bundles: orthogonal
            int N = pi.order();
            cplx acc = 0.0;
            for (const SurfaceSample& s : q.samples) {
                cplx tau = s.tau.value();
                double om = 1.0 - std::norm(tau);
                acc += pi(tau) * std::conj(pj(tau)) * std::pow(om * om / 2.0, N) *
                       (4.0 / (om * om)) * s.weight;
            }
            g[i][j] = acc;
            g[j][i] = std::conj(acc);
        }
    }
    return g;
}

}  // namespace djet
