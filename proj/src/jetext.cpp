#include "djet/jetext.hpp"

#include <cmath>

#include "djet/specfun.hpp"

namespace djet {

NDifferential NDifferential::power_series(int order, std::vector<cplx> coeffs) {
    if (order < 0) throw std::domain_error("NDifferential: order must be >= 0");
    NDifferential d(Kind::kSeries, order);
    d.coeffs_ = std::move(coeffs);
    return d;
}

NDifferential NDifferential::poincare(int order, std::shared_ptr<const GroupBall> ball) {
    if (order < 0) throw std::domain_error("NDifferential: order must be >= 0");
    if (!ball) throw std::invalid_argument("NDifferential: null ball");
    NDifferential d(Kind::kPoincare, order);
    d.ball_ = std::move(ball);
    return d;
}

NDifferential NDifferential::evaluator(int order, std::function<cplx(cplx)> fn) {
    if (order < 0) throw std::domain_error("NDifferential: order must be >= 0");
    if (!fn) throw std::invalid_argument("NDifferential: null evaluator");
    NDifferential d(Kind::kEvaluator, order);
    d.fn_ = std::move(fn);
    return d;
}

cplx NDifferential::operator()(cplx tau) const {
    switch (kind_) {
        case Kind::kSeries: {
            cplx acc = 0.0;
            for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * tau + coeffs_[i];
            return acc;
        }
        case Kind::kPoincare: {
            cplx acc = 0.0;
            for (const Mobius& g : ball_->elements()) acc += cpow_int(g.derivative(tau), order_);
            return acc;
        }
        case Kind::kEvaluator:
            return fn_(tau);
    }
    return 0.0;  // unreachable
}

const std::vector<cplx>& NDifferential::coeffs() const {
    if (kind_ != Kind::kSeries)
        throw std::domain_error("NDifferential: coefficients require a power-series body");
    return coeffs_;
}

bool NDifferential::convergence_warning() const { return kind_ == Kind::kPoincare && order_ < 2; }

cplx extend(const NDifferential& psi, const PointPair& p, const QuadratureSpec& q) {
    int N = psi.order();
    cplx z = p.z.value(), w = p.w.value();
    if (N == 0) return psi(z);
    cplx d = w - z;
    if (std::abs(d) < 1e-12) return 0.0;  // value is O(|w-z|^N), below significance
    const GaussLegendre& gl = gauss_legendre(q.nodes);
    double logB = log_gamma(N) + log_gamma(N) - log_gamma(2.0 * N);
    cplx acc = 0.0;
    for (size_t i = 0; i < gl.x.size(); ++i) {
        double s = gl.x[i];
        // beta weight folded into the node scale in log space
        double scale = std::exp((N - 1) * std::log(s * (1.0 - s)) - logB);
        acc += gl.w[i] * scale * psi(z + s * d);
    }
    return std::exp(static_cast<double>(N) * std::log(d)) * acc;
}

cplx extend_via_path(const NDifferential& psi, const PointPair& p,
                     const std::vector<DiskPoint>& waypoints, const QuadratureSpec& q) {
    int N = psi.order();
    cplx z = p.z.value(), w = p.w.value();
    if (N == 0) return psi(z);
    if (std::abs(w - z) < 1e-12) return 0.0;
    const GaussLegendre& gl = gauss_legendre(q.nodes);
    double logB = log_gamma(N) + log_gamma(N) - log_gamma(2.0 * N);
    // 1/B(N,N) (w-z)^{1-N} Int ((w-tau)(tau-z))^{N-1} psi(tau) dtau; the
    // integer power via exp(k log .) is branch-safe, and exp((1-N) log(w-z))
    // recombines with it exactly for any branch choice.
    cplx pref = std::exp(static_cast<double>(1 - N) * std::log(w - z) - logB);
    std::vector<cplx> nodes;
    nodes.push_back(z);
    for (const DiskPoint& pt : waypoints) nodes.push_back(pt.value());
    nodes.push_back(w);
    cplx acc = 0.0;
    for (size_t leg = 0; leg + 1 < nodes.size(); ++leg) {
        cplx a = nodes[leg], b = nodes[leg + 1], dl = b - a;
        for (size_t i = 0; i < gl.x.size(); ++i) {
            cplx tau = a + gl.x[i] * dl;
            cplx f = psi(tau);
            if (N > 1) f *= std::exp(static_cast<double>(N - 1) *
                                     (std::log(w - tau) + std::log(tau - z)));
            acc += gl.w[i] * f * dl;
        }
    }
    return pref * acc;
}

std::vector<cplx> taylor_at_zero(const NDifferential& psi, int M) {
    if (M < 0) throw std::domain_error("taylor_at_zero: M must be >= 0");
    const std::vector<cplx>& c = psi.coeffs();  // rejects non-power-series bodies
    int N = psi.order();
    std::vector<cplx> out(static_cast<size_t>(M) + 1, 0.0);
    if (N == 0) {
        // order 0: the extension is psi(z), constant in the fiber direction
        if (!c.empty()) out[0] = c[0];
        return out;
    }
    for (int m = 0; m <= M && m < static_cast<int>(c.size()); ++m) {
        // grouped so the factor is exactly 1 at m = 0
        double lg = (log_gamma(2.0 * N) - log_gamma(2.0 * N + m)) +
                    (log_gamma(static_cast<double>(N) + m) - log_gamma(N));
        out[static_cast<size_t>(m)] = std::exp(lg) * c[static_cast<size_t>(m)];
    }
    return out;
}

SeriesEval eval_series_at_zero(const NDifferential& psi, const DiskPoint& w, int M) {
    std::vector<cplx> f = taylor_at_zero(psi, M);
    cplx wv = w.value();
    cplx inner = 0.0;
    for (size_t m = f.size(); m-- > 0;) inner = inner * wv + f[m];
    SeriesEval out;
    out.value = cpow_int(wv, psi.order()) * inner;
    out.last_term = std::abs(f.back()) * std::pow(std::abs(wv), psi.order() + M);
    return out;
}

namespace {

// Shared resolution of the jet sampling circle: default radius 0.5*(1-|z|),
// any radius clamped so the w-circle keeps margin 0.1*(1-|z|) to the boundary.
double resolve_radius(cplx z, const JetSpec& j) {
    double az = std::abs(z);
    double rho = 1.0 - 0.1 * (1.0 - az);
    double rmax = (rho - az) / (1.0 - rho * az);
    double r = (j.radius > 0.0) ? j.radius : 0.5 * (1.0 - az);
    if (!(r < 1.0)) throw std::domain_error("jet_extract: radius must be in (0,1)");
    return std::min(r, rmax);
}

cplx jet_extract_fixed(const BidiskFn& f, cplx z, int n, double r, int K) {
    cplx acc = 0.0;
    for (int k = 0; k < K; ++k) {
        double theta = 2.0 * M_PI * k / K;
        cplx t = std::polar(r, theta);
        cplx w = (t + z) / (1.0 + std::conj(z) * t);
        cplx v = f(z, w);
        if (!(std::abs(v) <= 1e100))
            throw std::domain_error("jet_extract: overflow on the sampling circle");
        acc += v * std::polar(1.0, -n * theta);
    }
    return acc / (static_cast<double>(K) * std::pow(r, n));
}

}  // namespace

cplx jet_extract(const BidiskFn& f, const DiskPoint& z, int n, const JetSpec& j) {
    if (n < 0) throw std::domain_error("jet_extract: n must be >= 0");
    if (j.nodes < 8) throw std::domain_error("jet_extract: node count must be >= 8");
    return jet_extract_fixed(f, z.value(), n, resolve_radius(z.value(), j), j.nodes);
}

double cr_residual(const BidiskFn& f, const PointPair& p, double h) {
    if (!(h >= 1e-8)) throw std::domain_error("cr_residual: step below 1e-8 rejected");
    cplx z = p.z.value(), w = p.w.value();
    const cplx I(0.0, 1.0);
    auto dbar_z = [&](cplx zz) {
        cplx fx = (f(zz + h, w) - f(zz - h, w)) / (2.0 * h);
        cplx fy = (f(zz + I * h, w) - f(zz - I * h, w)) / (2.0 * h);
        return 0.5 * (fx + I * fy);
    };
    auto dbar_w = [&](cplx ww) {
        cplx fx = (f(z, ww + h) - f(z, ww - h)) / (2.0 * h);
        cplx fy = (f(z, ww + I * h) - f(z, ww - I * h)) / (2.0 * h);
        return 0.5 * (fx + I * fy);
    };
    return std::max(std::abs(dbar_z(z)), std::abs(dbar_w(w)));
}

double recurrence_residual(const BidiskFn& f, const DiskPoint& z, int n, const JetSpec& j,
                           double h) {
    if (!(h >= 1e-8)) throw std::domain_error("recurrence_residual: step below 1e-8 rejected");
    if (n < 0) throw std::domain_error("recurrence_residual: n must be >= 0");
    if (j.nodes < 8) throw std::domain_error("recurrence_residual: node count must be >= 8");
    cplx zv = z.value();
    // one radius for the whole stencil, so f_n(.) is sampled as a smooth
    // function of the center
    double r = resolve_radius(zv, j);
    auto fn = [&](cplx c) { return jet_extract_fixed(f, c, n, r, j.nodes); };
    const cplx I(0.0, 1.0);
    cplx fx = (fn(zv + h) - fn(zv - h)) / (2.0 * h);
    cplx fy = (fn(zv + I * h) - fn(zv - I * h)) / (2.0 * h);
    cplx dbar = 0.5 * (fx + I * fy);
    if (n == 0) return std::abs(dbar);
    double om = 1.0 - std::norm(zv);
    cplx fn0 = fn(zv);
    cplx fprev = jet_extract_fixed(f, zv, n - 1, r, j.nodes);
    return std::abs(dbar + static_cast<double>(n) * zv / om * fn0 +
                    static_cast<double>(n - 1) / om * fprev);
}

double laplacian_residual(const std::function<cplx(cplx)>& u, int n, const DiskPoint& z, double h,
                          double lambda) {
    if (!(h >= 1e-8)) throw std::domain_error("laplacian_residual: step below 1e-8 rejected");
    cplx zv = z.value();
    const cplx I(0.0, 1.0);
    cplx u0 = u(zv);
    cplx uxp = u(zv + h), uxm = u(zv - h), uyp = u(zv + I * h), uym = u(zv - I * h);
    // Laplacian stencil: d2u/dz dzbar = (uxx + uyy)/4
    cplx uzzbar = (uxp + uxm + uyp + uym - 4.0 * u0) / (4.0 * h * h);
    cplx uzbar = 0.5 * ((uxp - uxm) / (2.0 * h) + I * (uyp - uym) / (2.0 * h));
    double om = 1.0 - std::norm(zv);
    double g = 2.0 / (om * om);
    cplx dlogh_uzbar = static_cast<double>(n) * (2.0 * std::conj(zv) / om) * uzbar;
    cplx box = -(uzzbar - dlogh_uzbar) / g;
    return std::abs(box - lambda * u0);
}

NDifferential pullback(const Mobius& g, const NDifferential& psi) {
    int N = psi.order();
    return NDifferential::evaluator(N, [g, psi, N](cplx tau) {
        return psi(g.apply_raw(tau)) * cpow_int(g.derivative(tau), N);
    });
}

}  // namespace djet
