#include "djet/mobius.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace djet {

namespace {

using lcplx = std::complex<long double>;

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

lcplx widen(cplx v) { return {static_cast<long double>(v.real()), static_cast<long double>(v.imag())}; }
cplx narrow(lcplx v) { return {static_cast<double>(v.real()), static_cast<double>(v.imag())}; }

long double det_ld(lcplx a, lcplx b) { return std::norm(a) - std::norm(b); }

// Flip the shared sign of (a, b) so the first entry of modulus > 1e-9 has
// argument in (-pi/2, pi/2].
void canonicalize(lcplx& a, lcplx& b) {
    lcplx lead = (std::abs(a) > 1e-9L) ? a : b;
    bool flip = lead.real() < 0.0L || (lead.real() == 0.0L && lead.imag() < 0.0L);
    if (flip) {
        a = -a;
        b = -b;
    }
}

// Determinant drift scales with the squared entry magnitudes, so the residual
// check does too; at unit scale this is the plain 1e-12 bound.
void check_det(lcplx a, lcplx b) {
    long double res = std::abs(det_ld(a, b) - 1.0L);
    long double scale = 1.0L + std::norm(a) + std::norm(b);
    if (!(res <= 1e-12L * scale))
        throw std::domain_error("Mobius: determinant residual " +
                                fmt_sci(static_cast<double>(res)) + " exceeds tolerance");
}

}  // namespace

cplx cpow_int(cplx z, int n) {
    if (n < 0) throw std::domain_error("cpow_int: negative exponent");
    cplx r = 1.0;
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

DiskPoint::DiskPoint(cplx v) : v_(v) {
    if (!(1.0 - std::abs(v) >= 1e-12))
        throw std::domain_error("DiskPoint: |z| exceeds 1 - 1e-12");
}

Mobius::Mobius() : a_(1.0, 0.0), b_(0.0, 0.0) {}

Mobius::Mobius(cplx alpha, cplx beta) {
    lcplx a = widen(alpha), b = widen(beta);
    long double det = det_ld(a, b);
    if (!(det > 0.0L)) throw std::domain_error("Mobius: |alpha|^2 - |beta|^2 must be positive");
    long double s = std::sqrt(det);
    a /= s;
    b /= s;
    check_det(a, b);
    canonicalize(a, b);
    a_ = narrow(a);
    b_ = narrow(b);
}

Mobius::Mobius(unit_det_t, cplx a, cplx b) : a_(a), b_(b) {}

Mobius Mobius::from_unit_determinant(cplx alpha, cplx beta) {
    lcplx a = widen(alpha), b = widen(beta);
    check_det(a, b);
    canonicalize(a, b);
    return Mobius(unit_det_t{}, narrow(a), narrow(b));
}

DiskPoint Mobius::operator()(const DiskPoint& z) const { return DiskPoint(apply_raw(z.value())); }

cplx Mobius::apply_raw(cplx z) const { return (a_ * z + b_) / (std::conj(b_) * z + std::conj(a_)); }

cplx Mobius::derivative(cplx z) const {
    cplx d = std::conj(b_) * z + std::conj(a_);
    return 1.0 / (d * d);
}

Mobius Mobius::inverse() const {
    // Adjugate: exact entrywise negation/conjugation, no renormalization.
    lcplx a = widen(std::conj(a_)), b = widen(-b_);
    canonicalize(a, b);
    return Mobius(unit_det_t{}, narrow(a), narrow(b));
}

double Mobius::det_residual() const {
    return static_cast<double>(std::abs(det_ld(widen(a_), widen(b_)) - 1.0L));
}

Mobius compose(const Mobius& g, const Mobius& h) {
    lcplx a1 = widen(g.alpha()), b1 = widen(g.beta());
    lcplx a2 = widen(h.alpha()), b2 = widen(h.beta());
    lcplx a = a1 * a2 + b1 * std::conj(b2);
    lcplx b = a1 * b2 + b1 * std::conj(a2);
    // The product determinant equals the product of the input determinants;
    // measuring and dividing it out in extended precision leaves no drift.
    long double det = det_ld(a, b);
    if (!(det > 0.0L)) throw std::domain_error("compose: degenerate product");
    long double s = std::sqrt(det);
    a /= s;
    b /= s;
    canonicalize(a, b);
    return Mobius::from_unit_determinant(narrow(a), narrow(b));
}

double distance(const Mobius& g, const Mobius& h) {
    return std::max(std::abs(g.alpha() - h.alpha()), std::abs(g.beta() - h.beta()));
}

bool near_identity(const Mobius& g, double tol) { return distance(g, Mobius()) <= tol; }

cplx t_coord(const PointPair& p) {
    cplx z = p.z.value(), w = p.w.value();
    return (w - z) / (1.0 - std::conj(z) * w);
}

DiskPoint w_from_t(const DiskPoint& z, cplx t) {
    if (!(std::abs(t) < 1.0)) throw std::domain_error("w_from_t: |t| must be < 1");
    cplx zv = z.value();
    return DiskPoint((t + zv) / (1.0 + std::conj(zv) * t));
}

double delta(const PointPair& p) {
    cplx z = p.z.value(), w = p.w.value();
    return (1.0 - std::norm(z)) * (1.0 - std::norm(w)) / std::norm(1.0 - std::conj(z) * w);
}

cplx bracket(const DiskPoint& w, cplx tau, const DiskPoint& z) {
    cplx wv = w.value(), zv = z.value();
    if (std::abs(wv - zv) < 1e-14) throw std::domain_error("bracket: degenerate pair z == w");
    if (std::abs(wv - tau) < 1e-14 || std::abs(tau - zv) < 1e-14)
        throw std::domain_error("bracket: tau at a pole");
    return (wv - zv) / ((wv - tau) * (tau - zv));
}

}  // namespace djet
