#include "djet/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "djet/batch.hpp"
#include "djet/bergman.hpp"
#include "djet/configio.hpp"
#include "djet/fuchsian.hpp"
#include "djet/jetext.hpp"
#include "djet/mobius.hpp"
#include "djet/specfun.hpp"

namespace djet {

namespace {

std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

// All randomized samples derive from the run seed xor a per-check constant,
// so a check's samples do not depend on which other checks run.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double range(double a, double b) { return a + (b - a) * unit(); }
    cplx box() { return {range(-1.0, 1.0), range(-1.0, 1.0)}; }
    cplx disk(double rmax) { return std::polar(rmax * std::sqrt(unit()), range(0.0, 2.0 * M_PI)); }
};

std::uint64_t check_seed(std::uint64_t base, int idx) {
    return base ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(idx + 1));
}

NDifferential random_series(Rng& rng, int order, int deg) {
    std::vector<cplx> c(static_cast<size_t>(deg) + 1);
    for (cplx& v : c) v = rng.box();
    return NDifferential::power_series(order, std::move(c));
}

Mobius random_mobius(Rng& rng) {
    double t = rng.range(0.2, 1.2);
    return Mobius(std::polar(std::cosh(t), rng.range(0.0, 2.0 * M_PI)),
                  std::polar(std::sinh(t), rng.range(0.0, 2.0 * M_PI)));
}

struct Ctx {
    const VerifyOptions& opts;
    QuadratureSpec quad() const { return {opts.quad_nodes}; }
    double scaled(double tol) const { return tol * opts.tolerance_scale; }
};

CheckResult a1_series_agreement(const Ctx& c) {
    Rng rng(check_seed(c.opts.seed, 1));
    double worst = 0.0;
    for (int N = 1; N <= 5; ++N) {
        NDifferential psi = random_series(rng, N, 8);
        for (int ir = 1; ir <= 4; ++ir) {
            for (int ia = 0; ia < 5; ++ia) {
                DiskPoint w(std::polar(0.2 * ir, 2.0 * M_PI * ia / 5.0 + 0.1));
                cplx via_quad = extend(psi, {DiskPoint(0.0), w}, c.quad());
                cplx via_series = eval_series_at_zero(psi, w, 40).value;
                worst = std::max(worst, std::abs(via_quad - via_series));
            }
        }
    }
    return {"A1", "series expansion agrees with segment quadrature at the base point",
            worst < c.scaled(1e-10), worst, c.scaled(1e-10),
            "N in 1..5, random degree-8 series, 20-point |w| <= 0.8 grid, M = 40"};
}

CheckResult a2_monomial_closed_form(const Ctx& c) {
    double worst = 0.0;
    for (int N = 1; N <= 6; ++N) {
        for (int k = 0; k <= 8; ++k) {
            std::vector<cplx> coeffs(static_cast<size_t>(k) + 1, 0.0);
            coeffs.back() = 1.0;
            NDifferential psi = NDifferential::power_series(N, std::move(coeffs));
            double lg = (log_gamma(2.0 * N) - log_gamma(2.0 * N + k)) +
                        (log_gamma(static_cast<double>(N) + k) - log_gamma(N));
            for (int ia = 0; ia < 5; ++ia) {
                cplx w = std::polar(0.6, 2.0 * M_PI * ia / 5.0 + 0.2);
                cplx closed = std::exp(lg) * cpow_int(w, N + k);
                cplx got = extend(psi, {DiskPoint(0.0), DiskPoint(w)}, c.quad());
                worst = std::max(worst, std::abs(got - closed));
            }
        }
    }
    return {"A2", "monomial extension matches the factorial-ratio closed form",
            worst < c.scaled(1e-11), worst, c.scaled(1e-11), "N <= 6, k <= 8, |w| = 0.6"};
}

CheckResult a3_equivariance(const Ctx& c) {
    Rng rng(check_seed(c.opts.seed, 3));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        int N = 1 + i % 5;
        Mobius g = random_mobius(rng);
        NDifferential psi = random_series(rng, N, 6);
        DiskPoint z(rng.disk(0.7)), w(rng.disk(0.7));
        cplx lhs = extend(pullback(g, psi), {z, w}, c.quad());
        cplx rhs = extend(psi, {g(z), g(w)}, c.quad());
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return {"A3", "extension commutes with simultaneous Mobius action",
            worst < c.scaled(1e-10), worst, c.scaled(1e-10),
            "100 seeded (g, psi, z, w) samples, N in 1..5"};
}

CheckResult a4_norm_identity(const Ctx& c) {
    const double alphas[] = {-0.5, 0.0, 1.0, 2.0};
    double worst = 0.0;
    std::string at;
    for (int N = 1; N <= 6; ++N) {
        for (double al : alphas) {
            SeriesValue ms = moment_sum(N, al, 10000);
            SeriesValue ca = c_alpha(N, al);
            double ladder = ms.value * (1.0 + c.opts.norm_ratio_perturb) + ms.tail_estimate;
            double diff = std::abs(ladder - ca.value);
            if (diff > worst) {
                worst = diff;
                at = "N=" + std::to_string(N) + " alpha=" + fmt(al);
            }
        }
    }
    double unit_dev = std::abs(c_alpha(1, 0.0).value - 1.0);
    double r1 = worst / c.scaled(1e-8);
    double r2 = unit_dev / c.scaled(1e-12);
    double measured = std::max(r1, r2);
    std::string detail = "max |moment_sum + tail - c_alpha| = " + fmt(worst) + " at " + at +
                         " (bound 1e-8); |c_alpha(1,0) - 1| = " + fmt(unit_dev) +
                         " (bound 1e-12); ladder partial sums to M = 1e4 plus an "
                         "Euler-Maclaurin tail estimate";
    if (c.opts.norm_ratio_perturb != 0.0)
        detail += "; ladder perturbed by " + fmt(c.opts.norm_ratio_perturb);
    return {"A4", "ladder route and hypergeometric route to the norm constant agree",
            measured < 1.0, measured, 1.0, detail};
}

CheckResult a5_pair_series_identity(const Ctx& c) {
    Rng rng(check_seed(c.opts.seed, 5));
    GroupBall ball = enumerate_ball(octagon_generators(), 3);
    const int N = 4;
    NDifferential unit = NDifferential::power_series(N, {1.0});
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        DiskPoint z(rng.disk(0.45)), w(rng.disk(0.45));
        cplx termwise = 0.0;
        for (const Mobius& g : ball.elements())
            termwise += extend(pullback(g, unit), {z, w}, c.quad());
        cplx series = pair_series(ball, N, {z, w}).value;
        worst = std::max(worst, std::abs(termwise - series));
    }
    return {"A5", "summed extensions of pulled-back densities equal the pair series",
            worst < c.scaled(1e-9), worst, c.scaled(1e-9),
            "octagon ball L = 3 (" + std::to_string(ball.size()) + " elements), N = 4, 5 pairs"};
}

CheckResult a6_dbar_structure(const Ctx& c) {
    Rng rng(check_seed(c.opts.seed, 6));
    double worst_cr = 0.0;
    for (int i = 0; i < 20; ++i) {
        int N = 1 + i % 3;
        NDifferential psi = random_series(rng, N, 8);
        QuadratureSpec q = c.quad();
        BidiskFn f = [psi, q](cplx z, cplx w) {
            return extend(psi, {DiskPoint(z), DiskPoint(w)}, q);
        };
        PointPair p{DiskPoint(rng.disk(0.7)), DiskPoint(rng.disk(0.7))};
        worst_cr = std::max(worst_cr, cr_residual(f, p, 1e-4));
    }
    double worst_rec = 0.0;
    for (int N = 1; N <= 3; ++N) {
        NDifferential psi = random_series(rng, N, 4);
        QuadratureSpec q = c.quad();
        BidiskFn f = [psi, q](cplx z, cplx w) {
            return extend(psi, {DiskPoint(z), DiskPoint(w)}, q);
        };
        for (int ip = 0; ip < 2; ++ip) {
            DiskPoint z(rng.disk(0.5));
            for (int n = 0; n <= N + 3; ++n)
                worst_rec = std::max(worst_rec, recurrence_residual(f, z, n, {}, 1e-4));
        }
    }
    double worst = std::max(worst_cr, worst_rec);
    return {"A6", "extensions are numerically holomorphic and obey the jet recurrence",
            worst < c.scaled(1e-6), worst, c.scaled(1e-6),
            "max CR residual " + fmt(worst_cr) + " (20 points, h = 1e-4); max recurrence residual " +
                fmt(worst_rec) + " (N <= 3, n <= N+3)"};
}

CheckResult a7_eigenvalue_ladder(const Ctx& c) {
    Rng rng(check_seed(c.opts.seed, 7));
    double worst_ratio = 0.0, coarse_sum = 0.0, fine_sum = 0.0;
    for (int N = 1; N <= 3; ++N) {
        NDifferential psi = random_series(rng, N, 4);
        QuadratureSpec quad{64};
        BidiskFn f = [psi, quad](cplx z, cplx w) {
            return extend(psi, {DiskPoint(z), DiskPoint(w)}, quad);
        };
        QuadratureSpec quad_fine{128};
        BidiskFn f_fine = [psi, quad_fine](cplx z, cplx w) {
            return extend(psi, {DiskPoint(z), DiskPoint(w)}, quad_fine);
        };
        for (int m = 0; m <= 3; ++m) {
            int n = N + m;
            double lambda = ladder_eigenvalue(N, m);
            for (int ip = 0; ip < 5; ++ip) {
                DiskPoint z0(rng.disk(0.5));
                // fiber coefficient rescaled to the invariant frame
                auto make_u = [n](const BidiskFn& fn, int nodes) {
                    return std::function<cplx(cplx)>([fn, n, nodes](cplx zz) {
                        cplx fj = jet_extract(fn, DiskPoint(zz), n, {0.0, nodes});
                        double om = 1.0 - std::norm(zz);
                        return fj * std::pow(std::sqrt(2.0) / om, n);
                    });
                };
                auto u_coarse = make_u(f, 256);
                auto u_fine = make_u(f_fine, 512);
                double u0 = std::abs(u_coarse(z0.value()));
                double bound = c.scaled(1e-4) * (1.0 + std::abs(lambda) * u0);
                double res_c = laplacian_residual(u_coarse, n, z0, 1e-3, lambda);
                double res_f = laplacian_residual(u_fine, n, z0, 5e-4, lambda);
                coarse_sum += res_c;
                fine_sum += res_f;
                worst_ratio = std::max(worst_ratio, res_c / bound);
            }
        }
    }
    bool refined = fine_sum < coarse_sum;
    double measured = std::max(worst_ratio, refined ? 0.0 : 2.0);
    return {"A7", "fiber coefficients sit on the Laplacian eigenvalue ladder",
            measured < 1.0, measured, 1.0,
            "worst residual/bound = " + fmt(worst_ratio) +
                "; residual sum under step/node refinement: " + fmt(coarse_sum) + " -> " +
                fmt(fine_sum) + (refined ? " (decreases)" : " (does NOT decrease)")};
}

CheckResult a8_hardy_divergence(const Ctx& c) {
    const long Ms[] = {1000, 10000, 100000};
    double worst_drift = 0.0;
    bool all_positive = true;
    std::string rates;
    for (int N = 1; N <= 4; ++N) {
        double r[3];
        for (int i = 0; i < 3; ++i) {
            r[i] = hardy_partial(N, Ms[i]) / std::log(static_cast<double>(Ms[i]));
            all_positive = all_positive && r[i] > 0.0;
        }
        rates += (N > 1 ? "; " : "") + std::string("N=") + std::to_string(N) + ": " + fmt(r[0]) +
                 ", " + fmt(r[1]) + ", " + fmt(r[2]);
        worst_drift = std::max({worst_drift, std::abs(r[1] - r[0]) / r[1],
                                std::abs(r[2] - r[1]) / r[2]});
    }
    double stab = 0.0;
    for (int N = 1; N <= 4; ++N) {
        double a = 1e4 * norm_ratio(N, 10000), b = 2e4 * norm_ratio(N, 20000);
        stab = std::max(stab, std::abs(b - a) / b);
    }
    double measured = std::max({worst_drift / c.scaled(0.05), stab / c.scaled(0.01),
                                all_positive ? 0.0 : 2.0});
    std::string detail =
        "hardy_partial/ln M at M = 1e3, 1e4, 1e5: " + rates + "; worst step drift " +
        fmt(worst_drift) + " vs 0.05 bound; m*norm_ratio stabilization " + fmt(stab) +
        " vs 0.01 bound. The rate converges like C_N/ln M, so the drift shrinks only "
        "logarithmically; at these M the 5% window is not reachable for N >= 2 and the "
        "check reports the measured drift honestly.";
    return {"A8", "Hardy partial sums diverge at a stable logarithmic rate",
            measured < 1.0, measured, 1.0, detail};
}

CheckResult a9_kernel_structure(const Ctx& c) {
    Rng rng(check_seed(c.opts.seed, 9));
    // exact constant for the empty basis
    double bit_fail = 0.0;
    for (double al : {0.0, 0.7, 2.0}) {
        for (int g : {2, 3}) {
            PointPair p{DiskPoint(rng.disk(0.6)), DiskPoint(rng.disk(0.6))};
            cplx v = kernel_assemble({g, {}}, al, p, p, c.quad());
            if (!(v.real() == kernel_constant(g, al) && v.imag() == 0.0)) bit_fail = 1.0;
        }
    }
    KernelBasis basis{2, {}};
    for (int N = 1; N <= 3; ++N)
        basis.families.push_back({random_series(rng, N, 3), 0.5 + static_cast<double>(N)});
    std::vector<PointPair> pts;
    for (int i = 0; i < 8; ++i)
        pts.push_back({DiskPoint(rng.disk(0.6)), DiskPoint(rng.disk(0.6))});
    Eigen::MatrixXcd K(8, 8);
    double herm = 0.0;
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            cplx kij = kernel_assemble(basis, 0.5, pts[static_cast<size_t>(i)],
                                       pts[static_cast<size_t>(j)], c.quad());
            K(i, j) = kij;
        }
    }
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            herm = std::max(herm, std::abs(K(i, j) - std::conj(K(j, i))));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((K + K.adjoint()) / 2.0);
    double min_eig = es.eigenvalues().minCoeff();
    double measured = std::max({bit_fail, herm / c.scaled(1e-12),
                                std::max(0.0, -min_eig) / c.scaled(1e-10)});
    return {"A9", "kernel: exact constant term, Hermitian symmetry, positive Gram",
            measured < 1.0, measured, 1.0,
            std::string("empty-basis constant ") + (bit_fail == 0.0 ? "bit-exact" : "MISMATCH") +
                "; max Hermitian defect " + fmt(herm) + "; min Gram eigenvalue " + fmt(min_eig) +
                " (3-family mock basis, 8 points)"};
}

CheckResult a10_group_hygiene(const Ctx& c) {
    GeneratorSet gens = octagon_generators();
    // relation residual through the public composition path
    Mobius acc;
    for (int idx : gens.relations[0]) {
        const Mobius& g = gens.generators[static_cast<size_t>(std::abs(idx) - 1)];
        acc = compose(acc, idx > 0 ? g : g.inverse());
    }
    double residual = distance(acc, Mobius());
    GroupBall ball = enumerate_ball(gens, 5);  // throws on any ambiguous dedup
    bool growing = true;
    for (size_t l = 0; l + 1 < ball.shell_count(); ++l)
        growing = growing && ball.shell(l + 1).size() > ball.shell(l).size();
    bool decaying = true;
    for (int N : {2, 3, 4}) {
        for (cplx tau : {cplx(0.0, 0.0), cplx(0.3, 0.1)}) {
            std::vector<double> s = shell_magnitudes(ball, N, DiskPoint(tau));
            for (size_t l = 2; l + 1 < s.size(); ++l) decaying = decaying && s[l + 1] < s[l];
        }
    }
    double measured = std::max({residual / c.scaled(1e-9), growing ? 0.0 : 2.0,
                                decaying ? 0.0 : 2.0,
                                ball.non_hyperbolic_count() > 0 ? 2.0 : 0.0});
    std::string shells;
    for (size_t l = 0; l < ball.shell_count(); ++l)
        shells += (l ? "," : "") + std::to_string(ball.shell(l).size());
    return {"A10", "octagon relation closes; enumeration shells grow; series shells decay",
            measured < 1.0, measured, 1.0,
            "relation residual " + fmt(residual) + "; shells " + shells +
                "; zero ambiguous dedups; non-hyperbolic count " +
                std::to_string(ball.non_hyperbolic_count())};
}

}  // namespace

std::vector<CheckResult> run_acceptance(const VerifyOptions& opts) {
    Ctx c{opts};
    struct Entry {
        const char* name;
        CheckResult (*fn)(const Ctx&);
    };
    const Entry entries[] = {
        {"A1", a1_series_agreement},   {"A2", a2_monomial_closed_form},
        {"A3", a3_equivariance},       {"A4", a4_norm_identity},
        {"A5", a5_pair_series_identity}, {"A6", a6_dbar_structure},
        {"A7", a7_eigenvalue_ladder},  {"A8", a8_hardy_divergence},
        {"A9", a9_kernel_structure},   {"A10", a10_group_hygiene},
    };
    std::vector<CheckResult> out;
    for (const Entry& e : entries) {
        if (!opts.only.empty() &&
            std::find(opts.only.begin(), opts.only.end(), e.name) == opts.only.end())
            continue;
        out.push_back(e.fn(c));
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed; });
}

nlohmann::ordered_json report_json(const std::vector<CheckResult>& checks,
                                   const VerifyOptions& opts) {
    nlohmann::ordered_json j;
    j["suite"] = "acceptance";
    j["library"] = "diskjet 0.1.0";
    j["seed"] = opts.seed;
    j["quad_nodes"] = opts.quad_nodes;
    j["tolerance_scale"] = opts.tolerance_scale;
    if (opts.norm_ratio_perturb != 0.0) j["norm_ratio_perturb"] = opts.norm_ratio_perturb;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckResult& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["title"] = c.title;
        e["status"] = c.passed ? "pass" : "fail";
        e["measured"] = c.measured;
        e["tolerance"] = c.tolerance;
        e["detail"] = c.detail;
        arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    j["overall"] = all_passed(checks) ? "pass" : "fail";
    return j;
}

}  // namespace djet
