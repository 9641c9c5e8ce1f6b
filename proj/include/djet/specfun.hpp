#pragma once

#include <cstdint>

namespace djet {

// log Gamma(x) for x > 0. Thin thread-safe wrapper over the C runtime;
// relative error <= 1e-13 on [0.5, 200].
double log_gamma(double x);

// Beta function Gamma(p)Gamma(q)/Gamma(p+q) via log space; p, q > 0.
double beta_fn(double p, double q);

// Parameters of 3F2(a1, a2, a3; b1, b2; 1). Convergence requires
// margin() = b1 + b2 - a1 - a2 - a3 > 0.
struct HypParams {
    double a1, a2, a3;
    double b1, b2;
    double margin() const { return b1 + b2 - a1 - a2 - a3; }
};

// A series value with convergence accounting. tail_estimate bounds the
// discarded remainder by geometric extrapolation of the last term; saturated
// is set when the term cap was hit before the stopping rule fired.
struct SeriesValue {
    double value = 0.0;
    long terms_used = 0;
    double tail_estimate = 0.0;
    bool saturated = false;
};

// 3F2 at unit argument, summed term by term until |term| < 1e-16 * |partial|
// (and at least 20 terms), with a hard cap of 1e6 terms. Rejects margin <= 0
// (divergent) and b parameters at non-positive integers (poles).
SeriesValue f32_unit(const HypParams& h);

// The norm constant of the jet-extension operator on weight-alpha spaces:
//   c(N, alpha) = Gamma(N+1)/Gamma(N+2+alpha) * 3F2(N+1, N, N; 2N, N+2+alpha; 1).
// Evaluated through the equivalent (Thomae-transformed) series
//   Gamma(2N)Gamma(alpha+1)/Gamma(N+alpha+1)^2
//     * 3F2(N-1, alpha+1, alpha+1; N+alpha+1, N+alpha+1; 1),
// whose convergence margin is N+1 instead of alpha+1, so values stay accurate
// to ~1e-12 down to alpha near -1. Requires N >= 1, alpha > -1.
SeriesValue c_alpha(int N, double alpha);

// Squared-norm ratio of the m-th ladder differential to the seed:
//   Gamma(2N)/Gamma(N)^2 * Gamma(N+m)^2 / (Gamma(m+1) Gamma(2N+m)),
// computed by log-gamma differences. norm_ratio(N, 0) == 1 exactly.
double norm_ratio(int N, long m);

// Fiberwise norm weight Gamma(n+1)/Gamma(n+2+alpha), alpha > -1.
double fiber_weight(long n, double alpha);

// The alpha -> -1 limit of fiber_weight: identically 1.
double hardy_weight(long n);

// Partial sum over m = 0..M of fiber_weight(N+m, alpha) * norm_ratio(N, m),
// the ladder route to c_alpha. Summed by a multiplicative term recurrence in
// extended precision; tail_estimate carries an Euler-Maclaurin estimate of the
// discarded m > M remainder (accurate to ~1e-10 relative for M >= 1e3).
SeriesValue moment_sum(int N, double alpha, long M);

// Eigenvalue ladder m(2N + m - 1)/2 = N + (N+1) + ... + (N+m-1).
double ladder_eigenvalue(int N, long m);

}  // namespace djet
