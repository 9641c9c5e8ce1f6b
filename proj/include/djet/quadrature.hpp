#pragma once

#include <vector>

namespace djet {

// Fixed-order quadrature request shared by the segment integral and kernel
// assembly. Node counts below 4 are rejected.
struct QuadratureSpec {
    int nodes = 64;
};

struct GaussLegendre {
    std::vector<double> x;  // nodes in (0,1), ascending
    std::vector<double> w;  // weights, sum == 1
};

// Gauss-Legendre rule on [0,1]. Rules are computed once per order and cached;
// the returned reference stays valid for the program lifetime.
const GaussLegendre& gauss_legendre(int nodes);

}  // namespace djet
