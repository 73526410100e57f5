#pragma once
// Composite Gauss-Legendre quadrature over the ordered simplex
// lo < z_1 < ... < z_n < hi.

#include <functional>
#include <span>
#include <vector>

namespace mtdirac {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // sum = 2
};

const GaussLegendreRule& gauss_legendre(int order);

// Deterministic pairwise reduction.
double pairwise_sum(std::span<const double> v);

// Iterated composite rule with the inner limits following the outer
// variables; the coincidence walls z_k = z_{k+1} are integration boundaries,
// where the integrand is one-sidedly smooth. Parallel over the outermost
// cells with a deterministic reduction order.
double integrate_ordered_simplex(int dims, double lo, double hi, int cells_per_dim, int gl_order,
                                 const std::function<double(std::span<const double>)>& f,
                                 bool parallel = true);

}  // namespace mtdirac
