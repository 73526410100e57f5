#include "mtdirac/quadrature.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace mtdirac {

namespace {

GaussLegendreRule make_rule(int order) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<size_t>(order));
  rule.weights.resize(static_cast<size_t>(order));
  constexpr double pi = 3.14159265358979323846;
  for (int i = 0; i < order; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<size_t>(i)] = x;
    rule.weights[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  if (order < 1 || order > 64) throw std::invalid_argument("gauss_legendre: order out of range");
  static std::map<int, GaussLegendreRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

double pairwise_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  if (v.size() == 1) return v[0];
  if (v.size() == 2) return v[0] + v[1];
  const size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

namespace {

constexpr int kMaxDims = 12;

double integrate_inner(int dims, int dim, double lo_k, double hi, int cells,
                       const GaussLegendreRule& rule,
                       const std::function<double(std::span<const double>)>& f,
                       std::array<double, kMaxDims>& z) {
  if (hi <= lo_k) return 0.0;
  const double cell_w = (hi - lo_k) / cells;
  double acc = 0.0;
  for (int c = 0; c < cells; ++c) {
    const double a = lo_k + c * cell_w;
    const double mid = a + 0.5 * cell_w;
    const double half = 0.5 * cell_w;
    double cell_acc = 0.0;
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
      z[static_cast<size_t>(dim)] = mid + half * rule.nodes[q];
      const double v = dim + 1 < dims
                           ? integrate_inner(dims, dim + 1, z[static_cast<size_t>(dim)], hi,
                                             cells, rule, f, z)
                           : f(std::span<const double>(z.data(), static_cast<size_t>(dims)));
      cell_acc += rule.weights[q] * v;
    }
    acc += half * cell_acc;
  }
  return acc;
}

}  // namespace

double integrate_ordered_simplex(int dims, double lo, double hi, int cells_per_dim, int gl_order,
                                 const std::function<double(std::span<const double>)>& f,
                                 bool parallel) {
  if (dims < 1 || dims > kMaxDims) throw std::invalid_argument("integrate_ordered_simplex: dims");
  if (cells_per_dim < 1) throw std::invalid_argument("integrate_ordered_simplex: cells");
  const GaussLegendreRule& rule = gauss_legendre(gl_order);

  const double cell_w = (hi - lo) / cells_per_dim;
  if (!(cell_w > 0.0)) throw std::invalid_argument("integrate_ordered_simplex: empty interval");

  // One task per (outer cell, outer node): partial results are combined in a
  // fixed order so the total is independent of the thread schedule.
  const int tasks = cells_per_dim * gl_order;
  std::vector<double> partial(static_cast<size_t>(tasks), 0.0);

  auto run_task = [&](int task) {
    const int c = task / gl_order;
    const int q = task % gl_order;
    const double a = lo + c * cell_w;
    const double mid = a + 0.5 * cell_w;
    const double half = 0.5 * cell_w;
    std::array<double, kMaxDims> z{};
    z[0] = mid + half * rule.nodes[static_cast<size_t>(q)];
    const double v = dims > 1 ? integrate_inner(dims, 1, z[0], hi, cells_per_dim, rule, f, z)
                              : f(std::span<const double>(z.data(), 1));
    partial[static_cast<size_t>(task)] = half * rule.weights[static_cast<size_t>(q)] * v;
  };

  unsigned workers = parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
  if (workers <= 1 || tasks <= 1) {
    for (int t = 0; t < tasks; ++t) run_task(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      futs.push_back(std::async(std::launch::async, [&]() {
        for (;;) {
          const int t = next.fetch_add(1);
          if (t >= tasks) break;
          run_task(t);
        }
      }));
    }
    for (auto& fu : futs) fu.get();
  }
  return pairwise_sum(partial);
}

}  // namespace mtdirac
