#pragma once
// Evaluation of the model solution: the closed-form expression through the
// sorted characteristic values and phase ledger, and an independent engine
// that traces characteristics collision by collision. The two are maintained
// deliberately as mutual oracles.

#include <utility>

#include "mtdirac/initial_data.hpp"
#include "mtdirac/phases.hpp"

namespace mtdirac {

enum class Engine { ClosedForm, Traced };

class WaveFunction {
 public:
  WaveFunction(ModelParams params, InitialData data, Engine engine = Engine::ClosedForm);

  const ModelParams& params() const { return params_; }
  const InitialData& data() const { return data_; }
  Engine engine() const { return engine_; }
  WaveFunction with_engine(Engine e) const;
  int n() const { return params_.n(); }
  int n_components() const { return params_.n_components(); }

  // Value on the closed ordered sector; throws DomainError off it. At tied
  // characteristic values the minimal-collision continuation applies.
  // classify_tol = 0 restricts the coincidence strata to exact ties, which
  // quadrature over strictly ordered leaf points relies on.
  complex evaluate(const Configuration& cfg, const SpinIndex& s,
                   double classify_tol = kDefaultClassifyTol) const;

  // Antisymmetric continuation to any space-like configuration.
  complex evaluate_full(const Configuration& cfg, const SpinIndex& s,
                        double classify_tol = kDefaultClassifyTol) const;

  // All 2^N components at once, in linear-index order.
  void evaluate_all_full(const Configuration& cfg, std::span<complex> out,
                         double classify_tol = kDefaultClassifyTol) const;

  // max over k of the central-difference estimate of |(d/dt_k - s_k d/dz_k)|.
  // h <= 0 selects 1e-4 * (1 + |cfg|_inf). Requires an interior configuration
  // with light-cone and characteristic-tie margins above 4h.
  double residual(const Configuration& cfg, const SpinIndex& s, double h = 0.0) const;

  // (psi_{..+-..}, e^{i phi^(k)} psi_{..-+..}) at a stratum configuration,
  // for a spin tuple with (+,-) at the stratum slots.
  std::pair<complex, complex> boundary_pair(const Configuration& cfg, const SpinIndex& s) const;

  // max over mixed pairs at the configuration's stratum of |first - second|.
  double boundary_violation(const Configuration& cfg) const;

 private:
  complex evaluate_ordered(const Configuration& cfg, int index0) const;
  complex closed_form(const Configuration& cfg, int index0) const;
  complex traced(const Configuration& cfg, int index0) const;

  ModelParams params_;
  InitialData data_;
  Engine engine_ = Engine::ClosedForm;
};

}  // namespace mtdirac
