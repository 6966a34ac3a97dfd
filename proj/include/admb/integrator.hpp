#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "admb/errors.hpp"
#include "admb/rhs.hpp"

namespace admb {

struct StepControl {
  double dt = 0.01;
  double t_end = 1.0;
  /// Fraction of the advective CFL limit a step may use, in (0, 1].
  double cfl_safety = 0.5;
  /// Observers fire every `observer_cadence` steps (and after the last step).
  int observer_cadence = 10;
  /// Check divergence, mean and Hermitian symmetry after every step.
  bool strict_invariants = false;

  static constexpr int scheme_order = 3;

  void validate() const;
};

/// w = G u0, rho = G theta0, t = 0. Rejects u0 that is not divergence-free.
SolverState init_state(const VectorField& u0, const ScalarField& theta0,
                       const ModelParams& params);

/// max_x |D_N w(x)| on the grid points.
double advective_speed(const ModelParams& params, const VectorField& w);
/// Largest dt allowed by the CFL guard.
double max_stable_dt(const ModelParams& params, const SolverState& state, double cfl_safety);

/// One step of size control.dt; throws NumericalError if dt breaks the CFL guard.
SolverState step(const ModelParams& params, const SolverState& state, const StepControl& control);
/// Same, with an explicit step size.
SolverState step(const ModelParams& params, const SolverState& state, double dt,
                 double cfl_safety);

/// Throws NumericalError when a state breaks its structural invariants.
void check_invariants(const SolverState& state);

using Observer = std::function<void(const SolverState& state, std::int64_t step)>;

struct IntegrationResult {
  SolverState state;
  std::int64_t steps = 0;
};

/// A step failed part-way through a run. Observers have already seen every
/// sample up to `last_good`.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, SolverState last_good, std::int64_t steps)
      : NumericalError(what), last_good_(std::move(last_good)), steps_(steps) {}
  [[nodiscard]] const SolverState& last_good() const { return last_good_; }
  [[nodiscard]] std::int64_t steps() const { return steps_; }

 private:
  SolverState last_good_;
  std::int64_t steps_;
};

/// Number of steps integrate() takes to go from t0 to t_end with step dt:
/// t_end - t0 rounded to a whole number of steps when it is one to 1e-9
/// relative, otherwise one extra shortened step at the end.
std::int64_t step_count(double t0, double t_end, double dt);

/// Advances to control.t_end, calling every observer on the initial state,
/// every observer_cadence steps, and on the final state.
IntegrationResult integrate(const ModelParams& params, SolverState state,
                            const StepControl& control, std::span<const Observer> observers = {});

}  // namespace admb
