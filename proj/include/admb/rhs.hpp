#pragma once

#include "admb/field.hpp"
#include "admb/filter.hpp"

namespace admb {

/// Physical parameters of the regularized system plus the deconvolution spec.
struct ModelParams {
  double nu = 0.1;
  double epsilon = 0.1;
  DeconvolutionSpec spec;

  /// Switches used by tests to isolate terms; both on for the real model.
  bool advection = true;
  bool buoyancy = true;

  ModelParams(double nu, double epsilon, DeconvolutionSpec spec);
  void validate() const;
};

/// Evolving solution: filtered velocity w, filtered density rho, time t.
struct SolverState {
  VectorField w;
  ScalarField rho;
  double time = 0.0;
};

struct Tendency {
  VectorField dw;
  ScalarField drho;
  ScalarField q;
};

/// G div(D_N w (x) D_N w), products evaluated alias-free on the 3/2 grid.
VectorField momentum_nonlinear(const ModelParams& params, const VectorField& w);
/// G div(D_N rho D_N w).
ScalarField density_nonlinear(const ModelParams& params, const ScalarField& rho,
                              const VectorField& w);

/// Same two terms with an arbitrary lifting multiplier in place of D_N (for
/// instance A, which gives the terms of the limiting filtered equations).
VectorField momentum_nonlinear(const ModelParams& params, const std::vector<double>& lift,
                               const VectorField& w);
ScalarField density_nonlinear(const ModelParams& params, const std::vector<double>& lift,
                              const ScalarField& rho, const VectorField& w);

/// Solves Lap q = div f with f = rho e3 - G div(D_N w (x) D_N w).
ScalarField pressure_solve(const ModelParams& params, const ScalarField& rho,
                           const VectorField& w);

/// Full right-hand side of the system:
///   dw   = -G div(D_N w (x) D_N w) + nu Lap w - grad q + rho e3
///   drho = -G div(D_N rho D_N w) + eps Lap rho
/// The velocity part is assembled through the pressure solve and re-projected.
Tendency assemble_tendency(const ModelParams& params, const SolverState& state);

/// Velocity tendency obtained by Leray-projecting the forcing instead of
/// solving for the pressure. Must agree with assemble_tendency().dw.
VectorField projected_velocity_tendency(const ModelParams& params, const SolverState& state);

/// Non-diffusive part of the tendency (what the integrating-factor scheme
/// treats explicitly): P(-G div(...) + rho e3) and -G div(...).
struct ExplicitTerms {
  VectorField w;
  ScalarField rho;
};
ExplicitTerms explicit_terms(const ModelParams& params, const VectorField& w,
                             const ScalarField& rho);

}  // namespace admb
