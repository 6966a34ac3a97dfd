#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "admb/diagnostics.hpp"
#include "admb/integrator.hpp"

namespace admb {

/// ||(A - D_N) probe||_s / ||A probe||_s for each order N.
std::vector<double> operator_convergence(const GridPtr& grid, double alpha,
                                         std::span<const int> orders, const ScalarField& probe,
                                         double s);
std::vector<double> operator_convergence(const GridPtr& grid, double alpha,
                                         std::span<const int> orders, const VectorField& probe,
                                         double s);

/// eps(N) = eps0 / (N + 1)
struct EpsilonRule {
  double epsilon0 = 0.5;
  [[nodiscard]] double operator()(int order) const { return epsilon0 / (order + 1); }
};

/// A family of runs sharing data, grid, alpha and time stepping, with the
/// deconvolution order increasing and the density diffusion shrinking.
struct FamilyPlan {
  double alpha = 1.0;
  double nu = 0.1;
  std::vector<int> orders;
  EpsilonRule epsilon_rule;
  /// Overrides epsilon_rule for individual orders (used for sensitivity runs).
  std::function<double(int)> epsilon_override;
  std::optional<VectorField> u0;
  std::optional<ScalarField> theta0;
  StepControl control;
  /// Permits repeated orders (test mode only).
  bool allow_degenerate = false;
  /// Members run concurrently on at most this many threads (0 = hardware).
  unsigned workers = 0;

  [[nodiscard]] double epsilon(int order) const;
  void validate() const;
};

/// Everything one member run produced.
struct MemberRun {
  int order = 0;
  double epsilon = 0.0;
  std::vector<SolverState> samples;
  std::vector<EnergyRecord> ledger;
};

struct ConvergenceRow {
  int order = 0;
  double epsilon = 0.0;
  /// ||(A - D_N) u0||_1 / ||A u0||_1
  double operator_error = 0.0;
  /// Differences to the largest-order member.
  double w_diff_l2_h1 = 0.0;
  double w_diff_linf_h1 = 0.0;
  double w_diff_l4_h1 = 0.0;
  double rho_diff_l2_l2 = 0.0;
  /// L^2-in-time size of the limiting-equation residuals.
  double residual_w = 0.0;
  double residual_rho = 0.0;
  /// Smallest limit-energy-inequality slack over the samples.
  double min_limit_slack = 0.0;
  /// Initial energy of the member (scale for the slack).
  double initial_energy = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::vector<MemberRun> members;
  bool complete = true;
  std::string failure;
};

ConvergenceReport run_family(const FamilyPlan& plan);

/// Runs one member of a plan (exposed for sensitivity experiments).
MemberRun run_member(const FamilyPlan& plan, int order, double epsilon);

struct CauchyVerdict {
  bool converged = false;
  std::string summary;
};

/// Converged iff the L2(H1) velocity differences to the reference decrease
/// strictly with N and the last one is below `tolerance`.
CauchyVerdict cauchy_check(const ConvergenceReport& report, double tolerance);

}  // namespace admb
