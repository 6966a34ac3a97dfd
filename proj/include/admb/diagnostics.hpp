#pragma once

#include <span>
#include <string>
#include <vector>

#include "admb/rhs.hpp"

namespace admb {

/// One sample of the energy budget
///   dE/dt + nu ||grad X w||^2 + eps ||grad X rho||^2 = (X rho e3, X w),
/// with X = A^{1/2} D_N^{1/2} and E = (||X w||^2 + ||X rho||^2) / 2.
struct EnergyRecord {
  double time = 0.0;
  double energy = 0.0;
  double visc_dissipation = 0.0;
  double dens_dissipation = 0.0;
  double buoyancy_flux = 0.0;
  /// dE/dt + dissipations - buoyancy_flux; filled in by energy_balance_residual.
  double balance_residual = 0.0;
  /// ||X rho||^2 on its own; non-increasing along exact trajectories.
  double density_energy = 0.0;
};

EnergyRecord energy_record(const ModelParams& params, const SolverState& state);

/// Estimates dE/dt from the record series with three-point differences
/// (centered in the interior, one-sided at the ends; non-uniform spacing is
/// allowed) and returns the balance residual at every record. Also writes the
/// residuals back into the records. Needs at least three records with strictly
/// increasing times.
std::vector<double> energy_balance_residual(std::span<EnergyRecord> records);

/// Left and right sides of the a priori bound
///   ||X w||^2 + ||X rho||^2 + nu int ||grad X w||^2 + 2 eps int ||grad X rho||^2
///     <= ||u0||^2 + (1 + t/nu) ||theta0||^2,
/// time integrals by the trapezoidal rule over the records.
struct BoundSample {
  double time = 0.0;
  double monitored = 0.0;
  double bound = 0.0;
};
std::vector<BoundSample> a_priori_bound(std::span<const EnergyRecord> records, double nu,
                                        double u0_norm_sq, double theta0_norm_sq);

/// Slack of the energy inequality satisfied by the limit solution,
///   (A rho e3, A w) - d/dt (||A w||^2 + ||A rho||^2) / 2 - nu ||grad A w||^2,
/// evaluated per state with the time derivative taken from the model's own
/// tendency (exact for the semi-discrete system).
struct SlackSample {
  double time = 0.0;
  double slack = 0.0;
};
std::vector<SlackSample> limit_energy_inequality(const ModelParams& params,
                                                 std::span<const SolverState> states);
/// Fraction of samples with slack >= -tolerance.
double fraction_satisfied(std::span<const SlackSample> slack, double tolerance);

/// Dual-norm size of the residuals obtained by substituting the model's state
/// and time derivative into the limiting filtered equations:
///   r_w   = dw/dt + G div(Aw (x) Aw) - nu Lap w + grad q - rho e3   in H_{-1}
///   r_rho = drho/dt + G div(A rho A w)                              in H^{-1}
struct MeanResidual {
  double velocity = 0.0;
  double density = 0.0;
};
MeanResidual mean_equation_residual(const ModelParams& params, const SolverState& state,
                                    const Tendency& tendency);
MeanResidual mean_equation_residual(const ModelParams& params, const SolverState& state);

/// ||f||_{-1} = (sum |k|^{-2} |f_k|^2)^{1/2}; for vectors the field is Leray
/// projected first (dual of the divergence-free H_1).
double dual_norm(const ScalarField& f);
double dual_norm(const VectorField& v);

/// One line of the monitored a priori tables.
struct NormEntry {
  std::string label;     // e.g. "w(c)"
  std::string variable;  // e.g. "D_N^{1/2} w"
  std::string norm;      // e.g. "Linf(H1)"
  double value = 0.0;
  std::string order;     // predicted scaling, metadata only
};

struct NormTable {
  std::vector<NormEntry> entries;
  /// Value of the entry with this label and norm; throws if absent.
  [[nodiscard]] double value(const std::string& label, const std::string& norm) const;
};

/// Running maxima (L-infinity in time) and trapezoidal accumulations
/// (L^2 and L^{4/3} in time) of every monitored quantity.
class NormTableAccumulator {
 public:
  explicit NormTableAccumulator(const ModelParams& params);

  void add(const SolverState& state);
  void add(const SolverState& state, const Tendency& tendency);
  [[nodiscard]] NormTable table() const;
  [[nodiscard]] std::size_t samples() const { return times_.size(); }

 private:
  ModelParams params_;
  std::vector<double> times_;
  std::vector<std::vector<double>> series_;
};

NormTable norm_table(const ModelParams& params, std::span<const SolverState> states);

}  // namespace admb
