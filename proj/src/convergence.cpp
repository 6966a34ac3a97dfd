#include "admb/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

#include "admb/errors.hpp"
#include "admb/spectral_ops.hpp"

namespace admb {

namespace {

template <typename Field>
std::vector<double> operator_errors(const GridPtr& grid, double alpha,
                                    std::span<const int> orders, const Field& probe, double s) {
  std::vector<double> out;
  out.reserve(orders.size());
  for (int order : orders) {
    const DeconvolutionSpec spec(grid, alpha, order);
    const double scale = sobolev_norm(apply_A(spec, probe), s);
    out.push_back(scale == 0.0 ? 0.0 : sobolev_norm(deconvolution_gap(spec, probe), s) / scale);
  }
  return out;
}

struct TimeNorms {
  double l2 = 0.0;
  double l4 = 0.0;
  double linf = 0.0;
};

TimeNorms time_norms(const std::vector<double>& t, const std::vector<double>& v) {
  TimeNorms out;
  double s2 = 0.0;
  double s4 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.linf = std::max(out.linf, v[i]);
    if (i == 0) continue;
    const double h = 0.5 * (t[i] - t[i - 1]);
    s2 += h * (v[i] * v[i] + v[i - 1] * v[i - 1]);
    s4 += h * (std::pow(v[i], 4) + std::pow(v[i - 1], 4));
  }
  out.l2 = std::sqrt(s2);
  out.l4 = std::pow(s4, 0.25);
  return out;
}

ModelParams member_params(const FamilyPlan& plan, int order, double epsilon) {
  return ModelParams(plan.nu, epsilon, DeconvolutionSpec(plan.u0->grid_ptr(), plan.alpha, order));
}

ConvergenceRow summarize(const FamilyPlan& plan, const MemberRun& run, const MemberRun& ref) {
  ConvergenceRow row;
  row.order = run.order;
  row.epsilon = run.epsilon;
  const int order[] = {run.order};
  row.operator_error = operator_convergence(plan.u0->grid_ptr(), plan.alpha, order, *plan.u0, 1.0)[0];
  if (run.samples.size() != ref.samples.size()) {
    throw NumericalError("family members produced different sample counts");
  }
  std::vector<double> t;
  std::vector<double> dw;
  std::vector<double> dr;
  std::vector<double> rw;
  std::vector<double> rr;
  const ModelParams params = member_params(plan, run.order, run.epsilon);
  for (std::size_t i = 0; i < run.samples.size(); ++i) {
    const SolverState& a = run.samples[i];
    const SolverState& b = ref.samples[i];
    if (a.time != b.time) throw NumericalError("family members sampled different times");
    t.push_back(a.time);
    dw.push_back(sobolev_norm(a.w - b.w, 1.0));
    dr.push_back(sobolev_norm(a.rho - b.rho, 0.0));
    const MeanResidual res = mean_equation_residual(params, a);
    rw.push_back(res.velocity);
    rr.push_back(res.density);
  }
  const TimeNorms nw = time_norms(t, dw);
  row.w_diff_l2_h1 = nw.l2;
  row.w_diff_linf_h1 = nw.linf;
  row.w_diff_l4_h1 = nw.l4;
  row.rho_diff_l2_l2 = time_norms(t, dr).l2;
  row.residual_w = time_norms(t, rw).l2;
  row.residual_rho = time_norms(t, rr).l2;
  const auto slack = limit_energy_inequality(params, run.samples);
  row.min_limit_slack = slack.empty() ? 0.0 : slack.front().slack;
  for (const auto& s : slack) row.min_limit_slack = std::min(row.min_limit_slack, s.slack);
  row.initial_energy = run.ledger.empty() ? 0.0 : run.ledger.front().energy;
  return row;
}

}  // namespace

std::vector<double> operator_convergence(const GridPtr& grid, double alpha,
                                         std::span<const int> orders, const ScalarField& probe,
                                         double s) {
  return operator_errors(grid, alpha, orders, probe, s);
}

std::vector<double> operator_convergence(const GridPtr& grid, double alpha,
                                         std::span<const int> orders, const VectorField& probe,
                                         double s) {
  return operator_errors(grid, alpha, orders, probe, s);
}

double FamilyPlan::epsilon(int order) const {
  return epsilon_override ? epsilon_override(order) : epsilon_rule(order);
}

void FamilyPlan::validate() const {
  if (!u0 || !theta0) throw ConfigError("family plan needs initial data");
  if (!(alpha > 0.0)) throw ConfigError("family alpha must be positive");
  const std::size_t min_len = allow_degenerate ? 2 : 3;
  if (orders.size() < min_len) {
    throw ConfigError("N_list needs at least " + std::to_string(min_len) + " entries");
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 0) throw ConfigError("N_list entries must be >= 0");
    if (i == 0) continue;
    if (allow_degenerate ? orders[i] < orders[i - 1] : orders[i] <= orders[i - 1]) {
      throw ConfigError("N_list must be strictly increasing");
    }
    const double e0 = epsilon(orders[i - 1]);
    const double e1 = epsilon(orders[i]);
    if (!allow_degenerate && !(e1 < e0)) {
      throw ConfigError("epsilon(N) must be strictly decreasing in N");
    }
  }
  for (int n : orders) {
    const double e = epsilon(n);
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("epsilon(N) must satisfy 0 < epsilon < 1");
  }
  control.validate();
}

MemberRun run_member(const FamilyPlan& plan, int order, double epsilon) {
  const ModelParams params = member_params(plan, order, epsilon);
  MemberRun run;
  run.order = order;
  run.epsilon = epsilon;
  const Observer collect = [&](const SolverState& s, std::int64_t) {
    run.samples.push_back(s);
    run.ledger.push_back(energy_record(params, s));
  };
  integrate(params, init_state(*plan.u0, *plan.theta0, params), plan.control,
            std::span<const Observer>(&collect, 1));
  if (run.ledger.size() >= 3) energy_balance_residual(run.ledger);
  return run;
}

ConvergenceReport run_family(const FamilyPlan& plan) {
  plan.validate();
  ConvergenceReport report;
  const std::size_t count = plan.orders.size();
  std::vector<std::optional<MemberRun>> runs(count);
  unsigned workers = plan.workers == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                       : plan.workers;

  std::size_t next = 0;
  while (next < count) {
    std::vector<std::pair<std::size_t, std::future<MemberRun>>> batch;
    for (unsigned w = 0; w < workers && next < count; ++w, ++next) {
      const int order = plan.orders[next];
      batch.emplace_back(next, std::async(std::launch::async, [&plan, order] {
                           return run_member(plan, order, plan.epsilon(order));
                         }));
    }
    for (auto& [index, fut] : batch) {
      try {
        runs[index] = fut.get();
      } catch (const std::exception& e) {
        if (report.complete) {
          report.complete = false;
          report.failure = "N = " + std::to_string(plan.orders[index]) + ": " + e.what();
        }
      }
    }
  }

  if (!report.complete) {
    for (auto& r : runs) {
      if (r) report.members.push_back(std::move(*r));
    }
    return report;
  }
  for (auto& r : runs) report.members.push_back(std::move(*r));
  const MemberRun& ref = report.members.back();
  for (const MemberRun& run : report.members) report.rows.push_back(summarize(plan, run, ref));
  return report;
}

CauchyVerdict cauchy_check(const ConvergenceReport& report, double tolerance) {
  if (!report.complete) throw NumericalError("cannot check an incomplete convergence report");
  if (report.rows.size() < 2) throw ConfigError("convergence report needs at least two rows");
  std::ostringstream msg;
  bool monotone = true;
  // the last row is the reference itself
  const std::size_t last = report.rows.size() - 1;
  for (std::size_t i = 0; i < last; ++i) {
    msg << "N=" << report.rows[i].order << ": " << report.rows[i].w_diff_l2_h1 << "; ";
    if (i > 0 && !(report.rows[i].w_diff_l2_h1 < report.rows[i - 1].w_diff_l2_h1)) {
      monotone = false;
    }
  }
  const double tail = report.rows[last - 1].w_diff_l2_h1;
  const bool small = tail < tolerance;
  msg << (monotone ? "strictly decreasing" : "not monotone") << ", last " << tail
      << (small ? " < " : " >= ") << tolerance;
  return {monotone && small, msg.str()};
}

}  // namespace admb
