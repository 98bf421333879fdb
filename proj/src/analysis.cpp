#include "vofrac/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "vofrac/errors.hpp"

namespace vofrac {

std::vector<double> fit_rate(std::span<const double> errors, std::span<const std::size_t> Ns) {
  if (errors.size() != Ns.size() || errors.size() < 2) {
    throw DomainError("fit_rate: need equal-length inputs with at least two entries");
  }
  std::vector<double> rates;
  rates.reserve(errors.size() - 1);
  for (std::size_t j = 0; j < errors.size(); ++j) {
    if (!(errors[j] > 0.0)) throw DomainError("fit_rate: errors must be positive (degenerate error sequence)");
    if (Ns[j] == 0) throw DomainError("fit_rate: N must be positive");
  }
  for (std::size_t j = 0; j + 1 < errors.size(); ++j) {
    rates.push_back(std::log(errors[j] / errors[j + 1]) /
                    std::log(static_cast<double>(Ns[j + 1]) / static_cast<double>(Ns[j])));
  }
  return rates;
}

double nodal_error(const Solution& coarse, const Solution& reference) {
  const std::size_t n = coarse.mesh.N;
  const std::size_t m = reference.mesh.N;
  if (n == 0 || m % n != 0 || coarse.mesh.r != reference.mesh.r || coarse.mesh.T != reference.mesh.T) {
    throw PreconditionError("nodal_error: coarse mesh is not nested in the reference mesh");
  }
  const std::size_t stride = m / n;
  double worst = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    worst = std::max(worst, std::fabs(coarse.values[i] - reference.values[i * stride]));
  }
  return worst;
}

ConvergenceReport run_convergence(const Problem& problem, MeshCase mesh_case, std::span<const std::size_t> N_list,
                                  std::size_t ref_N, const QuadratureRule& rule, const NewtonConfig& cfg,
                                  const ConvergenceOptions& options) {
  for (const std::size_t N : N_list) {
    if (N == 0 || ref_N % N != 0) {
      throw PreconditionError("run_convergence: N = " + std::to_string(N) + " does not divide ref_N = " +
                              std::to_string(ref_N));
    }
  }
  const double r = grading_for_case(problem.order, mesh_case);
  const Solution reference = solve(problem, make_mesh(problem.horizon(), ref_N, r), rule, cfg, options.assembly);
  return run_convergence(problem, mesh_case, N_list, reference, rule, cfg, options);
}

ConvergenceReport run_convergence(const Problem& problem, MeshCase mesh_case, std::span<const std::size_t> N_list,
                                  const Solution& reference, const QuadratureRule& rule, const NewtonConfig& cfg,
                                  const ConvergenceOptions& options) {
  const double r = grading_for_case(problem.order, mesh_case);
  if (reference.mesh.r != r) throw PreconditionError("run_convergence: reference grading differs from the case");

  ConvergenceReport report;
  report.id = options.id;
  report.mesh_case = mesh_case;
  report.grading = r;
  report.ref_N = reference.mesh.N;
  report.predicted_rate = predicted_rate(problem.order, mesh_case);
  report.Ns.assign(N_list.begin(), N_list.end());
  for (const std::size_t N : N_list) {
    if (N == 0 || report.ref_N % N != 0) {
      throw PreconditionError("run_convergence: N = " + std::to_string(N) + " does not divide ref_N = " +
                              std::to_string(report.ref_N));
    }
    const Solution coarse = solve(problem, make_mesh(problem.horizon(), N, r), rule, cfg, options.assembly);
    report.errors.push_back(nodal_error(coarse, reference));
  }
  if (report.errors.size() >= 2) report.rates = fit_rate(report.errors, report.Ns);
  return report;
}

double singularity_exponent(const Solution& solution, const ExponentWindow& window) {
  const Mesh& mesh = solution.mesh;
  const auto last = static_cast<std::size_t>(std::ceil(window.fraction * static_cast<double>(mesh.N)));
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  std::size_t used = 0;
  for (std::size_t i = window.skip + 1; i <= std::min(last, mesh.N); ++i) {
    const double slope = (solution.values[i] - solution.values[i - 1]) / mesh.tau(i);
    if (!(std::fabs(slope) > 0.0) || !std::isfinite(slope)) continue;
    const double x = std::log(0.5 * (mesh.t(i - 1) + mesh.t(i)));
    const double y = std::log(std::fabs(slope));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used < 8) {
    throw PreconditionError("singularity_exponent: only " + std::to_string(used) +
                            " usable cells near t = 0 (need 8)");
  }
  const double n = static_cast<double>(used);
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_report_csv(std::ostream& out, const ConvergenceReport& report) {
  const auto old_precision = out.precision(17);
  out << "N,error,rate\n";
  for (std::size_t j = 0; j < report.Ns.size(); ++j) {
    out << report.Ns[j] << ',' << report.errors[j] << ',';
    if (j > 0) out << report.rates[j - 1];
    out << '\n';
  }
  out.precision(old_precision);
}

void write_report_table(std::ostream& out, std::span<const ConvergenceReport> reports) {
  if (reports.empty()) return;
  const auto& Ns = reports.front().Ns;
  for (const auto& r : reports) {
    if (r.Ns != Ns) throw PreconditionError("write_report_table: reports use different N lists");
  }
  char buf[64];
  out << "1/N    ";
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "  %-12s  %5s", r.id.empty() ? "error" : r.id.c_str(), "kappa");
    out << buf;
  }
  out << '\n';
  for (std::size_t j = 0; j < Ns.size(); ++j) {
    std::snprintf(buf, sizeof buf, "1/%-5zu", Ns[j]);
    out << buf;
    for (const auto& r : reports) {
      if (j == 0) {
        std::snprintf(buf, sizeof buf, "  %-12.2E  %5s", r.errors[j], "");
      } else {
        std::snprintf(buf, sizeof buf, "  %-12.2E  %5.2f", r.errors[j], r.rates[j - 1]);
      }
      out << buf;
    }
    out << '\n';
  }
  out << "pred   ";
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "  %-12s  %5.2f", "", r.predicted_rate);
    out << buf;
  }
  out << '\n';
}

}  // namespace vofrac
