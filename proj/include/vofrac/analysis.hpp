#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vofrac/assembly.hpp"
#include "vofrac/mesh.hpp"
#include "vofrac/solver.hpp"

namespace vofrac {

/// Nodal max-norm errors of a sequence of coarse solves against one fine
/// reference on the same grading, with the observed rates between them.
struct ConvergenceReport {
  std::string id;
  MeshCase mesh_case = MeshCase::III;
  double grading = 1.0;
  std::size_t ref_N = 0;
  std::vector<std::size_t> Ns;
  std::vector<double> errors;  // max_i |U_N(t_i) - U_ref(t_i)| over the coarse nodes
  std::vector<double> rates;   // rates[j] between Ns[j] and Ns[j+1]
  double predicted_rate = 0.0;

  double final_rate() const { return rates.empty() ? 0.0 : rates.back(); }
};

/// kappa_j = ln(e_j / e_{j+1}) / ln(N_{j+1} / N_j).
/// Throws DomainError for mismatched or short inputs and for non-positive errors.
std::vector<double> fit_rate(std::span<const double> errors, std::span<const std::size_t> Ns);

/// max over the nodes of `coarse` of |coarse - reference|; the coarse mesh must
/// be nested in the reference mesh. Throws PreconditionError otherwise.
double nodal_error(const Solution& coarse, const Solution& reference);

struct ConvergenceOptions {
  std::string id;
  AssemblyOptions assembly;
};

/// Solves at ref_N once, then at every N in N_list, all on the grading
/// prescribed for `mesh_case`. Every N must divide ref_N.
ConvergenceReport run_convergence(const Problem& problem, MeshCase mesh_case, std::span<const std::size_t> N_list,
                                  std::size_t ref_N, const QuadratureRule& rule, const NewtonConfig& cfg = {},
                                  const ConvergenceOptions& options = {});

/// Same study against an already computed reference solution.
ConvergenceReport run_convergence(const Problem& problem, MeshCase mesh_case, std::span<const std::size_t> N_list,
                                  const Solution& reference, const QuadratureRule& rule,
                                  const NewtonConfig& cfg = {}, const ConvergenceOptions& options = {});

struct ExponentWindow {
  /// Difference quotients over cells skip+1 .. ceil(fraction * N) are fitted.
  double fraction = 0.1;
  std::size_t skip = 1;
};

/// Least-squares slope of ln|U'| against ln t near t = 0, where U' is taken as
/// the cell difference quotients placed at cell midpoints. For u' ~ t^{a(0)-1}
/// the slope is a(0) - 1. Throws PreconditionError with fewer than 8 usable cells.
double singularity_exponent(const Solution& solution, const ExponentWindow& window = {});

/// CSV with header "N,error,rate"; the first rate is empty.
void write_report_csv(std::ostream& out, const ConvergenceReport& report);

/// Side-by-side text table: one row per 1/N, an error and a rate column per report.
/// Reports must share the same N list.
void write_report_table(std::ostream& out, std::span<const ConvergenceReport> reports);

}  // namespace vofrac
