#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "vofrac/mesh.hpp"
#include "vofrac/order.hpp"
#include "vofrac/quadrature.hpp"

namespace vofrac {

// Collocation coefficients for the piecewise-linear scheme
//
//   U(t_n) = sum_{i=0}^{n} h[n][i] U(t_i) + sum_{i=0}^{n} W[n][i] f(U(t_i), t_i)
//            + u0 t_n^{a(t_n)-a(0)} / Gamma(1 + a(t_n) - a(0)),
//
// where U(t_0) = u0, so h[n][0] is the coefficient usually written h0[n].
// h comes from integrating K_s(t_n, .) against the hat functions; W are the
// moments of the hats against (t_n - s)^{a(t_n)-1} / Gamma(a(t_n)).

/// Power of the substitution t_n - s = tau x^p used on the diagonal cell,
/// where K_s(t_n, .) has its logarithmic singularity.
inline constexpr int kDiagonalMapPower = 4;

/// Moments of the two hats supported on cell i = [t_{i-1}, t_i] against the
/// weakly singular weight of row n. `left` belongs to the hat that peaks at
/// t_{i-1}, `right` to the hat that peaks at t_i.
struct CellMoments {
  double left = 0.0;
  double right = 0.0;
};

/// Closed-form moments for a cell of length `tau` whose right end sits at
/// distance `gap` >= 0 from t_n, for order value `alpha` in (0, 1].
CellMoments moments_closed_form(double gap, double tau, double alpha);

/// Exact moments for 1 <= i <= n <= N. Throws std::out_of_range on bad indices.
CellMoments singular_moments(const VariableOrder& order, const Mesh& mesh, std::size_t n, std::size_t i);

/// Row n of the history weights: entry i (0..n) is the integral of
/// K_s(t_n, s) times the hat of node i. Throws std::out_of_range unless 1 <= n <= N.
std::vector<double> history_weights(const VariableOrder& order, const Mesh& mesh, const QuadratureRule& rule,
                                    std::size_t n);

enum class FTermMode {
  exact_moments,  // product integration with closed-form moments (default)
  quadrature,     // same open rule as the history weights; for comparison
};

struct AssemblyOptions {
  /// Translation-invariant assembly. Requires a uniform mesh and a linear order.
  bool fast_path = false;
  FTermMode f_term = FTermMode::exact_moments;
  /// Threads used for row assembly; 0 picks the hardware concurrency.
  unsigned workers = 1;
};

/// All coefficients of the scheme on one mesh. Write-once, then read-only.
///
/// Dense mode stores h (lower triangle plus column 0) and the cell moments.
/// Invariant mode stores two generating sequences of length N,
///   rise[k]: K_s against the rising hat of the cell whose right end is k steps before t_n,
///   fall[k]: the same cell against its falling hat,
/// so that h[n][n] = rise[0], h[n][i] = rise[n-i] + fall[n-i-1] and
/// h[n][0] = fall[n-1]; moments are then evaluated on demand.
class WeightTable {
 public:
  std::size_t size() const noexcept { return mesh_.N; }
  const Mesh& mesh() const noexcept { return mesh_; }
  const VariableOrder& order() const noexcept { return order_; }
  bool invariant_mode() const noexcept { return invariant_; }
  FTermMode f_term() const noexcept { return f_term_; }

  /// History weight of node i in row n, 0 <= i <= n, 1 <= n <= N.
  double h(std::size_t n, std::size_t i) const;
  /// Moments of cell i (1 <= i <= n) in row n.
  CellMoments moments(std::size_t n, std::size_t i) const;
  /// Weight of f(U(t_i), t_i) in row n, 0 <= i <= n.
  double f_weight(std::size_t n, std::size_t i) const;

  /// Invariant mode only; empty otherwise.
  std::span<const double> rise() const noexcept { return rise_; }
  std::span<const double> fall() const noexcept { return fall_; }

  /// Number of stored history-weight entries.
  std::size_t history_storage() const noexcept;

 private:
  WeightTable(Mesh mesh, VariableOrder order) : mesh_(std::move(mesh)), order_(std::move(order)) {}

  static std::size_t packed(std::size_t n, std::size_t i) { return n * (n - 1) / 2 + (i - 1); }

  Mesh mesh_;
  VariableOrder order_;
  bool invariant_ = false;
  FTermMode f_term_ = FTermMode::exact_moments;

  std::vector<double> h_;   // packed rows n = 1..N, i = 1..n
  std::vector<double> h0_;  // index n
  std::vector<double> rise_;
  std::vector<double> fall_;
  std::vector<double> wl_;  // packed like h_
  std::vector<double> wr_;

  friend WeightTable assemble(const VariableOrder&, const Mesh&, const QuadratureRule&, const AssemblyOptions&);
};

/// Throws PreconditionError if fast_path is requested without a uniform mesh
/// and a linear order, or together with the quadrature f-term.
WeightTable assemble(const VariableOrder& order, const Mesh& mesh, const QuadratureRule& rule,
                     const AssemblyOptions& options = {});

/// max over all (n, i) of |a.h(n,i) - b.h(n,i)|. Tables must share N.
double max_history_difference(const WeightTable& a, const WeightTable& b);

/// CSV dump: header "n,i,h,w", row-major in n then i (i = 0..n), 17 significant digits.
void write_weight_table_csv(std::ostream& out, const WeightTable& table);

/// CSV dump of the invariant-mode sequences: header "k,rise,fall".
void write_generating_sequence_csv(std::ostream& out, const WeightTable& table);

}  // namespace vofrac
