#include "vofrac/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "vofrac/errors.hpp"
#include "vofrac/kernel.hpp"

namespace vofrac {

namespace {

// Quadrature samples of every cell, shared by all rows. For a row n the
// regular samples of cells j < n are used; cell n uses the diagonal samples,
// mapped by t_n - s = tau_n x^p so the log singularity at s = t_n is flattened.
struct CellSamples {
  std::size_t count = 0;
  // Regular: s = t_{j-1} + tau_j x_k.
  std::vector<double> s;
  std::vector<double> a;
  std::vector<double> da;
  std::vector<double> w_rise;  // w_k x_k
  std::vector<double> w_fall;  // w_k (1 - x_k)
  // Diagonal: v = t_j - s = tau_j x_k^p, Jacobian p tau_j x_k^{p-1}.
  std::vector<double> dv;
  std::vector<double> da_diag;
  std::vector<double> a_diag;
  std::vector<double> wd_rise;  // w_k p x^{p-1} (1 - x^p)
  std::vector<double> wd_fall;  // w_k p x^{p-1} x^p

  CellSamples(const VariableOrder& order, const Mesh& mesh, const QuadratureRule& rule, std::size_t cells)
      : count(rule.size()) {
    const std::size_t total = cells * count;
    s.resize(total);
    a.resize(total);
    da.resize(total);
    dv.resize(total);
    a_diag.resize(total);
    da_diag.resize(total);
    w_rise.resize(count);
    w_fall.resize(count);
    wd_rise.resize(count);
    wd_fall.resize(count);
    constexpr double p = kDiagonalMapPower;
    for (std::size_t k = 0; k < count; ++k) {
      const double x = rule.nodes[k];
      const double w = rule.weights[k];
      w_rise[k] = w * x;
      w_fall[k] = w * (1.0 - x);
      const double xp = std::pow(x, p);
      const double jac = w * p * std::pow(x, p - 1.0);
      wd_rise[k] = jac * (1.0 - xp);
      wd_fall[k] = jac * xp;
    }
    for (std::size_t j = 1; j <= cells; ++j) {
      const double left = mesh.t(j - 1);
      const double right = mesh.t(j);
      const double tau = mesh.tau(j);
      for (std::size_t k = 0; k < count; ++k) {
        const std::size_t idx = (j - 1) * count + k;
        const double x = rule.nodes[k];
        s[idx] = left + tau * x;
        a[idx] = order(s[idx]);
        da[idx] = order.derivative(s[idx]);
        dv[idx] = tau * std::pow(x, p);
        const double sd = right - dv[idx];
        a_diag[idx] = order(sd);
        da_diag[idx] = order.derivative(sd);
      }
    }
  }
};

// Per-cell integrals of K_s(t_n, .) against the rising and falling hats of cells 1..n.
void history_cells(const CellSamples& cs, const Mesh& mesh, double alpha_t, std::size_t n, std::span<double> rise,
                   std::span<double> fall) {
  const double tn = mesh.t(n);
  const std::size_t m = cs.count;
  for (std::size_t j = 1; j < n; ++j) {
    const std::size_t base = (j - 1) * m;
    double r = 0.0;
    double f = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double ks = detail::kernel_ks(alpha_t - cs.a[base + k], cs.da[base + k], tn - cs.s[base + k]);
      r += cs.w_rise[k] * ks;
      f += cs.w_fall[k] * ks;
    }
    rise[j] = mesh.tau(j) * r;
    fall[j] = mesh.tau(j) * f;
  }
  const std::size_t base = (n - 1) * m;
  double r = 0.0;
  double f = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double ks = detail::kernel_ks(alpha_t - cs.a_diag[base + k], cs.da_diag[base + k], cs.dv[base + k]);
    r += cs.wd_rise[k] * ks;
    f += cs.wd_fall[k] * ks;
  }
  rise[n] = mesh.tau(n) * r;
  fall[n] = mesh.tau(n) * f;
}

// Same cells against the weakly singular f-weight instead of K_s.
void quadrature_moments(const CellSamples& cs, const Mesh& mesh, double alpha_t, std::size_t n,
                        std::span<double> left, std::span<double> right) {
  const double tn = mesh.t(n);
  const double scale = 1.0 / std::tgamma(alpha_t);
  const std::size_t m = cs.count;
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t base = (j - 1) * m;
    const bool diagonal = j == n;
    double r = 0.0;
    double l = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double v = diagonal ? cs.dv[base + k] : tn - cs.s[base + k];
      const double g = std::pow(v, alpha_t - 1.0);
      r += (diagonal ? cs.wd_rise[k] : cs.w_rise[k]) * g;
      l += (diagonal ? cs.wd_fall[k] : cs.w_fall[k]) * g;
    }
    right[j] = scale * mesh.tau(j) * r;
    left[j] = scale * mesh.tau(j) * l;
  }
}

void check_row(const Mesh& mesh, std::size_t n) {
  if (n < 1 || n > mesh.N) {
    throw std::out_of_range("row index " + std::to_string(n) + " outside 1.." + std::to_string(mesh.N));
  }
}

template <class Body>
void parallel_rows(std::size_t rows, unsigned workers, Body&& body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(rows, 1)));
  if (workers <= 1) {
    for (std::size_t n = 1; n <= rows; ++n) body(n);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t n = 1 + w; n <= rows; n += workers) body(n);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

CellMoments moments_closed_form(double gap, double tau, double alpha) {
  // v = t_n - s runs over [gap, gap + tau]; with
  //   I0 = int v^{alpha-1} dv,  I1 = int (v - gap) v^{alpha-1} dv
  // the hat peaking at the near end (v = gap) gets I0 - I1/tau, the far one I1/tau.
  const double rg = 1.0 / std::tgamma(alpha);
  if (gap == 0.0) {
    const double ta = std::pow(tau, alpha);
    return {ta / (alpha + 1.0) * rg, ta / (alpha * (alpha + 1.0)) * rg};
  }
  const double rho = tau / gap;
  const double ga = std::pow(gap, alpha);
  const double i0 = ga * std::expm1(alpha * std::log1p(rho)) / alpha;
  double i1_over_tau = 0.0;
  if (rho >= 0.5) {
    const double b = gap + tau;
    const double i1 = (std::pow(b, alpha + 1.0) - gap * ga) / (alpha + 1.0) - gap * i0;
    i1_over_tau = i1 / tau;
  } else {
    // I1 / tau = gap^alpha rho sum_k binom(alpha-1, k) rho^k / (k + 2); avoids cancellation.
    double c = 1.0;
    double rk = 1.0;
    double sum = 0.5;
    for (int k = 1; k < 200; ++k) {
      c *= (alpha - static_cast<double>(k)) / static_cast<double>(k);
      rk *= rho;
      const double term = c * rk / (k + 2.0);
      sum += term;
      if (std::fabs(term) <= 1e-17 * std::fabs(sum)) break;
    }
    i1_over_tau = ga * rho * sum;
  }
  return {i1_over_tau * rg, (i0 - i1_over_tau) * rg};
}

CellMoments singular_moments(const VariableOrder& order, const Mesh& mesh, std::size_t n, std::size_t i) {
  check_row(mesh, n);
  if (i < 1 || i > n) {
    throw std::out_of_range("cell index " + std::to_string(i) + " outside 1.." + std::to_string(n));
  }
  return moments_closed_form(mesh.t(n) - mesh.t(i), mesh.tau(i), order(mesh.t(n)));
}

std::vector<double> history_weights(const VariableOrder& order, const Mesh& mesh, const QuadratureRule& rule,
                                    std::size_t n) {
  check_row(mesh, n);
  std::vector<double> row(n + 1, 0.0);
  if (order.is_constant()) return row;
  const CellSamples cs(order, mesh, rule, n);
  std::vector<double> rise(n + 1, 0.0);
  std::vector<double> fall(n + 1, 0.0);
  history_cells(cs, mesh, order(mesh.t(n)), n, rise, fall);
  for (std::size_t j = 1; j <= n; ++j) {
    row[j] += rise[j];
    row[j - 1] += fall[j];
  }
  return row;
}

WeightTable assemble(const VariableOrder& order, const Mesh& mesh, const QuadratureRule& rule,
                     const AssemblyOptions& options) {
  if (options.fast_path) {
    if (!mesh.is_uniform()) throw PreconditionError("fast path requires a uniform mesh (r = 1)");
    if (!order.is_linear()) throw PreconditionError("fast path requires a declared-linear order");
    if (options.f_term != FTermMode::exact_moments) {
      throw PreconditionError("fast path supports only the exact-moment f-term");
    }
  }
  if (std::fabs(mesh.T - order.horizon()) > 1e-14 * order.horizon()) {
    throw PreconditionError("mesh and order horizons differ");
  }

  const std::size_t N = mesh.N;
  WeightTable table(mesh, order);
  table.invariant_ = options.fast_path;
  table.f_term_ = options.f_term;

  const bool need_samples = !order.is_constant() || options.f_term == FTermMode::quadrature;
  std::optional<CellSamples> cs;
  if (need_samples) cs.emplace(order, mesh, rule, N);

  if (options.fast_path) {
    table.rise_.assign(N, 0.0);
    table.fall_.assign(N, 0.0);
    if (!order.is_constant()) {
      std::vector<double> rise(N + 1, 0.0);
      std::vector<double> fall(N + 1, 0.0);
      history_cells(*cs, mesh, order(mesh.t(N)), N, rise, fall);
      for (std::size_t k = 0; k < N; ++k) {
        table.rise_[k] = rise[N - k];
        table.fall_[k] = fall[N - k];
      }
    }
    return table;
  }

  const std::size_t packed_size = N * (N + 1) / 2;
  table.h_.assign(packed_size, 0.0);
  table.h0_.assign(N + 1, 0.0);
  table.wl_.assign(packed_size, 0.0);
  table.wr_.assign(packed_size, 0.0);

  parallel_rows(N, options.workers, [&](std::size_t n) {
    const double alpha_t = order(mesh.t(n));
    std::vector<double> rise(n + 1, 0.0);
    std::vector<double> fall(n + 1, 0.0);
    if (!order.is_constant()) {
      history_cells(*cs, mesh, alpha_t, n, rise, fall);
      double* row = table.h_.data() + WeightTable::packed(n, 1);
      for (std::size_t j = 1; j <= n; ++j) {
        row[j - 1] += rise[j];
        if (j >= 2) row[j - 2] += fall[j];
      }
      table.h0_[n] = fall[1];
    }
    double* wl = table.wl_.data() + WeightTable::packed(n, 1);
    double* wr = table.wr_.data() + WeightTable::packed(n, 1);
    if (options.f_term == FTermMode::quadrature) {
      quadrature_moments(*cs, mesh, alpha_t, n, fall, rise);
      for (std::size_t j = 1; j <= n; ++j) {
        wl[j - 1] = fall[j];
        wr[j - 1] = rise[j];
      }
    } else {
      for (std::size_t j = 1; j <= n; ++j) {
        const CellMoments m = moments_closed_form(mesh.t(n) - mesh.t(j), mesh.tau(j), alpha_t);
        wl[j - 1] = m.left;
        wr[j - 1] = m.right;
      }
    }
  });
  return table;
}

double WeightTable::h(std::size_t n, std::size_t i) const {
  if (n < 1 || n > mesh_.N || i > n) throw std::out_of_range("WeightTable::h index out of range");
  if (invariant_) {
    if (i == 0) return fall_[n - 1];
    if (i == n) return rise_[0];
    return rise_[n - i] + fall_[n - i - 1];
  }
  return i == 0 ? h0_[n] : h_[packed(n, i)];
}

CellMoments WeightTable::moments(std::size_t n, std::size_t i) const {
  if (n < 1 || n > mesh_.N || i < 1 || i > n) throw std::out_of_range("WeightTable::moments index out of range");
  if (invariant_) return moments_closed_form(mesh_.t(n) - mesh_.t(i), mesh_.tau(i), order_(mesh_.t(n)));
  return {wl_[packed(n, i)], wr_[packed(n, i)]};
}

double WeightTable::f_weight(std::size_t n, std::size_t i) const {
  if (n < 1 || n > mesh_.N || i > n) throw std::out_of_range("WeightTable::f_weight index out of range");
  double w = 0.0;
  if (i >= 1) w += moments(n, i).right;
  if (i < n) w += moments(n, i + 1).left;
  return w;
}

std::size_t WeightTable::history_storage() const noexcept {
  return invariant_ ? rise_.size() + fall_.size() : h_.size() + h0_.size();
}

double max_history_difference(const WeightTable& a, const WeightTable& b) {
  if (a.size() != b.size()) throw PreconditionError("max_history_difference: tables differ in size");
  double worst = 0.0;
  for (std::size_t n = 1; n <= a.size(); ++n) {
    for (std::size_t i = 0; i <= n; ++i) worst = std::max(worst, std::fabs(a.h(n, i) - b.h(n, i)));
  }
  return worst;
}

void write_weight_table_csv(std::ostream& out, const WeightTable& table) {
  const auto old_precision = out.precision(17);
  out << "n,i,h,w\n";
  for (std::size_t n = 1; n <= table.size(); ++n) {
    for (std::size_t i = 0; i <= n; ++i) {
      out << n << ',' << i << ',' << table.h(n, i) << ',' << table.f_weight(n, i) << '\n';
    }
  }
  out.precision(old_precision);
}

void write_generating_sequence_csv(std::ostream& out, const WeightTable& table) {
  const auto old_precision = out.precision(17);
  out << "k,rise,fall\n";
  for (std::size_t k = 0; k < table.rise().size(); ++k) {
    out << k << ',' << table.rise()[k] << ',' << table.fall()[k] << '\n';
  }
  out.precision(old_precision);
}

}  // namespace vofrac
