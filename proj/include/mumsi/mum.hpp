// mum.hpp
// Construction of a complete set of d+1 mutually unbiased measurements (MUMs)
// on a d-dimensional system from a linear operator basis, following the
// one-parameter family of Kalev and Gour.
//
// Layout: the d^2-1 traceless basis operators are arranged on a (d-1) x (d+1)
// grid F[b][n] (measurement index b = 0..d, slot n = 0..d-2) in column-major
// order, flat index k = b*(d-1) + n. Measurement b has d effects
//   P[b][n] = I/d + t * F_op[b][n],
// where F_op[b][n] = F[b][.]-row combinations fixed below. The sharpness
// parameter is kappa = 1/d + t^2 (1+sqrt(d))^2 (d-1); kappa = 1 corresponds to
// projective mutually unbiased bases when they exist.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace mumsi {

// Hilbert-Schmidt-orthonormal, traceless, Hermitian basis of dimension d^2-1.
struct LooBasis {
  int dim = 0;
  std::vector<HermitianOperator> operators;
};

// Generalized Gell-Mann basis, ordered: symmetric pairs (j<k lexicographic),
// antisymmetric pairs (j<k lexicographic), diagonal operators m = 1..d-1.
// For d=2 this is {sigma_x, sigma_y, sigma_z} / sqrt(2).
inline LooBasis build_gell_mann_basis(int d) {
  if (d < 2) throw std::invalid_argument("build_gell_mann_basis: d must be >= 2");
  check_dim_cap(d, "build_gell_mann_basis");
  LooBasis basis;
  basis.dim = d;
  basis.operators.reserve(static_cast<size_t>(d) * d - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix m = Matrix::Zero(d, d);
      m(j, k) = inv_sqrt2;
      m(k, j) = inv_sqrt2;
      basis.operators.emplace_back(std::move(m));
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix m = Matrix::Zero(d, d);
      m(j, k) = Complex(0.0, -inv_sqrt2);
      m(k, j) = Complex(0.0, inv_sqrt2);
      basis.operators.emplace_back(std::move(m));
    }
  for (int m = 1; m < d; ++m) {
    Matrix g = Matrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(m) * (m + 1));
    for (int j = 0; j < m; ++j) g(j, j) = norm;
    g(m, m) = -static_cast<double>(m) * norm;
    basis.operators.emplace_back(std::move(g));
  }
  return basis;
}

inline double kappa_of_t(int d, double t) {
  if (d < 2) throw std::invalid_argument("kappa_of_t: d must be >= 2");
  const double sd = std::sqrt(static_cast<double>(d));
  return 1.0 / d + t * t * (1.0 + sd) * (1.0 + sd) * (d - 1);
}

inline double t_of_kappa(int d, double kappa) {
  if (d < 2) throw std::invalid_argument("t_of_kappa: d must be >= 2");
  if (!(kappa > 1.0 / d) || kappa > 1.0)
    throw std::invalid_argument("t_of_kappa: kappa = " + num_str(kappa) +
                                " must lie in (1/d, 1]");
  const double sd = std::sqrt(static_cast<double>(d));
  return std::sqrt((kappa - 1.0 / d) / ((1.0 + sd) * (1.0 + sd) * (d - 1)));
}

// Largest t with projective sharpness, t at kappa = 1. Positivity of the
// effects can fail earlier for d > 2; see max_positive_t.
inline double t_at_unit_kappa(int d) {
  if (d < 2) throw std::invalid_argument("t_at_unit_kappa: d must be >= 2");
  const double sd = std::sqrt(static_cast<double>(d));
  return 1.0 / (sd * (1.0 + sd));
}

// One complete MUM set: effects[b][n] = P with measurement b = 0..d and
// outcome n = 0..d-1; f_ops holds the traceless parts (P - I/d) / t.
struct MumSet {
  int d = 0;
  double t = 0.0;
  double kappa = 0.0;
  std::vector<std::vector<HermitianOperator>> effects;
  std::vector<std::vector<HermitianOperator>> f_ops;
};

namespace detail {

// Traceless generator of effect (b, n) from the basis grid.
inline Matrix effect_generator(const LooBasis& basis, int b, int n) {
  const int d = basis.dim;
  const double sd = std::sqrt(static_cast<double>(d));
  Matrix fb = Matrix::Zero(d, d);
  for (int m = 0; m < d - 1; ++m) fb += basis.operators[b * (d - 1) + m].matrix();
  if (n < d - 1) return fb - (d + sd) * basis.operators[b * (d - 1) + n].matrix();
  return (1.0 + sd) * fb;
}

inline double min_effect_eigenvalue(const LooBasis& basis, double t) {
  const int d = basis.dim;
  double min_eig = 1.0;
  for (int b = 0; b <= d; ++b)
    for (int n = 0; n < d; ++n) {
      const Matrix p =
          Matrix::Identity(d, d) / static_cast<double>(d) + t * effect_generator(basis, b, n);
      Eigen::SelfAdjointEigenSolver<Matrix> es(p, Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, es.eigenvalues()(0));
    }
  return min_eig;
}

}  // namespace detail

inline MumSet build_mum_set(const LooBasis& basis, double t) {
  const int d = basis.dim;
  if (d < 2) throw std::invalid_argument("build_mum_set: d must be >= 2");
  if (static_cast<int>(basis.operators.size()) != d * d - 1)
    throw std::invalid_argument("build_mum_set: basis must contain d^2-1 operators");
  if (!(t > 0.0)) throw std::invalid_argument("build_mum_set: t must be positive");

  MumSet out;
  out.d = d;
  out.t = t;
  out.kappa = kappa_of_t(d, t);
  out.effects.resize(d + 1);
  out.f_ops.resize(d + 1);
  const Matrix id = Matrix::Identity(d, d);
  for (int b = 0; b <= d; ++b) {
    out.effects[b].reserve(d);
    out.f_ops[b].reserve(d);
    for (int n = 0; n < d; ++n) {
      Matrix f = detail::effect_generator(basis, b, n);
      Matrix p = id / static_cast<double>(d) + t * f;
      Eigen::SelfAdjointEigenSolver<Matrix> es(p, Eigen::EigenvaluesOnly);
      const double min_eig = es.eigenvalues()(0);
      if (min_eig < -kPsdTol)
        throw std::invalid_argument("build_mum_set: effect (b=" + std::to_string(b) +
                                    ", n=" + std::to_string(n) + ") at t=" + num_str(t) +
                                    " has negative eigenvalue " + num_str(min_eig));
      out.f_ops[b].emplace_back(std::move(f));
      out.effects[b].emplace_back(std::move(p));
    }
  }
  return out;
}

inline MumSet build_mum_set(int d, double t) { return build_mum_set(build_gell_mann_basis(d), t); }

// Largest t for which every effect stays positive semidefinite, located by
// bisection on the minimum effect eigenvalue (threshold -kPsdTol, interval
// width 1e-12). Never exceeds t_at_unit_kappa: beyond it the purity of some
// effect would exceed the square of its trace.
inline double max_positive_t(int d) {
  const LooBasis basis = build_gell_mann_basis(d);
  double hi = t_at_unit_kappa(d);
  if (detail::min_effect_eigenvalue(basis, hi) >= -kPsdTol) return hi;
  double lo = 0.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (detail::min_effect_eigenvalue(basis, mid) >= -kPsdTol)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

// Residuals of the defining algebraic identities of a MUM set.
struct MumValidation {
  double unit_trace = 0.0;       // max |tr P[b][n] - 1|
  double pairwise_trace = 0.0;   // max |tr(P[b][n] P[b'][n']) - expected|
  double sum_to_identity = 0.0;  // max_b |sum_n P[b][n] - I|_max
  double generator_sum = 0.0;    // max_b |sum_n f_ops[b][n]|_max
  double sum_squares = 0.0;      // |sum_{b,n} P[b][n]^2 - (d+1) kappa I|_max
  double kappa_relation = 0.0;   // |kappa - kappa_of_t(d, t)|

  double max() const {
    return std::max({unit_trace, pairwise_trace, sum_to_identity, generator_sum, sum_squares,
                     kappa_relation});
  }
};

// Expected tr(P[b][n] P[b'][n']): kappa on the diagonal, (1-kappa)/(d-1)
// within one measurement, 1/d across different measurements.
inline double expected_pair_trace(int d, double kappa, int b, int n, int bp, int np) {
  if (b != bp) return 1.0 / d;
  if (n == np) return kappa;
  return (1.0 - kappa) / (d - 1);
}

inline MumValidation validate_mum_set(const MumSet& mum) {
  const int d = mum.d;
  MumValidation v;
  v.kappa_relation = std::abs(mum.kappa - kappa_of_t(d, mum.t));
  const Matrix id = Matrix::Identity(d, d);
  Matrix sq_acc = Matrix::Zero(d, d);
  for (int b = 0; b <= d; ++b) {
    Matrix p_acc = Matrix::Zero(d, d);
    Matrix f_acc = Matrix::Zero(d, d);
    for (int n = 0; n < d; ++n) {
      const Matrix& p = mum.effects[b][n].matrix();
      p_acc += p;
      f_acc += mum.f_ops[b][n].matrix();
      sq_acc += p * p;
      v.unit_trace = std::max(v.unit_trace, std::abs(p.trace() - Complex(1.0, 0.0)));
      for (int bp = 0; bp <= d; ++bp)
        for (int np = 0; np < d; ++np) {
          const Complex tr = (p * mum.effects[bp][np].matrix()).trace();
          v.pairwise_trace = std::max(
              v.pairwise_trace, std::abs(tr - Complex(expected_pair_trace(d, mum.kappa, b, n, bp, np), 0.0)));
        }
    }
    v.sum_to_identity = std::max(v.sum_to_identity, max_abs(p_acc - id));
    v.generator_sum = std::max(v.generator_sum, max_abs(f_acc));
  }
  v.sum_squares = max_abs(sq_acc - (d + 1) * mum.kappa * id);
  return v;
}

// Largest deviation of sum_{b,n} P[b][n]^2 from (d+1) kappa I.
inline double check_sum_squares(const MumSet& mum) {
  const int d = mum.d;
  Matrix acc = Matrix::Zero(d, d);
  for (int b = 0; b <= d; ++b)
    for (int n = 0; n < d; ++n) {
      const Matrix& p = mum.effects[b][n].matrix();
      acc += p * p;
    }
  return max_abs(acc - (d + 1) * mum.kappa * Matrix::Identity(d, d));
}

}  // namespace mumsi
