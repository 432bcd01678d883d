// skew.hpp
// Generalized Wigner-Yanase skew information I^s(rho, A), built on the
// one-parameter family of power means
//   f_s(a, b) = ((a^s + b^s) / 2)^(1/s),   s <= 0,
// with the limits f_0 = geometric mean and f_{-inf} = min. s = 0 gives the
// Wigner-Yanase skew information, s = -1 one quarter of the quantum Fisher
// information, and I^s is nondecreasing as s decreases, capped by the
// variance; pure states give I^s = variance for every s.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace mumsi {

// Order parameter of the mean: zero, a finite s < 0, or -infinity.
class SParameter {
 public:
  static SParameter zero() { return SParameter(false, 0.0); }

  static SParameter neg_infinity() { return SParameter(true, 0.0); }

  static SParameter finite(double value) {
    if (std::isnan(value) || std::isinf(value) || value > 0.0)
      throw std::invalid_argument("SParameter: order must be a finite value <= 0");
    return SParameter(false, value);
  }

  // Accepts "-inf" or a decimal value <= 0.
  static SParameter parse(const std::string& text) {
    if (text == "-inf" || text == "-infinity") return neg_infinity();
    size_t pos = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("SParameter: cannot parse '" + text + "'");
    }
    if (pos != text.size())
      throw std::invalid_argument("SParameter: trailing characters in '" + text + "'");
    return finite(value);
  }

  bool is_neg_infinity() const { return neg_inf_; }

  double value() const {
    if (neg_inf_) throw std::logic_error("SParameter: -infinity has no finite value");
    return value_;
  }

  std::string str() const { return neg_inf_ ? "-inf" : num_str(value_); }

 private:
  SParameter(bool neg_inf, double value) : neg_inf_(neg_inf), value_(value) {}
  bool neg_inf_;
  double value_;
};

// Power mean f_s on nonnegative inputs. Inputs at or below the eigenvalue
// zero cutoff give 0 (the limit of the mean as either argument vanishes, for
// every s <= 0). Evaluated in the factored form
//   f_s(a, b) = min * ((1 + (max/min)^s) / 2)^(1/s)
// which stays finite for arbitrarily negative s.
inline double generalized_mean(const SParameter& s, double a, double b) {
  if (a < 0.0 || b < 0.0)
    throw std::domain_error("generalized_mean: inputs must be nonnegative, got " + num_str(a) +
                            ", " + num_str(b));
  if (a <= kEigZeroCutoff || b <= kEigZeroCutoff) return 0.0;
  if (s.is_neg_infinity()) return std::min(a, b);
  const double sv = s.value();
  if (sv == 0.0) return std::sqrt(a * b);
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double ratio_pow = std::exp(sv * std::log(hi / lo));  // (max/min)^s in (0, 1]
  return lo * std::exp(std::log(0.5 * (1.0 + ratio_pow)) / sv);
}

inline double variance(const DensityMatrix& rho, const HermitianOperator& a) {
  if (rho.dim() != a.dim())
    throw std::invalid_argument("variance: state dimension " + std::to_string(rho.dim()) +
                                " does not match observable dimension " +
                                std::to_string(a.dim()));
  const Matrix ra = rho.matrix() * a.matrix();
  const double second_moment = (ra * a.matrix()).trace().real();
  const double mean = ra.trace().real();
  return second_moment - mean * mean;
}

inline double pure_state_variance(const Vector& psi, const HermitianOperator& a) {
  if (psi.size() != a.dim())
    throw std::invalid_argument("pure_state_variance: dimension mismatch");
  const Vector apsi = a.matrix() * psi;
  const double mean = psi.dot(apsi).real();
  return apsi.squaredNorm() - mean * mean;
}

// I^s from a precomputed spectral decomposition of the state:
//   I^s = sum_{l != l'} (lambda_l - f_s(lambda_l, lambda_l')) |<l|A|l'>|^2.
// Eigenvalues at or below the zero cutoff are clamped to zero before use.
inline double skew_information_from_spectrum(const SpectralDecomposition& spec,
                                             const HermitianOperator& a, const SParameter& s) {
  const Eigen::Index n = spec.eigenvalues.size();
  if (a.dim() != n)
    throw std::invalid_argument("skew_information_from_spectrum: dimension mismatch");
  const Matrix in_eigenbasis = spec.eigenvectors.adjoint() * a.matrix() * spec.eigenvectors;
  std::vector<double> lam(static_cast<size_t>(n));
  for (Eigen::Index l = 0; l < n; ++l)
    lam[static_cast<size_t>(l)] = spec.eigenvalues(l) <= kEigZeroCutoff ? 0.0 : spec.eigenvalues(l);
  double acc = 0.0;
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index lp = 0; lp < n; ++lp) {
      if (l == lp) continue;
      const double weight = std::norm(in_eigenbasis(l, lp));
      const double la = lam[static_cast<size_t>(l)];
      const double lb = lam[static_cast<size_t>(lp)];
      acc += (la - generalized_mean(s, la, lb)) * weight;
    }
  return acc;
}

inline double skew_information(const DensityMatrix& rho, const HermitianOperator& a,
                               const SParameter& s) {
  if (rho.dim() != a.dim())
    throw std::invalid_argument("skew_information: state dimension " +
                                std::to_string(rho.dim()) +
                                " does not match observable dimension " + std::to_string(a.dim()));
  return skew_information_from_spectrum(spectral_decomposition(rho), a, s);
}

// Spectrum of a pure state mixed with white noise: one eigenvalue lambda_top
// on the pure state, lambda_rest with the given multiplicity on its
// orthocomplement. pure_variance carries the variance of the observable in
// the pure state, the only observable-dependent quantity that survives.
struct IsotropicFamilySpectrum {
  double lambda_top = 1.0;
  double lambda_rest = 0.0;
  long multiplicity = 0;
  double pure_variance = 0.0;
};

// Closed form of I^s for such a spectrum:
//   I^s = (lambda_top + lambda_rest - 2 f_s(lambda_top, lambda_rest)) * pure_variance.
// Cross terms within the degenerate orthocomplement vanish and every
// top-to-rest coherence weight sums to the pure-state variance.
inline double isotropic_closed_form(const IsotropicFamilySpectrum& spec, const SParameter& s) {
  if (spec.lambda_top < spec.lambda_rest || spec.lambda_rest < 0.0)
    throw std::invalid_argument("isotropic_closed_form: spectrum must satisfy top >= rest >= 0");
  const double total = spec.lambda_top + static_cast<double>(spec.multiplicity) * spec.lambda_rest;
  if (std::abs(total - 1.0) > kTraceTol)
    throw std::invalid_argument("isotropic_closed_form: spectrum sums to " + num_str(total) +
                                " instead of 1");
  const double lt = spec.lambda_top <= kEigZeroCutoff ? 0.0 : spec.lambda_top;
  const double lr = spec.lambda_rest <= kEigZeroCutoff ? 0.0 : spec.lambda_rest;
  return (lt + lr - 2.0 * generalized_mean(s, lt, lr)) * spec.pure_variance;
}

}  // namespace mumsi
