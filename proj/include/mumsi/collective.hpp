// collective.hpp
// Collective MUM observables P[b][n] summed over a site subset, the
// skew-information sums they enter on the left-hand side of the detection
// inequalities, and two operator-level sanity checks on those sums.

#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "mum.hpp"
#include "skew.hpp"
#include "states.hpp"

namespace mumsi {

// A single-site effect replicated over a site subset: sum_{i in Gamma} of the
// effect embedded at site i.
struct CollectiveObservable {
  int num_sites = 0;
  int local_dim = 0;
  std::vector<int> site_subset;
  int b = 0;  // measurement index
  int n = 0;  // outcome index
  HermitianOperator local_effect;

  HermitianOperator materialize() const {
    if (site_subset.empty())
      throw std::invalid_argument("CollectiveObservable: site subset must be nonempty");
    std::vector<int> sorted = site_subset;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("CollectiveObservable: sites must be distinct");
    if (sorted.front() < 0 || sorted.back() >= num_sites)
      throw std::invalid_argument("CollectiveObservable: site out of range");
    const long dim = ipow(local_dim, num_sites);
    check_dim_cap(dim, "CollectiveObservable");
    Matrix acc = Matrix::Zero(dim, dim);
    for (int site : sorted)
      acc += embed_at_site(local_effect, site, num_sites, local_dim).matrix();
    return HermitianOperator(std::move(acc));
  }
};

inline HermitianOperator collective_operator(const MumSet& mum, const std::vector<int>& gamma,
                                             int b, int n, int num_sites) {
  if (b < 0 || b > mum.d || n < 0 || n >= mum.d)
    throw std::invalid_argument("collective_operator: measurement index (b=" + std::to_string(b) +
                                ", n=" + std::to_string(n) + ") out of range for d=" +
                                std::to_string(mum.d));
  CollectiveObservable obs{num_sites, mum.d, gamma, b, n, mum.effects[b][n]};
  return obs.materialize();
}

// op |psi> with op acting on one site only, without materializing the full
// matrix. Site 0 is the most significant digit of the basis index.
inline Vector apply_at_site(const Matrix& local_op, int site, int num_sites, int local_dim,
                            const Vector& state) {
  if (local_op.rows() != local_dim || local_op.cols() != local_dim)
    throw std::invalid_argument("apply_at_site: operator does not match the local dimension");
  if (site < 0 || site >= num_sites)
    throw std::invalid_argument("apply_at_site: site out of range");
  const long dim = ipow(local_dim, num_sites);
  if (state.size() != dim)
    throw std::invalid_argument("apply_at_site: state dimension mismatch");
  const long right = ipow(local_dim, num_sites - 1 - site);
  const long block = right * local_dim;
  Vector out(dim);
  for (long base = 0; base < dim; base += block)
    for (long r = 0; r < right; ++r)
      for (int i = 0; i < local_dim; ++i) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < local_dim; ++j)
          acc += local_op(i, j) * state(base + static_cast<long>(j) * right + r);
        out(base + static_cast<long>(i) * right + r) = acc;
      }
  return out;
}

// Variance of sum_{i} embed(local_effect, i) in a pure state, matrix-free.
inline double collective_pure_variance(const Vector& psi, const Matrix& local_effect,
                                       int num_sites, int local_dim) {
  Vector opsi = Vector::Zero(psi.size());
  for (int site = 0; site < num_sites; ++site)
    opsi += apply_at_site(local_effect, site, num_sites, local_dim, psi);
  const double mean = psi.dot(opsi).real();
  return opsi.squaredNorm() - mean * mean;
}

// Sum over all (d+1)*d effect indices of the collective pure-state variances.
inline double collective_variance_sum(const PureState& psi, const MumSet& mum, int num_sites) {
  if (psi.dim() != ipow(mum.d, num_sites))
    throw std::invalid_argument("collective_variance_sum: state dimension mismatch");
  double acc = 0.0;
  for (int b = 0; b <= mum.d; ++b)
    for (int n = 0; n < mum.d; ++n)
      acc += collective_pure_variance(psi.amplitudes(), mum.effects[b][n].matrix(), num_sites,
                                      mum.d);
  return acc;
}

// Left-hand side of the detection inequalities on the full system:
//   sum_{b,n} I^s(rho, collective P[b][n]).
// The spectral decomposition of rho is computed once and shared by all
// (d+1)*d terms; the (b, n) summation order is lexicographic.
inline double lhs_sum(const DensityMatrix& rho, const MumSet& mum, const SParameter& s,
                      int num_sites) {
  if (rho.dim() != ipow(mum.d, num_sites))
    throw std::invalid_argument("lhs_sum: state dimension " + std::to_string(rho.dim()) +
                                " does not match d^N = " +
                                std::to_string(ipow(mum.d, num_sites)));
  const SpectralDecomposition spec = spectral_decomposition(rho);
  std::vector<int> gamma(static_cast<size_t>(num_sites));
  std::iota(gamma.begin(), gamma.end(), 0);
  double acc = 0.0;
  for (int b = 0; b <= mum.d; ++b)
    for (int n = 0; n < mum.d; ++n) {
      const HermitianOperator op = collective_operator(mum, gamma, b, n, num_sites);
      acc += skew_information_from_spectrum(spec, op, s);
    }
  return acc;
}

// Same sum for an isotropic family rho(p) = p |psi><psi| + (1-p) I / D,
// through the rank-1-plus-white-noise closed form. Only the pure-state
// variance of each collective effect is needed, so no d^N x d^N matrix is
// ever formed and no generic eigensolve runs. Agrees with lhs_sum to 1e-8.
inline double lhs_sum_isotropic(const StateFamily& family, double p, const MumSet& mum,
                                const SParameter& s) {
  const int num_sites = sites_for_dim(family.total_dim(), mum.d, "lhs_sum_isotropic");
  IsotropicFamilySpectrum spec = spectrum_of(family, p);
  const Vector& psi = family.base.amplitudes();
  double acc = 0.0;
  for (int b = 0; b <= mum.d; ++b)
    for (int n = 0; n < mum.d; ++n) {
      spec.pure_variance =
          collective_pure_variance(psi, mum.effects[b][n].matrix(), num_sites, mum.d);
      acc += isotropic_closed_form(spec, s);
    }
  return acc;
}

// Operator-level check on two sites: the largest eigenvalue of
//   sum_{b,n} P[b][n] (x) P[b][n]
// must not exceed 1 + kappa. Returns the eigenvalue and the bound; throws if
// the inequality fails beyond kPsdTol.
struct CrossTermCheck {
  double max_eigenvalue = 0.0;
  double bound = 0.0;
};

inline CrossTermCheck verify_prop31(const MumSet& mum) {
  const int d = mum.d;
  Matrix acc = Matrix::Zero(static_cast<long>(d) * d, static_cast<long>(d) * d);
  for (int b = 0; b <= d; ++b)
    for (int n = 0; n < d; ++n) {
      const Matrix& p = mum.effects[b][n].matrix();
      acc += kron(p, p);
    }
  Eigen::SelfAdjointEigenSolver<Matrix> es(acc, Eigen::EigenvaluesOnly);
  CrossTermCheck out;
  out.max_eigenvalue = es.eigenvalues()(es.eigenvalues().size() - 1);
  out.bound = 1.0 + mum.kappa;
  if (out.max_eigenvalue > out.bound + kPsdTol)
    throw std::runtime_error("verify_prop31: largest eigenvalue " + num_str(out.max_eigenvalue) +
                             " exceeds 1 + kappa = " + num_str(out.bound));
  return out;
}

// Subset-level check: the skew-information sum of a state on #Gamma sites is
// capped by #Gamma^2 (kappa - 1/d) + #Gamma (d kappa - 1). Returns lhs and
// bound; throws if the cap fails beyond 1e-9.
struct SubsetSumCheck {
  double lhs = 0.0;
  double bound = 0.0;
};

inline SubsetSumCheck verify_prop32(const DensityMatrix& rho_gamma, const MumSet& mum,
                                    int gamma_size, const SParameter& s) {
  if (rho_gamma.dim() != ipow(mum.d, gamma_size))
    throw std::invalid_argument("verify_prop32: state dimension does not match d^gamma_size");
  SubsetSumCheck out;
  out.lhs = lhs_sum(rho_gamma, mum, s, gamma_size);
  const double g = static_cast<double>(gamma_size);
  out.bound = g * g * (mum.kappa - 1.0 / mum.d) + g * (mum.d * mum.kappa - 1.0);
  if (out.lhs > out.bound + 1e-9)
    throw std::runtime_error("verify_prop32: lhs " + num_str(out.lhs) + " exceeds bound " +
                             num_str(out.bound));
  return out;
}

}  // namespace mumsi
