// criteria.hpp
// Closed-form detection bounds for k-separability and k-producibility under a
// complete MUM set, verdicts with an explicit numerical tolerance, and the
// certified entanglement depth of a state.
//
// Semantics: a k-separability violation certifies that the state is
// k-nonseparable; a k-producibility violation certifies that it contains
// (k+1)-partite entanglement. The smallest non-violated producibility level
// is a certified lower bound on the entanglement depth.

#pragma once

#include <stdexcept>
#include <string>

#include "collective.hpp"
#include "linalg.hpp"
#include "mum.hpp"
#include "skew.hpp"

namespace mumsi {

enum class CriterionKind { KSeparability, KProducibility };

inline const char* criterion_kind_label(CriterionKind kind) {
  return kind == CriterionKind::KSeparability ? "ksep" : "kprod";
}

inline CriterionKind parse_criterion_kind(const std::string& text) {
  if (text == "ksep") return CriterionKind::KSeparability;
  if (text == "kprod") return CriterionKind::KProducibility;
  throw std::invalid_argument("criterion kind must be 'ksep' or 'kprod', got '" + text + "'");
}

// Verdict tolerance: a violation must clear the bound by more than this.
inline constexpr double kVerdictTol = 1e-9;

namespace detail {

inline void check_kappa_range(int d, double kappa, const char* where) {
  if (!(kappa > 1.0 / d) || kappa > 1.0 + 1e-12)
    throw std::invalid_argument(std::string(where) + ": kappa = " + num_str(kappa) +
                                " must lie in (1/d, 1]");
}

}  // namespace detail

// Largest value of the skew-information sum attainable by k-separable states:
//   N (d kappa - 1) + [(N-k+1)^2 + k - 1] (kappa - 1/d).
// The quadratic coefficient is the maximum of sum_i #(Gamma_i)^2 over
// k-partitions, attained at part sizes (N-k+1, 1, ..., 1).
inline double ksep_bound(int N, int d, double kappa, int k) {
  if (N < 2) throw std::invalid_argument("ksep_bound: N must be >= 2");
  if (d < 2) throw std::invalid_argument("ksep_bound: d must be >= 2");
  if (k < 2 || k > N)
    throw std::invalid_argument("ksep_bound: k = " + std::to_string(k) +
                                " must satisfy 2 <= k <= N");
  detail::check_kappa_range(d, kappa, "ksep_bound");
  const double big = static_cast<double>(N - k + 1);
  return N * (d * kappa - 1.0) + (big * big + (k - 1)) * (kappa - 1.0 / d);
}

// Largest value attainable by k-producible states. With p = floor(N/k), the
// maximum of sum_i #(Gamma_i)^2 over partitions with parts of size <= k is
// p k^2 + (N - pk)^2, attained at (k, ..., k, N-pk):
//   N k (kappa - 1/d) + N (d kappa - 1)                       if N = p k,
//   (N^2 + p^2 k^2 + p k^2 - 2 p k N)(kappa - 1/d) + N (d kappa - 1)  otherwise.
inline double kprod_bound(int N, int d, double kappa, int k) {
  if (N < 2) throw std::invalid_argument("kprod_bound: N must be >= 2");
  if (d < 2) throw std::invalid_argument("kprod_bound: d must be >= 2");
  if (k < 1 || k > N)
    throw std::invalid_argument("kprod_bound: k = " + std::to_string(k) +
                                " must satisfy 1 <= k <= N");
  detail::check_kappa_range(d, kappa, "kprod_bound");
  const double nn = static_cast<double>(N);
  const double kk = static_cast<double>(k);
  const int p = N / k;
  const double common = nn * (d * kappa - 1.0);
  if (p * k == N) return nn * kk * (kappa - 1.0 / d) + common;
  const double pp = static_cast<double>(p);
  return (nn * nn + pp * pp * kk * kk + pp * kk * kk - 2.0 * pp * kk * nn) * (kappa - 1.0 / d) +
         common;
}

inline double criterion_bound(CriterionKind kind, int N, int d, double kappa, int k) {
  return kind == CriterionKind::KSeparability ? ksep_bound(N, d, kappa, k)
                                              : kprod_bound(N, d, kappa, k);
}

struct CriterionReport {
  CriterionKind kind = CriterionKind::KSeparability;
  int num_sites = 0;
  int d = 0;
  double t = 0.0;
  double kappa = 0.0;
  SParameter s = SParameter::zero();
  int k = 0;
  double lhs = 0.0;
  double bound = 0.0;
  bool violated = false;
  double margin = 0.0;  // lhs - bound

  // A positive margin inside the verdict tolerance: too close to call.
  bool inconclusive_at_tolerance() const { return !violated && margin > 0.0; }

  std::string verdict() const {
    if (violated) return "violated";
    if (inconclusive_at_tolerance()) return "inconclusive-at-tolerance";
    return "not-violated";
  }

  std::string certificate() const {
    if (!violated) return "none";
    if (kind == CriterionKind::KSeparability)
      return std::to_string(k) + "-nonseparable";
    return "contains " + std::to_string(k + 1) + "-partite entanglement";
  }
};

inline CriterionReport report_from_lhs(double lhs, CriterionKind kind, int N, int d, double t,
                                       double kappa, const SParameter& s, int k) {
  CriterionReport r;
  r.kind = kind;
  r.num_sites = N;
  r.d = d;
  r.t = t;
  r.kappa = kappa;
  r.s = s;
  r.k = k;
  r.lhs = lhs;
  r.bound = criterion_bound(kind, N, d, kappa, k);
  r.margin = r.lhs - r.bound;
  r.violated = r.margin > kVerdictTol;
  return r;
}

inline CriterionReport evaluate_criterion(const DensityMatrix& rho, const MumSet& mum,
                                          const SParameter& s, int k, CriterionKind kind) {
  const int num_sites = sites_for_dim(rho.dim(), mum.d, "evaluate_criterion");
  const double lhs = lhs_sum(rho, mum, s, num_sites);
  return report_from_lhs(lhs, kind, num_sites, mum.d, mum.t, mum.kappa, s, k);
}

// Smallest k whose k-producibility bound is respected. Every violated level
// k' < k certifies (k'+1)-partite entanglement, so the return value is a
// certified lower bound on the entanglement depth. Returns 1 when no level
// is violated; always terminates at k = N, where the bound is the subset cap
// of the full system.
inline int depth_from_lhs(double lhs, int N, int d, double kappa) {
  for (int k = 1; k <= N; ++k)
    if (lhs <= kprod_bound(N, d, kappa, k) + kVerdictTol) return k;
  throw std::runtime_error("depth_from_lhs: lhs " + num_str(lhs) +
                           " exceeds every producibility bound up to k = N; "
                           "the subset cap is violated");
}

inline int certified_depth(const DensityMatrix& rho, const MumSet& mum, const SParameter& s) {
  const int num_sites = sites_for_dim(rho.dim(), mum.d, "certified_depth");
  const double lhs = lhs_sum(rho, mum, s, num_sites);
  return depth_from_lhs(lhs, num_sites, mum.d, mum.kappa);
}

}  // namespace mumsi
