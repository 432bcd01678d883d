// states.hpp
// Reference multiqubit pure states (GHZ, W, chains of Bell pairs, and the
// three six-qubit block-product states used in the worked examples), plus
// isotropic white-noise mixtures of an arbitrary pure state.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "linalg.hpp"
#include "skew.hpp"

namespace mumsi {

// A unit-norm amplitude vector in the computational basis (site 0 is the most
// significant digit of the index).
class PureState {
 public:
  explicit PureState(Vector amplitudes) : amp_(std::move(amplitudes)) {
    check_dim_cap(amp_.size(), "PureState");
    const double dev = std::abs(amp_.norm() - 1.0);
    if (dev > kNormTol)
      throw std::invalid_argument("PureState: | ||psi|| - 1 | = " + num_str(dev) + " exceeds " +
                                  num_str(kNormTol));
  }

  static PureState normalized(Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (norm <= 0.0) throw std::invalid_argument("PureState: cannot normalize the zero vector");
    return PureState(amplitudes / norm);
  }

  int dim() const { return static_cast<int>(amp_.size()); }
  const Vector& amplitudes() const { return amp_; }

  DensityMatrix projector() const { return DensityMatrix(amp_ * amp_.adjoint()); }

 private:
  Vector amp_;
};

inline Vector kron_vec(const Vector& a, const Vector& b) {
  check_dim_cap(a.size() * b.size(), "kron_vec");
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  return out;
}

// (|0...0> + |1...1>) / sqrt(2)
inline PureState ghz(int num_qubits) {
  if (num_qubits < 2) throw std::invalid_argument("ghz: need at least 2 qubits");
  const long dim = ipow(2, num_qubits);
  check_dim_cap(dim, "ghz");
  Vector amp = Vector::Zero(dim);
  const double c = 1.0 / std::sqrt(2.0);
  amp(0) = c;
  amp(dim - 1) = c;
  return PureState(std::move(amp));
}

// Equal superposition of the single-excitation basis states.
inline PureState w_state(int num_qubits) {
  if (num_qubits < 2) throw std::invalid_argument("w_state: need at least 2 qubits");
  const long dim = ipow(2, num_qubits);
  check_dim_cap(dim, "w_state");
  Vector amp = Vector::Zero(dim);
  const double c = 1.0 / std::sqrt(static_cast<double>(num_qubits));
  for (int site = 0; site < num_qubits; ++site) amp(1L << (num_qubits - 1 - site)) = c;
  return PureState(std::move(amp));
}

// Product of Bell pairs (|00> + |11>)/sqrt(2) on sites (0,1), (2,3), ...
inline PureState bell_pairs(int num_qubits) {
  if (num_qubits < 2 || num_qubits % 2 != 0)
    throw std::invalid_argument("bell_pairs: need a positive even number of qubits");
  Vector bell(4);
  bell << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  Vector amp = bell;
  for (int pair = 1; pair < num_qubits / 2; ++pair) amp = kron_vec(amp, bell);
  return PureState(std::move(amp));
}

// The three six-qubit block-product states of the worked depth example:
//   a: three Bell pairs            (largest block 2)
//   b: two three-qubit GHZ blocks  (largest block 3)
//   c: GHZ on 4 qubits x GHZ on 2  (largest block 4)
struct DepthExampleStates {
  PureState a;
  PureState b;
  PureState c;
};

inline DepthExampleStates example37_states() {
  return DepthExampleStates{
      bell_pairs(6),
      PureState(kron_vec(ghz(3).amplitudes(), ghz(3).amplitudes())),
      PureState(kron_vec(ghz(4).amplitudes(), ghz(2).amplitudes())),
  };
}

// A named pure state whose white-noise mixtures form an isotropic family
//   rho(p) = p |psi><psi| + (1 - p) I / D.
struct StateFamily {
  PureState base;
  std::string description;

  long total_dim() const { return base.dim(); }
};

inline DensityMatrix isotropic_mixture(const StateFamily& family, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("isotropic_mixture: p = " + num_str(p) + " must lie in [0, 1]");
  const long dim = family.total_dim();
  const Vector& psi = family.base.amplitudes();
  Matrix m = p * (psi * psi.adjoint());
  m += ((1.0 - p) / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
  return DensityMatrix(std::move(m));
}

// Exact spectrum of the isotropic mixture: p + (1-p)/D once, (1-p)/D with
// multiplicity D-1. pure_variance is left to the caller.
inline IsotropicFamilySpectrum spectrum_of(const StateFamily& family, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("spectrum_of: p = " + num_str(p) + " must lie in [0, 1]");
  const double dim = static_cast<double>(family.total_dim());
  IsotropicFamilySpectrum spec;
  spec.lambda_top = p + (1.0 - p) / dim;
  spec.lambda_rest = (1.0 - p) / dim;
  spec.multiplicity = family.total_dim() - 1;
  spec.pure_variance = 0.0;
  return spec;
}

// Builds a family from a textual specifier: "ghz:N", "w:N", "bellpairs:N"
// (N even), or "example37:a|b|c".
inline StateFamily parse_state_spec(const std::string& spec) {
  const size_t colon = spec.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= spec.size())
    throw std::invalid_argument("parse_state_spec: '" + spec +
                                "' (expected ghz:N, w:N, bellpairs:N, or example37:a|b|c)");
  const std::string head = spec.substr(0, colon);
  const std::string tail = spec.substr(colon + 1);
  if (head == "example37") {
    const DepthExampleStates states = example37_states();
    if (tail == "a") return StateFamily{states.a, spec};
    if (tail == "b") return StateFamily{states.b, spec};
    if (tail == "c") return StateFamily{states.c, spec};
    throw std::invalid_argument("parse_state_spec: example37 variant must be a, b, or c");
  }
  int n = 0;
  try {
    size_t pos = 0;
    n = std::stoi(tail, &pos);
    if (pos != tail.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_state_spec: cannot parse qubit count in '" + spec + "'");
  }
  if (head == "ghz") return StateFamily{ghz(n), spec};
  if (head == "w") return StateFamily{w_state(n), spec};
  if (head == "bellpairs") return StateFamily{bell_pairs(n), spec};
  throw std::invalid_argument("parse_state_spec: unknown family '" + head + "'");
}

}  // namespace mumsi
