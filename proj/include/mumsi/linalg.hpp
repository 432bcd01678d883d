// linalg.hpp
// Dense complex linear algebra for multipartite quantum states: Hermitian
// operators, density matrices, spectral decomposition, Kronecker products,
// single-site embeddings and the partial trace.
//
// Conventions: all matrices are dense, dimensions are capped at 4096, and
// site 0 is the most significant digit of a computational-basis index.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mumsi {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Shared numerical tolerances.
inline constexpr double kHermitianTol = 1e-12;    // |H - H^dag|_max on construction
inline constexpr double kTraceTol = 1e-10;        // |tr(rho) - 1|
inline constexpr double kPsdTol = 1e-10;          // admissible negative eigenvalue
inline constexpr double kEigZeroCutoff = 1e-12;   // eigenvalues below this count as zero
inline constexpr double kNormTol = 1e-12;         // |  ||psi|| - 1 |
inline constexpr int kMaxDenseDim = 4096;         // dense storage cap

inline std::string num_str(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline void check_dim_cap(long dim, const char* where) {
  if (dim < 1) throw std::invalid_argument(std::string(where) + ": dimension must be positive");
  if (dim > kMaxDenseDim)
    throw std::invalid_argument(std::string(where) + ": dimension " + std::to_string(dim) +
                                " exceeds the dense storage cap " + std::to_string(kMaxDenseDim));
}

// base^exp with overflow guard; used for composite-system dimensions.
inline long ipow(int base, int exp) {
  if (base < 1 || exp < 0) throw std::invalid_argument("ipow: invalid base or exponent");
  long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (1L << 40)) throw std::invalid_argument("ipow: dimension overflow");
    r *= base;
  }
  return r;
}

// Exact logarithm: number of sites n with local_dim^n == dim.
inline int sites_for_dim(long dim, int local_dim, const char* where) {
  if (local_dim < 2) throw std::invalid_argument(std::string(where) + ": local dimension must be >= 2");
  int n = 0;
  long acc = 1;
  while (acc < dim) {
    acc *= local_dim;
    ++n;
  }
  if (acc != dim)
    throw std::invalid_argument(std::string(where) + ": dimension " + std::to_string(dim) +
                                " is not a power of the local dimension " + std::to_string(local_dim));
  return n;
}

// A dense operator that is self-adjoint within kHermitianTol.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols())
      throw std::invalid_argument("HermitianOperator: matrix must be square");
    check_dim_cap(mat_.rows(), "HermitianOperator");
    const double dev = max_abs(mat_ - mat_.adjoint());
    if (dev > kHermitianTol)
      throw std::invalid_argument("HermitianOperator: |H - H^dag|_max = " + num_str(dev) +
                                  " exceeds " + num_str(kHermitianTol));
  }

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }

 private:
  Matrix mat_;
};

// A Hermitian operator with unit trace. Positivity is enforced wherever the
// spectrum is computed (see spectral_decomposition).
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m) : op_(std::move(m)) {
    const double dev = std::abs(op_.matrix().trace() - Complex(1.0, 0.0));
    if (dev > kTraceTol)
      throw std::invalid_argument("DensityMatrix: |tr(rho) - 1| = " + num_str(dev) +
                                  " exceeds " + num_str(kTraceTol));
  }

  int dim() const { return op_.dim(); }
  const Matrix& matrix() const { return op_.matrix(); }
  const HermitianOperator& as_hermitian() const { return op_; }

 private:
  HermitianOperator op_;
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  check_dim_cap(a.rows() * b.rows(), "kron");
  check_dim_cap(a.cols() * b.cols(), "kron");
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Identity-padded single-site operator: I ⊗ ... ⊗ op ⊗ ... ⊗ I.
inline HermitianOperator embed_at_site(const HermitianOperator& op, int site, int num_sites,
                                       int local_dim) {
  if (site < 0 || site >= num_sites)
    throw std::invalid_argument("embed_at_site: site " + std::to_string(site) +
                                " out of range for " + std::to_string(num_sites) + " sites");
  if (op.dim() != local_dim)
    throw std::invalid_argument("embed_at_site: operator dimension " + std::to_string(op.dim()) +
                                " does not match local dimension " + std::to_string(local_dim));
  const long left = ipow(local_dim, site);
  const long right = ipow(local_dim, num_sites - 1 - site);
  check_dim_cap(left * local_dim * right, "embed_at_site");
  Matrix out = kron(kron(Matrix::Identity(left, left), op.matrix()),
                    Matrix::Identity(right, right));
  return HermitianOperator(std::move(out));
}

// Eigenvalues in descending order; eigenvectors as matching unitary columns.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

// Deterministic self-adjoint eigendecomposition (Householder tridiagonalization
// + implicit-shift QL as implemented by Eigen, capped at 30 sweeps per
// eigenvalue). The reconstruction residual is checked against tol.
inline SpectralDecomposition hermitian_eigendecomposition(const HermitianOperator& h,
                                                          double tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    double resid = -1.0;
    try {
      const Matrix recon = solver.eigenvectors() * solver.eigenvalues().asDiagonal() *
                           solver.eigenvectors().adjoint();
      resid = max_abs(recon - h.matrix());
    } catch (...) {
    }
    throw std::runtime_error(
        "hermitian_eigendecomposition: iteration cap reached without convergence "
        "(reconstruction residual " +
        num_str(resid) + ")");
  }
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  const Matrix recon =
      out.eigenvectors * out.eigenvalues.asDiagonal() * out.eigenvectors.adjoint();
  const double resid = max_abs(recon - h.matrix());
  if (resid > tol)
    throw std::runtime_error("hermitian_eigendecomposition: reconstruction residual " +
                             num_str(resid) + " exceeds " + num_str(tol));
  return out;
}

// Decomposition of a state; rejects spectra below the PSD tolerance.
inline SpectralDecomposition spectral_decomposition(const DensityMatrix& rho, double tol = 1e-9) {
  SpectralDecomposition spec = hermitian_eigendecomposition(rho.as_hermitian(), tol);
  const double min_eig = spec.eigenvalues(spec.eigenvalues.size() - 1);
  if (min_eig < -kPsdTol)
    throw std::invalid_argument("spectral_decomposition: state is not positive semidefinite, "
                                "min eigenvalue = " +
                                num_str(min_eig));
  return spec;
}

// Reduced state on the kept sites (ascending site order in the result index).
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep,
                                   int num_sites, int local_dim) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw std::invalid_argument("partial_trace: keep sites must be distinct");
  if (kept.front() < 0 || kept.back() >= num_sites)
    throw std::invalid_argument("partial_trace: keep site out of range");
  const long dim = ipow(local_dim, num_sites);
  if (rho.dim() != dim)
    throw std::invalid_argument("partial_trace: state dimension " + std::to_string(rho.dim()) +
                                " does not match " + std::to_string(dim));

  std::vector<int> traced;
  for (int s = 0; s < num_sites; ++s)
    if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);

  // place value of each site's digit in the full index
  std::vector<long> place(num_sites);
  for (int s = 0; s < num_sites; ++s) place[s] = ipow(local_dim, num_sites - 1 - s);

  auto offsets = [&](const std::vector<int>& sites) {
    const long n = ipow(local_dim, static_cast<int>(sites.size()));
    std::vector<long> off(n, 0);
    for (long idx = 0; idx < n; ++idx) {
      long rem = idx;
      for (int j = static_cast<int>(sites.size()) - 1; j >= 0; --j) {
        off[idx] += (rem % local_dim) * place[sites[j]];
        rem /= local_dim;
      }
    }
    return off;
  };
  const std::vector<long> keep_off = offsets(kept);
  const std::vector<long> traced_off = offsets(traced);

  const long dk = static_cast<long>(keep_off.size());
  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(dk, dk);
  for (long i = 0; i < dk; ++i)
    for (long j = 0; j < dk; ++j) {
      Complex acc(0.0, 0.0);
      for (long t : traced_off) acc += m(keep_off[i] + t, keep_off[j] + t);
      out(i, j) = acc;
    }
  return DensityMatrix(std::move(out));
}

}  // namespace mumsi
