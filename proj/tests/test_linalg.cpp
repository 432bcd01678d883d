#include <catch2/catch_amalgamated.hpp>

#include <mumsi/linalg.hpp>

#include "test_helpers.hpp"

using namespace mumsi;

TEST_CASE("kron reproduces known products", "[linalg]") {
  Matrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 5, 6, 7;
  const Matrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  CHECK(k(0, 1) == Complex(5, 0));    // a00 * b01
  CHECK(k(2, 1) == Complex(15, 0));   // a10 * b01
  CHECK(k(3, 3) == Complex(28, 0));   // a11 * b11
  const Matrix id2 = Matrix::Identity(2, 2);
  CHECK(max_abs(kron(id2, id2) - Matrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("kron enforces the dense dimension cap", "[linalg]") {
  const Matrix big = Matrix::Identity(70, 70);
  REQUIRE_THROWS_AS(kron(big, big), std::invalid_argument);  // 4900 > 4096
}

TEST_CASE("HermitianOperator validates input", "[linalg]") {
  Matrix bad(2, 2);
  bad << 0, 1, 0, 0;
  REQUIRE_THROWS_AS(HermitianOperator(bad), std::invalid_argument);
  REQUIRE_NOTHROW(HermitianOperator(testutil::pauli_y()));
  Matrix rect(2, 3);
  rect.setZero();
  REQUIRE_THROWS_AS(HermitianOperator(rect), std::invalid_argument);
}

TEST_CASE("DensityMatrix validates trace", "[linalg]") {
  REQUIRE_THROWS_AS(DensityMatrix(Matrix::Identity(2, 2)), std::invalid_argument);
  REQUIRE_NOTHROW(DensityMatrix(Matrix(0.5 * Matrix::Identity(2, 2))));
}

TEST_CASE("embed_at_site places a local operator", "[linalg]") {
  const HermitianOperator sz{testutil::pauli_z()};
  const Matrix id2 = Matrix::Identity(2, 2);
  CHECK(max_abs(embed_at_site(sz, 0, 2, 2).matrix() - kron(sz.matrix(), id2)) < 1e-15);
  CHECK(max_abs(embed_at_site(sz, 1, 2, 2).matrix() - kron(id2, sz.matrix())) < 1e-15);
  CHECK(max_abs(embed_at_site(sz, 1, 3, 2).matrix() - kron(kron(id2, sz.matrix()), id2)) <
        1e-15);
  REQUIRE_THROWS_AS(embed_at_site(sz, 3, 3, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(embed_at_site(sz, -1, 3, 2), std::invalid_argument);
}

TEST_CASE("hermitian eigendecomposition is descending, orthonormal, and faithful", "[linalg]") {
  std::mt19937 rng(811u);
  for (int dim : {2, 3, 5, 8, 16, 64}) {
    const Matrix h = testutil::random_hermitian(dim, rng);
    const SpectralDecomposition spec = hermitian_eigendecomposition(HermitianOperator(h));
    for (int i = 0; i + 1 < dim; ++i) REQUIRE(spec.eigenvalues(i) >= spec.eigenvalues(i + 1));
    const Matrix gram = spec.eigenvectors.adjoint() * spec.eigenvectors;
    CHECK(max_abs(gram - Matrix::Identity(dim, dim)) < 1e-10);
    const Matrix recon =
        spec.eigenvectors * spec.eigenvalues.asDiagonal() * spec.eigenvectors.adjoint();
    CHECK(max_abs(recon - h) < 1e-9);
  }
}

TEST_CASE("eigendecomposition is deterministic", "[linalg]") {
  std::mt19937 rng(17u);
  const Matrix h = testutil::random_hermitian(12, rng);
  const SpectralDecomposition a = hermitian_eigendecomposition(HermitianOperator(h));
  const SpectralDecomposition b = hermitian_eigendecomposition(HermitianOperator(h));
  CHECK(max_abs(a.eigenvectors - b.eigenvectors) == 0.0);
  CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spectral_decomposition rejects negative density matrices", "[linalg]") {
  Matrix m(2, 2);
  m << 1.5, 0, 0, -0.5;  // Hermitian, unit trace, not positive
  REQUIRE_THROWS_AS(spectral_decomposition(DensityMatrix(m)), std::invalid_argument);
}

TEST_CASE("partial_trace factors product states", "[linalg]") {
  std::mt19937 rng(23u);
  const DensityMatrix a = testutil::random_density_matrix(2, rng);
  const DensityMatrix b = testutil::random_density_matrix(2, rng);
  const DensityMatrix ab(kron(a.matrix(), b.matrix()));
  CHECK(max_abs(partial_trace(ab, {0}, 2, 2).matrix() - a.matrix()) < 1e-12);
  CHECK(max_abs(partial_trace(ab, {1}, 2, 2).matrix() - b.matrix()) < 1e-12);
  CHECK(max_abs(partial_trace(ab, {0, 1}, 2, 2).matrix() - ab.matrix()) < 1e-15);

  const DensityMatrix qa = testutil::random_density_matrix(3, rng);
  const DensityMatrix qb = testutil::random_density_matrix(3, rng);
  const DensityMatrix qab(kron(qa.matrix(), qb.matrix()));
  CHECK(max_abs(partial_trace(qab, {1}, 2, 3).matrix() - qb.matrix()) < 1e-12);
}

TEST_CASE("partial_trace of a Bell state is maximally mixed", "[linalg]") {
  Vector bell(4);
  bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  const DensityMatrix rho(Matrix(bell * bell.adjoint()));
  const DensityMatrix red = partial_trace(rho, {0}, 2, 2);
  CHECK(max_abs(red.matrix() - Matrix(0.5 * Matrix::Identity(2, 2))) < 1e-12);
}

TEST_CASE("partial_trace output is a valid state", "[linalg]") {
  std::mt19937 rng(5u);
  const DensityMatrix rho = testutil::random_density_matrix(8, rng);
  const DensityMatrix red = partial_trace(rho, {0, 2}, 3, 2);
  REQUIRE(red.dim() == 4);
  // Constructor already enforced hermiticity and unit trace; positivity:
  REQUIRE_NOTHROW(spectral_decomposition(red));
}

TEST_CASE("partial_trace validates the kept-site list", "[linalg]") {
  std::mt19937 rng(7u);
  const DensityMatrix rho = testutil::random_density_matrix(8, rng);
  REQUIRE_THROWS_AS(partial_trace(rho, {}, 3, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(partial_trace(rho, {0, 0}, 3, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(partial_trace(rho, {3}, 3, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(partial_trace(rho, {0}, 2, 2), std::invalid_argument);  // dim mismatch
}

TEST_CASE("sites_for_dim demands an exact power", "[linalg]") {
  CHECK(sites_for_dim(8, 2, "dim") == 3);
  CHECK(sites_for_dim(2048, 2, "dim") == 11);
  CHECK(sites_for_dim(81, 3, "dim") == 4);
  REQUIRE_THROWS_AS(sites_for_dim(6, 2, "dim"), std::invalid_argument);
  REQUIRE_THROWS_AS(sites_for_dim(0, 2, "dim"), std::invalid_argument);
}

TEST_CASE("ipow computes small powers and rejects overflow", "[linalg]") {
  CHECK(ipow(2, 11) == 2048);
  CHECK(ipow(5, 3) == 125);
  REQUIRE_THROWS_AS(ipow(2, 63), std::invalid_argument);
}
