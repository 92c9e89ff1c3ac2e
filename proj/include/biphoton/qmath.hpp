// Dense complex vectors and matrices sized for the small Hilbert spaces used
// throughout (dims 2..6), plus the linear algebra the physics needs: tensor
// products, partial traces, the two-qubit symmetric projector, density-matrix
// validation, Hermitian eigendecomposition and nullspace extraction.
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace biphoton::qmath {

using Complex = std::complex<double>;

// Tolerance for structural checks (hermiticity, positivity, completeness).
inline constexpr double kStructuralTol = 1e-10;
// Tolerance for analytic equalities with exact expected values.
inline constexpr double kAnalyticTol = 1e-12;

struct ComplexVector {
  std::vector<Complex> e;

  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : e(dim) {}
  ComplexVector(std::initializer_list<Complex> init) : e(init) {}

  std::size_t dim() const { return e.size(); }
  Complex& operator[](std::size_t i) { return e[i]; }
  const Complex& operator[](std::size_t i) const { return e[i]; }

  double norm() const;
  ComplexVector normalized() const;  // throws on (near-)zero vector
};

struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> e;  // row-major

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), e(r * c) {}

  Complex& at(std::size_t r, std::size_t c) { return e[r * cols + c]; }
  const Complex& at(std::size_t r, std::size_t c) const {
    return e[r * cols + c];
  }

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t r, std::size_t c);

  ComplexMatrix adjoint() const;
  Complex trace() const;
};

ComplexVector operator+(const ComplexVector& a, const ComplexVector& b);
ComplexVector operator-(const ComplexVector& a, const ComplexVector& b);
ComplexVector operator*(Complex s, const ComplexVector& v);

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);

// <a|b>, conjugate-linear in the first argument.
Complex inner(const ComplexVector& a, const ComplexVector& b);
// |a><b|
ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b);

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_finite(const ComplexVector& v);
bool is_finite(const ComplexMatrix& m);

double frobenius_norm(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexVector& a, const ComplexVector& b);

enum class Subsystem { First, Second };

// Reduced 2x2 state of a 4x4 two-qubit operator; Subsystem names the qubit
// that is traced OUT. Product index convention: (i,k) -> 2*i + k.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem traced_out);

// Projector onto the symmetric subspace of two qubits (rank 3).
ComplexMatrix symmetric_projector();

struct DensityVerdict {
  bool hermitian = false;
  bool unit_trace = false;
  bool positive = false;
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  std::vector<std::string> violations;

  bool valid() const { return hermitian && unit_trace && positive; }
};

DensityVerdict validate_density(const ComplexMatrix& rho,
                                double tol = kStructuralTol);

// Ascending eigenvalues of a Hermitian matrix.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

// Columns spanning the kernel of m (singular values below tol * sigma_max).
ComplexMatrix nullspace(const ComplexMatrix& m, double tol = 1e-9);

}  // namespace biphoton::qmath

namespace biphoton {
// Density matrices are plain complex matrices; validity is checked with
// qmath::validate_density at construction and boundary points.
using DensityMatrix = qmath::ComplexMatrix;
}  // namespace biphoton
