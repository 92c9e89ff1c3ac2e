#include "biphoton/qmath.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace biphoton::qmath {

namespace {

using EigenMat =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenMat to_eigen(const ComplexMatrix& m) {
  return Eigen::Map<const EigenMat>(m.e.data(), static_cast<long>(m.rows),
                                    static_cast<long>(m.cols));
}

ComplexMatrix from_eigen(const EigenMat& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()),
                    static_cast<std::size_t>(m.cols()));
  Eigen::Map<EigenMat>(out.e.data(), m.rows(), m.cols()) = m;
  return out;
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("matrix shape mismatch");
}

void require_same_dim(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector dim mismatch");
}

}  // namespace

double ComplexVector::norm() const {
  double s = 0.0;
  for (const Complex& c : e) s += std::norm(c);
  return std::sqrt(s);
}

ComplexVector ComplexVector::normalized() const {
  const double n = norm();
  if (n < 1e-14) throw std::invalid_argument("cannot normalize zero vector");
  ComplexVector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = e[i] / n;
  return out;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t r, std::size_t c) {
  return ComplexMatrix(r, c);
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols, rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      out.at(c, r) = std::conj(at(r, c));
  return out;
}

Complex ComplexMatrix::trace() const {
  if (rows != cols) throw std::invalid_argument("trace of non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows; ++i) t += at(i, i);
  return t;
}

ComplexVector operator+(const ComplexVector& a, const ComplexVector& b) {
  require_same_dim(a, b);
  ComplexVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return out;
}

ComplexVector operator-(const ComplexVector& a, const ComplexVector& b) {
  require_same_dim(a, b);
  ComplexVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return out;
}

ComplexVector operator*(Complex s, const ComplexVector& v) {
  ComplexVector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = s * v[i];
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  ComplexMatrix out(a.rows, a.cols);
  for (std::size_t i = 0; i < a.e.size(); ++i) out.e[i] = a.e[i] + b.e[i];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  ComplexMatrix out(a.rows, a.cols);
  for (std::size_t i = 0; i < a.e.size(); ++i) out.e[i] = a.e[i] - b.e[i];
  return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
  ComplexMatrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.e.size(); ++i) out.e[i] = s * m.e[i];
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix product mismatch");
  ComplexMatrix out(a.rows, b.cols);
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Complex arc = a.at(r, k);
      if (arc == Complex{}) continue;
      for (std::size_t c = 0; c < b.cols; ++c)
        out.at(r, c) += arc * b.at(k, c);
    }
  return out;
}

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) {
  if (m.cols != v.dim())
    throw std::invalid_argument("matrix-vector product mismatch");
  ComplexVector out(m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) acc += m.at(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
  require_same_dim(a, b);
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) {
  ComplexMatrix out(a.dim(), b.dim());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < b.dim(); ++c)
      out.at(r, c) = a[r] * std::conj(b[c]);
  return out;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      out[i * b.dim() + j] = a[i] * b[j];
  return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t ar = 0; ar < a.rows; ++ar)
    for (std::size_t ac = 0; ac < a.cols; ++ac) {
      const Complex f = a.at(ar, ac);
      if (f == Complex{}) continue;
      for (std::size_t br = 0; br < b.rows; ++br)
        for (std::size_t bc = 0; bc < b.cols; ++bc)
          out.at(ar * b.rows + br, ac * b.cols + bc) = f * b.at(br, bc);
    }
  return out;
}

bool is_finite(const ComplexVector& v) {
  for (const Complex& c : v.e)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

bool is_finite(const ComplexMatrix& m) {
  for (const Complex& c : m.e)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const Complex& c : m.e) s += std::norm(c);
  return std::sqrt(s);
}

double max_abs(const ComplexMatrix& m) {
  double mx = 0.0;
  for (const Complex& c : m.e) mx = std::max(mx, std::abs(c));
  return mx;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double mx = 0.0;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    mx = std::max(mx, std::abs(a.e[i] - b.e[i]));
  return mx;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  require_same_dim(a, b);
  double mx = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    mx = std::max(mx, std::abs(a[i] - b[i]));
  return mx;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem traced_out) {
  if (rho.rows != 4 || rho.cols != 4)
    throw std::invalid_argument("partial_trace expects a 4x4 matrix");
  ComplexMatrix out(2, 2);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < 2; ++k) {
        if (traced_out == Subsystem::Second)
          acc += rho.at(2 * a + k, 2 * b + k);
        else
          acc += rho.at(2 * k + a, 2 * k + b);
      }
      out.at(a, b) = acc;
    }
  return out;
}

ComplexMatrix symmetric_projector() {
  // (I + SWAP) / 2 on (HH, HV, VH, VV).
  ComplexMatrix s(4, 4);
  s.at(0, 0) = 1.0;
  s.at(3, 3) = 1.0;
  s.at(1, 1) = 0.5;
  s.at(1, 2) = 0.5;
  s.at(2, 1) = 0.5;
  s.at(2, 2) = 0.5;
  return s;
}

DensityVerdict validate_density(const ComplexMatrix& rho, double tol) {
  DensityVerdict v;
  if (rho.rows != rho.cols || rho.rows == 0)
    throw std::invalid_argument("validate_density expects a square matrix");
  if (!is_finite(rho)) {
    v.violations.push_back("non-finite entries");
    return v;
  }
  v.hermiticity_error = max_abs_diff(rho, rho.adjoint());
  v.hermitian = v.hermiticity_error <= tol;
  if (!v.hermitian) v.violations.push_back("not Hermitian");

  v.trace_error = std::abs(rho.trace() - Complex{1.0});
  v.unit_trace = v.trace_error <= tol;
  if (!v.unit_trace) v.violations.push_back("trace differs from 1");

  // PSD check on the Hermitian part, so a report is produced even when the
  // hermiticity check already failed.
  ComplexMatrix herm = Complex{0.5} * (rho + rho.adjoint());
  const std::vector<double> ev = hermitian_eigenvalues(herm);
  v.min_eigenvalue = ev.front();
  v.positive = v.min_eigenvalue >= -tol;
  if (!v.positive) v.violations.push_back("negative eigenvalue");
  return v;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows != m.cols)
    throw std::invalid_argument("eigenvalues of non-square matrix");
  Eigen::SelfAdjointEigenSolver<EigenMat> solver(to_eigen(m),
                                                 Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (m.rows != m.cols)
    throw std::invalid_argument("eigensystem of non-square matrix");
  Eigen::SelfAdjointEigenSolver<EigenMat> solver(to_eigen(m));
  EigenSystem out;
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  out.vectors = from_eigen(solver.eigenvectors());
  return out;
}

ComplexMatrix nullspace(const ComplexMatrix& m, double tol) {
  Eigen::JacobiSVD<EigenMat> svd(to_eigen(m), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * (sv.size() > 0 ? sv(0) : 1.0);
  long rank = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  const long kernel_dim = static_cast<long>(m.cols) - rank;
  EigenMat v = svd.matrixV();
  return from_eigen(v.rightCols(kernel_dim));
}

}  // namespace biphoton::qmath
