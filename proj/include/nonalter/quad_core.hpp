#pragma once

// Dense symmetric linear algebra and quadratic-function primitives.
//
// A quadratic function is stored as q(x) = x^T A x + 2 a^T x + a0 with A
// symmetric. Note the factor 2 on the linear term: it makes the lifted
// (n+1)x(n+1) matrix [[a0, a^T], [a, A]] reproduce q through [1;x]^T M [1;x].

#include <Eigen/Dense>

#include <limits>
#include <optional>

#include "nonalter/error.hpp"

namespace nonalter {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Eigenvalues below this fraction of the largest magnitude count as zero.
inline constexpr double kRankThreshold = 1e-10;
/// Relative tolerance for positive-semidefiniteness decisions.
inline constexpr double kDefaultPsdTol = 1e-9;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class QuadForm {
 public:
  QuadForm() = default;
  /// Symmetrizes A as (A + A^T)/2. Throws on non-finite entries or
  /// inconsistent dimensions.
  QuadForm(Matrix A, Vector a, double a0);

  static QuadForm zero(Eigen::Index n);
  static QuadForm constant(Eigen::Index n, double c);
  static QuadForm affine(Vector a, double a0);

  Eigen::Index dim() const { return a_.size(); }
  const Matrix& A() const { return A_; }
  const Vector& a() const { return a_; }
  double a0() const { return a0_; }

  double operator()(const Vector& x) const;
  Vector gradient(const Vector& x) const;

  /// Exactly zero quadratic and linear parts.
  bool is_constant() const;
  /// Exactly zero quadratic part.
  bool is_affine() const;
  /// Largest coefficient magnitude over A, a and a0.
  double coeff_scale() const;

  QuadForm operator-() const;
  QuadForm& operator+=(const QuadForm& other);
  QuadForm& operator*=(double s);

 private:
  Matrix A_;
  Vector a_;
  double a0_ = 0.0;
};

QuadForm operator+(QuadForm lhs, const QuadForm& rhs);
QuadForm operator-(QuadForm lhs, const QuadForm& rhs);
QuadForm operator*(double s, QuadForm q);

/// x^T A x + 2 a^T x + a0. Throws DimensionMismatch.
double eval(const QuadForm& q, const Vector& x);

/// The symmetric lift [[a0, a^T], [a, A]]; index 0 is the homogenizing coordinate.
Matrix lift(const QuadForm& q);

/// Inverse of lift(); M must be square of size >= 2.
QuadForm unlift(const Matrix& M);

struct EigenDecomp {
  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns
};

/// Symmetric eigendecomposition with a deterministic basis: inside a cluster
/// of equal eigenvalues the basis is Gram-Schmidt of the coordinate axes
/// projected onto the eigenspace, and every vector has its first significant
/// component positive.
EigenDecomp sym_eigen(const Matrix& M);

double spectral_norm(const Matrix& M);

enum class PsdVerdict { PositiveDefinite, PsdSingular, Indefinite };

struct PsdStatus {
  double min_eig = 0.0;
  PsdVerdict verdict = PsdVerdict::PsdSingular;
};

/// Indefinite iff min_eig < -tol*(1+|M|_2); PositiveDefinite iff
/// min_eig > tol*(1+|M|_2).
PsdStatus psd_status(const Matrix& M, double tol = kDefaultPsdTol);

/// q(x) >= 0 for all x, decided through the lift.
bool nonneg_everywhere(const QuadForm& q, double tol = kDefaultPsdTol);

Matrix pseudo_inverse(const Matrix& M);
/// Orthonormal basis of the numerical kernel (possibly zero columns).
Matrix null_basis(const Matrix& M);

/// The quadratic y -> q(x0 + N y). Throws RankDeficient if N has dependent columns.
QuadForm restrict_affine(const QuadForm& q, const Vector& x0, const Matrix& N);

/// Result of inf_x q(x).
struct UnconstrainedMin {
  double value = -kInf;
  /// Minimum-norm minimizer when the infimum is finite.
  std::optional<Vector> minimizer;
  /// Orthonormal basis of the minimizer set's direction space.
  Matrix kernel;
  /// Direction along which q decreases without bound (when value is -inf).
  std::optional<Vector> descent;
};

/// Closed-form unconstrained infimum. Eigenvalues below -tol*(1+scale) make
/// the infimum -inf; eigenvalues within tol*(1+scale) of zero form the kernel,
/// and a linear term leaving a residual above 1e-8*(1+|a|) in the kernel also
/// gives -inf. `scale` defaults to |A|_2.
UnconstrainedMin unconstrained_min(const QuadForm& q, double tol = kDefaultPsdTol,
                                   double scale = -1.0);

}  // namespace nonalter
