#include "nonalter/quad_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nonalter {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::NotFinite: return "non-finite value";
    case ErrorCode::RankDeficient: return "rank deficient";
    case ErrorCode::ConstantInput: return "constant input";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::NumericalFailure: return "numerical failure";
    case ErrorCode::NoSublevelPoint: return "no sublevel point";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Asymmetric: return "asymmetric matrix";
    case ErrorCode::Unsupported: return "unsupported";
  }
  return "unknown";
}

QuadForm::QuadForm(Matrix A, Vector a, double a0) : A_(std::move(A)), a_(std::move(a)), a0_(a0) {
  if (A_.rows() != A_.cols() || A_.rows() != a_.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "quadratic form: A is " + std::to_string(A_.rows()) + "x" + std::to_string(A_.cols()) +
                    " but a has " + std::to_string(a_.size()) + " entries");
  }
  if (!A_.allFinite() || !a_.allFinite() || !std::isfinite(a0_)) {
    throw Error(ErrorCode::NotFinite, "quadratic form has non-finite coefficients");
  }
  A_ = (0.5 * (A_ + A_.transpose())).eval();
}

QuadForm QuadForm::zero(Eigen::Index n) { return QuadForm(Matrix::Zero(n, n), Vector::Zero(n), 0.0); }

QuadForm QuadForm::constant(Eigen::Index n, double c) { return QuadForm(Matrix::Zero(n, n), Vector::Zero(n), c); }

QuadForm QuadForm::affine(Vector a, double a0) {
  const auto n = a.size();
  return QuadForm(Matrix::Zero(n, n), std::move(a), a0);
}

double QuadForm::operator()(const Vector& x) const {
  if (x.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "eval: point has " + std::to_string(x.size()) +
                                                  " entries, form has dimension " + std::to_string(dim()));
  }
  return x.dot(A_ * x) + 2.0 * a_.dot(x) + a0_;
}

Vector QuadForm::gradient(const Vector& x) const { return 2.0 * (A_ * x + a_); }

bool QuadForm::is_constant() const { return is_affine() && (a_.array() == 0.0).all(); }

bool QuadForm::is_affine() const { return (A_.array() == 0.0).all(); }

double QuadForm::coeff_scale() const {
  double s = std::abs(a0_);
  if (A_.size() > 0) s = std::max(s, A_.cwiseAbs().maxCoeff());
  if (a_.size() > 0) s = std::max(s, a_.cwiseAbs().maxCoeff());
  return s;
}

QuadForm QuadForm::operator-() const { return QuadForm(-A_, -a_, -a0_); }

QuadForm& QuadForm::operator+=(const QuadForm& other) {
  if (other.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "sum of forms with different dimensions");
  A_ += other.A_;
  a_ += other.a_;
  a0_ += other.a0_;
  return *this;
}

QuadForm& QuadForm::operator*=(double s) {
  A_ *= s;
  a_ *= s;
  a0_ *= s;
  return *this;
}

QuadForm operator+(QuadForm lhs, const QuadForm& rhs) { return lhs += rhs; }
QuadForm operator-(QuadForm lhs, const QuadForm& rhs) { return lhs += -rhs; }
QuadForm operator*(double s, QuadForm q) { return q *= s; }

double eval(const QuadForm& q, const Vector& x) { return q(x); }

Matrix lift(const QuadForm& q) {
  const auto n = q.dim();
  Matrix M(n + 1, n + 1);
  M(0, 0) = q.a0();
  M.block(0, 1, 1, n) = q.a().transpose();
  M.block(1, 0, n, 1) = q.a();
  M.block(1, 1, n, n) = q.A();
  return M;
}

QuadForm unlift(const Matrix& M) {
  if (M.rows() != M.cols() || M.rows() < 1) throw Error(ErrorCode::DimensionMismatch, "unlift: not square");
  const auto n = M.rows() - 1;
  Matrix S = 0.5 * (M + M.transpose());
  return QuadForm(S.block(1, 1, n, n), S.block(1, 0, n, 1), S(0, 0));
}

namespace {

// Orthonormal basis of span(V) built from the coordinate axes in index order.
Matrix axis_aligned_basis(const Matrix& V) {
  const auto n = V.rows();
  const auto k = V.cols();
  if (k == 0 || k == n) {
    if (k == n) return Matrix::Identity(n, n);
    return Matrix(n, 0);
  }
  const Matrix P = V * V.transpose();
  const double threshold = 0.5 / std::sqrt(static_cast<double>(n));
  Matrix out(n, k);
  Eigen::Index found = 0;
  for (Eigen::Index j = 0; j < n && found < k; ++j) {
    Vector w = P.col(j);
    for (Eigen::Index i = 0; i < found; ++i) w -= out.col(i).dot(w) * out.col(i);
    const double nw = w.norm();
    if (nw > threshold) out.col(found++) = w / nw;
  }
  // Cannot trigger for an orthonormal V; kept so the result always has k columns.
  if (found < k) return V;
  return out;
}

void normalize_sign(Matrix& V) {
  for (Eigen::Index c = 0; c < V.cols(); ++c) {
    for (Eigen::Index r = 0; r < V.rows(); ++r) {
      if (std::abs(V(r, c)) > 1e-8) {
        if (V(r, c) < 0) V.col(c) *= -1.0;
        break;
      }
    }
  }
}

}  // namespace

EigenDecomp sym_eigen(const Matrix& M) {
  if (M.rows() != M.cols()) throw Error(ErrorCode::DimensionMismatch, "sym_eigen: matrix not square");
  if (!M.allFinite()) throw Error(ErrorCode::NotFinite, "sym_eigen: non-finite entries");
  EigenDecomp out;
  if (M.rows() == 0) {
    out.values = Vector(0);
    out.vectors = Matrix(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (M + M.transpose()));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "symmetric eigensolver did not converge");
  }
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();

  const auto n = M.rows();
  const double largest = out.values.cwiseAbs().maxCoeff();
  const double cluster_tol = kRankThreshold * largest;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && out.values(stop) - out.values(stop - 1) <= cluster_tol) ++stop;
    if (stop - start > 1) {
      out.vectors.middleCols(start, stop - start) = axis_aligned_basis(out.vectors.middleCols(start, stop - start));
    }
    start = stop;
  }
  normalize_sign(out.vectors);
  return out;
}

double spectral_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  return sym_eigen(M).values.cwiseAbs().maxCoeff();
}

PsdStatus psd_status(const Matrix& M, double tol) {
  PsdStatus st;
  if (M.size() == 0) {
    st.min_eig = 0.0;
    st.verdict = PsdVerdict::PsdSingular;
    return st;
  }
  const Vector values = sym_eigen(M).values;
  const double norm = values.cwiseAbs().maxCoeff();
  st.min_eig = values(0);
  const double band = tol * (1.0 + norm);
  if (st.min_eig < -band) {
    st.verdict = PsdVerdict::Indefinite;
  } else if (st.min_eig > band) {
    st.verdict = PsdVerdict::PositiveDefinite;
  } else {
    st.verdict = PsdVerdict::PsdSingular;
  }
  return st;
}

bool nonneg_everywhere(const QuadForm& q, double tol) {
  return psd_status(lift(q), tol).verdict != PsdVerdict::Indefinite;
}

Matrix pseudo_inverse(const Matrix& M) {
  const auto n = M.rows();
  Matrix P = Matrix::Zero(n, n);
  if (n == 0) return P;
  const EigenDecomp ed = sym_eigen(M);
  const double thr = kRankThreshold * ed.values.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = ed.values(i);
    if (std::abs(v) > thr && v != 0.0) P += ed.vectors.col(i) * ed.vectors.col(i).transpose() / v;
  }
  return P;
}

Matrix null_basis(const Matrix& M) {
  const auto n = M.rows();
  if (n == 0) return Matrix(0, 0);
  const EigenDecomp ed = sym_eigen(M);
  const double thr = kRankThreshold * ed.values.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(ed.values(i)) <= thr) idx.push_back(i);
  }
  Matrix K(n, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) K.col(static_cast<Eigen::Index>(j)) = ed.vectors.col(idx[j]);
  K = axis_aligned_basis(K);
  normalize_sign(K);
  return K;
}

QuadForm restrict_affine(const QuadForm& q, const Vector& x0, const Matrix& N) {
  const auto n = q.dim();
  if (x0.size() != n || N.rows() != n) {
    throw Error(ErrorCode::DimensionMismatch, "restrict_affine: map does not match form dimension");
  }
  if (N.cols() > n) throw Error(ErrorCode::RankDeficient, "restrict_affine: more columns than rows");
  if (N.cols() > 0) {
    const Vector sv = Eigen::JacobiSVD<Matrix>(N).singularValues();
    if (sv(sv.size() - 1) <= kRankThreshold * sv(0) || sv(0) == 0.0) {
      throw Error(ErrorCode::RankDeficient, "restrict_affine: columns of the map are dependent");
    }
  }
  Matrix A = N.transpose() * q.A() * N;
  Vector a = N.transpose() * (q.A() * x0 + q.a());
  return QuadForm(std::move(A), std::move(a), q(x0));
}

UnconstrainedMin unconstrained_min(const QuadForm& q, double tol, double scale) {
  UnconstrainedMin out;
  const auto n = q.dim();
  if (n == 0) {
    out.value = q.a0();
    out.minimizer = Vector(0);
    out.kernel = Matrix(0, 0);
    return out;
  }
  const EigenDecomp ed = sym_eigen(q.A());
  const double norm = ed.values.cwiseAbs().maxCoeff();
  const double ref = scale >= 0.0 ? std::max(scale, norm) : norm;
  const double band = tol * (1.0 + ref);

  if (ed.values(0) < -band) {
    out.value = -kInf;
    out.descent = ed.vectors.col(0);
    return out;
  }
  const Vector c = ed.vectors.transpose() * q.a();
  Vector x = Vector::Zero(n);
  Vector ker_part = Vector::Zero(n);
  std::vector<Eigen::Index> kernel_idx;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ed.values(i) <= band) {
      kernel_idx.push_back(i);
      ker_part += c(i) * ed.vectors.col(i);
    } else {
      x -= (c(i) / ed.values(i)) * ed.vectors.col(i);
    }
  }
  out.kernel = Matrix(n, static_cast<Eigen::Index>(kernel_idx.size()));
  for (std::size_t j = 0; j < kernel_idx.size(); ++j) {
    out.kernel.col(static_cast<Eigen::Index>(j)) = ed.vectors.col(kernel_idx[j]);
  }
  if (ker_part.norm() > 1e-8 * (1.0 + q.a().norm())) {
    out.value = -kInf;
    out.descent = (-ker_part / ker_part.norm()).eval();
    return out;
  }
  out.value = q.a0() + q.a().dot(x);
  out.minimizer = std::move(x);
  return out;
}

}  // namespace nonalter
