#include "nonalter/canonical.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace nonalter {

AffineChange AffineChange::identity(Eigen::Index n) {
  return AffineChange{Matrix::Identity(n, n), Vector::Zero(n), 1.0};
}

const char* to_string(FormTag tag) noexcept {
  switch (tag) {
    case FormTag::Form1: return "Form1";
    case FormTag::Form2: return "Form2";
    case FormTag::Form3: return "Form3";
    case FormTag::Form4: return "Form4";
    case FormTag::Form5: return "Form5";
  }
  return "?";
}

double CanonicalForm::evaluate(const Vector& y) const { return as_quad()(y); }

QuadForm CanonicalForm::as_quad() const {
  Matrix A = Matrix::Zero(n, n);
  Vector a = Vector::Zero(n);
  double a0 = 0.0;
  switch (tag) {
    case FormTag::Form1:
    case FormTag::Form2:
    case FormTag::Form3:
      for (int i = 0; i < k; ++i) A(i, i) = -1.0;
      for (int i = k; i < m; ++i) A(i, i) = delta;
      if (tag == FormTag::Form1) a0 = theta;
      if (tag == FormTag::Form2) a0 = -1.0;
      if (tag == FormTag::Form3) a(m) = 0.5;
      break;
    case FormTag::Form4:
      for (int i = 0; i < m; ++i) A(i, i) = 1.0;
      if (eta != 0) a(m) = 0.5 * eta;
      a0 = cprime;
      break;
    case FormTag::Form5:
      a(0) = 0.5 * eta;
      a0 = cprime;
      break;
  }
  return QuadForm(std::move(A), std::move(a), a0);
}

std::string CanonicalForm::describe() const {
  std::ostringstream os;
  os << to_string(tag) << " k=" << k << " m=" << m << " delta=" << delta << " theta=" << theta << " eta=" << eta
     << " c'=" << cprime;
  return os.str();
}

namespace {

// Orthonormal basis of the orthogonal complement of `dir` inside span(K).
Matrix complement_in(const Matrix& K, const Vector& dir) {
  if (K.cols() <= 1) return Matrix(K.rows(), 0);
  const Vector coords = K.transpose() * dir;
  const Matrix P = Matrix::Identity(K.cols(), K.cols()) - coords * coords.transpose() / coords.squaredNorm();
  const Matrix local = null_basis(Matrix::Identity(K.cols(), K.cols()) - P);
  return K * local;
}

}  // namespace

CanonicalReduction canonical_reduce(const QuadForm& g) {
  if (g.is_constant()) throw Error(ErrorCode::ConstantInput, "canonical_reduce: function is constant");

  const auto n = g.dim();
  const EigenDecomp ed = sym_eigen(g.A());
  const double a_norm = spectral_norm(g.A());
  const double scale_ref = std::max({a_norm, g.a().norm(), std::abs(g.a0())});
  const double thr = kRankThreshold * a_norm;

  std::vector<Eigen::Index> neg, pos, ker;
  bool borderline = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = ed.values(i);
    if (a_norm <= kRankThreshold * scale_ref || std::abs(v) <= thr) {
      ker.push_back(i);
    } else {
      if (std::abs(v) <= 1e-6 * a_norm) borderline = true;
      (v < 0 ? neg : pos).push_back(i);
    }
  }

  Matrix K(n, static_cast<Eigen::Index>(ker.size()));
  for (std::size_t j = 0; j < ker.size(); ++j) K.col(static_cast<Eigen::Index>(j)) = ed.vectors.col(ker[j]);
  if (K.cols() > 0) K = null_basis(K * K.transpose() - Matrix::Identity(n, n));

  // Center in the range of A and split a into range and kernel parts.
  Vector center = Vector::Zero(n);
  for (auto i : neg) center -= (ed.vectors.col(i).dot(g.a()) / ed.values(i)) * ed.vectors.col(i);
  for (auto i : pos) center -= (ed.vectors.col(i).dot(g.a()) / ed.values(i)) * ed.vectors.col(i);
  Vector a_ker = K.cols() > 0 ? Vector(K * (K.transpose() * g.a())) : Vector(Vector::Zero(n));
  const bool linear_in_kernel = a_ker.norm() > kRankThreshold * scale_ref;

  CanonicalReduction out;
  CanonicalForm& form = out.form;
  AffineChange& ch = out.change;
  form.n = n;
  form.borderline = borderline;
  ch.T = Matrix::Zero(n, n);
  ch.t = center;
  ch.s = 1.0;

  Eigen::Index col = 0;
  auto put_squares = [&](const std::vector<Eigen::Index>& idx, double stretch) {
    for (auto i : idx) ch.T.col(col++) = ed.vectors.col(i) * std::sqrt(stretch / std::abs(ed.values(i)));
  };
  auto put_kernel = [&]() {
    if (linear_in_kernel) {
      ch.T.col(col++) = a_ker / (2.0 * a_ker.squaredNorm());
      const Matrix rest = complement_in(K, a_ker);
      for (Eigen::Index j = 0; j < rest.cols(); ++j) ch.T.col(col++) = rest.col(j);
    } else {
      for (Eigen::Index j = 0; j < K.cols(); ++j) ch.T.col(col++) = K.col(j);
    }
  };

  if (neg.empty() && pos.empty()) {
    form.tag = FormTag::Form5;
    form.eta = 1;
    form.cprime = g.a0();
    ch.t = Vector::Zero(n);
    const Vector a = g.a();
    ch.T.col(col++) = a / (2.0 * a.squaredNorm());
    const Matrix rest = null_basis(a * a.transpose());
    for (Eigen::Index j = 0; j < rest.cols(); ++j) ch.T.col(col++) = rest.col(j);
    return out;
  }

  if (neg.empty()) {
    form.tag = FormTag::Form4;
    form.m = static_cast<int>(pos.size());
    form.eta = linear_in_kernel ? 1 : 0;
    put_squares(pos, 1.0);
    put_kernel();
    form.cprime = g(center);
    return out;
  }

  form.k = static_cast<int>(neg.size());
  form.delta = pos.empty() ? 0 : 1;
  form.m = form.k + static_cast<int>(pos.size());

  if (linear_in_kernel) {
    form.tag = FormTag::Form3;
    put_squares(neg, 1.0);
    put_squares(pos, 1.0);
    put_kernel();
    ch.t = center - g(center) * a_ker / (2.0 * a_ker.squaredNorm());
    return out;
  }

  const double c = g(center);
  const double const_tol = kRankThreshold * (scale_ref + std::abs(g.a().dot(center)));
  if (std::abs(c) <= const_tol) {
    form.tag = FormTag::Form1;
    form.theta = 0;
    put_squares(neg, 1.0);
    put_squares(pos, 1.0);
  } else {
    form.tag = c > 0 ? FormTag::Form1 : FormTag::Form2;
    form.theta = c > 0 ? 1 : 0;
    ch.s = 1.0 / std::abs(c);
    put_squares(neg, std::abs(c));
    put_squares(pos, std::abs(c));
  }
  put_kernel();
  return out;
}

QuadForm companion_in_basis(const QuadForm& h, const AffineChange& change) {
  return restrict_affine(h, change.t, change.T);
}

}  // namespace nonalter
