#pragma once

// Reduction of a single quadratic to one of five canonical shapes under an
// invertible affine change of variables x = T y + t and a positive scale s:
//
//   Form1  -y1^2 - ... - yk^2 + delta (y_{k+1}^2 + ... + ym^2) + theta
//   Form2  -y1^2 - ... - yk^2 + delta (y_{k+1}^2 + ... + ym^2) - 1
//   Form3  -y1^2 - ... - yk^2 + delta (y_{k+1}^2 + ... + ym^2) + y_{m+1}
//   Form4   y1^2 + ... + ym^2 + eta y_{m+1} + c'
//   Form5   eta y1 + c'
//
// with delta, theta, eta in {0, 1}, so that s * g(T y + t) equals the form.

#include <optional>
#include <string>

#include "nonalter/quad_core.hpp"

namespace nonalter {

struct AffineChange {
  Matrix T;
  Vector t;
  double s = 1.0;

  Vector apply(const Vector& y) const { return T * y + t; }
  static AffineChange identity(Eigen::Index n);
};

enum class FormTag { Form1 = 1, Form2 = 2, Form3 = 3, Form4 = 4, Form5 = 5 };

const char* to_string(FormTag tag) noexcept;

struct CanonicalForm {
  FormTag tag = FormTag::Form1;
  Eigen::Index n = 0;
  int k = 0;
  int m = 0;
  int delta = 0;
  int theta = 0;
  int eta = 0;
  double cprime = 0.0;
  /// Coefficients (c0, c1, ..., cm) of a companion affine function, when attached.
  std::optional<Vector> affine_coeffs;
  /// Some eigenvalue sat within a few orders of magnitude of the rank threshold.
  bool borderline = false;

  /// Value of the canonical expression at y.
  double evaluate(const Vector& y) const;
  /// The canonical expression as a quadratic in y.
  QuadForm as_quad() const;
  std::string describe() const;
};

struct CanonicalReduction {
  AffineChange change;
  CanonicalForm form;
};

/// Throws ConstantInput when g has no quadratic or linear part.
CanonicalReduction canonical_reduce(const QuadForm& g);

/// h(T y + t), unscaled.
QuadForm companion_in_basis(const QuadForm& h, const AffineChange& change);

}  // namespace nonalter
