#pragma once

// Exact p = 2 oracle on a fixed support. Once the ordering of the values is
// fixed, ||grad f*||^2 and ||grad f||^2 are both quadratic forms in the value
// vector, so the best ratio on the ordering cone is a generalized Rayleigh
// quotient maximized over a polyhedral cone.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "rlab/enumeration.hpp"
#include "rlab/lattice.hpp"

namespace rlab {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
struct SymmetricEigen {
  Vector<Scalar> values;   // ascending
  Matrix<Scalar> vectors;  // column i belongs to values(i)
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a symmetric matrix until the off-diagonal mass
/// drops below tol times the Frobenius norm.
template <class Scalar>
SymmetricEigen<Scalar> jacobi_eigen(Matrix<Scalar> a, Scalar tol = Scalar(1e-15), int max_sweeps = 100) {
  using std::abs;
  using std::sqrt;
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("jacobi_eigen needs a square matrix");
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const Scalar scale = a.norm();
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    Scalar off(0);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (sqrt(off) <= tol * scale) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * a(p, q));
        const Scalar t = (theta >= Scalar(0) ? Scalar(1) : Scalar(-1)) / (abs(theta) + sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
  SymmetricEigen<Scalar> out{Vector<Scalar>(n), Matrix<Scalar>(n, n), sweep};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// Eigenpairs of a x = lambda b x for symmetric a and positive definite b,
/// with b-orthonormal eigenvectors.
template <class Scalar>
SymmetricEigen<Scalar> generalized_eigen(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Eigen::LLT<Matrix<Scalar>> llt(b);
  if (llt.info() != Eigen::Success) throw std::domain_error("generalized_eigen: b is not positive definite");
  const Matrix<Scalar> lower = llt.matrixL();
  const Matrix<Scalar> li = lower.template triangularView<Eigen::Lower>().solve(
      Matrix<Scalar>::Identity(a.rows(), a.cols()));
  Matrix<Scalar> c = li * a * li.transpose();
  c = (c + c.transpose()) / Scalar(2);
  SymmetricEigen<Scalar> out = jacobi_eigen<Scalar>(c);
  out.vectors = li.transpose() * out.vectors;
  return out;
}

/// Quadratic forms of ||grad g||_2^2 in the values of g on `vertices`
/// (off-vertex points count as 0).
Matrix<double> gradient_form(const std::vector<Point>& vertices);

struct RayleighResult {
  double value = 0.0;          // max of ||grad f*||^2 / ||grad f||^2 over the cone
  std::vector<double> values;  // maximizer on the support, max value 1
  std::vector<int> ordering;   // ordering[k]: support index holding the (k+1)-th largest value
  int face_size = 0;           // distinct value levels of the maximizer
};

/// Ordering fixed: support[ordering[k]] receives the (k+1)-th largest value.
/// The cone {x_ordering[0] >= x_ordering[1] >= ... >= 0} is parametrised by
/// nonnegative increments; every face of that orthant is solved as a
/// generalized eigenproblem and only eigenvectors strictly inside the face
/// are kept. Single-increment faces always qualify, so the cone is never
/// infeasible.
RayleighResult rayleigh_oracle_p2(const Enumeration& e, const std::vector<Point>& support,
                                  const std::vector<int>& ordering);

/// Maximum over all orderings; support size at most 8.
RayleighResult rayleigh_oracle_p2(const Enumeration& e, const std::vector<Point>& support);

}  // namespace rlab
