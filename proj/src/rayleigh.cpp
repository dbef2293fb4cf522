#include "rlab/rayleigh.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace rlab {

Matrix<double> gradient_form(const std::vector<Point>& vertices) {
  const auto m = static_cast<Eigen::Index>(vertices.size());
  std::unordered_map<Point, Eigen::Index, PointHash> index;
  for (Eigen::Index i = 0; i < m; ++i)
    if (!index.emplace(vertices[static_cast<std::size_t>(i)], i).second)
      throw std::invalid_argument("duplicate vertex " + vertices[static_cast<std::size_t>(i)].str());
  Matrix<double> a = Matrix<double>::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (const Point& q : neighbors(vertices[static_cast<std::size_t>(i)])) {
      const auto it = index.find(q);
      if (it == index.end()) {
        a(i, i) += 1.0;
      } else if (i < it->second) {
        const Eigen::Index j = it->second;
        a(i, i) += 1.0;
        a(j, j) += 1.0;
        a(i, j) -= 1.0;
        a(j, i) -= 1.0;
      }
    }
  }
  return a;
}

RayleighResult rayleigh_oracle_p2(const Enumeration& e, const std::vector<Point>& support,
                                  const std::vector<int>& ordering) {
  const auto m = static_cast<int>(support.size());
  if (m == 0) throw std::invalid_argument("empty support");
  if (m > 16) throw std::invalid_argument("rayleigh oracle limited to 16 vertices");
  if (static_cast<int>(ordering.size()) != m) throw std::invalid_argument("ordering size differs from support size");
  {
    std::vector<int> check(ordering);
    std::sort(check.begin(), check.end());
    for (int k = 0; k < m; ++k)
      if (check[static_cast<std::size_t>(k)] != k) throw std::invalid_argument("ordering is not a permutation");
  }
  if (e.size() < m) throw std::length_error("enumeration shorter than the support");
  for (const Point& p : support)
    if (p.dim() != e.dim()) throw std::invalid_argument("support and enumeration dimensions differ");

  // y_k = value on v_{k+1} = value on support[ordering[k]]
  std::vector<Point> targets;
  for (int k = 1; k <= m; ++k) targets.push_back(e.point(k));
  const Matrix<double> a = gradient_form(targets);
  const Matrix<double> b_support = gradient_form(support);
  Matrix<double> b(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      b(k, l) = b_support(ordering[static_cast<std::size_t>(k)], ordering[static_cast<std::size_t>(l)]);

  // y = T z, T upper triangular ones, z >= 0
  Matrix<double> t = Matrix<double>::Zero(m, m);
  for (int k = 0; k < m; ++k)
    for (int j = k; j < m; ++j) t(k, j) = 1.0;
  const Matrix<double> az = t.transpose() * a * t;
  const Matrix<double> bz = t.transpose() * b * t;

  RayleighResult best;
  best.value = -1.0;
  Vector<double> best_z;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> face;
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) face.push_back(j);
    const auto f = static_cast<Eigen::Index>(face.size());
    Matrix<double> af(f, f), bf(f, f);
    for (Eigen::Index r = 0; r < f; ++r)
      for (Eigen::Index c = 0; c < f; ++c) {
        af(r, c) = az(face[static_cast<std::size_t>(r)], face[static_cast<std::size_t>(c)]);
        bf(r, c) = bz(face[static_cast<std::size_t>(r)], face[static_cast<std::size_t>(c)]);
      }
    const SymmetricEigen<double> eig = generalized_eigen<double>(af, bf);
    for (Eigen::Index i = f - 1; i >= 0; --i) {
      Vector<double> z = eig.vectors.col(i);
      if (z.sum() < 0) z = -z;
      const double tol = 1e-12 * z.cwiseAbs().maxCoeff();
      if ((z.array() <= tol).any()) continue;
      if (eig.values(i) > best.value) {
        best.value = eig.values(i);
        best.face_size = static_cast<int>(f);
        best_z = Vector<double>::Zero(m);
        for (Eigen::Index r = 0; r < f; ++r) best_z(face[static_cast<std::size_t>(r)]) = z(r);
      }
      break;  // lower eigenvalues on this face cannot beat the accepted one
    }
  }

  const Vector<double> y = t * best_z;
  best.values.assign(static_cast<std::size_t>(m), 0.0);
  for (int k = 0; k < m; ++k) best.values[static_cast<std::size_t>(ordering[static_cast<std::size_t>(k)])] = y(k) / y(0);
  best.ordering = ordering;
  return best;
}

RayleighResult rayleigh_oracle_p2(const Enumeration& e, const std::vector<Point>& support) {
  const auto m = static_cast<int>(support.size());
  if (m > 8) throw std::invalid_argument("ordering enumeration limited to 8 vertices");
  std::vector<int> ordering(static_cast<std::size_t>(m));
  std::iota(ordering.begin(), ordering.end(), 0);
  RayleighResult best;
  best.value = -1.0;
  do {
    RayleighResult r = rayleigh_oracle_p2(e, support, ordering);
    if (r.value > best.value) best = std::move(r);
  } while (std::next_permutation(ordering.begin(), ordering.end()));
  return best;
}

}  // namespace rlab
