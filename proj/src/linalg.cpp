#include "hdual/linalg.hpp"

namespace hdual {

namespace {

// Row-reduces in place; returns the rank. `aug` columns beyond `cols` are
// carried along.
std::size_t row_reduce(const Field& k, Matrix& m, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const Elem inv = k.inv(m[rank][c]);
    for (auto& v : m[rank]) v = k.mul(v, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Elem f = m[r][c];
      for (std::size_t j = 0; j < m[r].size(); ++j) m[r][j] = k.sub(m[r][j], k.mul(f, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t matrix_rank(const Field& k, Matrix m) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  return row_reduce(k, m, cols);
}

Matrix matrix_inverse(const Field& k, const Matrix& m) {
  const std::size_t n = m.size();
  Matrix aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("matrix is not square");
    aug[i] = m[i];
    aug[i].resize(2 * n, 0);
    aug[i][n + i] = 1;
  }
  if (row_reduce(k, aug, n) != n) throw SingularMatrixError("matrix is singular");
  Matrix inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i].assign(aug[i].begin() + static_cast<std::ptrdiff_t>(n), aug[i].end());
  return inv;
}

Matrix matrix_transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m.front().size(), std::vector<Elem>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

Matrix matrix_mul(const Field& k, const Matrix& a, const Matrix& b) {
  if (a.empty()) return {};
  if (a.front().size() != b.size()) throw std::invalid_argument("matrix dimensions do not match");
  const std::size_t cols = b.empty() ? 0 : b.front().size();
  Matrix c(a.size(), std::vector<Elem>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t l = 0; l < b.size(); ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] = k.add(c[i][j], k.mul(a[i][l], b[l][j]));
    }
  }
  return c;
}

Matrix matrix_identity(std::size_t n) {
  Matrix m(n, std::vector<Elem>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix matrix_frobenius(const Field& k, const Matrix& m, std::int64_t e) {
  Matrix out = m;
  for (auto& row : out) {
    for (auto& v : row) v = k.frobenius(v, e);
  }
  return out;
}

}  // namespace hdual
