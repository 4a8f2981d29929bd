#pragma once

#include <stdexcept>
#include <vector>

#include "hdual/field.hpp"

namespace hdual {

class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense row-major matrix over a finite field.
using Matrix = std::vector<std::vector<Elem>>;

std::size_t matrix_rank(const Field& k, Matrix m);
Matrix matrix_inverse(const Field& k, const Matrix& m);
Matrix matrix_transpose(const Matrix& m);
Matrix matrix_mul(const Field& k, const Matrix& a, const Matrix& b);
Matrix matrix_identity(std::size_t n);
/// Entrywise a -> a^(p^e).
Matrix matrix_frobenius(const Field& k, const Matrix& m, std::int64_t e);

}  // namespace hdual
