#pragma once

#include <cstddef>
#include <vector>

#include "wildquot/ff.hpp"

namespace wq {

using Vec = std::vector<Field::Code>;

// Dense row-major matrix of field codes.
struct Matrix {
  FieldPtr field;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Field::Code> data;

  Matrix(FieldPtr f, std::size_t r, std::size_t c)
      : field(std::move(f)), rows(r), cols(c), data(r * c, 0) {}

  Field::Code& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  Field::Code at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Reduced row echelon form in place; returns pivot columns in order.
std::vector<std::size_t> rref(Matrix& m);
std::size_t rank(Matrix m);
// Kernel basis {v : m v = 0}; one vector per free column, with a 1 there.
std::vector<Vec> nullspace(const Matrix& m);

// Rows kept in reduced echelon form, grown one vector at a time.
class EchelonBasis {
 public:
  EchelonBasis(FieldPtr f, std::size_t dim) : field_(std::move(f)), dim_(dim) {}

  // reduce v against the stored rows (pivot entries cleared)
  Vec reduce(Vec v) const;
  // true and stored when v is independent of the rows so far
  bool insert(const Vec& v);
  std::size_t size() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  FieldPtr field_;
  std::size_t dim_;
  std::vector<Vec> rows_;  // each row has a 1 at its pivot
  std::vector<std::size_t> pivots_;
};

}  // namespace wq
