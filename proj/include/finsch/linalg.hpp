#pragma once

#include <string>
#include <vector>

#include "finsch/field.hpp"

namespace finsch {

using Vector = std::vector<Scalar>;

// Dense matrix over a field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, int rows, int cols) : field_(f), rows_(rows), cols_(cols), data_(size_t(rows) * cols, 0) {}
  static Matrix identity(Field f, int n);

  const Field& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int i, int j) { return data_[size_t(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Vector apply(const Vector& v) const;
  Matrix transpose() const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const;

  // Reduced row echelon form; pivots receives the pivot columns.
  Matrix rref(std::vector<int>* pivots = nullptr) const;
  int rank() const;
  // Basis of the null space (as column vectors).
  std::vector<Vector> kernel() const;
  std::string to_string() const;

 private:
  Field field_;
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

// Coordinates on V / span(rows); the complement basis is made of the standard
// vectors at non-pivot positions.
class Quotient {
 public:
  Quotient() = default;
  Quotient(Field f, int ambient, const std::vector<Vector>& span);
  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(free_.size()); }
  Vector coords(Vector v) const;
  Vector lift(const Vector& c) const;
  const std::vector<int>& free_positions() const { return free_; }

 private:
  Field field_;
  int n_ = 0;
  std::vector<Vector> rows_;
  std::vector<int> pivots_;
  std::vector<int> free_;
};

}  // namespace finsch
