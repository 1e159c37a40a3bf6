#include "finsch/linalg.hpp"

#include <sstream>

#include "finsch/errors.hpp"

namespace finsch {

Matrix Matrix::identity(Field f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix dimensions do not match");
  Matrix r(field_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        if (o.at(k, j) != 0) r.at(i, j) += a * o.at(k, j);
    }
  for (auto& x : r.data_) x = field_.normalize(x);
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix dimensions do not match");
  Matrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], o.data_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix dimensions do not match");
  Matrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], o.data_[i]);
  return r;
}

Vector Matrix::apply(const Vector& v) const {
  if (static_cast<int>(v.size()) != cols_) throw Error("vector length does not match");
  Vector r(rows_, 0);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
    r[i] = field_.normalize(r[i]);
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Matrix Matrix::rref(std::vector<int>* pivots) const {
  Matrix m = *this;
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int p = -1;
    for (int i = r; i < rows_; ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < cols_; ++j) std::swap(m.at(p, j), m.at(r, j));
    Scalar inv = field_.inv(m.at(r, c));
    for (int j = c; j < cols_; ++j) m.at(r, j) = field_.mul(m.at(r, j), inv);
    for (int i = 0; i < rows_; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Scalar f = m.at(i, c);
      for (int j = c; j < cols_; ++j)
        if (m.at(r, j) != 0) m.at(i, j) = field_.sub(m.at(i, j), field_.mul(f, m.at(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = piv;
  return m;
}

int Matrix::rank() const {
  std::vector<int> p;
  rref(&p);
  return static_cast<int>(p.size());
}

std::vector<Vector> Matrix::kernel() const {
  std::vector<int> piv;
  Matrix m = rref(&piv);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<Vector> out;
  for (int f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols_, 0);
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = field_.neg(m.at(static_cast<int>(r), f));
    out.push_back(v);
  }
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream s;
  s << "[";
  for (int i = 0; i < rows_; ++i) {
    s << (i ? "; " : "");
    for (int j = 0; j < cols_; ++j) s << (j ? " " : "") << scalar_to_string(at(i, j));
  }
  s << "]";
  return s.str();
}

Quotient::Quotient(Field f, int ambient, const std::vector<Vector>& span) : field_(f), n_(ambient) {
  Matrix m(f, static_cast<int>(span.size()), ambient);
  for (size_t i = 0; i < span.size(); ++i)
    for (int j = 0; j < ambient; ++j) m.at(static_cast<int>(i), j) = span[i][j];
  Matrix r = m.rref(&pivots_);
  for (size_t i = 0; i < pivots_.size(); ++i) {
    Vector row(ambient);
    for (int j = 0; j < ambient; ++j) row[j] = r.at(static_cast<int>(i), j);
    rows_.push_back(row);
  }
  std::vector<bool> is_pivot(ambient, false);
  for (int c : pivots_) is_pivot[c] = true;
  for (int j = 0; j < ambient; ++j)
    if (!is_pivot[j]) free_.push_back(j);
}

Vector Quotient::coords(Vector v) const {
  if (static_cast<int>(v.size()) != n_) throw Error("vector length does not match");
  for (size_t i = 0; i < rows_.size(); ++i) {
    Scalar c = v[pivots_[i]];
    if (c == 0) continue;
    for (int j = 0; j < n_; ++j)
      if (rows_[i][j] != 0) v[j] = field_.sub(v[j], field_.mul(c, rows_[i][j]));
  }
  Vector out;
  for (int j : free_) out.push_back(v[j]);
  return out;
}

Vector Quotient::lift(const Vector& c) const {
  Vector v(n_, 0);
  for (size_t i = 0; i < free_.size(); ++i) v[free_[i]] = c[i];
  return v;
}

}  // namespace finsch
