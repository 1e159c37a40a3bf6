#pragma once

#include <gmpxx.h>

#include <string>

namespace finsch {

using Scalar = mpq_class;

// Coefficient field: the rationals or a prime field. Prime field elements are
// stored as integer representatives in [0, p).
class Field {
 public:
  enum class Kind { Rationals, Prime };

  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(long p);
  static Field parse(const std::string& text);

  Kind kind() const { return kind_; }
  long characteristic() const { return kind_ == Kind::Prime ? p_ : 0; }
  std::string name() const;

  Scalar normalize(const Scalar& a) const;
  Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
  Scalar neg(const Scalar& a) const { return normalize(-a); }
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

 private:
  Kind kind_ = Kind::Rationals;
  long p_ = 0;
};

std::string scalar_to_string(const Scalar& a);

}  // namespace finsch
