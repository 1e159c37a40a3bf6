#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finsch/field.hpp"

namespace finsch {

using Exp = std::vector<int>;

// Sparse polynomial in a fixed number of variables. Terms are keyed by
// exponent vector; zero coefficients are never stored.
class Poly {
 public:
  Poly() = default;
  Poly(Field f, int nvars) : field_(f), nvars_(nvars) {}

  static Poly constant(Field f, int nvars, const Scalar& c);
  static Poly variable(Field f, int nvars, int i);
  static Poly monomial(Field f, int nvars, const Exp& e, const Scalar& c = 1);

  const Field& field() const { return field_; }
  int nvars() const { return nvars_; }
  const std::map<Exp, Scalar>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  Scalar coeff(const Exp& e) const;
  int degree_in(int v) const;
  int total_degree() const;
  bool involves(int v) const { return degree_in(v) > 0; }

  void add_term(const Exp& e, const Scalar& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Scalar& c) const;
  Poly times_monomial(const Exp& e, const Scalar& c) const;
  Poly pow(unsigned k) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Replace variable i by images[i]; all images share a ring.
  Poly substitute(const std::vector<Poly>& images) const;
  // Move variable i to position var_map[i] of a ring with new_nvars variables.
  Poly embed(int new_nvars, const std::vector<int>& var_map) const;

  std::string to_string(const std::vector<std::string>& names, const std::vector<int>& sign = {}) const;

 private:
  Field field_;
  int nvars_ = 0;
  std::map<Exp, Scalar> terms_;
};

// Degree-reverse-lexicographic comparison of exponent vectors.
int grevlex_cmp(const Exp& a, const Exp& b);

struct ParseContext {
  Field field;
  int nvars = 0;
  std::function<std::optional<Poly>(const std::string&)> lookup;
  std::function<Poly(const Poly&)> invert;
  std::function<Poly(const Poly&)> reduce;
};

Poly parse_expression(const std::string& text, const ParseContext& ctx);

}  // namespace finsch
