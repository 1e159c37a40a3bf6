#include "finsch/field.hpp"

#include <cctype>

#include "finsch/errors.hpp"

namespace finsch {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Field Field::prime(long p) {
  if (!is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
  Field f;
  f.kind_ = Kind::Prime;
  f.p_ = p;
  return f;
}

Field Field::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "Q" || t == "QQ" || t == "rationals") return rationals();
  std::string digits;
  if (t.rfind("F_", 0) == 0)
    digits = t.substr(2);
  else if (t.rfind("GF(", 0) == 0 && t.back() == ')')
    digits = t.substr(3, t.size() - 4);
  else if (t.rfind("F", 0) == 0)
    digits = t.substr(1);
  if (digits.empty()) throw ParseError("unknown field '" + text + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("unknown field '" + text + "'");
  return prime(std::stol(digits));
}

std::string Field::name() const {
  if (kind_ == Kind::Rationals) return "Q";
  return "F_" + std::to_string(p_);
}

Scalar Field::normalize(const Scalar& a) const {
  if (kind_ == Kind::Rationals) return a;
  mpz_class p(p_);
  mpz_class num = a.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = a.get_den() % p;
  if (den == 0) throw Error("denominator divisible by the characteristic");
  if (den != 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    num = (num * inv) % p;
  }
  return Scalar(num);
}

Scalar Field::inv(const Scalar& a) const {
  if (a == 0) throw Error("division by zero");
  if (kind_ == Kind::Rationals) return Scalar(1) / a;
  mpz_class p(p_), r;
  mpz_class n = normalize(a).get_num();
  mpz_invert(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  return Scalar(r);
}

std::string scalar_to_string(const Scalar& a) { return a.get_str(); }

}  // namespace finsch
