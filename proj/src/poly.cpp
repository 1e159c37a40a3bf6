#include "finsch/poly.hpp"

#include <algorithm>
#include <cctype>

#include "finsch/errors.hpp"

namespace finsch {

Poly Poly::constant(Field f, int nvars, const Scalar& c) {
  Poly p(f, nvars);
  p.add_term(Exp(nvars, 0), c);
  return p;
}

Poly Poly::variable(Field f, int nvars, int i) {
  Exp e(nvars, 0);
  e[i] = 1;
  return monomial(f, nvars, e, 1);
}

Poly Poly::monomial(Field f, int nvars, const Exp& e, const Scalar& c) {
  Poly p(f, nvars);
  p.add_term(e, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int x : terms_.begin()->first)
    if (x != 0) return false;
  return true;
}

Scalar Poly::constant_term() const { return coeff(Exp(nvars_, 0)); }

Scalar Poly::coeff(const Exp& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(0) : it->second;
}

int Poly::degree_in(int v) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
  return d;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

void Poly::add_term(const Exp& e, const Scalar& c) {
  Scalar v = field_.normalize(c);
  if (v == 0) return;
  auto [it, inserted] = terms_.emplace(e, v);
  if (!inserted) {
    it->second = field_.add(it->second, v);
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  if (r.nvars_ == 0 && r.terms_.empty()) {
    r.nvars_ = o.nvars_;
    r.field_ = o.field_;
  }
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r(field_, nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, field_.neg(c));
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(field_, std::max(nvars_, o.nvars_));
  Exp e(r.nvars_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      for (int i = 0; i < r.nvars_; ++i) e[i] = a[i] + b[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::scaled(const Scalar& c) const {
  Poly r(field_, nvars_);
  for (const auto& [e, x] : terms_) r.add_term(e, x * c);
  return r;
}

Poly Poly::times_monomial(const Exp& m, const Scalar& c) const {
  Poly r(field_, nvars_);
  Exp e(nvars_);
  for (const auto& [a, x] : terms_) {
    for (int i = 0; i < nvars_; ++i) e[i] = a[i] + m[i];
    r.add_term(e, x * c);
  }
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly result = constant(field_, nvars_, 1);
  Poly base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  int m = images.empty() ? 0 : images.front().nvars();
  Field f = images.empty() ? field_ : images.front().field();
  Poly result(f, m);
  std::vector<std::vector<Poly>> powers(nvars_);
  for (const auto& [e, c] : terms_) {
    Poly t = constant(f, m, c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(f, m, 1));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      t = t * pw[e[i]];
    }
    result += t;
  }
  return result;
}

Poly Poly::embed(int new_nvars, const std::vector<int>& var_map) const {
  Poly r(field_, new_nvars);
  for (const auto& [e, c] : terms_) {
    Exp ne(new_nvars, 0);
    for (int i = 0; i < nvars_; ++i) ne[var_map[i]] += e[i];
    r.add_term(ne, c);
  }
  return r;
}

int grevlex_cmp(const Exp& a, const Exp& b) {
  int da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da < db ? -1 : 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  return 0;
}

std::string Poly::to_string(const std::vector<std::string>& names, const std::vector<int>& sign) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exp, Scalar>> ts(terms_.begin(), terms_.end());
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return grevlex_cmp(a.first, b.first) > 0; });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : ts) {
    Scalar v = c;
    bool negative = v < 0;
    if (negative) v = -v;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      int s = sign.empty() ? 1 : sign[i];
      int k = s * e[i];
      mono += names[i];
      if (k != 1) mono += "^" + std::to_string(k);
    }
    if (mono.empty())
      out += v.get_str();
    else if (v == 1)
      out += mono;
    else
      out += v.get_str() + "*" + mono;
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, const ParseContext& ctx) : s_(s), ctx_(ctx) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  const std::string& s_;
  const ParseContext& ctx_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("cannot parse '" + s_ + "' at column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Poly red(const Poly& p) { return ctx_.reduce ? ctx_.reduce(p) : p; }

  Poly expr() {
    Poly p = term();
    for (;;) {
      if (eat('+'))
        p = p + term();
      else if (eat('-'))
        p = p - term();
      else
        return red(p);
    }
  }
  Poly term() {
    Poly p = unary();
    for (;;) {
      if (eat('*'))
        p = red(p * unary());
      else if (eat('/'))
        p = red(p * inverse(unary()));
      else
        return p;
    }
  }
  Poly inverse(const Poly& p) {
    if (p.is_constant() && !p.is_zero()) return Poly::constant(ctx_.field, ctx_.nvars, ctx_.field.inv(p.constant_term()));
    if (!ctx_.invert) fail("division by a non-constant");
    return ctx_.invert(p);
  }
  Poly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Poly power() {
    Poly base = atom();
    if (!eat('^')) return base;
    skip();
    bool negative = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      negative = true;
      ++pos_;
    } else if (eat('(')) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '-') {
        negative = true;
        ++pos_;
      }
      long k = integer();
      if (!eat(')')) fail("expected ')'");
      Poly b = negative ? inverse(base) : base;
      return raise(b, k);
    }
    long k = integer();
    Poly b = negative ? inverse(base) : base;
    return raise(b, k);
  }
  Poly raise(const Poly& b, long k) {
    Poly r = Poly::constant(ctx_.field, ctx_.nvars, 1);
    for (long i = 0; i < k; ++i) r = red(r * b);
    return r;
  }
  long integer() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(s_.substr(start, pos_ - start));
  }
  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly::constant(ctx_.field, ctx_.nvars, Scalar(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto v = ctx_.lookup ? ctx_.lookup(name) : std::nullopt;
      if (!v) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return *v;
    }
    fail("unexpected character");
  }
};

}  // namespace

Poly parse_expression(const std::string& text, const ParseContext& ctx) { return Parser(text, ctx).run(); }

}  // namespace finsch
