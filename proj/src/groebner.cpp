#include "finsch/groebner.hpp"

#include <algorithm>

#include "finsch/errors.hpp"

namespace finsch {

int MonomialOrder::compare(const Exp& a, const Exp& b) const {
  switch (type) {
    case Type::Grevlex:
      return grevlex_cmp(a, b);
    case Type::Lex:
      for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Type::Block: {
      Exp a1(a.begin(), a.begin() + block), b1(b.begin(), b.begin() + block);
      int c = grevlex_cmp(a1, b1);
      if (c != 0) return c;
      Exp a2(a.begin() + block, a.end()), b2(b.begin() + block, b.end());
      return grevlex_cmp(a2, b2);
    }
  }
  return 0;
}

namespace {

bool divides(const Exp& a, const Exp& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exp lcm_of(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exp minus(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

bool coprime(const Exp& a, const Exp& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

}  // namespace

GroebnerBasis::GroebnerBasis(Field f, int nvars, int ncomps, MonomialOrder order, const std::vector<Vec>& gens)
    : field_(f), nvars_(nvars), ncomps_(ncomps), order_(order) {
  std::vector<TVec> ts;
  for (const auto& v : gens) ts.push_back(to_tvec(v));
  add_and_complete(ts);
  finalize();
}

GroebnerBasis GroebnerBasis::of_ideal(Field f, int nvars, const std::vector<Poly>& gens, MonomialOrder order) {
  std::vector<Vec> vs;
  for (const auto& p : gens) vs.push_back({p});
  return GroebnerBasis(f, nvars, 1, order, vs);
}

GroebnerBasis GroebnerBasis::extended(const std::vector<Vec>& more) const {
  GroebnerBasis r(field_, nvars_, ncomps_, order_);
  r.basis_ = basis_;
  std::vector<TVec> ts;
  for (const auto& v : more) ts.push_back(to_tvec(v));
  r.add_and_complete(ts);
  r.finalize();
  return r;
}

GroebnerBasis GroebnerBasis::extended(const std::vector<Poly>& more) const {
  std::vector<Vec> vs;
  for (const auto& p : more) vs.push_back({p});
  return extended(vs);
}

int GroebnerBasis::cmp(int ca, const Exp& a, int cb, const Exp& b) const {
  if (ca != cb) return ca < cb ? 1 : -1;
  return order_.compare(a, b);
}

GroebnerBasis::TVec GroebnerBasis::to_tvec(const Vec& v) const {
  TVec t;
  for (int c = 0; c < static_cast<int>(v.size()); ++c)
    for (const auto& [e, x] : v[c].terms()) t.push_back({c, e, x});
  std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return cmp(a.comp, a.e, b.comp, b.e) < 0; });
  return t;
}

Vec GroebnerBasis::to_vec(const TVec& t) const {
  Vec v(ncomps_, Poly(field_, nvars_));
  for (const auto& term : t) v[term.comp].add_term(term.e, term.c);
  return v;
}

GroebnerBasis::TVec GroebnerBasis::sub_mul(const TVec& p, const Scalar& c, const Exp& m, const TVec& g) const {
  TVec r;
  r.reserve(p.size() + g.size());
  size_t i = 0, j = 0;
  Exp shifted(nvars_);
  auto shift = [&](const Term& t) {
    for (int k = 0; k < nvars_; ++k) shifted[k] = t.e[k] + m[k];
  };
  if (j < g.size()) shift(g[j]);
  while (i < p.size() || j < g.size()) {
    int s;
    if (i == p.size())
      s = 1;
    else if (j == g.size())
      s = -1;
    else
      s = cmp(p[i].comp, p[i].e, g[j].comp, shifted);
    if (s < 0) {
      r.push_back(p[i++]);
    } else if (s > 0) {
      r.push_back({g[j].comp, shifted, field_.neg(field_.mul(c, g[j].c))});
      ++j;
      if (j < g.size()) shift(g[j]);
    } else {
      Scalar v = field_.sub(p[i].c, field_.mul(c, g[j].c));
      if (v != 0) r.push_back({p[i].comp, p[i].e, v});
      ++i;
      ++j;
      if (j < g.size()) shift(g[j]);
    }
  }
  return r;
}

GroebnerBasis::TVec GroebnerBasis::normal_form(TVec p, bool full) const {
  TVec rem;  // collected irreducible terms, descending
  while (!p.empty()) {
    const Term& lt = p.back();
    const TVec* div = nullptr;
    for (const auto& g : basis_) {
      const Term& gl = g.back();
      if (gl.comp == lt.comp && divides(gl.e, lt.e)) {
        div = &g;
        break;
      }
    }
    if (div) {
      Scalar c = field_.div(lt.c, div->back().c);
      p = sub_mul(p, c, minus(lt.e, div->back().e), *div);
    } else {
      if (!full) break;
      rem.push_back(lt);
      p.pop_back();
    }
  }
  if (!full) return p;
  std::reverse(rem.begin(), rem.end());
  return rem;
}

void GroebnerBasis::make_monic(TVec& t) const {
  if (t.empty()) return;
  Scalar inv = field_.inv(t.back().c);
  for (auto& term : t) term.c = field_.mul(term.c, inv);
}

void GroebnerBasis::add_and_complete(const std::vector<TVec>& gens) {
  struct Pair {
    size_t i, j;
    int comp;
    Exp lcm;
  };
  std::vector<Pair> pairs;
  bool unit = false;

  auto add = [&](TVec h) {
    make_monic(h);
    size_t k = basis_.size();
    const Term& hl = h.back();
    if (ncomps_ == 1) {
      bool is_const = true;
      for (int x : hl.e)
        if (x) is_const = false;
      if (is_const) unit = true;
    }
    std::vector<Pair> kept;
    for (const auto& pr : pairs) {
      const Exp& li = basis_[pr.i].back().e;
      const Exp& lj = basis_[pr.j].back().e;
      if (pr.comp == hl.comp && divides(hl.e, pr.lcm) && lcm_of(li, hl.e) != pr.lcm && lcm_of(lj, hl.e) != pr.lcm)
        continue;
      kept.push_back(pr);
    }
    pairs.swap(kept);
    basis_.push_back(std::move(h));
    const Term& nl = basis_[k].back();
    std::vector<Pair> fresh;
    for (size_t i = 0; i < k; ++i) {
      const Term& gl = basis_[i].back();
      if (gl.comp != nl.comp) continue;
      if (ncomps_ == 1 && coprime(gl.e, nl.e)) continue;
      fresh.push_back({i, k, nl.comp, lcm_of(gl.e, nl.e)});
    }
    // Among new pairs with a lcm divisible by another new pair's lcm, keep the smaller.
    std::vector<Pair> pruned;
    for (size_t a = 0; a < fresh.size(); ++a) {
      bool drop = false;
      for (size_t b = 0; b < fresh.size() && !drop; ++b) {
        if (a == b) continue;
        if (divides(fresh[b].lcm, fresh[a].lcm) && (fresh[b].lcm != fresh[a].lcm || b < a)) drop = true;
      }
      if (!drop) pruned.push_back(fresh[a]);
    }
    for (auto& p : pruned) pairs.push_back(std::move(p));
  };

  for (const auto& g : gens) {
    if (unit) break;
    TVec h = normal_form(g, true);
    if (!h.empty()) add(std::move(h));
  }
  while (!pairs.empty() && !unit) {
    size_t best = 0;
    for (size_t a = 1; a < pairs.size(); ++a)
      if (cmp(pairs[a].comp, pairs[a].lcm, pairs[best].comp, pairs[best].lcm) < 0) best = a;
    Pair pr = pairs[best];
    pairs.erase(pairs.begin() + static_cast<long>(best));
    const TVec& f = basis_[pr.i];
    const TVec& g = basis_[pr.j];
    TVec s = sub_mul({}, field_.neg(field_.inv(f.back().c)), minus(pr.lcm, f.back().e), f);
    s = sub_mul(s, field_.inv(g.back().c), minus(pr.lcm, g.back().e), g);
    TVec h = normal_form(std::move(s), true);
    if (!h.empty()) add(std::move(h));
  }
  if (unit) {
    TVec one{{0, Exp(nvars_, 0), Scalar(1)}};
    basis_.assign(1, one);
  }
}

void GroebnerBasis::finalize() {
  std::vector<TVec> minimal;
  for (size_t i = 0; i < basis_.size(); ++i) {
    const Term& li = basis_[i].back();
    bool redundant = false;
    for (size_t j = 0; j < basis_.size() && !redundant; ++j) {
      if (i == j) continue;
      const Term& lj = basis_[j].back();
      if (lj.comp == li.comp && divides(lj.e, li.e) && (lj.e != li.e || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis_[i]);
  }
  basis_ = minimal;
  for (size_t i = 0; i < basis_.size(); ++i) {
    TVec head{basis_[i].back()};
    TVec tail(basis_[i].begin(), basis_[i].end() - 1);
    std::vector<TVec> others;
    for (size_t j = 0; j < basis_.size(); ++j)
      if (j != i) others.push_back(basis_[j]);
    std::swap(basis_, others);
    TVec red = normal_form(tail, true);
    std::swap(basis_, others);
    red.push_back(head.back());
    make_monic(red);
    basis_[i] = red;
  }
  std::sort(basis_.begin(), basis_.end(), [&](const TVec& a, const TVec& b) {
    return cmp(a.back().comp, a.back().e, b.back().comp, b.back().e) > 0;
  });
}

Vec GroebnerBasis::reduce(const Vec& v) const { return to_vec(normal_form(to_tvec(v), true)); }

Poly GroebnerBasis::reduce(const Poly& p) const { return reduce(Vec{p})[0]; }

bool GroebnerBasis::contains(const Vec& v) const { return normal_form(to_tvec(v), false).empty(); }

bool GroebnerBasis::contains(const Poly& p) const { return contains(Vec{p}); }

bool GroebnerBasis::is_unit_ideal() const {
  if (ncomps_ != 1 || basis_.size() != 1) return false;
  for (int x : basis_[0].back().e)
    if (x) return false;
  return true;
}

std::vector<Vec> GroebnerBasis::elements() const {
  std::vector<Vec> r;
  for (const auto& t : basis_) r.push_back(to_vec(t));
  return r;
}

std::vector<Poly> GroebnerBasis::polys() const {
  std::vector<Poly> r;
  for (const auto& t : basis_) r.push_back(to_vec(t)[0]);
  return r;
}

std::vector<std::pair<int, Exp>> GroebnerBasis::leading_monomials() const {
  std::vector<std::pair<int, Exp>> r;
  for (const auto& t : basis_) r.emplace_back(t.back().comp, t.back().e);
  return r;
}

std::vector<Vec> syzygies(Field f, int nvars, int g, const std::vector<Vec>& v, const std::vector<Vec>& sub,
                          MonomialOrder order) {
  int m = static_cast<int>(v.size());
  std::vector<Vec> gens;
  for (int i = 0; i < m; ++i) {
    Vec row(g + m, Poly(f, nvars));
    for (int c = 0; c < g; ++c) row[c] = v[i][c];
    row[g + i] = Poly::constant(f, nvars, 1);
    gens.push_back(row);
  }
  for (const auto& s : sub) {
    Vec row(g + m, Poly(f, nvars));
    for (int c = 0; c < g; ++c) row[c] = s[c];
    gens.push_back(row);
  }
  GroebnerBasis gb(f, nvars, g + m, order, gens);
  std::vector<Vec> out;
  for (const auto& e : gb.elements()) {
    bool head_zero = true;
    for (int c = 0; c < g; ++c)
      if (!e[c].is_zero()) head_zero = false;
    if (!head_zero) continue;
    out.emplace_back(e.begin() + g, e.end());
  }
  return out;
}

Lifter::Lifter(Field f, int nvars, int g, const std::vector<Vec>& gens, const std::vector<Vec>& sub,
               MonomialOrder order)
    : g_(g), m_(static_cast<int>(gens.size())), field_(f), nvars_(nvars) {
  std::vector<Vec> rows;
  for (int i = 0; i < m_; ++i) {
    Vec row(g + m_, Poly(f, nvars));
    for (int c = 0; c < g; ++c) row[c] = gens[i][c];
    row[g + i] = Poly::constant(f, nvars, 1);
    rows.push_back(row);
  }
  for (const auto& s : sub) {
    Vec row(g + m_, Poly(f, nvars));
    for (int c = 0; c < g; ++c) row[c] = s[c];
    rows.push_back(row);
  }
  gb_ = std::make_shared<GroebnerBasis>(f, nvars, g + m_, order, rows);
}

std::optional<Vec> Lifter::lift(const Vec& target) const {
  Vec row(g_ + m_, Poly(field_, nvars_));
  for (int c = 0; c < g_; ++c) row[c] = target[c];
  Vec r = gb_->reduce(row);
  for (int c = 0; c < g_; ++c)
    if (!r[c].is_zero()) return std::nullopt;
  Vec b;
  for (int i = 0; i < m_; ++i) b.push_back(-r[g_ + i]);
  return b;
}

std::optional<Vec> lift(Field f, int nvars, int g, const Vec& target, const std::vector<Vec>& gens,
                        const std::vector<Vec>& sub, MonomialOrder order) {
  return Lifter(f, nvars, g, gens, sub, order).lift(target);
}

}  // namespace finsch
