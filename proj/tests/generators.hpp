#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "finsch/classify.hpp"
#include "finsch/cohomology.hpp"
#include "finsch/algebra.hpp"
#include "finsch/space.hpp"

namespace gen {

using Order = std::vector<std::vector<bool>>;

inline Order closure(Order o) {
  int n = static_cast<int>(o.size());
  for (int i = 0; i < n; ++i) o[i][i] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (o[i][k] && o[k][j]) o[i][j] = true;
  return o;
}

inline std::vector<bool> flatten(const Order& o, const std::vector<int>& perm) {
  int n = static_cast<int>(o.size());
  std::vector<bool> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.push_back(o[perm[i]][perm[j]]);
  return out;
}

// Partial orders on n points up to isomorphism, each labelled so that i < j
// implies i precedes j.
inline std::vector<Order> posets(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  std::set<std::vector<bool>> seen;
  std::vector<Order> out;
  for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
    Order o(n, std::vector<bool>(n, false));
    for (size_t k = 0; k < pairs.size(); ++k)
      if (mask & (1u << k)) o[pairs[k].first][pairs[k].second] = true;
    Order c = closure(o);
    bool closed = true;
    for (size_t k = 0; k < pairs.size(); ++k)
      if (c[pairs[k].first][pairs[k].second] != bool(mask & (1u << k))) closed = false;
    if (!closed) continue;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<bool> best = flatten(c, perm);
    while (std::next_permutation(perm.begin(), perm.end())) best = std::min(best, flatten(c, perm));
    if (seen.insert(best).second) out.push_back(c);
  }
  return out;
}

// Roots inverted at each point, growing along the order.
using Roots = std::vector<std::set<int>>;

inline Roots random_roots(const Order& o, std::mt19937& rng) {
  int n = static_cast<int>(o.size());
  Roots s(n);
  for (int q = 0; q < n; ++q) {
    for (int p = 0; p < q; ++p)
      if (o[p][q]) s[q].insert(s[p].begin(), s[p].end());
    for (int r = 0; r < 3; ++r)
      if (rng() % 3 == 0) s[q].insert(r);
  }
  return s;
}

inline std::string root_poly(const std::set<int>& s) {
  std::string out;
  for (int r : s) out += (out.empty() ? "" : "*") + std::string("(x-") + std::to_string(r) + ")";
  return out;
}

// Stalk k[x][1/prod_{r in S_p}(x - r)] at every point, localization restrictions.
inline finsch::SpacePtr localization_space(const Order& o, const Roots& s) {
  using namespace finsch;
  int n = static_cast<int>(o.size());
  Field q = Field::rationals();
  std::vector<std::string> names;
  std::vector<AlgebraPtr> stalks;
  for (int p = 0; p < n; ++p) {
    names.push_back("p" + std::to_string(p));
    std::vector<std::string> inv;
    if (!s[p].empty()) inv.push_back(root_poly(s[p]));
    stalks.push_back(LocAlgebra::from_strings(q, {"x"}, {}, inv));
  }
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !o[a][b]) continue;
      bool cover = true;
      for (int c = 0; c < n; ++c)
        if (c != a && c != b && o[a][c] && o[c][b]) cover = false;
      if (!cover) continue;
      std::vector<Poly> extra;
      if (!s[b].empty()) extra.push_back(stalks[a]->parse(root_poly(s[b])));
      edges.push_back({a, b, AlgHom::localization(stalks[a], stalks[b], {stalks[b]->var(0)}, extra)});
    }
  return FinSpace::make(q, names, stalks, edges);
}

// O_p -> prod_{q > p} O_q is faithfully flat iff the opens D(f_q) cover D(f_p),
// i.e. no root outside S_p is inverted at every q > p.
inline bool removable_oracle(const Order& o, const Roots& s, const std::vector<int>& alive, int p) {
  std::set<int> common = {0, 1, 2};
  bool any = false;
  for (int q : alive) {
    if (q == p || !o[p][q]) continue;
    any = true;
    std::set<int> keep;
    for (int r : common)
      if (s[q].count(r)) keep.insert(r);
    common = keep;
  }
  if (!any) return false;
  for (int r : s[p]) common.erase(r);
  return common.empty();
}

// Terminal point sets reached by removing removable points one at a time in
// every possible order.
inline void removal_leaves(const finsch::SpacePtr& x, std::vector<int> alive, std::set<std::vector<int>>& leaves,
                           std::set<std::vector<int>>& visited) {
  if (!visited.insert(alive).second) return;
  auto sub = finsch::subspace(x, alive);
  auto rem = finsch::removable_points(*sub.space);
  if (rem.empty()) {
    leaves.insert(alive);
    return;
  }
  for (int r : rem) {
    std::vector<int> next;
    for (size_t i = 0; i < alive.size(); ++i)
      if (static_cast<int>(i) != r) next.push_back(alive[i]);
    removal_leaves(x, next, leaves, visited);
  }
}


using QVec = std::vector<mpq_class>;

inline int rank_of(const std::vector<QVec>& rows) {
  std::vector<QVec> m = rows;
  int r = 0;
  int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (size_t i = 0; i < m.size(); ++i)
      if (static_cast<int>(i) != r && m[i][c] != 0) {
        mpq_class f = m[i][c] / m[r][c];
        for (int k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
      }
    ++r;
  }
  return r;
}

// Independent subfamily spanning the same space.
inline std::vector<QVec> independent(const std::vector<QVec>& vs) {
  std::vector<QVec> out;
  for (const auto& v : vs) {
    out.push_back(v);
    if (rank_of(out) < static_cast<int>(out.size())) out.pop_back();
  }
  return out;
}

// Coefficients c with v = sum c_i basis_i (basis independent, v in the span).
inline QVec solve(const std::vector<QVec>& basis, const QVec& v) {
  int n = static_cast<int>(v.size()), k = static_cast<int>(basis.size());
  std::vector<QVec> m(n, QVec(k + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) m[i][j] = basis[j][i];
    m[i][k] = v[i];
  }
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < k && r < n; ++c) {
    int p = r;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(m[p], m[r]);
    mpq_class inv = 1 / m[r][c];
    for (int j = 0; j <= k; ++j) m[r][j] *= inv;
    for (int i = 0; i < n; ++i)
      if (i != r && m[i][c] != 0) {
        mpq_class f = m[i][c];
        for (int j = 0; j <= k; ++j) m[i][j] -= f * m[r][j];
      }
    piv.push_back(c);
    ++r;
  }
  QVec out(k, 0);
  for (int i = 0; i < r; ++i) out[piv[i]] = m[i][k];
  return out;
}

// Sheaf x -> W_x / W'_x of subquotients of Q^6 with W, W' growing along the
// order and maps induced by the identity of Q^6.
inline finsch::VecSheaf random_subquotient_sheaf(const Order& o, std::mt19937& rng, int max_dim = 3) {
  using namespace finsch;
  const int amb = 6;
  int n = static_cast<int>(o.size());
  auto random_vec = [&]() {
    QVec v(amb);
    for (auto& c : v) c = static_cast<int>(rng() % 7) - 3;
    return v;
  };
  for (;;) {
    std::vector<std::vector<QVec>> w(n), w0(n), basis(n);
    bool ok = true;
    for (int q = 0; q < n && ok; ++q) {
      std::vector<QVec> a, b;
      for (int p = 0; p < q; ++p)
        if (o[p][q]) {
          a.insert(a.end(), w[p].begin(), w[p].end());
          b.insert(b.end(), w0[p].begin(), w0[p].end());
        }
      for (int k = static_cast<int>(rng() % 3); k > 0; --k) a.push_back(random_vec());
      w[q] = independent(a);
      for (int k = static_cast<int>(rng() % 2); k > 0 && !w[q].empty(); --k) {
        QVec v(amb, 0);
        for (const auto& u : w[q]) {
          int c = static_cast<int>(rng() % 5) - 2;
          for (int i = 0; i < amb; ++i) v[i] += c * u[i];
        }
        b.push_back(v);
      }
      w0[q] = independent(b);
      std::vector<QVec> acc = w0[q];
      for (const auto& u : w[q]) {
        acc.push_back(u);
        if (rank_of(acc) == static_cast<int>(acc.size())) basis[q].push_back(u);
        else acc.pop_back();
      }
      if (static_cast<int>(basis[q].size()) > max_dim) ok = false;
    }
    if (!ok) continue;
    VecSheaf f;
    f.field = Field::rationals();
    f.leq = o;
    for (int q = 0; q < n; ++q) f.dims.push_back(static_cast<int>(basis[q].size()));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (x == y || !o[x][y]) continue;
        std::vector<QVec> full = basis[y];
        full.insert(full.end(), w0[y].begin(), w0[y].end());
        Matrix m(f.field, f.dims[y], f.dims[x]);
        for (int j = 0; j < f.dims[x]; ++j) {
          QVec c = solve(full, basis[x][j]);
          for (int i = 0; i < f.dims[y]; ++i) m.at(i, j) = c[i];
        }
        f.maps.emplace(std::make_pair(x, y), m);
      }
    return f;
  }
}


// a x + b y + c
struct Linear {
  int a, b, c;
};
using Product = std::vector<Linear>;

inline std::string to_text(const Product& p, int nvars) {
  if (p.empty()) return "1";
  std::string out;
  for (const auto& l : p) {
    std::string f = std::to_string(l.a) + "*x";
    if (nvars > 1) f += " + " + std::to_string(l.b) + "*y";
    f += " + " + std::to_string(l.c);
    out += (out.empty() ? "" : "*") + ("(" + f + ")");
  }
  return out;
}

inline long eval_mod(const Product& p, long x, long y, long prime) {
  long v = 1;
  for (const auto& l : p) v = v * ((((l.a * x + l.b * y + l.c) % prime) + prime) % prime) % prime;
  return v;
}

inline Linear random_linear(int nvars, std::mt19937& rng, int range) {
  for (;;) {
    Linear l{static_cast<int>(rng() % (2 * range + 1)) - range, nvars > 1 ? static_cast<int>(rng() % (2 * range + 1)) - range : 0,
             static_cast<int>(rng() % (2 * range + 1)) - range};
    if (l.a != 0 || l.b != 0) return l;
  }
}

inline Product random_product(int nvars, std::mt19937& rng, int max_factors, int range) {
  Product p;
  int k = 1 + static_cast<int>(rng() % max_factors);
  for (int i = 0; i < k; ++i) p.push_back(random_linear(nvars, rng, range));
  return p;
}

// A finite cover of D(h) in the affine space by the D(s_i).
struct CoverInstance {
  int nvars;
  Product h;
  std::vector<Product> s;
};

inline CoverInstance random_cover(std::mt19937& rng, int nvars) {
  CoverInstance c{nvars, {}, {}};
  if (rng() % 2) c.h = random_product(nvars, rng, 1, 2);
  int k = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < k; ++i) c.s.push_back(random_product(nvars, rng, 2, 2));
  return c;
}

// No point of D(h) over F_p where every s_i vanishes. The zero sets involved
// are unions of rational affine subspaces, so rational points suffice.
inline bool cover_oracle(const CoverInstance& c, long prime) {
  long ny = c.nvars > 1 ? prime : 1;
  for (long x = 0; x < prime; ++x)
    for (long y = 0; y < ny; ++y) {
      if (eval_mod(c.h, x, y, prime) == 0) continue;
      bool all = true;
      for (const auto& s : c.s)
        if (eval_mod(s, x, y, prime) != 0) all = false;
      if (all) return false;
    }
  return true;
}

using finsch::AlgebraPtr;
using finsch::AlgHom;
using finsch::Field;
using finsch::GroebnerBasis;
using finsch::LocAlgebra;
using finsch::MonomialOrder;
using finsch::Poly;

// A -> A[1/s] with A = Q[x] or Q[x,y], s a product of linear forms, and an
// ideal of A[1/s].
struct LocInstance {
  AlgebraPtr a;
  AlgHom f;
  std::vector<Poly> ideal;  // generators of an ideal of the target
};

inline LocInstance random_localization(std::mt19937& rng, int nvars) {
  Field q = Field::rationals();
  std::vector<std::string> vars = nvars == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
  auto a = LocAlgebra::from_strings(q, vars, {}, {});
  Product s = random_product(nvars, rng, 2, 2);
  AlgHom f = AlgHom::localize(a, {a->parse(to_text(s, nvars))});
  const auto& b = f.target();
  std::vector<Poly> ideal;
  int k = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < k; ++i) {
    Poly g = b->parse(to_text(random_product(nvars, rng, 2, 3), nvars));
    if (rng() % 2) g = g * b->inverse_var(0);
    ideal.push_back(b->reduce(g));
  }
  return {a, f, ideal};
}

// I cap A for an ideal I of A[1/s]: eliminate the inverse variable.
inline std::vector<Poly> contraction(const LocAlgebra& b, const std::vector<Poly>& gens) {
  int n = b.nvars();
  int m = n + 1;
  std::vector<int> to_front(m), back(m);
  for (int i = 0; i < n; ++i) to_front[i] = i + 1;
  to_front[n] = 0;
  for (int i = 0; i < m; ++i) back[to_front[i]] = i;
  std::vector<Poly> moved;
  for (const auto& p : b.ideal_gb(gens).polys()) moved.push_back(p.embed(m, to_front));
  auto gb = GroebnerBasis::of_ideal(b.field(), m, moved, MonomialOrder::eliminate(1));
  std::vector<Poly> out;
  for (const auto& p : gb.polys())
    if (p.degree_in(0) == 0) out.push_back(p.embed(m, back));
  return out;
}

}  // namespace gen
