#include "finsch/qcoh.hpp"

#include <algorithm>
#include <deque>

#include "finsch/errors.hpp"

namespace finsch {

namespace {

std::vector<Vec> generators_of(const FpModule& m) {
  std::vector<Vec> g;
  for (int j = 0; j < m.ngens(); ++j) g.push_back(m.generator(j));
  return g;
}

std::vector<ModEdge> identity_edges(const FinSpace& x, const std::vector<FpModule>& stalks) {
  std::vector<ModEdge> edges;
  for (const auto& e : x.edges()) edges.push_back({e.from, e.to, generators_of(stalks[e.to])});
  return edges;
}

}  // namespace

SheafModule::SheafModule(SpacePtr space, std::vector<FpModule> stalks, std::vector<ModEdge> edges)
    : space_(std::move(space)), stalks_(std::move(stalks)), edges_(std::move(edges)) {
  int n = space_->size();
  if (static_cast<int>(stalks_.size()) != n) throw Error("one module per point is required");
  for (int x = 0; x < n; ++x) {
    const auto& r = stalks_[x].ring();
    if (r.get() != space_->stalk(x).get() && !r->same_presentation(*space_->stalk(x)))
      throw Error("module at " + space_->name(x) + " is not over the stalk of the space");
    identity_images_.push_back(generators_of(stalks_[x]));
  }
  std::vector<std::vector<int>> out(n);
  for (size_t i = 0; i < edges_.size(); ++i) {
    auto& e = edges_[i];
    if (e.from < 0 || e.to < 0 || e.from >= n || e.to >= n || e.from == e.to || !space_->leq(e.from, e.to))
      throw Error("module restriction along a pair that is not an order relation");
    if (static_cast<int>(e.images.size()) != stalks_[e.from].ngens())
      throw InvalidHom("module restriction " + space_->name(e.from) + " -> " + space_->name(e.to) +
                       " needs one image per generator");
    for (auto& v : e.images) {
      if (static_cast<int>(v.size()) != stalks_[e.to].ngens()) throw InvalidHom("module restriction image has the wrong length");
      v = stalks_[e.to].reduce(v);
    }
    ModHom(stalks_[e.from].base_change(space_->restriction(e.from, e.to)), stalks_[e.to], e.images);
    out[e.from].push_back(static_cast<int>(i));
  }
  for (int x = 0; x < n; ++x) {
    std::vector<bool> seen(n, false);
    seen[x] = true;
    std::deque<int> queue{x};
    while (!queue.empty()) {
      int p = queue.front();
      queue.pop_front();
      for (int ei : out[p]) {
        const ModEdge& e = edges_[ei];
        if (seen[e.to]) continue;
        seen[e.to] = true;
        if (p == x) {
          images_[{x, e.to}] = e.images;
        } else {
          std::vector<Vec> imgs;
          const AlgHom& r = space_->restriction(p, e.to);
          const FpModule& t = stalks_[e.to];
          for (const auto& v : images_.at({x, p})) {
            Vec coeffs;
            for (const auto& c : v) coeffs.push_back(r.apply(c));
            imgs.push_back(t.reduce(vec_combine(*t.ring(), coeffs, e.images, t.ngens())));
          }
          images_[{x, e.to}] = imgs;
        }
        queue.push_back(e.to);
      }
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && space_->leq(x, y) && !images_.count({x, y}))
        throw Error("module restriction " + space_->name(x) + " -> " + space_->name(y) + " is missing");
}

SheafModule SheafModule::structure_sheaf(const SpacePtr& x) { return free(x, 1); }

SheafModule SheafModule::free(const SpacePtr& x, int rank) {
  std::vector<FpModule> stalks;
  for (int i = 0; i < x->size(); ++i) stalks.push_back(FpModule::free(x->stalk(i), rank));
  return SheafModule(x, stalks, identity_edges(*x, stalks));
}

SheafModule SheafModule::zero(const SpacePtr& x) { return free(x, 0); }

const std::vector<Vec>& SheafModule::images(int x, int y) const {
  if (x == y) return identity_images_[x];
  auto it = images_.find({x, y});
  if (it == images_.end()) throw Error("no module restriction between incomparable points");
  return it->second;
}

Vec SheafModule::restrict(int x, int y, const Vec& v) const {
  const auto& imgs = images(x, y);
  const AlgHom& r = space_->restriction(x, y);
  const FpModule& t = stalks_[y];
  Vec coeffs;
  for (const auto& p : v) coeffs.push_back(r.apply(p));
  return t.reduce(vec_combine(*t.ring(), coeffs, imgs, t.ngens()));
}

ModHom SheafModule::base_changed_restriction(int x, int y) const {
  return ModHom(stalks_[x].base_change(space_->restriction(x, y)), stalks_[y], images(x, y));
}

bool SheafModule::graded() const {
  for (const auto& m : stalks_)
    if (!m.graded()) return false;
  return true;
}

std::vector<std::string> SheafModule::validate() const {
  std::vector<std::string> out;
  int n = space_->size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y || !space_->leq(x, y)) continue;
      for (int z = 0; z < n; ++z) {
        if (z == y || !space_->leq(y, z)) continue;
        const auto& direct = images(x, z);
        for (size_t j = 0; j < direct.size(); ++j)
          if (!stalks_[z].equal(restrict(y, z, images(x, y)[j]), direct[j])) {
            out.push_back("module restrictions " + space_->name(x) + " -> " + space_->name(y) + " -> " +
                          space_->name(z) + " do not compose");
            break;
          }
      }
    }
  return out;
}

SheafModule transport(const SheafModule& m, const SpacePtr& target, const std::vector<int>& pts) {
  std::vector<FpModule> stalks;
  for (int p : pts) stalks.push_back(m.stalk(p));
  std::vector<ModEdge> edges;
  for (const auto& e : target->edges()) edges.push_back({e.from, e.to, m.images(pts[e.from], pts[e.to])});
  return SheafModule(target, stalks, edges);
}

SheafModule restrict_to(const SheafModule& m, const Embedded& e) { return transport(m, e.space, e.points); }

SheafModHom::SheafModHom(SheafModule source, SheafModule target, std::vector<ModHom> maps)
    : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps)) {
  if (static_cast<int>(maps_.size()) != source_.space()->size()) throw Error("one module map per point is required");
}

std::vector<std::string> SheafModHom::validate() const {
  std::vector<std::string> out;
  const auto& x = *source_.space();
  for (int a = 0; a < x.size(); ++a)
    for (int b = 0; b < x.size(); ++b) {
      if (a == b || !x.leq(a, b)) continue;
      for (int j = 0; j < source_.stalk(a).ngens(); ++j) {
        Vec l = target_.restrict(a, b, maps_[a].images()[j]);
        Vec r = maps_[b].apply(source_.images(a, b)[j]);
        if (!target_.stalk(b).equal(l, r)) {
          out.push_back("module map does not commute with restriction " + x.name(a) + " -> " + x.name(b));
          break;
        }
      }
    }
  return out;
}

QcReport is_quasi_coherent(const SheafModule& m) {
  QcReport rep;
  const auto& x = *m.space();
  for (int a = 0; a < x.size(); ++a)
    for (int b = 0; b < x.size(); ++b)
      if (a != b && x.leq(a, b) && !m.base_changed_restriction(a, b).is_isomorphism()) {
        rep.quasi_coherent = false;
        rep.failing.push_back({a, b});
      }
  return rep;
}

SheafKernel kernel(const SheafModHom& h) {
  const auto& x = h.source().space();
  std::vector<KernelResult> ks;
  std::vector<FpModule> stalks;
  for (int a = 0; a < x->size(); ++a) {
    ks.push_back(kernel(h.at(a)));
    stalks.push_back(ks.back().module);
  }
  std::vector<ModEdge> edges;
  for (const auto& e : x->edges()) {
    ModuleLifter lifter(h.source().stalk(e.to), ks[e.to].inclusion.images());
    std::vector<Vec> imgs;
    for (const auto& v : ks[e.from].inclusion.images()) {
      auto c = lifter.lift(h.source().restrict(e.from, e.to, v));
      if (!c) throw Error("restriction does not preserve the kernel; the map is not a sheaf map");
      imgs.push_back(*c);
    }
    edges.push_back({e.from, e.to, imgs});
  }
  SheafModule k(x, stalks, edges);
  std::vector<ModHom> inc;
  for (auto& r : ks) inc.push_back(r.inclusion);
  return {k, SheafModHom(k, h.source(), inc)};
}

SheafCokernel cokernel(const SheafModHom& h) {
  const auto& x = h.target().space();
  std::vector<CokernelResult> cs;
  std::vector<FpModule> stalks;
  for (int a = 0; a < x->size(); ++a) {
    cs.push_back(cokernel(h.at(a)));
    stalks.push_back(cs.back().module);
  }
  std::vector<ModEdge> edges;
  for (const auto& e : x->edges()) edges.push_back({e.from, e.to, h.target().images(e.from, e.to)});
  SheafModule c(x, stalks, edges);
  std::vector<ModHom> proj;
  for (auto& r : cs) proj.push_back(r.projection);
  return {c, SheafModHom(h.target(), c, proj)};
}

SheafModule pullback(const SpaceMap& f, const SheafModule& n) {
  const auto& x = f.source();
  std::vector<FpModule> stalks;
  for (int a = 0; a < x->size(); ++a) stalks.push_back(n.stalk(f(a)).base_change(f.comorphism(a)));
  std::vector<ModEdge> edges;
  for (const auto& e : x->edges()) {
    std::vector<Vec> imgs;
    for (const auto& v : n.images(f(e.from), f(e.to))) imgs.push_back(vec_apply(f.comorphism(e.to), v));
    edges.push_back({e.from, e.to, imgs});
  }
  return SheafModule(x, stalks, edges);
}

Pushforward pushforward(const SpaceMap& f, const SheafModule& m) {
  Pushforward p{f, m, {}};
  const auto& x = *f.source();
  const auto& y = *f.target();
  for (int b = 0; b < y.size(); ++b) {
    PushforwardStalk s;
    s.point = b;
    s.preimage = f.preimage(y.up(b));
    s.minimum = x.minimum(s.preimage);
    if (s.minimum) {
      int mp = *s.minimum;
      s.structure = y.restriction(b, f(mp)).then(f.comorphism(mp));
      s.module = m.stalk(mp);
    }
    p.stalks.push_back(s);
  }
  return p;
}

QcReport pushforward_is_quasi_coherent(const Pushforward& p) {
  QcReport rep;
  const auto& x = *p.map.source();
  const auto& y = *p.map.target();
  for (int a = 0; a < y.size(); ++a)
    for (int b = 0; b < y.size(); ++b) {
      if (a == b || !y.leq(a, b)) continue;
      const auto& sa = p.stalks[a];
      const auto& sb = p.stalks[b];
      if (!sa.module || !sb.module)
        throw SectionsNotPresented("pushforward stalk at " + y.name(sa.module ? b : a) + " has no presentation");
      int m = *sa.minimum, m2 = *sb.minimum;
      bool ok;
      if (sb.preimage.empty()) {
        ok = true;
      } else {
        Tensor t = tensor_algebras(*sa.structure, y.restriction(a, b));
        std::vector<Poly> imgs;
        const AlgHom& r = x.restriction(m, m2);
        for (const auto& v : r.images()) imgs.push_back(v);
        for (const auto& v : sb.structure->images()) imgs.push_back(v);
        AlgHom cmp(t.algebra, x.stalk(m2), imgs);
        ok = cmp.is_isomorphism() && p.source.base_changed_restriction(m, m2).is_isomorphism();
      }
      if (!ok) {
        rep.quasi_coherent = false;
        rep.failing.push_back({a, b});
      }
    }
  return rep;
}

SheafModule tilde(const FpModule& m, const SpacePtr& x, const std::vector<AlgHom>& structure) {
  if (static_cast<int>(structure.size()) != x->size()) throw Error("one structure map per point is required");
  std::vector<FpModule> stalks;
  for (int a = 0; a < x->size(); ++a) stalks.push_back(m.base_change(structure[a]));
  return SheafModule(x, stalks, identity_edges(*x, stalks));
}

SheafModule tilde(const FpModule& m, const SpacePtr& x, const SectionPresentation& p) {
  std::vector<AlgHom> s;
  for (int a = 0; a < x->size(); ++a) {
    auto it = p.to_points.find(a);
    if (it == p.to_points.end()) throw SectionsNotPresented("no map from the section algebra to " + x->name(a));
    s.push_back(it->second);
  }
  return tilde(m, x, s);
}

SheafModule ideal_module(const IdealSheaf& i) {
  const auto& x = i.space;
  std::vector<FpModule> stalks;
  for (int a = 0; a < x->size(); ++a) {
    const auto& ring = x->stalk(a);
    const auto& g = i.generators[a];
    std::vector<Vec> v, sub;
    for (const auto& p : g) v.push_back({ring->reduce(p)});
    for (const auto& j : ring->ideal().polys()) sub.push_back({j});
    std::vector<Vec> rels;
    if (!g.empty()) rels = syzygies(ring->field(), ring->n_ext(), 1, v, sub);
    std::optional<std::vector<Degree>> shifts;
    if (ring->graded()) {
      std::vector<Degree> sh;
      for (const auto& p : g) {
        auto d = ring->degree_of(p);
        if (!d) break;
        sh.push_back(*d);
      }
      if (sh.size() == g.size()) shifts = sh;
    }
    stalks.emplace_back(ring, static_cast<int>(g.size()), rels, shifts);
  }
  std::vector<ModEdge> edges;
  for (const auto& e : x->edges()) {
    const auto& ring = x->stalk(e.to);
    std::vector<Vec> gens;
    for (const auto& p : i.generators[e.to]) gens.push_back({p});
    ModuleLifter lifter(FpModule::free(ring, 1), gens);
    std::vector<Vec> imgs;
    for (const auto& p : i.generators[e.from]) {
      auto c = lifter.lift({e.hom.apply(p)});
      if (!c) throw Error("ideal at " + x->name(e.from) + " does not restrict into the ideal at " + x->name(e.to));
      imgs.push_back(*c);
    }
    edges.push_back({e.from, e.to, imgs});
  }
  return SheafModule(x, stalks, edges);
}

// ---------------------------------------------------------------------------

namespace {

using Uni = std::vector<Scalar>;  // coefficients, low degree first

void trim(Uni& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::pair<Uni, Uni> uni_divmod(const Field& f, Uni a, const Uni& b) {
  trim(a);
  Uni q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size() && !a.empty()) {
    Scalar c = f.div(a.back(), b.back());
    size_t s = a.size() - b.size();
    q[s] = c;
    for (size_t i = 0; i < b.size(); ++i) a[s + i] = f.sub(a[s + i], f.mul(c, b[i]));
    trim(a);
  }
  return {q, a};
}

Uni uni_gcd(const Field& f, Uni a, Uni b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Uni r = uni_divmod(f, a, b).second;
    a = b;
    b = r;
  }
  if (!a.empty()) {
    Scalar c = f.inv(a.back());
    for (auto& x : a) x = f.mul(x, c);
  }
  return a;
}

Uni uni_derivative(const Field& f, const Uni& a) {
  Uni d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(f.mul(a[i], Scalar(static_cast<long>(i))));
  trim(d);
  return d;
}

Uni squarefree(const Field& f, const Uni& a) {
  Uni g = uni_gcd(f, a, uni_derivative(f, a));
  if (g.size() <= 1) return a;
  return uni_divmod(f, a, g).first;
}

Uni to_uni(const Poly& p, int var) {
  Uni u;
  for (const auto& [e, c] : p.terms()) {
    int k = e[var];
    if (static_cast<int>(u.size()) <= k) u.resize(k + 1, 0);
    u[k] = c;
  }
  trim(u);
  return u;
}

Poly from_uni(const Field& f, const Uni& u, int nvars, int var) {
  Poly p(f, nvars);
  for (size_t k = 0; k < u.size(); ++k) {
    if (u[k] == 0) continue;
    Exp e(nvars, 0);
    e[var] = static_cast<int>(k);
    p.add_term(e, u[k]);
  }
  return p;
}

std::pair<Exp, Scalar> leading(const Poly& p) {
  auto best = p.terms().begin();
  for (auto it = p.terms().begin(); it != p.terms().end(); ++it)
    if (grevlex_cmp(it->first, best->first) > 0) best = it;
  return *best;
}

Poly exact_divide(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  Poly q(f, a.nvars()), r = a;
  auto [eb, cb] = leading(b);
  while (!r.is_zero()) {
    auto [er, cr] = leading(r);
    Exp e(er.size());
    for (size_t i = 0; i < er.size(); ++i) {
      e[i] = er[i] - eb[i];
      if (e[i] < 0) throw Error("inexact polynomial division");
    }
    Poly t = Poly::monomial(f, a.nvars(), e, f.div(cr, cb));
    q += t;
    r -= t * b;
  }
  return q;
}

Poly multivariate_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const Field& f = a.field();
  int n = a.nvars();
  std::vector<int> shift(n);
  for (int i = 0; i < n; ++i) shift[i] = i + 1;
  Poly t = Poly::variable(f, n + 1, 0);
  Poly one = Poly::constant(f, n + 1, 1);
  auto gb = GroebnerBasis::of_ideal(f, n + 1, {t * a.embed(n + 1, shift), (one - t) * b.embed(n + 1, shift)},
                                    MonomialOrder::eliminate(1));
  Poly lcm;
  for (const auto& g : gb.polys())
    if (!g.involves(0)) {
      Poly h(f, n);
      for (const auto& [e, c] : g.terms()) h.add_term(Exp(e.begin() + 1, e.end()), c);
      if (lcm.nvars() == 0 || h.total_degree() < lcm.total_degree()) lcm = h;
    }
  return exact_divide(a * b, lcm);
}

Poly partial(const Poly& p, int v) {
  Poly d(p.field(), p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[v] == 0) continue;
    Exp e2 = e;
    --e2[v];
    d.add_term(e2, p.field().mul(c, Scalar(e[v])));
  }
  return d;
}

}  // namespace

std::vector<Poly> radical_ideal(const LocAlgebra& ring, const std::vector<Poly>& gens0, int degree_bound) {
  const Field& f = ring.field();
  std::vector<Poly> gens;
  for (const auto& g : gens0) {
    Poly r = ring.reduce(g);
    if (!r.is_zero()) gens.push_back(r);
  }
  if (ring.contains_one(gens)) return {ring.one()};
  int n = ring.nvars();
  if (ring.relations().empty() && !gens.empty() && (n == 1 || gens.size() == 1)) {
    if (gens.empty()) return {};
    std::vector<Poly> nums;
    for (const auto& g : gens) nums.push_back(ring.as_fraction(g).first);
    Poly s;
    if (n == 1) {
      Uni g = to_uni(nums[0], 0);
      for (size_t i = 1; i < nums.size(); ++i) g = uni_gcd(f, g, to_uni(nums[i], 0));
      s = from_uni(f, squarefree(f, g), 1, 0);
    } else {
      Poly h = nums[0];
      Poly g = h;
      for (int v = 0; v < n; ++v) g = multivariate_gcd(g, partial(h, v));
      s = exact_divide(h, g);
    }
    return {ring.reduce(ring.lift_original(s))};
  }
  if (ring.relations().empty() && gens.empty()) return {};
  std::vector<Poly> rels = ring.relations();
  for (const auto& g : gens) rels.push_back(ring.as_fraction(g).first);
  auto q = LocAlgebra::make(f, ring.vars(), rels, ring.inverted());
  if (!q->finite_dimensional())
    throw DegreeBoundExceeded("radical of a positive-dimensional ideal in " + ring.describe() + " is not supported");
  auto basis = q->all_standard_monomials();
  int dim = static_cast<int>(basis.size());
  std::map<Exp, int> index;
  for (int i = 0; i < dim; ++i) index[basis[i]] = i;
  auto coords = [&](const Poly& p) {
    Vector v(dim, 0);
    for (const auto& [e, c] : q->reduce(p).terms()) v[index.at(e)] = c;
    return v;
  };
  std::vector<Poly> out = gens;
  for (int v = 0; v < q->n_ext(); ++v) {
    std::vector<Vector> powers;
    Poly pw = q->one();
    Uni mu;
    for (int k = 0;; ++k) {
      if (k > degree_bound)
        throw DegreeBoundExceeded("minimal polynomial of degree above " + std::to_string(degree_bound));
      Vector c = coords(pw);
      Matrix m(f, dim, k + 1);
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < dim; ++i) m.at(i, j) = powers[j][i];
      for (int i = 0; i < dim; ++i) m.at(i, k) = c[i];
      auto ker = m.kernel();
      if (!ker.empty()) {
        mu = ker[0];
        trim(mu);
        break;
      }
      powers.push_back(c);
      pw = q->reduce(pw * q->var(v));
    }
    Uni s = squarefree(f, mu);
    Poly sp(f, ring.n_ext());
    Poly xp = ring.one();
    for (size_t k = 0; k < s.size(); ++k) {
      if (s[k] != 0) sp += xp.scaled(s[k]);
      xp = xp * ring.var(v);
    }
    out.push_back(ring.reduce(sp));
  }
  std::vector<Poly> reduced;
  for (const auto& g : ring.ideal_gb(out).polys()) {
    Poly r = ring.reduce(g);
    if (!r.is_zero()) reduced.push_back(r);
  }
  return reduced;
}

IdealSheaf radical_ideal_sheaf(const IdealSheaf& i, int degree_bound) {
  IdealSheaf out{i.space, {}};
  for (int a = 0; a < i.space->size(); ++a)
    out.generators.push_back(radical_ideal(*i.space->stalk(a), i.generators[a], degree_bound));
  return out;
}

}  // namespace finsch
