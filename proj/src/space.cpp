#include "finsch/space.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "finsch/errors.hpp"
#include "finsch/module.hpp"

namespace finsch {

namespace {

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a.get() == b.get() || a->same_presentation(*b); }

// c equals a followed by b on generators.
bool composes(const AlgHom& a, const AlgHom& b, const AlgHom& c) {
  for (size_t i = 0; i < a.images().size(); ++i)
    if (!c.target()->equal(b.apply(a.images()[i]), c.images()[i])) return false;
  return true;
}

bool is_identity(const AlgHom& h) {
  for (size_t i = 0; i < h.images().size(); ++i)
    if (!h.target()->equal(h.images()[i], h.target()->var(static_cast<int>(i)))) return false;
  return true;
}

// Restriction A (x)_C B -> A' (x)_C' B' induced by a: A -> A' and b: B -> B'.
AlgHom tensor_restriction(const Tensor& from, const Tensor& to, const AlgHom& a, const AlgHom& b) {
  std::vector<Poly> imgs;
  for (const auto& p : a.images()) imgs.push_back(to.left.apply(p));
  for (const auto& p : b.images()) imgs.push_back(to.right.apply(p));
  if (a.is_localization() && b.is_localization()) {
    std::vector<Poly> extra;
    for (const auto& e : a.extra()) extra.push_back(from.left.apply(e));
    for (const auto& e : b.extra()) extra.push_back(from.right.apply(e));
    return AlgHom::localization(from.algebra, to.algebra, imgs, extra);
  }
  AlgHom h(from.algebra, to.algebra, imgs);
  if (a.flat_certified() && b.flat_certified()) h = h.with_flat_certificate();
  return h;
}

}  // namespace

FinSpace::FinSpace(Field f, std::vector<std::string> names, std::vector<AlgebraPtr> stalks, std::vector<Edge> edges)
    : field_(f), names_(std::move(names)), stalks_(std::move(stalks)), edges_(std::move(edges)) {
  if (names_.size() != stalks_.size()) throw Error("one stalk per point is required");
  std::set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw Error("duplicate point name " + n);
  for (const auto& s : stalks_)
    if (s->field() != field_) throw Error("stalk over a different field");
  for (const auto& e : edges_) {
    if (e.from < 0 || e.to < 0 || e.from >= size() || e.to >= size()) throw Error("edge refers to an unknown point");
    if (e.from == e.to) throw Error("edge from a point to itself");
    if (!same_algebra(e.hom.source(), stalks_[e.from]) || !same_algebra(e.hom.target(), stalks_[e.to]))
      throw Error("restriction " + names_[e.from] + " -> " + names_[e.to] + " does not match the stalks");
  }
  compute_order();
  for (const auto& s : stalks_) identities_.push_back(AlgHom::identity(s));
  compute_restrictions();
}

SpacePtr FinSpace::make(Field f, std::vector<std::string> names, std::vector<AlgebraPtr> stalks,
                        std::vector<Edge> edges) {
  return std::make_shared<const FinSpace>(f, std::move(names), std::move(stalks), std::move(edges));
}

SpacePtr FinSpace::with_all_restrictions(Field f, std::vector<std::string> names, std::vector<AlgebraPtr> stalks,
                                         std::vector<std::vector<bool>> leq, std::map<std::pair<int, int>, AlgHom> res) {
  auto s = std::shared_ptr<FinSpace>(new FinSpace());
  s->field_ = f;
  s->names_ = std::move(names);
  s->stalks_ = std::move(stalks);
  s->leq_ = std::move(leq);
  s->res_ = std::move(res);
  int n = s->size();
  for (int x = 0; x < n; ++x) s->identities_.push_back(AlgHom::identity(s->stalks_[x]));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && s->leq_[x][y] && !s->res_.count({x, y}))
        throw Error("missing restriction " + s->names_[x] + " -> " + s->names_[y]);
  for (auto [x, y] : s->covering_pairs()) s->edges_.push_back({x, y, s->res_.at({x, y})});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && s->equivalent(x, y)) s->edges_.push_back({x, y, s->res_.at({x, y})});
  return s;
}

void FinSpace::compute_order() {
  int n = size();
  leq_.assign(n, std::vector<bool>(n, false));
  for (int x = 0; x < n; ++x) leq_[x][x] = true;
  for (const auto& e : edges_) leq_[e.from][e.to] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq_[i][k])
        for (int j = 0; j < n; ++j)
          if (leq_[k][j]) leq_[i][j] = true;
}

void FinSpace::compute_restrictions() {
  int n = size();
  std::vector<std::vector<int>> out(n);
  for (size_t i = 0; i < edges_.size(); ++i) out[edges_[i].from].push_back(static_cast<int>(i));
  for (int x = 0; x < n; ++x) {
    std::vector<bool> seen(n, false);
    seen[x] = true;
    std::deque<int> queue{x};
    while (!queue.empty()) {
      int p = queue.front();
      queue.pop_front();
      for (int ei : out[p]) {
        const Edge& e = edges_[ei];
        if (seen[e.to]) continue;
        seen[e.to] = true;
        res_.emplace(std::make_pair(x, e.to), p == x ? e.hom : res_.at({x, p}).then(e.hom));
        queue.push_back(e.to);
      }
    }
  }
}

int FinSpace::index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

const AlgHom& FinSpace::restriction(int x, int y) const {
  if (x == y) return identities_[x];
  auto it = res_.find({x, y});
  if (it == res_.end()) throw Error("points " + names_[x] + " and " + names_[y] + " are not comparable");
  return it->second;
}

std::vector<std::pair<int, int>> FinSpace::covering_pairs() const {
  std::vector<std::pair<int, int>> out;
  int n = size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!lt(x, y)) continue;
      bool cover = true;
      for (int z = 0; z < n && cover; ++z)
        if (lt(x, z) && lt(z, y)) cover = false;
      if (cover) out.push_back({x, y});
    }
  return out;
}

bool FinSpace::is_t0() const {
  for (int x = 0; x < size(); ++x)
    for (int y = x + 1; y < size(); ++y)
      if (equivalent(x, y)) return false;
  return true;
}

bool FinSpace::graded() const {
  for (const auto& s : stalks_)
    if (!s->graded() || s->grading_rank() != stalks_.front()->grading_rank()) return false;
  return true;
}

int FinSpace::grading_rank() const { return stalks_.empty() ? 0 : stalks_.front()->grading_rank(); }

PointSet FinSpace::all_points() const {
  PointSet u(size());
  for (int i = 0; i < size(); ++i) u[i] = i;
  return u;
}

PointSet FinSpace::up(int x) const {
  PointSet u;
  for (int y = 0; y < size(); ++y)
    if (leq(x, y)) u.push_back(y);
  return u;
}

PointSet FinSpace::up2(int x, int y) const {
  PointSet u;
  for (int z = 0; z < size(); ++z)
    if (leq(x, z) && leq(y, z)) u.push_back(z);
  return u;
}

bool FinSpace::is_open(const PointSet& u) const {
  std::vector<bool> in(size(), false);
  for (int x : u) in[x] = true;
  for (int x : u)
    for (int y = 0; y < size(); ++y)
      if (leq(x, y) && !in[y]) return false;
  return true;
}

PointSet FinSpace::minimal_points(const PointSet& u) const {
  PointSet out;
  for (int x : u) {
    bool minimal = true;
    for (int y : u)
      if (lt(y, x)) minimal = false;
    if (minimal) out.push_back(x);
  }
  return out;
}

std::optional<int> FinSpace::minimum(const PointSet& u) const {
  for (int m : u) {
    bool below_all = true;
    for (int z : u)
      if (!leq(m, z)) below_all = false;
    if (below_all) return m;
  }
  return std::nullopt;
}

const std::vector<std::vector<std::vector<int>>>& FinSpace::chains() const {
  std::call_once(chains_once_, [this] {
    std::function<void(std::vector<int>&)> extend = [&](std::vector<int>& c) {
      size_t len = c.size() - 1;
      if (chains_.size() <= len) chains_.resize(len + 1);
      chains_[len].push_back(c);
      for (int y = 0; y < size(); ++y)
        if (lt(c.back(), y)) {
          c.push_back(y);
          extend(c);
          c.pop_back();
        }
    };
    for (int x = 0; x < size(); ++x) {
      std::vector<int> c{x};
      extend(c);
    }
    for (auto& level : chains_) std::sort(level.begin(), level.end());
  });
  return chains_;
}

std::vector<std::string> FinSpace::validate() const {
  std::vector<std::string> out;
  int n = size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y || !leq(x, y)) continue;
      for (int z = 0; z < n; ++z) {
        if (z == y || !leq(y, z)) continue;
        const AlgHom& xy = restriction(x, y);
        const AlgHom& yz = restriction(y, z);
        bool ok = x == z ? is_identity(AlgHom(xy.source(), xy.source(), [&] {
          std::vector<Poly> v;
          for (const auto& p : xy.images()) v.push_back(yz.apply(p));
          return v;
        }()))
                         : composes(xy, yz, restriction(x, z));
        if (!ok)
          out.push_back("restrictions " + names_[x] + " -> " + names_[y] + " -> " + names_[z] +
                        " do not compose to " + names_[x] + " -> " + names_[z]);
      }
    }
  return out;
}

// ---------------------------------------------------------------------------

SpaceMap::SpaceMap(SpacePtr source, SpacePtr target, std::vector<int> points, std::vector<AlgHom> comorphisms)
    : source_(std::move(source)), target_(std::move(target)), points_(std::move(points)),
      comorphisms_(std::move(comorphisms)) {
  int n = source_->size();
  if (static_cast<int>(points_.size()) != n || static_cast<int>(comorphisms_.size()) != n)
    throw Error("a map needs one image point and one comorphism per source point");
  for (int x = 0; x < n; ++x) {
    if (points_[x] < 0 || points_[x] >= target_->size()) throw Error("map sends a point outside the target");
    if (!same_algebra(comorphisms_[x].source(), target_->stalk(points_[x])) ||
        !same_algebra(comorphisms_[x].target(), source_->stalk(x)))
      throw Error("comorphism at " + source_->name(x) + " does not match the stalks");
  }
}

SpaceMap SpaceMap::identity(const SpacePtr& x) {
  std::vector<AlgHom> c;
  for (int i = 0; i < x->size(); ++i) c.push_back(x->restriction(i, i));
  return SpaceMap(x, x, x->all_points(), c);
}

std::vector<std::string> SpaceMap::validate() const {
  std::vector<std::string> out;
  int n = source_->size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y || !source_->leq(x, y)) continue;
      if (!target_->leq(points_[x], points_[y])) {
        out.push_back("point map is not monotone at " + source_->name(x) + " <= " + source_->name(y));
        continue;
      }
      const AlgHom& fx = comorphisms_[x];
      const AlgHom& fy = comorphisms_[y];
      const AlgHom& r = source_->restriction(x, y);
      const AlgHom& rt = target_->restriction(points_[x], points_[y]);
      bool ok = true;
      for (int v = 0; v < fx.source()->nvars() && ok; ++v) {
        Poly a = r.apply(fx.images()[v]);
        Poly b = fy.apply(rt.images()[v]);
        if (!source_->stalk(y)->equal(a, b)) ok = false;
      }
      if (!ok) out.push_back("comorphisms do not commute with restrictions along " + source_->name(x) + " <= " +
                             source_->name(y));
    }
  return out;
}

SpaceMap SpaceMap::then(const SpaceMap& g) const {
  if (target_.get() != g.source_.get() && target_->names() != g.source_->names())
    throw Error("composition of maps with mismatched spaces");
  std::vector<int> pts;
  std::vector<AlgHom> c;
  for (int x = 0; x < source_->size(); ++x) {
    pts.push_back(g.points_[points_[x]]);
    c.push_back(g.comorphisms_[points_[x]].then(comorphisms_[x]));
  }
  return SpaceMap(source_, g.target_, pts, c);
}

bool SpaceMap::same_as(const SpaceMap& o) const {
  if (points_ != o.points_) return false;
  for (size_t x = 0; x < comorphisms_.size(); ++x)
    if (!comorphisms_[x].same_as(o.comorphisms_[x])) return false;
  return true;
}

PointSet SpaceMap::preimage(const PointSet& v) const {
  std::vector<bool> in(target_->size(), false);
  for (int y : v) in[y] = true;
  PointSet out;
  for (int x = 0; x < source_->size(); ++x)
    if (in[points_[x]]) out.push_back(x);
  return out;
}

// ---------------------------------------------------------------------------

Embedded subspace(const SpacePtr& x, const PointSet& u0) {
  PointSet u = u0;
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  int m = static_cast<int>(u.size());
  std::vector<std::string> names;
  std::vector<AlgebraPtr> stalks;
  std::vector<std::vector<bool>> leq(m, std::vector<bool>(m));
  std::map<std::pair<int, int>, AlgHom> res;
  for (int i = 0; i < m; ++i) {
    names.push_back(x->name(u[i]));
    stalks.push_back(x->stalk(u[i]));
    for (int j = 0; j < m; ++j) {
      leq[i][j] = x->leq(u[i], u[j]);
      if (i != j && leq[i][j]) res.emplace(std::make_pair(i, j), x->restriction(u[i], u[j]));
    }
  }
  auto s = FinSpace::with_all_restrictions(x->field(), names, stalks, leq, res);
  std::vector<AlgHom> c;
  for (int i = 0; i < m; ++i) c.push_back(x->restriction(u[i], u[i]));
  return {s, SpaceMap(s, x, u, c), u};
}

Embedded open_subspace(const SpacePtr& x, const PointSet& u) {
  if (!x->is_open(u)) throw NotOpen(point_set_string(*x, u) + " is not upward closed");
  return subspace(x, u);
}

Quotiented kolmogorov_quotient(const SpacePtr& x) {
  int n = x->size();
  std::vector<int> cls(n, -1), reps;
  for (int i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(i);
    for (int j = i; j < n; ++j)
      if (x->equivalent(i, j)) cls[j] = c;
  }
  int m = static_cast<int>(reps.size());
  std::vector<std::string> names;
  std::vector<AlgebraPtr> stalks;
  std::vector<std::vector<bool>> leq(m, std::vector<bool>(m));
  std::map<std::pair<int, int>, AlgHom> res;
  for (int a = 0; a < m; ++a) {
    names.push_back(x->name(reps[a]));
    stalks.push_back(x->stalk(reps[a]));
    for (int b = 0; b < m; ++b) {
      leq[a][b] = x->leq(reps[a], reps[b]);
      if (a != b && leq[a][b]) res.emplace(std::make_pair(a, b), x->restriction(reps[a], reps[b]));
    }
  }
  auto q = FinSpace::with_all_restrictions(x->field(), names, stalks, leq, res);
  std::vector<AlgHom> c;
  for (int i = 0; i < n; ++i) c.push_back(x->restriction(reps[cls[i]], i));
  return {q, SpaceMap(x, q, cls, c), reps};
}

namespace {

SpacePtr tensor_space(Field f, const std::vector<std::pair<int, int>>& pts, const SpacePtr& x, const SpacePtr& y,
                      const std::vector<Tensor>& stalks) {
  int m = static_cast<int>(pts.size());
  std::vector<std::string> names;
  std::vector<AlgebraPtr> algs;
  std::vector<std::vector<bool>> leq(m, std::vector<bool>(m));
  std::map<std::pair<int, int>, AlgHom> res;
  for (int a = 0; a < m; ++a) {
    names.push_back("(" + x->name(pts[a].first) + "," + y->name(pts[a].second) + ")");
    algs.push_back(stalks[a].algebra);
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      leq[a][b] = x->leq(pts[a].first, pts[b].first) && y->leq(pts[a].second, pts[b].second);
      if (a != b && leq[a][b])
        res.emplace(std::make_pair(a, b),
                    tensor_restriction(stalks[a], stalks[b], x->restriction(pts[a].first, pts[b].first),
                                       y->restriction(pts[a].second, pts[b].second)));
    }
  return FinSpace::with_all_restrictions(f, names, algs, leq, res);
}

}  // namespace

SpacePtr product_over_ring(const SpacePtr& x, const SpacePtr& y, const AlgebraPtr& r, const std::vector<AlgHom>& sx,
                           const std::vector<AlgHom>& sy) {
  if (x->field() != y->field()) throw Error("product of spaces over different fields");
  if (static_cast<int>(sx.size()) != x->size() || static_cast<int>(sy.size()) != y->size())
    throw Error("one structure map per point is required");
  for (const auto* list : {&sx, &sy})
    for (const auto& h : *list)
      if (!same_algebra(h.source(), r)) throw Error("structure map from a different base ring");
  std::vector<std::pair<int, int>> pts;
  std::vector<Tensor> stalks;
  for (int a = 0; a < x->size(); ++a)
    for (int b = 0; b < y->size(); ++b) {
      pts.push_back({a, b});
      stalks.push_back(tensor_algebras(sx[a], sy[b]));
    }
  return tensor_space(x->field(), pts, x, y, stalks);
}

SpacePtr product_over_field(const SpacePtr& x, const SpacePtr& y) {
  auto k = LocAlgebra::ground(x->field());
  std::vector<AlgHom> sx, sy;
  for (int a = 0; a < x->size(); ++a) sx.emplace_back(k, x->stalk(a), std::vector<Poly>{});
  for (int b = 0; b < y->size(); ++b) sy.emplace_back(k, y->stalk(b), std::vector<Poly>{});
  return product_over_ring(x, y, k, sx, sy);
}

SpaceMap pair_map(const SpaceMap& f, const SpaceMap& g, const SpacePtr& p) {
  const SpacePtr& z = f.source();
  int ny = g.target()->size();
  std::vector<int> pts;
  std::vector<AlgHom> com;
  for (int c = 0; c < z->size(); ++c) {
    int a = f(c), b = g(c);
    pts.push_back(a * ny + b);
    std::vector<Poly> imgs = f.comorphism(c).images();
    for (const auto& q : g.comorphism(c).images()) imgs.push_back(q);
    com.push_back(AlgHom::detect(p->stalk(a * ny + b), z->stalk(c), imgs));
  }
  return SpaceMap(z, p, pts, com);
}

SpaceMap diagonal(const SpacePtr& x) {
  auto id = SpaceMap::identity(x);
  return pair_map(id, id, product_over_field(x, x));
}

FiberProduct fiber_product(const SpaceMap& f, const SpaceMap& g) {
  if (f.target().get() != g.target().get() && f.target()->names() != g.target()->names())
    throw Error("fiber product of maps with different targets");
  const SpacePtr& x = f.source();
  const SpacePtr& x2 = g.source();
  std::vector<std::pair<int, int>> pts;
  std::vector<Tensor> stalks;
  for (int a = 0; a < x->size(); ++a)
    for (int b = 0; b < x2->size(); ++b)
      if (f(a) == g(b)) {
        pts.push_back({a, b});
        stalks.push_back(tensor_algebras(f.comorphism(a), g.comorphism(b)));
      }
  auto s = tensor_space(x->field(), pts, x, x2, stalks);
  std::vector<int> p1, p2;
  std::vector<AlgHom> c1, c2;
  for (size_t i = 0; i < pts.size(); ++i) {
    p1.push_back(pts[i].first);
    p2.push_back(pts[i].second);
    c1.push_back(stalks[i].left);
    c2.push_back(stalks[i].right);
  }
  return {s, SpaceMap(s, x, p1, c1), SpaceMap(s, x2, p2, c2), pts};
}

Cylinder cylinder(const SpaceMap& f) {
  const SpacePtr& x = f.source();
  const SpacePtr& y = f.target();
  int nx = x->size(), ny = y->size(), n = nx + ny;
  std::vector<std::string> names = x->names();
  std::vector<AlgebraPtr> stalks;
  for (int i = 0; i < nx; ++i) stalks.push_back(x->stalk(i));
  for (int j = 0; j < ny; ++j) {
    std::string name = y->name(j);
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "'";
    names.push_back(name);
    stalks.push_back(y->stalk(j));
  }
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  std::map<std::pair<int, int>, AlgHom> res;
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < nx; ++b) {
      leq[a][b] = x->leq(a, b);
      if (a != b && leq[a][b]) res.emplace(std::make_pair(a, b), x->restriction(a, b));
    }
  for (int a = 0; a < ny; ++a)
    for (int b = 0; b < ny; ++b) {
      leq[nx + a][nx + b] = y->leq(a, b);
      if (a != b && leq[nx + a][nx + b]) res.emplace(std::make_pair(nx + a, nx + b), y->restriction(a, b));
    }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (y->leq(j, f(i))) {
        leq[nx + j][i] = true;
        AlgHom h = j == f(i) ? f.comorphism(i) : y->restriction(j, f(i)).then(f.comorphism(i));
        res.emplace(std::make_pair(nx + j, i), h);
      }
  auto c = FinSpace::with_all_restrictions(x->field(), names, stalks, leq, res);
  std::vector<int> inc(nx), ret(n), tin(ny);
  std::vector<AlgHom> cinc, cret, ctin;
  for (int i = 0; i < nx; ++i) {
    inc[i] = i;
    cinc.push_back(x->restriction(i, i));
    ret[i] = f(i);
    cret.push_back(f.comorphism(i));
  }
  for (int j = 0; j < ny; ++j) {
    ret[nx + j] = j;
    cret.push_back(y->restriction(j, j));
    tin[j] = nx + j;
    ctin.push_back(y->restriction(j, j));
  }
  return {c, SpaceMap(x, c, inc, cinc), SpaceMap(c, y, ret, cret), SpaceMap(y, c, tin, ctin)};
}

bool certify_sections(const FinSpace& x, const PointSet& u, const SectionPresentation& p) {
  const AlgebraPtr& a = p.algebra;
  std::map<int, Poly> sigma;
  std::vector<AlgHom> covers;
  for (int z : u) {
    auto it = p.to_points.find(z);
    if (it == p.to_points.end()) throw SectionsNotPresented("no map from the section algebra to " + x.name(z));
    if (!it->second.is_localization())
      throw NotLocalizationPresented("map from the section algebra to " + x.name(z) + " is not a localization");
    covers.push_back(it->second);
    sigma.emplace(z, it->second.sigma());
  }
  for (int y : u)
    for (int z : u)
      if (y != z && x.leq(y, z) && !composes(p.to_points.at(y), x.restriction(y, z), p.to_points.at(z))) return false;
  if (!cover_is_faithfully_flat(a, covers)) return false;
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = i + 1; j < u.size(); ++j) {
      std::vector<Poly> s;
      for (int z : x.up2(u[i], u[j])) s.push_back(sigma.at(z));
      if (!localized_cover(*a, {sigma.at(u[i]), sigma.at(u[j])}, s)) return false;
    }
  return true;
}

Adjoined adjoin_point(const SpacePtr& x, const PointSet& u, const std::optional<SectionPresentation>& p,
                      const std::string& name) {
  if (!x->is_open(u)) throw NotOpen(point_set_string(*x, u) + " is not upward closed");
  if (u.empty()) throw Error("cannot adjoin a point for the empty open set");
  int n = x->size();
  std::vector<bool> in(n, false);
  for (int z : u) in[z] = true;
  std::vector<int> below;
  for (int a = 0; a < n; ++a) {
    bool all = true;
    for (int z : u)
      if (!x->leq(a, z)) all = false;
    if (all) below.push_back(a);
  }
  AlgebraPtr stalk;
  std::map<int, AlgHom> down, upward;  // u -> z, a -> u
  auto m = x->minimum(u);
  if (m) {
    stalk = x->stalk(*m);
    for (int z : u) down.emplace(z, x->restriction(*m, z));
    for (int a : below) upward.emplace(a, x->restriction(a, *m));
  } else if (p) {
    if (!certify_sections(*x, u, *p))
      throw SectionsNotPresented("the supplied algebra does not present the sections on " + point_set_string(*x, u));
    stalk = p->algebra;
    down = p->to_points;
    for (int a : below) {
      auto it = p->from_points.find(a);
      if (it == p->from_points.end())
        throw SectionsNotPresented("no map from " + x->name(a) + " to the section algebra");
      upward.emplace(a, it->second);
    }
  } else {
    throw SectionsNotPresented("sections on " + point_set_string(*x, u) + " have no finite presentation");
  }
  std::string nm = name;
  while (x->index(nm) >= 0) nm += "'";
  std::vector<std::string> names = x->names();
  names.push_back(nm);
  std::vector<AlgebraPtr> stalks;
  for (int a = 0; a < n; ++a) stalks.push_back(x->stalk(a));
  stalks.push_back(stalk);
  std::vector<std::vector<bool>> leq(n + 1, std::vector<bool>(n + 1, false));
  std::map<std::pair<int, int>, AlgHom> res;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      leq[a][b] = x->leq(a, b);
      if (a != b && leq[a][b]) res.emplace(std::make_pair(a, b), x->restriction(a, b));
    }
  leq[n][n] = true;
  for (int z : u) {
    leq[n][z] = true;
    res.emplace(std::make_pair(n, z), down.at(z));
  }
  for (int a : below) {
    leq[a][n] = true;
    res.emplace(std::make_pair(a, n), upward.at(a));
  }
  return {FinSpace::with_all_restrictions(x->field(), names, stalks, leq, res), n};
}

std::optional<SpaceMap> find_isomorphism(const SpacePtr& x, const SpacePtr& y) {
  int n = x->size();
  if (y->size() != n) return std::nullopt;
  std::map<std::pair<int, int>, std::optional<AlgHom>> cache;
  auto candidate = [&](int a, int b) -> const std::optional<AlgHom>& {
    auto key = std::make_pair(a, b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::optional<AlgHom> h;
    const auto& src = y->stalk(b);
    const auto& tgt = x->stalk(a);
    if (src->nvars() == tgt->nvars() && src->field() == tgt->field()) {
      std::vector<Poly> imgs;
      bool ok = true;
      for (const auto& v : src->vars()) {
        auto pos = std::find(tgt->vars().begin(), tgt->vars().end(), v);
        if (pos == tgt->vars().end()) {
          ok = false;
          break;
        }
        imgs.push_back(tgt->var(static_cast<int>(pos - tgt->vars().begin())));
      }
      if (ok) {
        try {
          AlgHom d = AlgHom::detect(src, tgt, imgs);
          if (d.is_localization() && d.extra().empty()) h = d;
        } catch (const Error&) {
        }
      }
    }
    return cache.emplace(key, h).first->second;
  };
  std::vector<int> sigma(n, -1);
  std::vector<bool> used(n, false);
  std::optional<SpaceMap> found;
  std::function<void(int)> search = [&](int a) {
    if (found) return;
    if (a == n) {
      std::vector<AlgHom> c;
      for (int i = 0; i < n; ++i) c.push_back(*candidate(i, sigma[i]));
      SpaceMap m(x, y, sigma, c);
      if (m.validate().empty()) found = m;
      return;
    }
    for (int b = 0; b < n; ++b) {
      if (used[b]) continue;
      bool ok = true;
      for (int i = 0; i < a && ok; ++i)
        if (x->leq(i, a) != y->leq(sigma[i], b) || x->leq(a, i) != y->leq(b, sigma[i])) ok = false;
      if (!ok || !candidate(a, b)) continue;
      sigma[a] = b;
      used[b] = true;
      search(a + 1);
      used[b] = false;
      sigma[a] = -1;
    }
  };
  search(0);
  return found;
}

int sections_dimension(const FinSpace& x, const PointSet& u, const std::optional<Degree>& d) {
  std::vector<GradedPiece> pieces;
  std::vector<int> offset;
  int total = 0;
  for (int z : u) {
    pieces.emplace_back(FpModule::free(x.stalk(z), 1), d);
    offset.push_back(total);
    total += pieces.back().dim();
  }
  std::vector<std::pair<int, int>> pairs;
  int rows = 0;
  std::vector<int> row_offset;
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < u.size(); ++j)
      if (i != j && x.leq(u[i], u[j])) {
        pairs.push_back({static_cast<int>(i), static_cast<int>(j)});
        row_offset.push_back(rows);
        rows += pieces[j].dim();
      }
  Matrix m(x.field(), rows, total);
  for (size_t k = 0; k < pairs.size(); ++k) {
    auto [i, j] = pairs[k];
    const AlgHom& r = x.restriction(u[i], u[j]);
    Matrix block = piece_matrix(pieces[i], FpModule::free(x.stalk(u[i]), 1), pieces[j], r, {{r.target()->one()}});
    for (int a = 0; a < block.rows(); ++a) {
      for (int b = 0; b < block.cols(); ++b) m.at(row_offset[k] + a, offset[i] + b) = block.at(a, b);
      m.at(row_offset[k] + a, offset[j] + a) = x.field().sub(m.at(row_offset[k] + a, offset[j] + a), 1);
    }
  }
  return total - m.rank();
}

bool is_section(const FinSpace& x, const PointSet& u, const std::vector<Poly>& family) {
  if (family.size() != u.size()) throw Error("one element per point is required");
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < u.size(); ++j)
      if (i != j && x.leq(u[i], u[j]) &&
          !x.stalk(u[j])->equal(x.restriction(u[i], u[j]).apply(family[i]), family[j]))
        return false;
  return true;
}

std::string point_set_string(const FinSpace& x, const PointSet& u) {
  std::string s = "{";
  for (size_t i = 0; i < u.size(); ++i) s += (i ? ", " : "") + x.name(u[i]);
  return s + "}";
}

}  // namespace finsch
