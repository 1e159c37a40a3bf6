#include "finsch/module.hpp"

#include "finsch/errors.hpp"

namespace finsch {

namespace {

Degree add_degree(Degree a, const Degree& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Degree sub_degree(Degree a, const Degree& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

// Degree of a vector under the generator shifts, if homogeneous.
std::optional<Degree> vec_degree(const LocAlgebra& ring, const Vec& v, const std::vector<Degree>& shifts) {
  std::optional<Degree> d;
  for (size_t c = 0; c < v.size(); ++c) {
    if (v[c].is_zero()) continue;
    auto e = ring.degree_of(v[c]);
    if (!e) return std::nullopt;
    Degree t = add_degree(*e, shifts[c]);
    if (d && *d != t) return std::nullopt;
    d = t;
  }
  return d;
}

bool vec_is_zero(const Vec& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

}  // namespace

FpModule::FpModule(AlgebraPtr ring, int ngens, std::vector<Vec> relations, std::optional<std::vector<Degree>> shifts)
    : ring_(std::move(ring)), ngens_(ngens), shifts_(std::move(shifts)) {
  if (ngens_ < 0) throw Error("negative generator count");
  for (auto& r : relations) {
    if (static_cast<int>(r.size()) != ngens_) throw Error("relation row has the wrong length");
    for (auto& p : r) {
      if (p.nvars() != ring_->n_ext()) throw Error("relation entry lives in the wrong ring");
      p = ring_->reduce(p);
    }
    if (!vec_is_zero(r)) relations_.push_back(r);
  }
  if (shifts_) {
    if (static_cast<int>(shifts_->size()) != ngens_) throw Error("one shift per generator is required");
    for (const auto& s : *shifts_)
      if (static_cast<int>(s.size()) != ring_->grading_rank()) throw Error("shift of the wrong rank");
  }
  graded_ = ring_->graded();
  if (graded_) {
    auto sh = this->shifts();
    for (const auto& r : relations_)
      if (!vec_degree(*ring_, r, sh)) graded_ = false;
  }
  if (ngens_ > 0)
    gb_ = std::make_shared<GroebnerBasis>(ring_->field(), ring_->n_ext(), ngens_, MonomialOrder::grevlex(),
                                          submodule_rows());
}

FpModule FpModule::free(AlgebraPtr ring, int rank, std::optional<std::vector<Degree>> shifts) {
  return FpModule(std::move(ring), rank, {}, std::move(shifts));
}

std::vector<Degree> FpModule::shifts() const {
  if (shifts_) return *shifts_;
  return std::vector<Degree>(ngens_, ring_->zero_degree());
}

Vec FpModule::generator(int j) const {
  Vec v = zero_vec();
  v[j] = ring_->one();
  return v;
}

std::vector<Vec> FpModule::submodule_rows() const {
  std::vector<Vec> rows = relations_;
  for (const auto& g : ring_->ideal().polys())
    for (int c = 0; c < ngens_; ++c) {
      Vec v = zero_vec();
      v[c] = g;
      rows.push_back(v);
    }
  return rows;
}

Vec FpModule::reduce(const Vec& v) const {
  if (static_cast<int>(v.size()) != ngens_) throw Error("vector has the wrong length");
  if (ngens_ == 0) return v;
  return gb_->reduce(v);
}

bool FpModule::is_zero(const Vec& v) const { return vec_is_zero(reduce(v)); }

bool FpModule::equal(const Vec& a, const Vec& b) const { return is_zero(vec_add(*ring_, a, vec_scale(*ring_, ring_->constant(-1), b))); }

bool FpModule::is_zero() const {
  for (int j = 0; j < ngens_; ++j)
    if (!is_zero(generator(j))) return false;
  return true;
}

FpModule FpModule::base_change(const AlgHom& f) const {
  if (f.source().get() != ring_.get() && !f.source()->same_presentation(*ring_))
    throw Error("base change along a homomorphism from a different ring");
  std::vector<Vec> rels;
  for (const auto& r : relations_) rels.push_back(vec_apply(f, r));
  auto sh = f.target()->graded() && shifts_ && f.target()->grading_rank() == ring_->grading_rank()
                ? shifts_
                : std::nullopt;
  return FpModule(f.target(), ngens_, rels, sh);
}

FpModule FpModule::with_relations(const std::vector<Vec>& more) const {
  std::vector<Vec> rels = relations_;
  rels.insert(rels.end(), more.begin(), more.end());
  return FpModule(ring_, ngens_, rels, shifts_);
}

std::string FpModule::describe() const {
  std::string s = "<" + std::to_string(ngens_) + " generators";
  if (!relations_.empty()) s += ", " + std::to_string(relations_.size()) + " relations";
  return s + " over " + ring_->describe() + ">";
}

Vec vec_apply(const AlgHom& f, const Vec& v) {
  Vec out;
  for (const auto& p : v) out.push_back(f.apply(p));
  return out;
}

Vec vec_scale(const LocAlgebra& ring, const Poly& c, const Vec& v) {
  Vec out;
  for (const auto& p : v) out.push_back(ring.reduce(c * p));
  return out;
}

Vec vec_add(const LocAlgebra& ring, const Vec& a, const Vec& b) {
  Vec out;
  for (size_t i = 0; i < a.size(); ++i) out.push_back(ring.reduce(a[i] + b[i]));
  return out;
}

Vec vec_combine(const LocAlgebra& ring, const Vec& coeffs, const std::vector<Vec>& vectors, int length) {
  Vec out(length, ring.zero());
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    for (int c = 0; c < length; ++c) out[c] += coeffs[i] * vectors[i][c];
  }
  for (auto& p : out) p = ring.reduce(p);
  return out;
}

// ---------------------------------------------------------------------------

ModHom::ModHom(FpModule source, FpModule target, std::vector<Vec> images)
    : source_(std::move(source)), target_(std::move(target)) {
  const auto& ring = *target_.ring();
  if (source_.ring().get() != target_.ring().get() && !source_.ring()->same_presentation(ring))
    throw InvalidHom("module homomorphism between modules over different rings");
  if (static_cast<int>(images.size()) != source_.ngens()) throw InvalidHom("one image per source generator is required");
  for (auto& v : images) {
    if (static_cast<int>(v.size()) != target_.ngens()) throw InvalidHom("image has the wrong length");
    images_.push_back(target_.reduce(v));
  }
  for (const auto& r : source_.relations())
    if (!target_.is_zero(vec_combine(ring, r, images_, target_.ngens())))
      throw InvalidHom("a relation of the source does not map to zero");
}

ModHom ModHom::identity(const FpModule& m) {
  std::vector<Vec> imgs;
  for (int j = 0; j < m.ngens(); ++j) imgs.push_back(m.generator(j));
  return ModHom(m, m, imgs);
}

ModHom ModHom::zero(const FpModule& s, const FpModule& t) {
  return ModHom(s, t, std::vector<Vec>(s.ngens(), t.zero_vec()));
}

Vec ModHom::apply(const Vec& v) const {
  return target_.reduce(vec_combine(*target_.ring(), v, images_, target_.ngens()));
}

ModHom ModHom::then(const ModHom& g) const {
  std::vector<Vec> imgs;
  for (const auto& v : images_) imgs.push_back(g.apply(v));
  return ModHom(source_, g.target_, imgs);
}

bool ModHom::is_zero() const {
  for (const auto& v : images_)
    if (!target_.is_zero(v)) return false;
  return true;
}

bool ModHom::same_as(const ModHom& o) const {
  if (images_.size() != o.images_.size()) return false;
  for (size_t j = 0; j < images_.size(); ++j)
    if (!target_.equal(images_[j], o.images_[j])) return false;
  return true;
}

bool ModHom::is_surjective() const { return cokernel(*this).module.is_zero(); }

bool ModHom::is_injective() const { return kernel(*this).module.ngens() == 0; }

KernelResult kernel(const ModHom& h) {
  const FpModule& s = h.source();
  const FpModule& t = h.target();
  const AlgebraPtr& ring = s.ring();
  Field f = ring->field();
  int n = ring->n_ext();
  std::vector<Vec> gens;
  if (s.ngens() > 0) {
    std::vector<Vec> syz = t.ngens() == 0 ? std::vector<Vec>{} : syzygies(f, n, t.ngens(), h.images(), t.submodule_rows());
    if (t.ngens() == 0)
      for (int j = 0; j < s.ngens(); ++j) syz.push_back(s.generator(j));
    for (auto& b : syz) {
      Vec r = s.reduce(b);
      if (!vec_is_zero(r)) gens.push_back(r);
    }
  }
  int k = static_cast<int>(gens.size());
  std::vector<Vec> rels;
  if (k > 0) rels = syzygies(f, n, s.ngens(), gens, s.submodule_rows());
  std::optional<std::vector<Degree>> shifts;
  if (s.graded()) {
    std::vector<Degree> sh;
    auto src_shifts = s.shifts();
    for (const auto& g : gens) {
      auto d = vec_degree(*ring, g, src_shifts);
      if (!d) break;
      sh.push_back(*d);
    }
    if (static_cast<int>(sh.size()) == k) shifts = sh;
  }
  FpModule km(ring, k, rels, shifts);
  return {km, ModHom(km, s, gens)};
}

CokernelResult cokernel(const ModHom& h) {
  FpModule c = h.target().with_relations(h.images());
  std::vector<Vec> imgs;
  for (int j = 0; j < c.ngens(); ++j) imgs.push_back(c.generator(j));
  return {c, ModHom(h.target(), c, imgs)};
}

ModHom semilinear_extension(const FpModule& m, const AlgHom& f, const FpModule& n, const std::vector<Vec>& images) {
  return ModHom(m.base_change(f), n, images);
}

ModuleLifter::ModuleLifter(const FpModule& m, const std::vector<Vec>& gens) : ring_(m.ring()) {
  lifter_ = std::make_shared<Lifter>(ring_->field(), ring_->n_ext(), std::max(m.ngens(), 1),
                                     m.ngens() ? gens : std::vector<Vec>(gens.size(), Vec{ring_->zero()}),
                                     m.ngens() ? m.submodule_rows() : std::vector<Vec>{});
}

std::optional<Vec> ModuleLifter::lift(const Vec& v) const {
  auto r = lifter_->lift(v.empty() ? Vec{ring_->zero()} : v);
  if (!r) return std::nullopt;
  for (auto& p : *r) p = ring_->reduce(p);
  return r;
}

// ---------------------------------------------------------------------------

GradedPiece::GradedPiece(const FpModule& m, std::optional<Degree> degree) : module_(m), degree_(std::move(degree)) {
  const LocAlgebra& ring = *m.ring();
  std::vector<Degree> shifts;
  if (degree_) {
    if (!m.graded()) throw UngradedModule("module " + m.describe() + " is not graded");
    shifts = m.shifts();
  }
  for (int j = 0; j < m.ngens(); ++j) {
    auto monos = degree_ ? ring.standard_monomials(sub_degree(*degree_, shifts[j])) : ring.all_standard_monomials();
    for (auto& e : monos) {
      index_[{j, e}] = static_cast<int>(ambient_.size());
      ambient_.push_back({j, e});
    }
  }
  int n = static_cast<int>(ambient_.size());
  std::vector<Vector> span;
  for (const auto& r : m.relations()) {
    std::vector<Exp> monos;
    if (degree_) {
      auto d = vec_degree(ring, r, shifts);
      if (!d) throw UngradedModule("relation is not homogeneous");
      monos = ring.standard_monomials(sub_degree(*degree_, *d));
    } else {
      monos = ring.all_standard_monomials();
    }
    for (const auto& e : monos) {
      Poly mono = Poly::monomial(ring.field(), ring.n_ext(), e);
      span.push_back(ambient_coords(vec_scale(ring, mono, r)));
    }
  }
  quotient_ = Quotient(ring.field(), n, span);
}

Vector GradedPiece::ambient_coords(const Vec& v) const {
  Vector x(ambient_.size(), 0);
  for (size_t c = 0; c < v.size(); ++c)
    for (const auto& [e, coef] : v[c].terms()) {
      auto it = index_.find({static_cast<int>(c), e});
      if (it == index_.end()) throw Error("element is not homogeneous of the requested degree");
      x[it->second] = coef;
    }
  return x;
}

Vector GradedPiece::coords(const Vec& v) const { return quotient_.coords(ambient_coords(module_.reduce(v))); }

Vec GradedPiece::element(const Vector& c) const {
  const LocAlgebra& ring = *module_.ring();
  Vector a = quotient_.lift(c);
  Vec v = module_.zero_vec();
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) v[ambient_[i].first] += Poly::monomial(ring.field(), ring.n_ext(), ambient_[i].second, a[i]);
  return v;
}

Matrix piece_matrix(const GradedPiece& src, const FpModule& m, const GradedPiece& tgt, const AlgHom& f,
                    const std::vector<Vec>& images) {
  const LocAlgebra& a = *m.ring();
  const LocAlgebra& b = *f.target();
  Matrix out(a.field(), tgt.dim(), src.dim());
  int ng = images.empty() ? 0 : static_cast<int>(images.front().size());
  for (int i = 0; i < src.dim(); ++i) {
    const auto& [j, e] = src.basis(i);
    Poly coeff = f.apply(Poly::monomial(a.field(), a.n_ext(), e));
    Vec v = vec_scale(b, coeff, images[j]);
    if (static_cast<int>(v.size()) != ng) throw Error("inconsistent image lengths");
    Vector c = tgt.coords(v);
    for (int r = 0; r < tgt.dim(); ++r) out.at(r, i) = c[r];
  }
  return out;
}

}  // namespace finsch
