#include "finsch/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "finsch/errors.hpp"

namespace finsch {

namespace {

Poly pad(const Poly& p, int n) {
  std::vector<int> m(p.nvars());
  std::iota(m.begin(), m.end(), 0);
  return p.embed(n, m);
}

Degree weighted_degree(const Exp& e, const std::vector<Degree>& w, int rank) {
  Degree d(rank, 0);
  for (size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < rank; ++k) d[k] += e[i] * w[i][k];
  return d;
}

std::optional<Degree> homogeneous_degree(const Poly& p, const std::vector<Degree>& w, int rank) {
  std::optional<Degree> d;
  for (const auto& [e, c] : p.terms()) {
    Degree t = weighted_degree(e, w, rank);
    if (d && *d != t) return std::nullopt;
    d = t;
  }
  return d;
}

}  // namespace

LocAlgebra::LocAlgebra(Field f, std::vector<std::string> vars, std::vector<Poly> relations,
                       std::vector<Poly> inverted, std::optional<std::vector<Degree>> weights)
    : field_(f), vars_(std::move(vars)), relations_(std::move(relations)), inverted_(std::move(inverted)),
      weights_(std::move(weights)) {
  int n = nvars();
  for (auto* list : {&relations_, &inverted_})
    for (auto& p : *list) {
      if (p.nvars() != n) throw Error("polynomial has the wrong number of variables");
      if (p.field() != field_) throw Error("polynomial over a different field");
    }
  if (weights_) {
    if (static_cast<int>(weights_->size()) != n) throw Error("one weight per variable is required");
    rank_ = n ? static_cast<int>(weights_->front().size()) : 0;
    for (const auto& w : *weights_)
      if (static_cast<int>(w.size()) != rank_) throw Error("weights of different lengths");
    ext_weights_ = *weights_;
    for (const auto& r : relations_)
      if (!homogeneous_degree(r, *weights_, rank_)) throw Error("relation " + print_original(r) + " is not homogeneous");
    for (const auto& s : inverted_) {
      auto d = homogeneous_degree(s, *weights_, rank_);
      if (!d) throw Error("inverted element " + print_original(s) + " is not homogeneous");
      Degree neg(rank_);
      for (int k = 0; k < rank_; ++k) neg[k] = -(*d)[k];
      ext_weights_.push_back(neg);
    }
  }
  std::vector<Poly> gens;
  int ne = n_ext();
  for (const auto& r : relations_) gens.push_back(pad(r, ne));
  for (int j = 0; j < ninverted(); ++j) gens.push_back(var(n + j) * pad(inverted_[j], ne) - one());
  gb_ = std::make_shared<GroebnerBasis>(GroebnerBasis::of_ideal(field_, ne, gens));
}

AlgebraPtr LocAlgebra::make(Field f, std::vector<std::string> vars, std::vector<Poly> relations,
                            std::vector<Poly> inverted, std::optional<std::vector<Degree>> weights) {
  return std::make_shared<const LocAlgebra>(f, std::move(vars), std::move(relations), std::move(inverted),
                                            std::move(weights));
}

AlgebraPtr LocAlgebra::from_strings(Field f, const std::vector<std::string>& vars,
                                    const std::vector<std::string>& relations,
                                    const std::vector<std::string>& inverted,
                                    std::optional<std::vector<Degree>> weights) {
  int n = static_cast<int>(vars.size());
  ParseContext ctx;
  ctx.field = f;
  ctx.nvars = n;
  ctx.lookup = [&](const std::string& name) -> std::optional<Poly> {
    for (int i = 0; i < n; ++i)
      if (vars[i] == name) return Poly::variable(f, n, i);
    return std::nullopt;
  };
  std::vector<Poly> rels, inv;
  for (const auto& s : relations) rels.push_back(parse_expression(s, ctx));
  for (const auto& s : inverted) inv.push_back(parse_expression(s, ctx));
  return make(f, vars, rels, inv, std::move(weights));
}

AlgebraPtr LocAlgebra::ground(Field f, int grading_rank) {
  if (grading_rank == 0) return make(f, {}, {}, {});
  auto a = std::make_shared<LocAlgebra>(f, std::vector<std::string>{}, std::vector<Poly>{}, std::vector<Poly>{},
                                        std::vector<Degree>{});
  a->rank_ = grading_rank;
  return a;
}

Poly LocAlgebra::lift_original(const Poly& p) const { return pad(p, n_ext()); }

std::optional<Poly> LocAlgebra::inverse(const Poly& u0) const {
  if (is_zero_ring()) return zero();
  Poly u = reduce(u0);
  if (u.is_zero()) return std::nullopt;
  if (u.is_constant()) return constant(field_.inv(u.constant_term()));
  for (int j = 0; j < ninverted(); ++j) {
    Poly s = reduce(lift_original(inverted_[j]));
    if (s.size() != u.size() || s.is_zero()) continue;
    Scalar c = field_.div(u.terms().begin()->second, s.terms().begin()->second);
    if (s.scaled(c) == u) return reduce(inverse_var(j).scaled(field_.inv(c)));
    Poly t = reduce(inverse_var(j));
    if (t.size() == u.size()) {
      Scalar c2 = field_.div(u.terms().begin()->second, t.terms().begin()->second);
      if (t.scaled(c2) == u) return reduce(lift_original(inverted_[j]).scaled(field_.inv(c2)));
    }
  }
  int ne = n_ext();
  std::vector<int> shift(ne);
  std::iota(shift.begin(), shift.end(), 1);
  std::vector<Poly> gens;
  for (const auto& g : gb_->polys()) gens.push_back(g.embed(ne + 1, shift));
  gens.push_back(Poly::variable(field_, ne + 1, 0) * u.embed(ne + 1, shift) - Poly::constant(field_, ne + 1, 1));
  auto gb = GroebnerBasis::of_ideal(field_, ne + 1, gens, MonomialOrder::eliminate(1));
  if (gb.is_unit_ideal()) return zero();
  Poly w = gb.reduce(Poly::variable(field_, ne + 1, 0));
  if (w.involves(0)) return std::nullopt;
  Poly r(field_, ne);
  for (const auto& [e, c] : w.terms()) r.add_term(Exp(e.begin() + 1, e.end()), c);
  return reduce(r);
}

bool LocAlgebra::contains_one(const std::vector<Poly>& gens) const {
  if (is_zero_ring()) return true;
  for (const auto& g : gens)
    if (g.is_constant() && !g.is_zero()) return true;
  return gb_->extended(gens).is_unit_ideal();
}

bool LocAlgebra::radical_member(const Poly& f, const std::vector<Poly>& gens) const {
  auto loc = localized_at({f});
  std::vector<Poly> g2;
  for (const auto& g : gens) g2.push_back(pad(g, loc->n_ext()));
  return loc->contains_one(g2);
}

std::pair<Poly, std::vector<int>> LocAlgebra::as_fraction(const Poly& x) const {
  int n = nvars(), m = ninverted();
  std::vector<int> e(m, 0);
  for (int j = 0; j < m; ++j) e[j] = x.degree_in(n + j);
  std::vector<std::vector<Poly>> powers(m);
  auto power = [&](int j, int k) -> const Poly& {
    auto& pw = powers[j];
    if (pw.empty()) pw.push_back(Poly::constant(field_, n, 1));
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * inverted_[j]);
    return pw[k];
  };
  Poly num(field_, n);
  for (const auto& [a, c] : x.terms()) {
    Poly t = Poly::monomial(field_, n, Exp(a.begin(), a.begin() + n), c);
    for (int j = 0; j < m; ++j) t = t * power(j, e[j] - a[n + j]);
    num += t;
  }
  return {num, e};
}

Poly LocAlgebra::numerator(const Poly& x) const { return lift_original(as_fraction(x).first); }

AlgebraPtr LocAlgebra::localized_at(const std::vector<Poly>& elements) const {
  std::vector<Poly> inv = inverted_;
  bool keep_grading = weights_.has_value();
  for (const auto& x : elements) {
    Poly num = as_fraction(reduce(x)).first;
    if (keep_grading && !homogeneous_degree(num, *weights_, rank_)) keep_grading = false;
    inv.push_back(num);
  }
  auto w = keep_grading ? weights_ : std::nullopt;
  if (keep_grading && nvars() == 0) {
    auto a = std::make_shared<LocAlgebra>(field_, vars_, relations_, inv, std::vector<Degree>{});
    a->rank_ = rank_;
    return a;
  }
  return make(field_, vars_, relations_, inv, w);
}

Poly LocAlgebra::parse(const std::string& text) const {
  ParseContext ctx;
  ctx.field = field_;
  ctx.nvars = n_ext();
  ctx.lookup = [this](const std::string& name) -> std::optional<Poly> {
    for (int i = 0; i < nvars(); ++i)
      if (vars_[i] == name) return var(i);
    return std::nullopt;
  };
  ctx.invert = [this, &text](const Poly& p) -> Poly {
    auto inv = inverse(p);
    if (!inv) throw ParseError("in '" + text + "': " + print(p) + " is not a unit");
    return *inv;
  };
  ctx.reduce = [this](const Poly& p) { return reduce(p); };
  return reduce(parse_expression(text, ctx));
}

std::string LocAlgebra::print_original(const Poly& p) const { return p.to_string(vars_); }

std::string LocAlgebra::print(const Poly& x) const {
  std::vector<std::string> names = vars_;
  std::vector<int> sign(n_ext(), 1);
  for (int j = 0; j < ninverted(); ++j) {
    const Poly& s = inverted_[j];
    std::string name;
    bool single = s.size() == 1 && s.terms().begin()->second == 1;
    int var_index = -1;
    if (single) {
      const Exp& e = s.terms().begin()->first;
      int total = 0;
      for (int i = 0; i < nvars(); ++i) {
        total += e[i];
        if (e[i] == 1) var_index = i;
      }
      if (total != 1) var_index = -1;
    }
    if (var_index >= 0)
      name = vars_[var_index];
    else
      name = "(" + print_original(s) + ")";
    names.push_back(name);
    sign[nvars() + j] = -1;
  }
  return reduce(x).to_string(names, sign);
}

std::string LocAlgebra::describe() const {
  std::string s = field_.name() + "[";
  for (int i = 0; i < nvars(); ++i) s += (i ? "," : "") + vars_[i];
  s += "]";
  if (!relations_.empty()) {
    s += "/(";
    for (size_t i = 0; i < relations_.size(); ++i) s += (i ? ", " : "") + print_original(relations_[i]);
    s += ")";
  }
  if (!inverted_.empty()) {
    s += "[1/";
    for (size_t i = 0; i < inverted_.size(); ++i) s += (i ? ", 1/" : "") + print_original(inverted_[i]);
    s += "]";
  }
  return s;
}

std::optional<Degree> LocAlgebra::degree_of(const Poly& x) const {
  if (!graded()) return std::nullopt;
  Poly r = reduce(x);
  if (r.is_zero()) return zero_degree();
  return homogeneous_degree(r, ext_weights_, rank_);
}

bool LocAlgebra::same_presentation(const LocAlgebra& o) const {
  return field_ == o.field_ && vars_ == o.vars_ && relations_ == o.relations_ && inverted_ == o.inverted_ &&
         weights_ == o.weights_;
}

const std::vector<LocAlgebra::Cone>& LocAlgebra::cones() const {
  std::call_once(cones_once_, [this] {
    int ne = n_ext();
    std::vector<Exp> gens;
    for (const auto& [c, e] : gb_->leading_monomials()) gens.push_back(e);
    std::function<void(std::vector<Exp>, int, Exp, std::vector<int>)> rec = [&](std::vector<Exp> g, int k, Exp base,
                                                                                 std::vector<int> free) {
      for (const auto& m : g) {
        bool one = true;
        for (int x : m)
          if (x) one = false;
        if (one) return;
      }
      if (k == ne) {
        cones_.push_back({base, free});
        return;
      }
      int top = 0;
      for (const auto& m : g) top = std::max(top, m[k]);
      if (top == 0) {
        free.push_back(k);
        rec(g, k + 1, base, free);
        return;
      }
      for (int e = 0; e <= top; ++e) {
        std::vector<Exp> slice;
        for (auto m : g) {
          if (e < top && m[k] > e) continue;
          m[k] = 0;
          slice.push_back(m);
        }
        Exp b = base;
        b[k] = e;
        auto f2 = free;
        if (e == top) f2.push_back(k);
        rec(slice, k + 1, b, f2);
      }
    };
    rec(gens, 0, Exp(ne, 0), {});
  });
  return cones_;
}

bool LocAlgebra::finite_dimensional() const {
  for (const auto& c : cones())
    if (!c.free.empty()) return false;
  return true;
}

std::vector<Exp> LocAlgebra::all_standard_monomials() const {
  if (!finite_dimensional()) throw InfiniteGradedPiece(describe() + " is not finite dimensional");
  std::vector<Exp> out;
  for (const auto& c : cones()) out.push_back(c.base);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Exp> LocAlgebra::standard_monomials(const Degree& d) const {
  if (!graded()) throw UngradedModule(describe() + " carries no grading");
  if (static_cast<int>(d.size()) != rank_) throw Error("degree of the wrong rank");
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = piece_cache_.find(d);
    if (it != piece_cache_.end()) return it->second;
  }
  std::vector<Exp> out;
  for (const auto& cone : cones()) {
    Degree c = d;
    Degree bd = weighted_degree(cone.base, ext_weights_, rank_);
    for (int k = 0; k < rank_; ++k) c[k] -= bd[k];
    if (cone.free.empty()) {
      if (std::all_of(c.begin(), c.end(), [](int x) { return x == 0; })) out.push_back(cone.base);
      continue;
    }
    // A functional positive on every free weight bounds the search.
    std::optional<std::vector<int>> lambda;
    int nfree = static_cast<int>(cone.free.size());
    for (int box = 1; box <= 6 && !lambda; ++box) {
      std::vector<int> l(rank_, -box);
      for (;;) {
        bool ok = rank_ > 0;
        for (int v : cone.free) {
          long s = 0;
          for (int k = 0; k < rank_; ++k) s += static_cast<long>(l[k]) * ext_weights_[v][k];
          if (s <= 0) ok = false;
        }
        if (ok) {
          lambda = l;
          break;
        }
        int k = 0;
        while (k < rank_ && l[k] == box) l[k++] = -box;
        if (k == rank_) break;
        ++l[k];
      }
    }
    if (!lambda) throw InfiniteGradedPiece("graded piece of " + describe() + " is not finite dimensional");
    std::vector<long> lw(nfree);
    for (int i = 0; i < nfree; ++i) {
      lw[i] = 0;
      for (int k = 0; k < rank_; ++k) lw[i] += static_cast<long>((*lambda)[k]) * ext_weights_[cone.free[i]][k];
    }
    long budget = 0;
    for (int k = 0; k < rank_; ++k) budget += static_cast<long>((*lambda)[k]) * c[k];
    if (budget < 0) continue;
    Exp e = cone.base;
    std::function<void(int, long)> walk = [&](int i, long left) {
      if (i == nfree) {
        if (left != 0) return;
        Degree got = weighted_degree(e, ext_weights_, rank_);
        if (got == d) out.push_back(e);
        return;
      }
      int v = cone.free[i];
      int start = e[v];
      for (long g = 0; g * lw[i] <= left; ++g) {
        e[v] = start + static_cast<int>(g);
        walk(i + 1, left - g * lw[i]);
      }
      e[v] = start;
    };
    walk(0, budget);
  }
  std::sort(out.begin(), out.end());
  std::lock_guard<std::mutex> lock(cache_mutex_);
  piece_cache_[d] = out;
  return out;
}

// ---------------------------------------------------------------------------

AlgHom::AlgHom(AlgebraPtr source, AlgebraPtr target, std::vector<Poly> images)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_->field() != target_->field()) throw InvalidHom("homomorphism between algebras over different fields");
  if (static_cast<int>(images.size()) != source_->nvars())
    throw InvalidHom("expected " + std::to_string(source_->nvars()) + " images, got " + std::to_string(images.size()));
  for (auto& p : images) {
    if (p.nvars() != target_->n_ext()) throw InvalidHom("image lives in the wrong ring");
    images_.push_back(target_->reduce(p));
  }
  compute_ext_images();
  check_relations();
}

void AlgHom::compute_ext_images() {
  ext_images_ = images_;
  for (int j = 0; j < source_->ninverted(); ++j) {
    Poly u = source_->inverted()[j].substitute(images_);
    if (source_->nvars() == 0) u = target_->constant(source_->inverted()[j].constant_term());
    auto inv = target_->inverse(u);
    if (!inv)
      throw InvalidHom("inverted element " + source_->print_original(source_->inverted()[j]) + " maps to " +
                       target_->print(u) + ", which is not a unit");
    ext_images_.push_back(*inv);
  }
}

void AlgHom::check_relations() const {
  for (const auto& r : source_->relations()) {
    Poly img = source_->nvars() == 0 ? target_->constant(r.constant_term()) : r.substitute(images_);
    if (!target_->is_zero(img))
      throw InvalidHom("relation " + source_->print_original(r) + " maps to the nonzero element " + target_->print(img));
  }
}

AlgHom AlgHom::localization(AlgebraPtr source, AlgebraPtr target, std::vector<Poly> images, std::vector<Poly> extra) {
  AlgHom h(std::move(source), std::move(target), std::move(images));
  h.kind_ = Kind::Localization;
  for (auto& e : extra) h.extra_.push_back(h.source_->reduce(e));
  h.certify_localization();
  return h;
}

void AlgHom::certify_localization() {
  loc_ = source_->localized_at(extra_);
  std::vector<Poly> phi = ext_images_;
  for (int j = source_->ninverted(); j < loc_->ninverted(); ++j) {
    Poly u = loc_->inverted()[j].substitute(images_);
    if (source_->nvars() == 0) u = target_->constant(loc_->inverted()[j].constant_term());
    auto inv = target_->inverse(u);
    if (!inv) throw InvalidHom("extra inverted element " + loc_->print_original(loc_->inverted()[j]) + " is not a unit in the target");
    phi.push_back(*inv);
  }
  GraphTest g = graph_test(*loc_, *target_, phi);
  if (!g.surjective || !g.injective)
    throw InvalidHom("target is not the localization of " + source_->describe() + " at the declared elements");
  back_ = g.inverse_images;
}

AlgHom AlgHom::identity(AlgebraPtr a) {
  AlgHom h;
  h.source_ = a;
  h.target_ = a;
  for (int i = 0; i < a->nvars(); ++i) h.images_.push_back(a->var(i));
  for (int i = 0; i < a->n_ext(); ++i) h.ext_images_.push_back(a->reduce(a->var(i)));
  h.kind_ = Kind::Localization;
  h.loc_ = a;
  h.back_ = h.ext_images_;
  return h;
}

AlgHom AlgHom::localize(AlgebraPtr source, const std::vector<Poly>& extra) {
  AlgebraPtr target = source->localized_at(extra);
  AlgHom h;
  h.source_ = source;
  h.target_ = target;
  for (int i = 0; i < source->nvars(); ++i) h.images_.push_back(target->var(i));
  h.compute_ext_images();
  h.kind_ = Kind::Localization;
  for (const auto& e : extra) h.extra_.push_back(source->reduce(e));
  h.loc_ = target;
  for (int i = 0; i < target->n_ext(); ++i) h.back_.push_back(target->var(i));
  return h;
}

AlgHom AlgHom::detect(AlgebraPtr source, AlgebraPtr target, std::vector<Poly> images) {
  AlgHom h(std::move(source), std::move(target), std::move(images));
  GraphTest g = graph_test(*h.source_, *h.target_, h.ext_images_);
  if (g.surjective && g.injective) {
    h.kind_ = Kind::Localization;
    h.loc_ = h.source_;
    h.back_ = g.inverse_images;
  }
  return h;
}

AlgHom AlgHom::with_flat_certificate() const {
  AlgHom h = *this;
  h.flat_certified_ = true;
  return h;
}

Poly AlgHom::apply(const Poly& x) const {
  if (x.nvars() != source_->n_ext()) throw Error("element does not belong to the source algebra");
  if (source_->n_ext() == 0) return target_->constant(x.constant_term());
  return target_->reduce(x.substitute(ext_images_));
}

AlgHom AlgHom::then(const AlgHom& g) const {
  if (target_.get() != g.source_.get() && !target_->same_presentation(*g.source_))
    throw InvalidHom("composition of homomorphisms with mismatched algebras");
  std::vector<Poly> imgs;
  for (const auto& p : images_) imgs.push_back(g.apply(p));
  if (is_localization() && g.is_localization()) {
    std::vector<Poly> extra = extra_;
    for (const auto& e : g.extra_) extra.push_back(numerator_pullback(e));
    return localization(source_, g.target_, imgs, extra);
  }
  AlgHom h(source_, g.target_, imgs);
  h.flat_certified_ = flat_certified() && g.flat_certified();
  return h;
}

bool AlgHom::same_as(const AlgHom& o) const {
  if (source_->n_ext() != o.source_->n_ext() || target_->n_ext() != o.target_->n_ext()) return false;
  if (!target_->same_presentation(*o.target_)) return false;
  for (size_t i = 0; i < images_.size(); ++i)
    if (!target_->equal(images_[i], o.images_[i])) return false;
  return true;
}

Poly AlgHom::sigma() const {
  Poly s = source_->one();
  for (const auto& e : extra_) s = source_->reduce(s * e);
  return s;
}

Poly AlgHom::numerator_pullback(const Poly& y) const {
  if (!is_localization()) throw NotLocalizationPresented("numerator pullback along a non-localization");
  if (target_->n_ext() == 0) return source_->constant(y.constant_term());
  Poly z = loc_->reduce(y.substitute(back_));
  int ns = source_->n_ext();
  int k = loc_->n_ext() - ns;
  std::vector<int> top(k, 0);
  for (int j = 0; j < k; ++j) top[j] = z.degree_in(ns + j);
  Poly out = source_->zero();
  for (const auto& [e, c] : z.terms()) {
    Poly t = Poly::monomial(source_->field(), ns, Exp(e.begin(), e.begin() + ns), c);
    for (int j = 0; j < k; ++j)
      t = t * source_->lift_original(loc_->inverted()[source_->ninverted() + j]).pow(top[j] - e[ns + j]);
    out += t;
  }
  return source_->reduce(out);
}

std::optional<AlgHom> AlgHom::inverse() const {
  GraphTest g = graph_test(*source_, *target_, ext_images_);
  if (!g.surjective || !g.injective) return std::nullopt;
  std::vector<Poly> imgs(g.inverse_images.begin(), g.inverse_images.begin() + target_->nvars());
  AlgHom h(target_, source_, imgs);
  h.kind_ = Kind::Localization;
  h.loc_ = target_;
  h.back_ = ext_images_;
  return h;
}

bool AlgHom::is_surjective() const { return graph_test(*source_, *target_, ext_images_, false).surjective; }

GraphTest graph_test(const LocAlgebra& a, const LocAlgebra& b, const std::vector<Poly>& phi_ext, bool check_injective) {
  Field f = a.field();
  int nb = b.n_ext(), na = a.n_ext(), n = nb + na;
  std::vector<int> zmap(nb), ymap(na);
  std::iota(zmap.begin(), zmap.end(), 0);
  std::iota(ymap.begin(), ymap.end(), nb);
  std::vector<Poly> gens;
  for (const auto& g : b.ideal().polys()) gens.push_back(g.embed(n, zmap));
  for (int i = 0; i < na; ++i) gens.push_back(Poly::variable(f, n, nb + i) - phi_ext[i].embed(n, zmap));
  auto gb = GroebnerBasis::of_ideal(f, n, gens, MonomialOrder::eliminate(nb));
  GraphTest out;
  out.surjective = true;
  auto involves_z = [&](const Poly& p) {
    for (const auto& [e, c] : p.terms())
      for (int i = 0; i < nb; ++i)
        if (e[i]) return true;
    return false;
  };
  auto to_a = [&](const Poly& p) {
    Poly r(f, na);
    for (const auto& [e, c] : p.terms()) r.add_term(Exp(e.begin() + nb, e.end()), c);
    return a.reduce(r);
  };
  for (int j = 0; j < nb; ++j) {
    Poly nf = gb.reduce(Poly::variable(f, n, j));
    if (involves_z(nf)) {
      out.surjective = false;
      break;
    }
    out.inverse_images.push_back(to_a(nf));
  }
  if (!out.surjective) out.inverse_images.clear();
  out.injective = true;
  if (check_injective)
    for (const auto& g : gb.polys())
      if (!involves_z(g) && !to_a(g).is_zero()) {
        out.injective = false;
        break;
      }
  return out;
}

Tensor tensor_algebras(const AlgHom& fa, const AlgHom& fb) {
  const AlgebraPtr& c = fa.source();
  if (c.get() != fb.source().get() && !c->same_presentation(*fb.source()))
    throw Error("tensor product over different base algebras");
  const LocAlgebra& a = *fa.target();
  const LocAlgebra& b = *fb.target();
  if (a.field() != b.field()) throw Error("tensor product of algebras over different fields");
  Field f = a.field();
  int na = a.nvars(), nb = b.nvars(), n = na + nb;
  std::vector<std::string> names = a.vars();
  for (const auto& v : b.vars()) {
    std::string name = v;
    int k = 2;
    while (std::find(names.begin(), names.end(), name) != names.end()) name = v + "_" + std::to_string(k++);
    names.push_back(name);
  }
  std::vector<int> amap(na), bmap(nb);
  std::iota(amap.begin(), amap.end(), 0);
  std::iota(bmap.begin(), bmap.end(), na);
  std::vector<Poly> rels, inv;
  for (const auto& r : a.relations()) rels.push_back(r.embed(n, amap));
  for (const auto& r : b.relations()) rels.push_back(r.embed(n, bmap));
  auto denominators = [&](const LocAlgebra& alg, const std::vector<int>& map, const std::vector<int>& e) {
    Poly d = Poly::constant(f, n, 1);
    for (size_t j = 0; j < e.size(); ++j) d = d * alg.inverted()[j].embed(n, map).pow(e[j]);
    return d;
  };
  for (int v = 0; v < c->nvars(); ++v) {
    auto [pa, ea] = a.as_fraction(fa.images()[v]);
    auto [pb, eb] = b.as_fraction(fb.images()[v]);
    Poly rel = pa.embed(n, amap) * denominators(b, bmap, eb) - pb.embed(n, bmap) * denominators(a, amap, ea);
    if (!rel.is_zero()) rels.push_back(rel);
  }
  for (const auto& s : a.inverted()) inv.push_back(s.embed(n, amap));
  for (const auto& s : b.inverted()) inv.push_back(s.embed(n, bmap));
  std::optional<std::vector<Degree>> weights;
  if (a.graded() && b.graded() && a.grading_rank() == b.grading_rank()) {
    weights = *a.weights();
    for (const auto& w : *b.weights()) weights->push_back(w);
  }
  AlgebraPtr t;
  try {
    t = LocAlgebra::make(f, names, rels, inv, weights);
  } catch (const Error&) {
    if (!weights) throw;
    t = LocAlgebra::make(f, names, rels, inv, std::nullopt);
  }
  std::vector<Poly> limg, rimg;
  for (int i = 0; i < na; ++i) limg.push_back(t->var(i));
  for (int i = 0; i < nb; ++i) rimg.push_back(t->var(na + i));
  auto make_leg = [&](const AlgebraPtr& src, std::vector<Poly> imgs, const AlgHom& own, const AlgHom& other) {
    if (other.is_localization()) {
      std::vector<Poly> extra;
      for (const auto& e : other.extra()) extra.push_back(own.apply(e));
      return AlgHom::localization(src, t, imgs, extra);
    }
    AlgHom h = AlgHom::detect(src, t, imgs);
    if (!h.is_localization() && other.flat_certified()) h = h.with_flat_certificate();
    return h;
  };
  Tensor out;
  out.algebra = t;
  out.left = make_leg(fa.target(), limg, fa, fb);
  out.right = make_leg(fb.target(), rimg, fb, fa);
  return out;
}

Tensor tensor_over_field(AlgebraPtr a, AlgebraPtr b) {
  AlgebraPtr k = LocAlgebra::ground(a->field());
  return tensor_algebras(AlgHom(k, a, {}), AlgHom(k, b, {}));
}

bool radical_contains_one(const std::vector<Poly>& generators, const LocAlgebra& ring) {
  return ring.contains_one(generators);
}

bool cover_is_faithfully_flat(const AlgebraPtr& base, const std::vector<AlgHom>& covers) {
  std::vector<Poly> sigmas;
  for (const auto& h : covers) {
    if (!h.is_localization()) throw NotLocalizationPresented("cover map is not presented as a localization");
    if (h.source().get() != base.get() && !h.source()->same_presentation(*base))
      throw Error("cover map does not start at the base algebra");
    sigmas.push_back(h.sigma());
  }
  return base->contains_one(sigmas);
}

bool localized_cover(const LocAlgebra& base, const std::vector<Poly>& denominators, const std::vector<Poly>& sigmas) {
  if (denominators.empty()) return base.contains_one(sigmas);
  auto loc = base.localized_at(denominators);
  std::vector<Poly> s2;
  for (const auto& s : sigmas) s2.push_back(pad(s, loc->n_ext()));
  return loc->contains_one(s2);
}

}  // namespace finsch
