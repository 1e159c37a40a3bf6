#include "finsch/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "finsch/classify.hpp"
#include "finsch/errors.hpp"

namespace finsch {

Matrix VecSheaf::map(int x, int y) const {
  if (x == y) return Matrix::identity(field, dims[x]);
  auto it = maps.find({x, y});
  if (it == maps.end()) throw Error("no map between incomparable points");
  return it->second;
}

std::vector<std::string> VecSheaf::validate() const {
  std::vector<std::string> out;
  int n = size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (lt(x, y) && lt(y, z) && !(map(y, z) * map(x, y) == map(x, z)))
          out.push_back("maps " + std::to_string(x) + " -> " + std::to_string(y) + " -> " + std::to_string(z) +
                        " do not compose");
  return out;
}

namespace {

VecSheaf slice_on(const SheafModule& m, const std::optional<Degree>& degree, const std::vector<bool>& active) {
  const FinSpace& x = *m.space();
  if (!x.is_t0()) throw Error("vector-space slices need a T0 space");
  VecSheaf f;
  f.field = x.field();
  f.leq = x.order();
  int n = x.size();
  std::vector<std::optional<GradedPiece>> pieces(n);
  f.dims.assign(n, 0);
  for (int a = 0; a < n; ++a)
    if (active[a]) {
      pieces[a].emplace(m.stalk(a), degree);
      f.dims[a] = pieces[a]->dim();
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && x.leq(a, b)) {
        if (active[a] && active[b])
          f.maps.emplace(std::make_pair(a, b),
                         piece_matrix(*pieces[a], m.stalk(a), *pieces[b], x.restriction(a, b), m.images(a, b)));
        else
          f.maps.emplace(std::make_pair(a, b), Matrix(f.field, f.dims[b], f.dims[a]));
      }
  return f;
}

}  // namespace

VecSheaf vec_slice(const SheafModule& m, const std::optional<Degree>& degree) {
  return slice_on(m, degree, std::vector<bool>(m.space()->size(), true));
}

GodementComplex godement(const VecSheaf& f, const std::vector<int>& u) {
  GodementComplex c;
  std::vector<bool> in(f.size(), false);
  for (int x : u) in[x] = true;
  std::function<void(std::vector<int>&)> extend = [&](std::vector<int>& ch) {
    size_t len = ch.size() - 1;
    if (c.chains.size() <= len) c.chains.resize(len + 1);
    c.chains[len].push_back(ch);
    for (int y = 0; y < f.size(); ++y)
      if (in[y] && f.lt(ch.back(), y)) {
        ch.push_back(y);
        extend(ch);
        ch.pop_back();
      }
  };
  for (int x : u) {
    std::vector<int> ch{x};
    extend(ch);
  }
  if (c.chains.empty()) c.chains.resize(1);
  for (auto& level : c.chains) std::sort(level.begin(), level.end());
  std::vector<std::map<std::vector<int>, int>> offset(c.chains.size());
  for (size_t n = 0; n < c.chains.size(); ++n) {
    int total = 0;
    for (const auto& ch : c.chains[n]) {
      offset[n][ch] = total;
      total += f.dims[ch.back()];
    }
    c.dims.push_back(total);
  }
  for (size_t n = 0; n + 1 < c.chains.size(); ++n) {
    Matrix d(f.field, c.dims[n + 1], c.dims[n]);
    for (const auto& tau : c.chains[n + 1]) {
      int row = offset[n + 1].at(tau);
      int dim = f.dims[tau.back()];
      for (size_t i = 0; i <= n; ++i) {
        std::vector<int> sigma = tau;
        sigma.erase(sigma.begin() + i);
        int col = offset[n].at(sigma);
        Scalar sign = i % 2 == 0 ? 1 : -1;
        for (int k = 0; k < dim; ++k) d.at(row + k, col + k) = f.field.add(d.at(row + k, col + k), sign);
      }
      std::vector<int> sigma(tau.begin(), tau.end() - 1);
      int col = offset[n].at(sigma);
      Matrix r = f.map(sigma.back(), tau.back());
      Scalar sign = (n + 1) % 2 == 0 ? 1 : -1;
      for (int a = 0; a < r.rows(); ++a)
        for (int b = 0; b < r.cols(); ++b)
          if (r.at(a, b) != 0) d.at(row + a, col + b) = f.field.add(d.at(row + a, col + b), f.field.mul(sign, r.at(a, b)));
    }
    c.d.push_back(d);
  }
  return c;
}

Matrix augmentation(const VecSheaf& f, int p, const GodementComplex& c) {
  Matrix a(f.field, c.dims[0], f.dims[p]);
  int row = 0;
  for (const auto& ch : c.chains[0]) {
    Matrix r = f.map(p, ch[0]);
    for (int i = 0; i < r.rows(); ++i)
      for (int j = 0; j < r.cols(); ++j) a.at(row + i, j) = r.at(i, j);
    row += f.dims[ch[0]];
  }
  return a;
}

std::vector<int> cohomology_dims(const GodementComplex& c) {
  std::vector<int> ranks;
  for (const auto& d : c.d) ranks.push_back(d.rank());
  std::vector<int> h;
  for (size_t n = 0; n < c.dims.size(); ++n) {
    int out = n < ranks.size() ? ranks[n] : 0;
    int in = n > 0 ? ranks[n - 1] : 0;
    h.push_back(c.dims[n] - out - in);
  }
  return h;
}

Window Window::uniform(int rank, int lo, int hi) {
  Window w;
  w.ranges.assign(rank, {lo, hi});
  return w;
}

std::vector<Degree> Window::degrees() const {
  std::vector<Degree> out{Degree{}};
  for (auto [lo, hi] : ranges) {
    std::vector<Degree> next;
    for (const auto& d : out)
      for (int v = lo; v <= hi; ++v) {
        Degree e = d;
        e.push_back(v);
        next.push_back(e);
      }
    out = next;
  }
  return out;
}

std::string Window::to_string() const {
  std::string s;
  for (size_t i = 0; i < ranges.size(); ++i)
    s += (i ? " x " : "") + ("[" + std::to_string(ranges[i].first) + "," + std::to_string(ranges[i].second) + "]");
  return s;
}

int CohomologyTable::total(int i) const {
  if (i < 0 || i > max_index()) return 0;
  int t = 0;
  for (int v : dims[i]) t += v;
  return t;
}

int CohomologyTable::at(int i, const Degree& d) const {
  if (i < 0 || i > max_index()) return 0;
  for (size_t k = 0; k < degrees.size(); ++k)
    if (degrees[k] == d) return dims[i][k];
  throw Error("degree outside the computed window");
}

namespace {
std::string degree_string(const Degree& d) {
  if (d.size() == 1) return std::to_string(d[0]);
  std::string s = "(";
  for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}
}  // namespace

std::string CohomologyTable::to_text() const {
  std::ostringstream s;
  if (backend == Backend::VectorSpace) {
    s << "backend: vector-space\n";
    for (int i = 0; i <= max_index(); ++i) s << "H^" << i << " = " << total(i) << "\n";
    return s.str();
  }
  s << "backend: graded, window " << window->to_string() << " (dimensions outside the window are not computed)\n";
  bool rank_one = !degrees.empty() && degrees.front().size() == 1;
  if (rank_one) {
    s << "d   ";
    for (const auto& d : degrees) s << " " << degree_string(d);
    s << "   total\n";
    for (int i = 0; i <= max_index(); ++i) {
      s << "H^" << i;
      for (size_t k = 0; k < degrees.size(); ++k)
        s << " " << std::string(std::max<size_t>(degree_string(degrees[k]).size(), 1) - 1, ' ') << dims[i][k];
      s << "   " << total(i) << "\n";
    }
  } else {
    for (int i = 0; i <= max_index(); ++i) {
      s << "H^" << i << " total " << total(i) << ":";
      for (size_t k = 0; k < degrees.size(); ++k)
        if (dims[i][k]) s << " " << degree_string(degrees[k]) << "->" << dims[i][k];
      s << "\n";
    }
  }
  return s.str();
}

CohomologyTable cohomology(const SheafModule& m0, Backend backend, const std::optional<Window>& window0,
                           const std::optional<PointSet>& u0) {
  const SpacePtr& x0 = m0.space();
  PointSet u = u0 ? *u0 : x0->all_points();
  if (!x0->is_open(u)) throw NotOpen(point_set_string(*x0, u) + " is not open");
  SheafModule m = m0;
  if (!x0->is_t0()) {
    auto q = kolmogorov_quotient(x0);
    m = transport(m0, q.space, q.representative);
    std::vector<bool> in(q.space->size(), false);
    for (int p : u) in[q.map(p)] = true;
    u.clear();
    for (int c = 0; c < q.space->size(); ++c)
      if (in[c]) u.push_back(c);
  }
  const FinSpace& x = *m.space();
  std::vector<bool> active(x.size(), false);
  for (int p : u) active[p] = true;
  CohomologyTable t;
  t.backend = backend;
  std::vector<std::optional<Degree>> degs;
  if (backend == Backend::Graded) {
    if (!m.graded()) throw UngradedModule("graded cohomology of a module without a grading");
    Window w = window0 ? *window0 : Window::uniform(x.grading_rank(), -10, 10);
    if (static_cast<int>(w.ranges.size()) != x.grading_rank()) throw Error("window rank does not match the grading");
    t.window = w;
    t.degrees = w.degrees();
    for (const auto& d : t.degrees) degs.push_back(d);
  } else {
    degs.push_back(std::nullopt);
  }
  int len = 1;
  if (!u.empty()) {
    const auto& ch = x.chains();
    len = 0;
    for (size_t n = 0; n < ch.size(); ++n)
      for (const auto& c : ch[n])
        if (std::all_of(c.begin(), c.end(), [&](int p) { return active[p]; })) len = static_cast<int>(n) + 1;
  }
  t.dims.assign(len, std::vector<int>(degs.size(), 0));
  for (size_t k = 0; k < degs.size(); ++k) {
    if (u.empty()) continue;
    VecSheaf f = slice_on(m, degs[k], active);
    auto h = cohomology_dims(godement(f, u));
    for (size_t i = 0; i < h.size() && static_cast<int>(i) < len; ++i) t.dims[i][k] = h[i];
  }
  return t;
}

std::vector<CohomologyTable> higher_direct_images(const SpaceMap& f, const SheafModule& m, Backend backend,
                                                  const std::optional<Window>& window) {
  std::vector<CohomologyTable> out;
  const FinSpace& y = *f.target();
  for (int b = 0; b < y.size(); ++b) out.push_back(cohomology(m, backend, window, f.preimage(y.up(b))));
  return out;
}

SerreReport serre_harness(const SpacePtr& x, const std::vector<std::pair<std::string, SheafModule>>& battery,
                          const std::optional<Window>& window) {
  SerreReport rep;
  for (const auto& [name, m] : battery) {
    SerreEntry e{name, cohomology(m, Backend::Graded, window), true};
    for (int i = 1; i <= e.table.max_index(); ++i)
      if (e.table.total(i) != 0) e.higher_vanishing = false;
    if (!e.higher_vanishing) rep.all_vanish = false;
    rep.entries.push_back(e);
  }
  AffineOptions opts;
  opts.window = window;
  opts.battery = battery;
  ClassReport a = is_affine(x, opts);
  if (a.verdict == Verdict::True) rep.affine_verdict = true;
  if (a.verdict == Verdict::False) rep.affine_verdict = false;
  if (rep.affine_verdict == true && !rep.all_vanish) {
    rep.contradiction = true;
    rep.conclusion = "contradiction: certified affine but some higher cohomology is nonzero";
  } else if (!rep.all_vanish) {
    rep.conclusion = "not affine: a quasi-coherent module has nonzero higher cohomology";
  } else if (rep.affine_verdict == false) {
    rep.conclusion = "battery insufficient: all higher cohomology vanishes in the window, yet the space is not affine";
  } else {
    rep.conclusion = "no obstruction to affineness found in the window";
  }
  return rep;
}

}  // namespace finsch
