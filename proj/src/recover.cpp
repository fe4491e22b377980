#include "matgeo/recover.hpp"

#include <algorithm>

namespace matgeo {

namespace {

// Incremental reduced echelon form over a field.
class Echelon {
 public:
  Echelon(const Field& f, int width) : f_(f), width_(width) {}

  void add(Vec row) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Elem c = row[piv_[r]];
      if (c.v == 0) continue;
      for (int j = 0; j < width_; ++j) row[j] = f_.sub(row[j], f_.mul(c, rows_[r][j]));
    }
    int p = 0;
    while (p < width_ && row[p].v == 0) ++p;
    if (p == width_) return;
    Elem inv = f_.inv(row[p]);
    for (auto& x : row) x = f_.mul(x, inv);
    for (auto& other : rows_) {
      Elem c = other[p];
      if (c.v == 0) continue;
      for (int j = 0; j < width_; ++j) other[j] = f_.sub(other[j], f_.mul(c, row[j]));
    }
    rows_.push_back(std::move(row));
    piv_.push_back(p);
  }

  bool full() const { return static_cast<int>(rows_.size()) == width_; }

  std::vector<Vec> kernel() const {
    std::vector<Vec> out;
    for (int fcol = 0; fcol < width_; ++fcol) {
      if (std::find(piv_.begin(), piv_.end(), fcol) != piv_.end()) continue;
      Vec v(width_, Elem{0});
      v[fcol] = f_.one();
      for (std::size_t r = 0; r < rows_.size(); ++r) v[piv_[r]] = f_.neg(rows_[r][fcol]);
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  const Field& f_;
  int width_;
  std::vector<Vec> rows_;
  std::vector<int> piv_;
};

constexpr std::uint64_t kFitBudget = 4096;

// columns: the given independent vectors, then unit vectors as needed
Mat complete_columns(const Field& f, const std::vector<Vec>& vs, int dim) {
  std::vector<Vec> basis = vs;
  for (int e = 0; e < dim && static_cast<int>(basis.size()) < dim; ++e) {
    Vec u(dim, Elem{0});
    u[e] = f.one();
    basis.push_back(u);
    if (vector_rank(f, basis) < static_cast<int>(basis.size())) basis.pop_back();
  }
  Mat out(f, dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) out.set(i, j, basis[j][i]);
  return out;
}

// nonzero images of the row (or column) clique through 0
std::vector<Mat> clique_images(const MapTable& f, bool row_clique, int idx) {
  const MatSpace& sp = f.src();
  const Field& d = sp.field();
  int len = row_clique ? sp.cols() : sp.rows();
  MatSpace vecs(d, 1, len);
  std::vector<Mat> out;
  for (std::uint64_t c = 1; c < vecs.size(); ++c) {
    Vec x = vecs.decode(c).row(0);
    Mat a(d, sp.rows(), sp.cols());
    for (int t = 0; t < len; ++t) {
      if (row_clique)
        a.set(idx, t, x[t]);
      else
        a.set(t, idx, x[t]);
    }
    out.push_back(f(a));
  }
  return out;
}

std::optional<Vec> common_line(const std::vector<Mat>& imgs, bool column) {
  std::optional<Vec> line;
  for (const auto& y : imgs) {
    if (rank(y) != 1) return std::nullopt;
    Vec l = column ? column_line(y) : row_line(y);
    if (!line)
      line = l;
    else if (*line != l)
      return std::nullopt;
  }
  return line;
}

VertexSet clique_with_images(const MapTable& f, bool row_clique) {
  VertexSet s = clique_images(f, row_clique, 0);
  s.push_back(Mat(f.dst().field(), f.dst().rows(), f.dst().cols()));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool is_diagonal_invertible(const Mat& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if ((i == j) == (a(i, j).v == 0)) return false;
  return true;
}

std::optional<StandardHomParams> recover_straight(const MapTable& f, std::string& why, int& tried) {
  const MatSpace& sp = f.src();
  const Field& d = sp.field();
  const Field& d2 = f.dst().field();
  const int m = sp.rows(), n = sp.cols(), m2 = f.dst().rows(), n2 = f.dst().cols();

  std::vector<Vec> cs, rs;
  for (int i = 0; i < m; ++i) {
    auto c = common_line(clique_images(f, true, i), true);
    if (!c) {
      why = "image of M_" + std::to_string(i + 1) + " is not in a type one set";
      return std::nullopt;
    }
    cs.push_back(*c);
  }
  for (int j = 0; j < n; ++j) {
    auto r = common_line(clique_images(f, false, j), false);
    if (!r) {
      why = "image of N_" + std::to_string(j + 1) + " is not in a type two set";
      return std::nullopt;
    }
    rs.push_back(*r);
  }
  if (vector_rank(d2, cs) < m || vector_rank(d2, rs) < n) {
    why = "image axes are dependent";
    return std::nullopt;
  }
  Mat p0 = complete_columns(d2, cs, m2);
  Mat q0 = transpose(complete_columns(d2, rs, n2));
  Mat p0i = inverse(p0), q0i = inverse(q0);

  MatSpace row_sp(d, 1, n), row_dst(d2, 1, n);
  std::vector<MapTable> restricted;
  for (int i = 0; i < m; ++i)
    restricted.push_back(MapTable::tabulate(row_sp, row_dst, [&](const Mat& x) {
      Mat a(d, m, n);
      for (int t = 0; t < n; ++t) a.set(i, t, x(0, t));
      return block(p0i * f(a) * q0i, i, 0, 1, n);
    }));

  why = "no field embedding reproduces the table";
  for (const auto& tau : enumerate_homs(d, d2)) {
    ++tried;
    std::vector<WeightedSemiAffine> fits;
    for (const auto& g : restricted) {
      auto w = fit_semiaffine_with(g, tau);
      if (!w) break;
      fits.push_back(std::move(*w));
    }
    if (static_cast<int>(fits.size()) < m) continue;
    const Mat& dt = fits[0].P;
    if (!is_diagonal_invertible(dt)) continue;
    Mat ds = Mat::identity(d2, m2);
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      Elem s = d2.div(fits[i].P(0, 0), dt(0, 0));
      ok = fits[i].P == scale(s, dt);
      ds.set(i, i, s);
    }
    if (!ok) continue;
    Mat l(d2, n, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) l.set(j, i, fits[i].a[j]);
    Mat dtp = Mat::identity(d2, n2);
    for (int j = 0; j < n; ++j) dtp.set(j, j, dt(j, j));
    StandardHomParams p{Orientation::Straight, m, n, p0 * ds, dtp * q0, tau, l};
    try {
      if (standard_table(p) == f) return p;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

}  // namespace

Elem WeightedSemiAffine::k(const Vec& x) const {
  const Field& d2 = tau.dst();
  Elem acc = b;
  for (std::size_t i = 0; i < x.size(); ++i) acc = d2.add(acc, d2.mul(tau(x[i]), a[i]));
  return acc;
}

Vec WeightedSemiAffine::operator()(const Vec& x) const {
  const Field& d2 = tau.dst();
  Mat y = Mat::row_vector(d2, apply_hom(tau, x)) * P;
  return scale(d2.inv(k(x)), y).row(0);
}

MapTable tabulate(const WeightedSemiAffine& w, const MatSpace& src) {
  MatSpace dst(w.tau.dst(), 1, w.P.cols());
  return MapTable::tabulate(src, dst, [&](const Mat& x) { return Mat::row_vector(w.tau.dst(), w(x.row(0))); });
}

std::optional<WeightedSemiAffine> fit_semiaffine_with(const MapTable& g, const FieldHom& tau) {
  const MatSpace& sp = g.src();
  const int n = sp.cols(), n2 = g.dst().cols();
  const Field& d2 = tau.dst();
  if (!(sp.field() == tau.src()) || !(g.dst().field() == d2)) return std::nullopt;
  // unknowns: a_0..a_{n-1}, P row-major, b
  const int width = n + n * n2 + 1;
  Echelon ech(d2, width);
  for (std::uint64_t c = 0; c < g.size() && !ech.full(); ++c) {
    Vec x = apply_hom(tau, sp.decode(c).row(0));
    const Elem* y = g.image_data(c);
    for (int j = 0; j < n2; ++j) {
      Vec row(width, Elem{0});
      for (int i = 0; i < n; ++i) {
        row[i] = d2.mul(x[i], y[j]);
        row[n + i * n2 + j] = d2.neg(x[i]);
      }
      row[width - 1] = y[j];
      ech.add(std::move(row));
    }
  }
  auto ker = ech.kernel();
  auto lead = std::find_if(ker.begin(), ker.end(), [&](const Vec& v) { return v[width - 1].v != 0; });
  if (lead == ker.end()) return std::nullopt;
  Vec base = *lead;
  Elem s = d2.inv(base[width - 1]);
  for (auto& e : base) e = d2.mul(e, s);
  std::vector<Vec> rest;
  for (auto it = ker.begin(); it != ker.end(); ++it) {
    if (it == lead) continue;
    Vec v = *it;
    Elem c = v[width - 1];
    for (int t = 0; t < width; ++t) v[t] = d2.sub(v[t], d2.mul(c, base[t]));
    rest.push_back(std::move(v));
  }
  std::uint64_t combos = 1;
  for (std::size_t t = 0; t < rest.size() && combos <= kFitBudget; ++t) combos *= d2.q();
  combos = std::min(combos, kFitBudget);

  for (std::uint64_t c = 0; c < combos; ++c) {
    Vec sol = base;
    std::uint64_t t = c;
    for (const auto& v : rest) {
      Elem coef{static_cast<std::uint32_t>(t % d2.q())};
      t /= d2.q();
      for (int j = 0; j < width; ++j) sol[j] = d2.add(sol[j], d2.mul(coef, v[j]));
    }
    WeightedSemiAffine w{tau, Mat(d2, n, n2, Vec(sol.begin() + n, sol.begin() + n + n * n2)),
                         Vec(sol.begin(), sol.begin() + n), sol[width - 1]};
    bool nonzero = true;
    for (std::uint64_t x = 0; x < sp.size() && nonzero; ++x) nonzero = w.k(sp.decode(x).row(0)).v != 0;
    if (nonzero && tabulate(w, sp) == g) return w;
  }
  return std::nullopt;
}

WeightedSemiAffine fit_semiaffine(const MapTable& g) {
  if (g.src().rows() != 1 || g.dst().rows() != 1) throw Error(Errc::ShapeMismatch, "fit_semiaffine expects row vectors");
  if (!g.image(0).is_zero()) throw Error(Errc::PreconditionViolated, "g(0) must be 0");
  for (const auto& tau : enumerate_homs(g.src().field(), g.dst().field()))
    if (auto w = fit_semiaffine_with(g, tau)) return *w;
  throw Error(Errc::NoFit, "no weighted semi-affine form matches the table");
}

const char* exit_name(RecoveryExit e) {
  switch (e) {
    case RecoveryExit::Ok: return "ok";
    case RecoveryExit::NotHom: return "not_hom";
    case RecoveryExit::Degenerate: return "degenerate";
    case RecoveryExit::DimDeficient: return "dim_deficient";
    case RecoveryExit::NoFit: return "no_fit";
  }
  return "?";
}

nlohmann::json RecoveryResult::to_json() const {
  nlohmann::json j;
  j["exit"] = exit_name(exit);
  j["residual_checked"] = residual_checked;
  if (params) {
    j["orientation"] = orientation_name(params->orientation);
    j["P"] = to_text(params->P);
    j["Q"] = to_text(params->Q);
    j["L"] = to_text(params->L);
    j["tau"] = {{"src", params->tau.src().id()},
                {"dst", params->tau.dst().id()},
                {"generator_image", params->tau.generator_image().v}};
  }
  if (!witness.empty()) j["witness"] = witness;
  return j;
}

RecoveryResult recover_standard(const MapTable& f) {
  const MatSpace& sp = f.src();
  if (sp.field().q() < 4 || f.dst().field().q() < 4)
    throw Error(Errc::UnsupportedField, "recovery needs fields with at least 4 elements");
  if (!f.image(0).is_zero()) throw Error(Errc::PreconditionViolated, "f(0) must be 0");
  RecoveryResult res;

  auto hom = is_graph_hom(f);
  if (!hom.ok) {
    res.exit = RecoveryExit::NotHom;
    res.witness = to_text(hom.witness->first) + " | " + to_text(hom.witness->second);
    return res;
  }
  if (auto c = kernels::first_degenerate_center(f, kernels::Exec::Parallel)) {
    res.exit = RecoveryExit::Degenerate;
    res.witness = to_text(sp.decode(c->center));
    return res;
  }
  int dm = dim_adjacent_set(clique_with_images(f, true));
  int dn = dim_adjacent_set(clique_with_images(f, false));
  if (dm != sp.cols() || dn != sp.rows()) {
    res.exit = RecoveryExit::DimDeficient;
    res.witness = dm != sp.cols() ? "M_1: dim " + std::to_string(dm) + " < " + std::to_string(sp.cols())
                                   : "N_1: dim " + std::to_string(dn) + " < " + std::to_string(sp.rows());
    return res;
  }

  std::string why;
  bool straight = common_line(clique_images(f, true, 0), true).has_value();
  if (straight) {
    res.params = recover_straight(f, why, res.taus_tried);
  } else {
    auto g = recover_straight(transpose_images(f), why, res.taus_tried);
    if (g) res.params = StandardHomParams{Orientation::Transposed, sp.rows(), sp.cols(), transpose(g->Q),
                                          transpose(g->P), g->tau, transpose(g->L)};
  }
  if (!res.params) {
    res.exit = RecoveryExit::NoFit;
    res.witness = why;
    return res;
  }
  res.residual_checked = standard_table(*res.params) == f;
  res.exit = res.residual_checked ? RecoveryExit::Ok : RecoveryExit::NoFit;
  return res;
}

bool dim_bound_check(const MapTable& f, const VertexSet& s) {
  const MatSpace& sp = f.src();
  Mat zero(sp.field(), sp.rows(), sp.cols());
  if (std::find(s.begin(), s.end(), zero) == s.end()) throw Error(Errc::PreconditionViolated, "S must contain 0");
  if (!f.image(0).is_zero()) throw Error(Errc::PreconditionViolated, "f(0) must be 0");
  VertexSet img;
  for (const auto& x : s) img.push_back(f(x));
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  if (img.size() == 1) return true;
  try {
    return dim_adjacent_set(img) <= dim_adjacent_set(s);
  } catch (const Error& e) {
    throw Error(Errc::PreconditionViolated, e.what());
  }
}

}  // namespace matgeo
