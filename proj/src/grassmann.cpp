#include "matgeo/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace matgeo {

namespace {

int nonzero_rows(const Mat& a) {
  int c = 0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j).v != 0) {
        ++c;
        break;
      }
  }
  return c;
}

std::vector<Mat> column_stratum(const Field& f, int m, int n, int k, int r) {
  std::vector<Mat> out;
  for (auto& t : row_stratum(f, n, m, k, r)) out.push_back(transpose(t));
  std::sort(out.begin(), out.end());
  return out;
}

// number of m-dimensional subspaces of GF(q)^ambient, saturating
std::uint64_t gaussian_binomial(std::uint64_t q, int ambient, int m) {
  long double num = 1, den = 1;
  for (int i = 0; i < m; ++i) {
    num *= std::pow(static_cast<long double>(q), ambient - i) - 1;
    den *= std::pow(static_cast<long double>(q), i + 1) - 1;
  }
  long double v = num / den;
  if (v > 1e18L) return ~std::uint64_t{0};
  return static_cast<std::uint64_t>(v + 0.5L);
}

struct Setup {
  std::string lemma;
  nlohmann::json params;
  int m, n;                   // left-space shape actually scanned
  std::vector<Mat> a_list;    // over E, in scanned shape
  std::vector<Mat> b_stratum; // over E, in scanned shape
  std::vector<Mat> a_shown;   // as reported
  bool allow_zero;
  bool transposed;
};

LemmaReport run(const FieldHom& h, Setup s, const LemmaOptions& opt) {
  const Field& d = h.dst();
  std::uint64_t npoints = gaussian_binomial(d.q(), s.m + s.n, s.m);
  std::vector<std::size_t> order(s.a_list.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (opt.max_strata > 0 && opt.max_strata < order.size()) {
    std::vector<std::size_t> picked;
    std::mt19937_64 rng(opt.seed);
    std::sample(order.begin(), order.end(), std::back_inserter(picked), opt.max_strata, rng);
    order = picked;
  }
  long double work = static_cast<long double>(npoints) * order.size();
  if (npoints == ~std::uint64_t{0} || npoints > (std::uint64_t{1} << 24) || work > static_cast<long double>(opt.budget))
    throw Error(Errc::BudgetExceeded, std::to_string(order.size()) + " strata x " + std::to_string(npoints) + " points");

  std::vector<Elem> points = left_points(d, s.m, s.m + s.n);
  const std::size_t stride = static_cast<std::size_t>(s.m) * (s.m + s.n);

  LemmaReport rep;
  rep.lemma = s.lemma;
  rep.params = s.params;
  rep.params["E"] = h.src().id();
  rep.params["D"] = d.id();
  rep.params["points_per_stratum"] = points.size() / stride;
  if (opt.max_strata > 0) {
    rep.params["max_strata"] = opt.max_strata;
    rep.params["sample_seed"] = opt.seed;
  }
  rep.branch_counts["Y=XA"] = 0;
  if (s.allow_zero) rep.branch_counts["Y=0"] = 0;
  const char* yx = s.transposed ? "Y=AX" : "Y=XA";
  if (s.transposed) {
    rep.branch_counts.erase("Y=XA");
    rep.branch_counts[yx] = 0;
  }

  for (std::size_t idx : order) {
    const Mat& a = s.a_list[idx];
    std::vector<Mat> bset;
    for (const auto& b : s.b_stratum)
      if (ad(a, b) == 1) bset.push_back(apply_hom(h, b));
    ++rep.strata_checked;
    if (bset.empty()) {
      ++rep.vacuous;
      continue;
    }
    auto scan = kernels::scan_points(d, s.m, s.n, points, bset, apply_hom(h, a), s.allow_zero, opt.exec);
    if (scan.qualifying == 0) ++rep.vacuous;
    rep.branch_counts[yx] += scan.branch_xa;
    if (s.allow_zero) rep.branch_counts["Y=0"] += scan.branch_zero;
    for (auto i : scan.failures) {
      Mat w(d, s.m, s.m + s.n, std::vector<Elem>(points.begin() + i * stride, points.begin() + (i + 1) * stride));
      if (s.transposed) w = transpose(w);
      rep.counterexamples.push_back({{"A", to_text(s.a_shown[idx])}, {"W", to_text(w)}});
    }
  }
  std::sort(rep.counterexamples.begin(), rep.counterexamples.end(),
            [](const nlohmann::json& x, const nlohmann::json& y) { return x.dump() < y.dump(); });
  return rep;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::PreconditionViolated, what);
}

}  // namespace

Flat::Flat(const Mat& rep, Side side) : rep_(rep), side_(side) {
  if (side == Side::Left) {
    if (rank(rep) != rep.rows() || rep.rows() > rep.cols())
      throw Error(Errc::PreconditionViolated, "left flat representation must have full row rank");
    rep_ = rref(rep);
  } else {
    if (rank(rep) != rep.cols() || rep.cols() > rep.rows())
      throw Error(Errc::PreconditionViolated, "right flat representation must have full column rank");
    rep_ = transpose(rref(transpose(rep)));
  }
}

int flat_ad(const Flat& a, const Flat& b) {
  if (a.side() != b.side() || a.dim() != b.dim() || a.ambient() != b.ambient() ||
      !(a.rep().field() == b.rep().field()))
    throw Error(Errc::Mismatch, "flats of different parameters");
  if (a.side() == Side::Left) return rank(vstack(a.rep(), b.rep())) - a.dim();
  return rank(hstack(a.rep(), b.rep())) - a.dim();
}

Flat embed_graph_point(const Mat& x) {
  return Flat(hstack(Mat::identity(x.field(), x.rows()), x), Side::Left);
}

std::vector<Elem> left_points(const Field& f, int m, int ambient) {
  std::vector<Elem> out;
  std::vector<int> piv(m);
  for (int i = 0; i < m; ++i) piv[i] = i;
  while (true) {
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < m; ++i)
      for (int j = piv[i] + 1; j < ambient; ++j)
        if (!std::binary_search(piv.begin(), piv.end(), j)) free.emplace_back(i, j);
    std::uint64_t count = 1;
    for (std::size_t t = 0; t < free.size(); ++t) count *= f.q();
    std::vector<Elem> base(static_cast<std::size_t>(m) * ambient, Elem{0});
    for (int i = 0; i < m; ++i) base[i * ambient + piv[i]] = f.one();
    for (std::uint64_t c = 0; c < count; ++c) {
      std::vector<Elem> w = base;
      std::uint64_t t = c;
      for (auto it = free.rbegin(); it != free.rend(); ++it) {
        w[it->first * ambient + it->second] = Elem{static_cast<std::uint32_t>(t % f.q())};
        t /= f.q();
      }
      out.insert(out.end(), w.begin(), w.end());
    }
    int i = m - 1;
    while (i >= 0 && piv[i] == ambient - m + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < m; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

std::vector<Mat> row_stratum(const Field& f, int m, int n, int k, int r) {
  MatSpace sp(f, m, n);
  if (!sp.size_at_most(std::uint64_t{1} << 20)) throw Error(Errc::BudgetExceeded, sp.label() + " is too large to filter");
  std::vector<Mat> out;
  for (std::uint64_t c = 0; c < sp.size(); ++c) {
    Mat a = sp.decode(c);
    if (nonzero_rows(a) == k && rank(a) == r) out.push_back(std::move(a));
  }
  return out;
}

nlohmann::json LemmaReport::to_json() const {
  nlohmann::json j;
  j["lemma"] = lemma;
  j["params"] = params;
  j["strata_checked"] = strata_checked;
  j["vacuous"] = vacuous;
  j["branch_counts"] = branch_counts;
  j["counterexamples"] = counterexamples;
  return j;
}

LemmaReport check_lemma_41(const FieldHom& h, int m, int n, int k, const LemmaOptions& opt) {
  require(h.src().q() > 2, "the small field needs more than two elements");
  require(k >= 2 && m >= k && n >= k, "need m, n >= k >= 2");
  const Field& e = h.src();
  Setup s{"4.1", {{"m", m}, {"n", n}, {"k", k}}, m, n, row_stratum(e, m, n, k, k), row_stratum(e, m, n, k - 1, k - 1),
          {}, k == 2, false};
  s.a_shown = s.a_list;
  return run(h, std::move(s), opt);
}

LemmaReport check_lemma_42(const FieldHom& h, int m, int n, int k, int r, const LemmaOptions& opt) {
  require(h.src().q() > 2, "the small field needs more than two elements");
  require(m >= 2 && n >= 2, "need m, n >= 2");
  require(m >= k && k > r && r >= 1 && n > r, "need m >= k > r >= 1 and n > r");
  const Field& e = h.src();
  Setup s{"4.2", {{"m", m}, {"n", n}, {"k", k}, {"r", r}}, m, n, row_stratum(e, m, n, k, r),
          row_stratum(e, m, n, k, r + 1), {}, false, false};
  s.a_shown = s.a_list;
  return run(h, std::move(s), opt);
}

LemmaReport check_lemma_43(const FieldHom& h, int m, int n, int k, const LemmaOptions& opt) {
  require(h.src().q() > 2, "the small field needs more than two elements");
  require(k >= 2 && m >= k && n >= k, "need m, n >= k >= 2");
  const Field& e = h.src();
  Setup s{"4.3", {{"m", m}, {"n", n}, {"k", k}}, n, m, {}, {}, column_stratum(e, m, n, k, k), k == 2, true};
  for (const auto& a : s.a_shown) s.a_list.push_back(transpose(a));
  for (const auto& b : column_stratum(e, m, n, k - 1, k - 1)) s.b_stratum.push_back(transpose(b));
  return run(h, std::move(s), opt);
}

LemmaReport check_lemma_44(const FieldHom& h, int m, int n, int k, int r, const LemmaOptions& opt) {
  require(h.src().q() > 2, "the small field needs more than two elements");
  require(m >= 2 && n >= 2, "need m, n >= 2");
  require(n >= k && k > r && r >= 1 && m > r, "need n >= k > r >= 1 and m > r");
  const Field& e = h.src();
  Setup s{"4.4", {{"m", m}, {"n", n}, {"k", k}, {"r", r}}, n, m, {}, {}, column_stratum(e, m, n, k, r), false, true};
  for (const auto& a : s.a_shown) s.a_list.push_back(transpose(a));
  for (const auto& b : column_stratum(e, m, n, k, r + 1)) s.b_stratum.push_back(transpose(b));
  return run(h, std::move(s), opt);
}

}  // namespace matgeo
