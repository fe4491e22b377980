#include "matgeo/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <random>

namespace matgeo::kernels {

namespace {

constexpr std::uint64_t kNone = ~std::uint64_t{0};

std::vector<std::vector<Elem>> rank_one_entries(const MatSpace& sp) {
  std::vector<std::vector<Elem>> out;
  for (const auto& r : rank_one_matrices(sp.field(), sp.rows(), sp.cols()))
    out.emplace_back(r.data().begin(), r.data().end());
  return out;
}

std::uint64_t shifted(const MatSpace& sp, const Elem* x, const std::vector<Elem>& r, Elem* y) {
  const Field& f = sp.field();
  for (int t = 0; t < sp.entries(); ++t) y[t] = f.add(x[t], r[t]);
  return sp.encode(y);
}

// distances from src to every vertex, neighbours from the outer-product generator
void bfs(const MatSpace& sp, const std::vector<std::vector<Elem>>& steps, std::uint64_t src, std::vector<int>& dist,
         int cap) {
  std::fill(dist.begin(), dist.end(), -1);
  std::vector<std::uint64_t> frontier{src}, next;
  std::vector<Elem> x(sp.entries()), y(sp.entries());
  dist[src] = 0;
  for (int level = 1; level <= cap && !frontier.empty(); ++level) {
    next.clear();
    for (auto v : frontier) {
      sp.decode_into(v, x.data());
      for (const auto& r : steps) {
        std::uint64_t w = shifted(sp, x.data(), r, y.data());
        if (dist[w] >= 0) continue;
        dist[w] = level;
        next.push_back(w);
      }
    }
    frontier.swap(next);
  }
}

struct DistRow {
  std::uint64_t mismatches = 0;
  std::uint64_t first = kNone;
};

DistRow distance_row(const MatSpace& sp, const std::vector<std::vector<Elem>>& steps, std::uint64_t s,
                     std::vector<int>& dist) {
  const Field& f = sp.field();
  int cap = std::min(sp.rows(), sp.cols()) + 1;
  bfs(sp, steps, s, dist, cap);
  std::vector<Elem> a(sp.entries()), b(sp.entries()), scratch(sp.entries());
  sp.decode_into(s, a.data());
  DistRow row;
  for (std::uint64_t t = 0; t < dist.size(); ++t) {
    sp.decode_into(t, b.data());
    if (dist[t] != rank_diff(f, a.data(), b.data(), sp.rows(), sp.cols(), scratch.data())) {
      ++row.mismatches;
      if (row.first == kNone) row.first = t;
    }
  }
  return row;
}

std::uint64_t first_bad_neighbour(const MapTable& f, const std::vector<std::vector<Elem>>& steps, std::uint64_t a,
                                  Elem* x, Elem* y, Elem* scratch) {
  const MatSpace& sp = f.src();
  const MatSpace& dp = f.dst();
  std::uint64_t best = kNone;
  sp.decode_into(a, x);
  for (const auto& r : steps) {
    std::uint64_t b = shifted(sp, x, r, y);
    if (b <= a || b >= best) continue;
    if (rank_diff(dp.field(), f.image_data(a), f.image_data(b), dp.rows(), dp.cols(), scratch) != 1) best = b;
  }
  return best;
}

// normalized line code of a nonzero vector given by stride access
std::uint64_t line_code(const Field& f, const Elem* base, int len, int stride) {
  Elem s{0};
  for (int i = 0; i < len; ++i)
    if (base[i * stride].v != 0) {
      s = f.inv(base[i * stride]);
      break;
    }
  std::uint64_t c = 0;
  for (int i = 0; i < len; ++i) c = c * f.q() + f.mul(s, base[i * stride]).v;
  return c;
}

Vec decode_line(const Field& f, std::uint64_t code, int len) {
  Vec v(len);
  for (int i = len - 1; i >= 0; --i) {
    v[i] = Elem{static_cast<std::uint32_t>(code % f.q())};
    code /= f.q();
  }
  return v;
}

std::optional<CenterCover> cover_center(const MapTable& f, const std::vector<std::vector<Elem>>& steps,
                                        std::uint64_t center, std::vector<Elem>& x, std::vector<Elem>& y,
                                        std::vector<Elem>& diff, std::vector<Elem>& scratch) {
  const MatSpace& sp = f.src();
  const MatSpace& dp = f.dst();
  const Field& g = dp.field();
  const int rows = dp.rows(), cols = dp.cols();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> lines;
  sp.decode_into(center, x.data());
  const Elem* fa = f.image_data(center);
  for (const auto& r : steps) {
    std::uint64_t b = shifted(sp, x.data(), r, y.data());
    const Elem* fb = f.image_data(b);
    for (int t = 0; t < dp.entries(); ++t) diff[t] = g.sub(fb[t], fa[t]);
    std::copy(diff.begin(), diff.end(), scratch.begin());
    int rk = rank_inplace(g, scratch.data(), rows, cols);
    if (rk == 0) continue;
    if (rk > 1) return std::nullopt;
    int col = 0, row = 0;
    for (; col < cols; ++col) {
      bool nz = false;
      for (int i = 0; i < rows; ++i) nz |= diff[i * cols + col].v != 0;
      if (nz) break;
    }
    for (; row < rows; ++row) {
      bool nz = false;
      for (int j = 0; j < cols; ++j) nz |= diff[row * cols + j].v != 0;
      if (nz) break;
    }
    lines.emplace_back(line_code(g, diff.data() + col, rows, cols), line_code(g, diff.data() + row * cols, cols, 1));
  }
  if (lines.empty()) return CenterCover{center, decode_line(g, 1, rows), decode_line(g, 1, cols)};
  auto [c0, r0] = lines.front();
  // either the first difference lies in the TypeOne set or in the TypeTwo set
  for (int option = 0; option < 2; ++option) {
    std::uint64_t u = option == 0 ? c0 : kNone;
    std::uint64_t v = option == 0 ? kNone : r0;
    bool ok = true;
    for (auto [c, r] : lines) {
      if (option == 0 && c == u) continue;
      if (option == 1 && r == v) continue;
      if (option == 0) {
        if (v == kNone) v = r;
        if (r != v) ok = false;
      } else {
        if (u == kNone) u = c;
        if (c != u) ok = false;
      }
      if (!ok) break;
    }
    if (!ok) continue;
    if (u == kNone) u = c0;
    if (v == kNone) v = r0;
    return CenterCover{center, decode_line(g, u, rows), decode_line(g, v, cols)};
  }
  return std::nullopt;
}

std::vector<std::uint64_t> centers_of(const MatSpace& sp) {
  std::vector<std::uint64_t> out{0};
  for (const auto& r : rank_one_matrices(sp.field(), sp.rows(), sp.cols())) out.push_back(sp.encode(r));
  std::sort(out.begin(), out.end());
  return out;
}

enum class PointClass { Skip, XA, Zero, Fail };

PointClass classify_point(const Field& f, int m, int n, const Elem* w, const std::vector<std::vector<Elem>>& bstack,
                          const std::vector<Elem>& a, bool allow_zero, std::vector<Elem>& buf) {
  const int width = m + n;
  for (const auto& b : bstack) {
    std::copy(w, w + m * width, buf.begin());
    std::copy(b.begin(), b.end(), buf.begin() + m * width);
    if (rank_inplace(f, buf.data(), 2 * m, width) != m + 1) return PointClass::Skip;
  }
  std::vector<Elem> xm(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) xm[i * m + j] = w[i * width + j];
  std::vector<Elem> xs = xm;
  bool x_inv = rank_inplace(f, xs.data(), m, m) == m;
  bool y_zero = true, y_xa = true;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      Elem y = w[i * width + m + j];
      if (y.v != 0) y_zero = false;
      Elem s{0};
      for (int l = 0; l < m; ++l) s = f.add(s, f.mul(xm[i * m + l], a[l * n + j]));
      if (s != y) y_xa = false;
    }
  if (x_inv && y_xa) return PointClass::XA;
  if (x_inv && y_zero && allow_zero) return PointClass::Zero;
  return PointClass::Fail;
}

}  // namespace

void set_workers(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int workers() { return omp_get_max_threads(); }

int rank_diff(const Field& f, const Elem* a, const Elem* b, int rows, int cols, Elem* scratch) {
  for (int t = 0; t < rows * cols; ++t) scratch[t] = f.sub(a[t], b[t]);
  return rank_inplace(f, scratch, rows, cols);
}

DistanceScan distance_scan(const MatSpace& sp, Exec ex) {
  if (!sp.size_at_most(std::uint64_t{1} << 20)) throw Error(Errc::DomainTooLarge, sp.label() + " exceeds 2^20 vertices");
  const std::uint64_t n = sp.size();
  auto steps = rank_one_entries(sp);
  DistanceScan out;
  out.pairs = n * n;
  if (ex == Exec::Serial) {
    std::vector<int> dist(n);
    for (std::uint64_t s = 0; s < n; ++s) {
      DistRow row = distance_row(sp, steps, s, dist);
      out.mismatches += row.mismatches;
      if (row.first != kNone && !out.first) out.first = CodePair{s, row.first};
    }
    return out;
  }
  std::vector<DistRow> rows(n);
#pragma omp parallel
  {
    std::vector<int> dist(n);
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) rows[s] = distance_row(sp, steps, s, dist);
  }
  for (std::uint64_t s = 0; s < n; ++s) {
    out.mismatches += rows[s].mismatches;
    if (rows[s].first != kNone && !out.first) out.first = CodePair{s, rows[s].first};
  }
  return out;
}

HomScan hom_violations(const MapTable& f, Exec ex) {
  const MatSpace& sp = f.src();
  auto steps = rank_one_entries(sp);
  const std::uint64_t n = f.size();
  HomScan out;
  out.pairs = n * steps.size() / 2;
  const int dn = f.dst().entries();
  if (ex == Exec::Serial) {
    std::vector<Elem> x(sp.entries()), y(sp.entries()), scratch(dn);
    for (std::uint64_t a = 0; a < n; ++a) {
      std::uint64_t b = first_bad_neighbour(f, steps, a, x.data(), y.data(), scratch.data());
      if (b != kNone) {
        out.first = CodePair{a, b};
        break;
      }
    }
    return out;
  }
  std::atomic<std::uint64_t> best_a{kNone};
  std::vector<std::uint64_t> bad(n, kNone);
#pragma omp parallel
  {
    std::vector<Elem> x(sp.entries()), y(sp.entries()), scratch(dn);
#pragma omp for schedule(dynamic, 32)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      std::uint64_t a = static_cast<std::uint64_t>(i);
      if (a > best_a.load(std::memory_order_relaxed)) continue;
      std::uint64_t b = first_bad_neighbour(f, steps, a, x.data(), y.data(), scratch.data());
      if (b == kNone) continue;
      bad[a] = b;
      std::uint64_t cur = best_a.load();
      while (a < cur && !best_a.compare_exchange_weak(cur, a)) {
      }
    }
  }
  if (best_a.load() != kNone) out.first = CodePair{best_a.load(), bad[best_a.load()]};
  return out;
}

HomScan sampled_hom_violations(const MapTable& f, std::uint64_t count, std::uint64_t seed, Exec ex) {
  const MatSpace& sp = f.src();
  const MatSpace& dp = f.dst();
  auto steps = rank_one_entries(sp);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick_a(0, f.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_r(0, steps.size() - 1);
  std::vector<CodePair> pairs(count);
  {
    std::vector<Elem> x(sp.entries()), y(sp.entries());
    for (auto& p : pairs) {
      std::uint64_t a = pick_a(rng);
      sp.decode_into(a, x.data());
      std::uint64_t b = shifted(sp, x.data(), steps[pick_r(rng)], y.data());
      p = CodePair{std::min(a, b), std::max(a, b)};
    }
  }
  HomScan out;
  out.pairs = count;
  std::vector<char> bad(count, 0);
  auto check = [&](std::size_t i, Elem* scratch) {
    bad[i] = rank_diff(dp.field(), f.image_data(pairs[i].a), f.image_data(pairs[i].b), dp.rows(), dp.cols(), scratch) != 1;
  };
  if (ex == Exec::Serial) {
    std::vector<Elem> scratch(dp.entries());
    for (std::size_t i = 0; i < count; ++i) check(i, scratch.data());
  } else {
#pragma omp parallel
    {
      std::vector<Elem> scratch(dp.entries());
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) check(static_cast<std::size_t>(i), scratch.data());
    }
  }
  for (std::size_t i = 0; i < count; ++i)
    if (bad[i] && (!out.first || pairs[i] < *out.first)) out.first = pairs[i];
  return out;
}

std::optional<CenterCover> first_degenerate_center(const MapTable& f, Exec ex) {
  const MatSpace& sp = f.src();
  auto steps = rank_one_entries(sp);
  auto centers = centers_of(sp);
  const int dn = f.dst().entries();
  if (ex == Exec::Serial) {
    std::vector<Elem> x(sp.entries()), y(sp.entries()), diff(dn), scratch(dn);
    for (auto c : centers)
      if (auto cover = cover_center(f, steps, c, x, y, diff, scratch)) return cover;
    return std::nullopt;
  }
  std::atomic<std::size_t> best{centers.size()};
  std::vector<std::optional<CenterCover>> found(centers.size());
#pragma omp parallel
  {
    std::vector<Elem> x(sp.entries()), y(sp.entries()), diff(dn), scratch(dn);
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(centers.size()); ++i) {
      std::size_t k = static_cast<std::size_t>(i);
      if (k > best.load(std::memory_order_relaxed)) continue;
      found[k] = cover_center(f, steps, centers[k], x, y, diff, scratch);
      if (!found[k]) continue;
      std::size_t cur = best.load();
      while (k < cur && !best.compare_exchange_weak(cur, k)) {
      }
    }
  }
  if (best.load() == centers.size()) return std::nullopt;
  return found[best.load()];
}

PointScan scan_points(const Field& f, int m, int n, const std::vector<Elem>& points, const std::vector<Mat>& bset,
                      const Mat& a, bool allow_zero, Exec ex) {
  const int width = m + n;
  const std::size_t stride = static_cast<std::size_t>(m) * width;
  const std::size_t count = points.size() / stride;
  std::vector<std::vector<Elem>> bstack;
  for (const auto& b : bset) {
    Mat ib = hstack(Mat::identity(f, m), b);
    bstack.emplace_back(ib.data().begin(), ib.data().end());
  }
  std::vector<Elem> av(a.data().begin(), a.data().end());
  std::vector<PointClass> cls(count);
  if (ex == Exec::Serial) {
    std::vector<Elem> buf(2 * stride);
    for (std::size_t i = 0; i < count; ++i) cls[i] = classify_point(f, m, n, points.data() + i * stride, bstack, av, allow_zero, buf);
  } else {
#pragma omp parallel
    {
      std::vector<Elem> buf(2 * stride);
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i)
        cls[i] = classify_point(f, m, n, points.data() + i * stride, bstack, av, allow_zero, buf);
    }
  }
  PointScan out;
  for (std::size_t i = 0; i < count; ++i) {
    switch (cls[i]) {
      case PointClass::Skip: break;
      case PointClass::XA: ++out.qualifying; ++out.branch_xa; break;
      case PointClass::Zero: ++out.qualifying; ++out.branch_zero; break;
      case PointClass::Fail: ++out.qualifying; out.failures.push_back(i); break;
    }
  }
  return out;
}

}  // namespace matgeo::kernels
