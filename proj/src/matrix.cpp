#include "matgeo/matrix.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace matgeo {

namespace {

void require_same(const Mat& a, const Mat& b) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "operands over different fields");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::ShapeMismatch, std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

}  // namespace

Mat::Mat(const Field& f, int rows, int cols) : field_(&f), rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw Error(Errc::ShapeMismatch, "matrix dimensions must be positive");
  a_.assign(static_cast<std::size_t>(rows) * cols, Elem{0});
}

Mat::Mat(const Field& f, int rows, int cols, std::vector<Elem> entries)
    : field_(&f), rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (rows < 1 || cols < 1) throw Error(Errc::ShapeMismatch, "matrix dimensions must be positive");
  if (a_.size() != static_cast<std::size_t>(rows) * cols) throw Error(Errc::ShapeMismatch, "entry count mismatch");
  for (auto e : a_)
    if (!f.contains(e)) throw Error(Errc::FormatError, "entry " + std::to_string(e.v) + " outside the field");
}

Mat Mat::identity(const Field& f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, f.one());
  return m;
}

Mat Mat::unit(const Field& f, int rows, int cols, int i, int j, Elem c) {
  Mat m(f, rows, cols);
  m.set(i, j, c);
  return m;
}

Mat Mat::row_vector(const Field& f, const Vec& v) { return Mat(f, 1, static_cast<int>(v.size()), v); }
Mat Mat::col_vector(const Field& f, const Vec& v) { return Mat(f, static_cast<int>(v.size()), 1, v); }

Vec Mat::row(int i) const { return Vec(a_.begin() + static_cast<long>(i) * cols_, a_.begin() + static_cast<long>(i + 1) * cols_); }

Vec Mat::col(int j) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Elem e) { return e.v == 0; });
}

Mat operator+(const Mat& a, const Mat& b) {
  require_same(a, b);
  const Field& f = a.field();
  Mat c(f, a.rows(), a.cols());
  auto x = a.data(), y = b.data();
  auto z = c.data();
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = f.add(x[i], y[i]);
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  require_same(a, b);
  const Field& f = a.field();
  Mat c(f, a.rows(), a.cols());
  auto x = a.data(), y = b.data();
  auto z = c.data();
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = f.sub(x[i], y[i]);
  return c;
}

Mat operator-(const Mat& a) {
  Mat c = a;
  for (auto& e : c.data()) e = a.field().neg(e);
  return c;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "product over different fields");
  if (a.cols() != b.rows()) throw Error(Errc::ShapeMismatch, "inner dimensions differ");
  const Field& f = a.field();
  Mat c(f, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int l = 0; l < a.cols(); ++l) {
      Elem x = a(i, l);
      if (x.v == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c.set(i, j, f.add(c(i, j), f.mul(x, b(l, j))));
    }
  return c;
}

Mat scale(Elem c, const Mat& a) {
  Mat out = a;
  for (auto& e : out.data()) e = a.field().mul(c, e);
  return out;
}

Mat transpose(const Mat& a) {
  Mat t(a.field(), a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t.set(j, i, a(i, j));
  return t;
}

Mat apply_hom(const FieldHom& h, const Mat& a) {
  if (!(a.field() == h.src())) throw Error(Errc::FieldMismatch, "matrix is not over the hom source");
  Mat out(h.dst(), a.rows(), a.cols());
  auto x = a.data();
  auto y = out.data();
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = h(x[i]);
  return out;
}

Vec apply_hom(const FieldHom& h, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = h(v[i]);
  return out;
}

int rank_inplace(const Field& f, Elem* a, int rows, int cols) {
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i * cols + c].v != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    Elem pinv = f.inv(a[r * cols + c]);
    for (int i = r + 1; i < rows; ++i) {
      Elem x = a[i * cols + c];
      if (x.v == 0) continue;
      Elem t = f.neg(f.mul(x, pinv));
      for (int j = c; j < cols; ++j) a[i * cols + j] = f.add(a[i * cols + j], f.mul(t, a[r * cols + j]));
    }
    ++r;
  }
  return r;
}

int rank(const Mat& a) {
  std::vector<Elem> buf(a.data().begin(), a.data().end());
  return rank_inplace(a.field(), buf.data(), a.rows(), a.cols());
}

int ad(const Mat& a, const Mat& b) { return rank(a - b); }

bool adjacent(const Mat& a, const Mat& b) { return ad(a, b) == 1; }

Mat rref(const Mat& a, std::vector<int>* pivots) {
  const Field& f = a.field();
  Mat m = a;
  int rows = m.rows(), cols = m.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m(i, c).v != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) {
        Elem t = m(piv, j);
        m.set(piv, j, m(r, j));
        m.set(r, j, t);
      }
    Elem pinv = f.inv(m(r, c));
    for (int j = 0; j < cols; ++j) m.set(r, j, f.mul(pinv, m(r, j)));
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c).v == 0) continue;
      Elem t = f.neg(m(i, c));
      for (int j = 0; j < cols; ++j) m.set(i, j, f.add(m(i, j), f.mul(t, m(r, j))));
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return m;
}

std::optional<Mat> try_inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw Error(Errc::ShapeMismatch, "inverse of a non-square matrix");
  int n = a.rows();
  Mat aug = hstack(a, Mat::identity(a.field(), n));
  std::vector<int> piv;
  Mat r = rref(aug, &piv);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  return block(r, 0, n, n, n);
}

Mat inverse(const Mat& a) {
  auto inv = try_inverse(a);
  if (!inv) throw Error(Errc::Singular, "matrix is singular", to_text(a));
  return *inv;
}

int vector_rank(const Field& f, const std::vector<Vec>& vs) {
  if (vs.empty()) return 0;
  int len = static_cast<int>(vs[0].size());
  std::vector<Elem> buf;
  buf.reserve(vs.size() * len);
  for (const auto& v : vs) {
    if (static_cast<int>(v.size()) != len) throw Error(Errc::ShapeMismatch, "vectors of different lengths");
    buf.insert(buf.end(), v.begin(), v.end());
  }
  return rank_inplace(f, buf.data(), static_cast<int>(vs.size()), len);
}

Mat block(const Mat& a, int r0, int c0, int rows, int cols) {
  if (r0 < 0 || c0 < 0 || r0 + rows > a.rows() || c0 + cols > a.cols())
    throw Error(Errc::ShapeMismatch, "block outside the matrix");
  Mat b(a.field(), rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) b.set(i, j, a(r0 + i, c0 + j));
  return b;
}

Mat pad(const Mat& a, int rows, int cols, int r0, int c0) {
  if (r0 < 0 || c0 < 0 || r0 + a.rows() > rows || c0 + a.cols() > cols)
    throw Error(Errc::ShapeMismatch, "padding target too small");
  Mat b(a.field(), rows, cols);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) b.set(r0 + i, c0 + j, a(i, j));
  return b;
}

Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw Error(Errc::ShapeMismatch, "hstack row mismatch");
  Mat c(a.field(), a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c.set(i, j, a(i, j));
    for (int j = 0; j < b.cols(); ++j) c.set(i, a.cols() + j, b(i, j));
  }
  return c;
}

Mat vstack(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw Error(Errc::ShapeMismatch, "vstack column mismatch");
  Mat c(a.field(), a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.set(i, j, a(i, j));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) c.set(a.rows() + i, j, b(i, j));
  return c;
}

Mat outer(const Field& f, const Vec& u, const Vec& v) {
  Mat c(f, static_cast<int>(u.size()), static_cast<int>(v.size()));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) c.set(static_cast<int>(i), static_cast<int>(j), f.mul(u[i], v[j]));
  return c;
}

Vec normalize_line(const Field& f, Vec v) {
  for (auto e : v) {
    if (e.v == 0) continue;
    Elem s = f.inv(e);
    for (auto& x : v) x = f.mul(s, x);
    return v;
  }
  throw Error(Errc::PreconditionViolated, "zero vector spans no line");
}

Vec column_line(const Mat& a) {
  for (int j = 0; j < a.cols(); ++j) {
    Vec c = a.col(j);
    if (std::any_of(c.begin(), c.end(), [](Elem e) { return e.v != 0; })) return normalize_line(a.field(), c);
  }
  throw Error(Errc::PreconditionViolated, "zero matrix has no column line");
}

Vec row_line(const Mat& a) {
  for (int i = 0; i < a.rows(); ++i) {
    Vec r = a.row(i);
    if (std::any_of(r.begin(), r.end(), [](Elem e) { return e.v != 0; })) return normalize_line(a.field(), r);
  }
  throw Error(Errc::PreconditionViolated, "zero matrix has no row line");
}

std::string to_text(const Mat& a) {
  std::string s;
  for (int i = 0; i < a.rows(); ++i) {
    if (i) s += ';';
    for (int j = 0; j < a.cols(); ++j) {
      if (j) s += ',';
      s += std::to_string(a(i, j).v);
    }
  }
  return s;
}

Mat from_text(const Field& f, int rows, int cols, std::string_view s) {
  std::vector<Elem> e;
  int r = 0, c = 0;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(Errc::FormatError, "matrix \"" + std::string(s) + "\": " + why);
  };
  while (true) {
    std::size_t start = i;
    std::uint64_t v = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
      if (v >= f.q()) fail("entry outside the field");
      ++i;
    }
    if (i == start) fail("expected a number");
    e.push_back(Elem{static_cast<std::uint32_t>(v)});
    ++c;
    if (i == s.size()) break;
    if (s[i] == ',') {
      ++i;
    } else if (s[i] == ';') {
      if (c != cols) fail("row has wrong length");
      c = 0;
      ++r;
      ++i;
    } else {
      fail("unexpected character");
    }
  }
  if (c != cols || r + 1 != rows) fail("expected " + std::to_string(rows) + "x" + std::to_string(cols));
  return Mat(f, rows, cols, std::move(e));
}

MatSpace::MatSpace(const Field& f, int rows, int cols) : field_(&f), rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw Error(Errc::ShapeMismatch, "space dimensions must be positive");
}

bool MatSpace::size_at_most(std::uint64_t limit) const {
  std::uint64_t s = 1;
  for (int i = 0; i < entries(); ++i) {
    s *= field_->q();
    if (s > limit) return false;
  }
  return true;
}

std::uint64_t MatSpace::size() const {
  if (!size_at_most(std::uint64_t{1} << 62)) throw Error(Errc::DomainTooLarge, label() + " does not fit in 62 bits");
  std::uint64_t s = 1;
  for (int i = 0; i < entries(); ++i) s *= field_->q();
  return s;
}

void MatSpace::decode_into(std::uint64_t code, Elem* out) const {
  const std::uint64_t q = field_->q();
  for (int t = entries() - 1; t >= 0; --t) {
    out[t] = Elem{static_cast<std::uint32_t>(code % q)};
    code /= q;
  }
}

Mat MatSpace::decode(std::uint64_t code) const {
  Mat a(*field_, rows_, cols_);
  decode_into(code, a.data().data());
  return a;
}

std::uint64_t MatSpace::encode(const Elem* a) const {
  std::uint64_t c = 0;
  for (int t = 0; t < entries(); ++t) c = c * field_->q() + a[t].v;
  return c;
}

std::uint64_t MatSpace::encode(const Mat& a) const {
  if (!contains(a)) throw Error(Errc::ShapeMismatch, "matrix is not in " + label());
  return encode(a.data().data());
}

bool MatSpace::contains(const Mat& a) const {
  return a.field() == *field_ && a.rows() == rows_ && a.cols() == cols_;
}

std::string MatSpace::label() const {
  return "GF(" + std::to_string(field_->q()) + ")^" + std::to_string(rows_) + "x" + std::to_string(cols_);
}

std::vector<Vec> projective_points(const Field& f, int len) {
  std::vector<Vec> out;
  MatSpace vs(f, 1, len);
  std::uint64_t n = vs.size();
  for (std::uint64_t c = 1; c < n; ++c) {
    Mat v = vs.decode(c);
    Vec x(v.data().begin(), v.data().end());
    if (normalize_line(f, x) == x) out.push_back(std::move(x));
  }
  return out;
}

std::vector<Mat> rank_one_matrices(const Field& f, int rows, int cols) {
  MatSpace us(f, 1, rows), vs(f, 1, cols);
  std::set<std::vector<Elem>> seen;
  std::vector<Mat> out;
  // u runs over normalized lines so every product appears exactly once
  for (const auto& u : projective_points(f, rows))
    for (std::uint64_t c = 1; c < vs.size(); ++c) {
      Mat v = vs.decode(c);
      Mat m = outer(f, u, Vec(v.data().begin(), v.data().end()));
      std::vector<Elem> key(m.data().begin(), m.data().end());
      if (seen.insert(key).second) out.push_back(std::move(m));
    }
  std::sort(out.begin(), out.end());
  return out;
}

int graph_distance(const Mat& a, const Mat& b) {
  require_same(a, b);
  const Field& f = a.field();
  MatSpace sp(f, a.rows(), a.cols());
  if (!sp.size_at_most(std::uint64_t{1} << 20)) throw Error(Errc::DomainTooLarge, sp.label() + " exceeds 2^20 vertices");
  if (a == b) return 0;
  const std::uint64_t n = sp.size();
  const int cap = std::min(a.rows(), a.cols()) + 1;
  auto steps = rank_one_matrices(f, a.rows(), a.cols());
  std::vector<int> dist(n, -1);
  std::uint64_t src = sp.encode(a), dst = sp.encode(b);
  std::vector<std::uint64_t> frontier{src};
  dist[src] = 0;
  std::vector<Elem> x(sp.entries()), y(sp.entries());
  for (int level = 1; level <= cap && !frontier.empty(); ++level) {
    std::vector<std::uint64_t> next;
    for (auto v : frontier) {
      sp.decode_into(v, x.data());
      for (const auto& r : steps) {
        auto rd = r.data();
        for (int t = 0; t < sp.entries(); ++t) y[t] = f.add(x[t], rd[t]);
        std::uint64_t w = sp.encode(y.data());
        if (dist[w] >= 0) continue;
        dist[w] = level;
        if (w == dst) return level;
        next.push_back(w);
      }
    }
    frontier.swap(next);
  }
  throw Error(Errc::DistanceCapExceeded, "no path within " + std::to_string(cap) + " steps");
}

}  // namespace matgeo
