#include "matgeo/geometry.hpp"

#include <algorithm>
#include <set>

namespace matgeo {

namespace {

int pivot_of(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i].v != 0) return static_cast<int>(i);
  return -1;
}

void require_shape(const Mat& a, const Mat& b) {
  if (!a.same_shape(b)) throw Error(Errc::ShapeMismatch, "matrices of different spaces");
}

}  // namespace

const char* kind_name(Kind k) { return k == Kind::TypeOne ? "TypeOne" : "TypeTwo"; }

MaximalSet::MaximalSet(Kind kind, Mat transform, Mat offset)
    : kind_(kind), transform_(std::move(transform)), inv_(transform_), offset_(std::move(offset)) {
  int need = kind_ == Kind::TypeOne ? offset_.rows() : offset_.cols();
  if (transform_.rows() != need || transform_.cols() != need || !(transform_.field() == offset_.field()))
    throw Error(Errc::ShapeMismatch, "transform does not match the offset shape");
  inv_ = inverse(transform_);
}

Mat canonical_transform(Kind kind, const Field& f, const Vec& axis) {
  Vec u = normalize_line(f, axis);
  int n = static_cast<int>(u.size());
  int piv = pivot_of(u);
  Mat t(f, n, n);
  for (int i = 0; i < n; ++i) {
    if (kind == Kind::TypeOne)
      t.set(i, 0, u[i]);
    else
      t.set(0, i, u[i]);
  }
  int slot = 1;
  for (int j = 0; j < n; ++j) {
    if (j == piv) continue;
    if (kind == Kind::TypeOne)
      t.set(j, slot, f.one());
    else
      t.set(slot, j, f.one());
    ++slot;
  }
  return t;
}

MaximalSet MaximalSet::from_axis(Kind kind, const Vec& axis, const Mat& offset) {
  return MaximalSet(kind, canonical_transform(kind, offset.field(), axis), offset);
}

MaximalSet MaximalSet::standard_m(const Field& f, int rows, int cols, int i) {
  Vec u(rows, f.zero());
  u[i] = f.one();
  return from_axis(Kind::TypeOne, u, Mat(f, rows, cols));
}

MaximalSet MaximalSet::standard_n(const Field& f, int rows, int cols, int j) {
  Vec v(cols, f.zero());
  v[j] = f.one();
  return from_axis(Kind::TypeTwo, v, Mat(f, rows, cols));
}

Vec MaximalSet::axis() const {
  return normalize_line(field(), kind_ == Kind::TypeOne ? transform_.col(0) : transform_.row(0));
}

bool MaximalSet::contains(const Mat& x) const {
  require_shape(x, offset_);
  if (kind_ == Kind::TypeOne) {
    Mat y = inv_ * (x - offset_);
    for (int i = 1; i < y.rows(); ++i)
      for (int j = 0; j < y.cols(); ++j)
        if (y(i, j).v != 0) return false;
  } else {
    Mat y = (x - offset_) * inv_;
    for (int i = 0; i < y.rows(); ++i)
      for (int j = 1; j < y.cols(); ++j)
        if (y(i, j).v != 0) return false;
  }
  return true;
}

Vec MaximalSet::coordinate(const Mat& x) const {
  if (!contains(x)) throw Error(Errc::PreconditionViolated, "point is not a member", to_text(x));
  if (kind_ == Kind::TypeOne) return (inv_ * (x - offset_)).row(0);
  return ((x - offset_) * inv_).col(0);
}

Mat MaximalSet::point(const Vec& coord) const {
  const Field& f = field();
  if (kind_ == Kind::TypeOne) return transform_ * pad(Mat::row_vector(f, coord), rows(), cols()) + offset_;
  return pad(Mat::col_vector(f, coord), rows(), cols()) * transform_ + offset_;
}

std::uint64_t MaximalSet::size() const {
  return MatSpace(field(), 1, kind_ == Kind::TypeOne ? cols() : rows()).size();
}

VertexSet MaximalSet::members() const {
  MatSpace cs(field(), 1, kind_ == Kind::TypeOne ? cols() : rows());
  VertexSet out;
  out.reserve(cs.size());
  for (std::uint64_t c = 0; c < cs.size(); ++c) out.push_back(point(cs.decode(c).row(0)));
  std::sort(out.begin(), out.end());
  return out;
}

MaximalSet MaximalSet::canonical() const {
  const Field& f = field();
  Vec a = axis();
  int piv = pivot_of(a);
  Mat off = offset_;
  if (kind_ == Kind::TypeOne)
    off = off - outer(f, a, offset_.row(piv));
  else
    off = off - outer(f, offset_.col(piv), a);
  return from_axis(kind_, a, off);
}

bool same_set(const MaximalSet& a, const MaximalSet& b) {
  if (a.kind() != b.kind() || !a.offset().same_shape(b.offset())) return false;
  return a.axis() == b.axis() && a.contains(b.offset());
}

std::pair<MaximalSet, MaximalSet> maximal_sets_through(const Mat& a, const Mat& b) {
  require_shape(a, b);
  Mat d = b - a;
  if (rank(d) != 1) throw Error(Errc::NotAdjacent, "points are not adjacent", to_text(a) + " | " + to_text(b));
  return {MaximalSet::from_axis(Kind::TypeOne, column_line(d), a), MaximalSet::from_axis(Kind::TypeTwo, row_line(d), a)};
}

VertexSet intersect(const MaximalSet& m, const MaximalSet& n) {
  require_shape(m.offset(), n.offset());
  VertexSet out;
  for (auto& x : m.members())
    if (n.contains(x)) out.push_back(x);
  return out;
}

bool is_adjacent_set(const VertexSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      require_shape(s[i], s[j]);
      if (s[i] == s[j]) continue;
      if (!adjacent(s[i], s[j])) return false;
    }
  return true;
}

namespace {

// shared axis of the differences from a base point, per kind
std::optional<Vec> common_line(const VertexSet& s, const Mat& base, Kind kind) {
  std::optional<Vec> line;
  for (const auto& x : s) {
    if (x == base) continue;
    Mat d = x - base;
    Vec l = kind == Kind::TypeOne ? column_line(d) : row_line(d);
    if (!line)
      line = l;
    else if (*line != l)
      return std::nullopt;
  }
  return line;
}

}  // namespace

MaximalSet classify_clique(const VertexSet& input) {
  if (input.empty()) throw Error(Errc::NotAdjacentSet, "empty set");
  VertexSet s = input;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (!is_adjacent_set(s)) throw Error(Errc::NotAdjacentSet, "set is not pairwise adjacent");
  const Mat& a0 = s.front();
  const Field& f = a0.field();
  if (s.size() == 1) {
    Mat w = a0 + Mat::unit(f, a0.rows(), a0.cols(), 0, 0);
    throw Error(Errc::NotMaximal, "a single point extends to an edge", to_text(w));
  }
  std::optional<Mat> witness;
  for (Kind kind : {Kind::TypeOne, Kind::TypeTwo}) {
    auto line = common_line(s, a0, kind);
    if (!line) continue;
    MaximalSet m = MaximalSet::from_axis(kind, *line, a0);
    if (m.size() == s.size()) return m;
    if (!witness)
      for (auto& x : m.members())
        if (!std::binary_search(s.begin(), s.end(), x)) {
          witness = x;
          break;
        }
  }
  if (!witness) throw Error(Errc::NotAdjacentSet, "set lies in no maximal set");
  throw Error(Errc::NotMaximal, "set extends to a larger clique", to_text(*witness));
}

VertexSet Line::points() const {
  const Field& f = host.field();
  VertexSet out;
  for (std::uint32_t l = 0; l < f.q(); ++l) {
    Vec c(alpha.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(f.mul({l}, alpha[i]), beta[i]);
    out.push_back(host.point(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Line line_through(const MaximalSet& m, const MaximalSet& n) {
  if (m.kind() == n.kind()) throw Error(Errc::WrongKinds, "a line needs maximal sets of different kinds");
  VertexSet pts = intersect(m, n);
  if (pts.empty()) throw Error(Errc::Disjoint, "maximal sets do not meet");
  const Field& f = m.field();
  Vec beta = m.coordinate(pts[0]);
  Vec second = m.coordinate(pts[1]);
  Vec diff(beta.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = f.sub(second[i], beta[i]);
  return Line{m, normalize_line(f, diff), beta};
}

int dim_adjacent_set(const VertexSet& s) {
  if (s.empty()) throw Error(Errc::ZeroNotMember, "empty set");
  const Field& f = s.front().field();
  Mat zero(f, s.front().rows(), s.front().cols());
  if (std::find(s.begin(), s.end(), zero) == s.end()) throw Error(Errc::ZeroNotMember, "0 is not in the set");
  if (!is_adjacent_set(s)) throw Error(Errc::NotAdjacentSet, "set is not pairwise adjacent");
  bool nonzero = std::any_of(s.begin(), s.end(), [](const Mat& x) { return !x.is_zero(); });
  if (!nonzero) throw Error(Errc::PreconditionViolated, "adjacent set needs at least two points");
  for (Kind kind : {Kind::TypeOne, Kind::TypeTwo}) {
    auto line = common_line(s, zero, kind);
    if (!line) continue;
    MaximalSet m = MaximalSet::from_axis(kind, *line, zero);
    std::vector<Vec> coords;
    for (const auto& x : s)
      if (!x.is_zero()) coords.push_back(m.coordinate(x));
    return vector_rank(f, coords);
  }
  throw Error(Errc::NotAdjacentSet, "set lies in no maximal set");
}

VertexSet unit_ball(const Mat& a) {
  VertexSet out{a};
  for (const auto& r : rank_one_matrices(a.field(), a.rows(), a.cols())) out.push_back(a + r);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MaximalSet> all_maximal_sets(const Field& f, int rows, int cols) {
  std::vector<MaximalSet> out;
  for (Kind kind : {Kind::TypeOne, Kind::TypeTwo}) {
    int len = kind == Kind::TypeOne ? rows : cols;
    for (const auto& axis : projective_points(f, len)) {
      int piv = pivot_of(axis);
      // offsets with the pivot row (column) zero are the canonical coset representatives
      int free_rows = kind == Kind::TypeOne ? rows - 1 : rows;
      int free_cols = kind == Kind::TypeOne ? cols : cols - 1;
      std::uint64_t count = 1;
      if (free_rows > 0 && free_cols > 0) count = MatSpace(f, free_rows, free_cols).size();
      for (std::uint64_t c = 0; c < count; ++c) {
        Mat off(f, rows, cols);
        if (free_rows > 0 && free_cols > 0) {
          Mat fr = MatSpace(f, free_rows, free_cols).decode(c);
          for (int i = 0; i < free_rows; ++i)
            for (int j = 0; j < free_cols; ++j) {
              int ri = kind == Kind::TypeOne && i >= piv ? i + 1 : i;
              int cj = kind == Kind::TypeTwo && j >= piv ? j + 1 : j;
              off.set(ri, cj, fr(i, j));
            }
        }
        out.push_back(MaximalSet::from_axis(kind, axis, off));
      }
    }
  }
  return out;
}

bool two_pencil_applies(const Mat& a, const Mat& b1, const Mat& b2, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
  if (!a.same_shape(b1) || !a.same_shape(b2)) return false;
  int lim = std::min(a.rows(), a.cols());
  int r = static_cast<int>(rows.size()), s = static_cast<int>(cols.size());
  if (r < 1 || s < 1 || r >= lim || s >= lim) return false;
  if (b1 == b2) return false;
  std::set<int> rs(rows.begin(), rows.end()), cs(cols.begin(), cols.end());
  for (const Mat* b : {&b1, &b2})
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        if ((*b)(i, j).v != 0 && (!rs.count(i) || !cs.count(j))) return false;
  return adjacent(a, b1) && adjacent(a, b2);
}

bool two_pencil_constraint(const Mat& a, const Mat& b1, const Mat& b2, const std::vector<int>& rows,
                           const std::vector<int>& cols) {
  if (!two_pencil_applies(a, b1, b2, rows, cols))
    throw Error(Errc::PreconditionViolated, "triple does not satisfy the two-pencil hypotheses");
  std::set<int> rs(rows.begin(), rows.end()), cs(cols.begin(), cols.end());
  bool rows_vanish = true, cols_vanish = true;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j).v == 0) continue;
      if (!rs.count(i)) rows_vanish = false;
      if (!cs.count(j)) cols_vanish = false;
    }
  return rows_vanish || cols_vanish;
}

}  // namespace matgeo
