#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "matgeo/field.hpp"

namespace matgeo {

using Vec = std::vector<Elem>;

class Mat {
 public:
  Mat(const Field& f, int rows, int cols);
  Mat(const Field& f, int rows, int cols, std::vector<Elem> entries);

  static Mat identity(const Field& f, int n);
  // c * E_ij, zero-based indices
  static Mat unit(const Field& f, int rows, int cols, int i, int j, Elem c = Elem{1});
  static Mat row_vector(const Field& f, const Vec& v);
  static Mat col_vector(const Field& f, const Vec& v);

  const Field& field() const { return *field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Elem operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  void set(int i, int j, Elem x) { a_[static_cast<std::size_t>(i) * cols_ + j] = x; }
  std::span<const Elem> data() const { return a_; }
  std::span<Elem> data() { return a_; }
  Vec row(int i) const;
  Vec col(int j) const;
  bool is_zero() const;
  bool same_shape(const Mat& o) const { return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_; }

  friend bool operator==(const Mat& a, const Mat& b) { return a.same_shape(b) && a.a_ == b.a_; }
  // lexicographic on row-major entries, which is the encoding order
  friend bool operator<(const Mat& a, const Mat& b) { return a.a_ < b.a_; }

 private:
  const Field* field_;
  int rows_;
  int cols_;
  std::vector<Elem> a_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator-(const Mat& a);
Mat operator*(const Mat& a, const Mat& b);
Mat scale(Elem c, const Mat& a);
Mat transpose(const Mat& a);
Mat apply_hom(const FieldHom& h, const Mat& a);
Vec apply_hom(const FieldHom& h, const Vec& v);

// Gaussian elimination in place on a rows x cols buffer; returns the rank.
int rank_inplace(const Field& f, Elem* a, int rows, int cols);
int rank(const Mat& a);
int ad(const Mat& a, const Mat& b);
bool adjacent(const Mat& a, const Mat& b);

std::optional<Mat> try_inverse(const Mat& a);
Mat inverse(const Mat& a);
// reduced row echelon form; pivot columns appended to *pivots when given
Mat rref(const Mat& a, std::vector<int>* pivots = nullptr);
// rank of a family of vectors of equal length
int vector_rank(const Field& f, const std::vector<Vec>& vs);

Mat block(const Mat& a, int r0, int c0, int rows, int cols);
// a placed at (r0, c0) inside a zero rows x cols matrix
Mat pad(const Mat& a, int rows, int cols, int r0 = 0, int c0 = 0);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat outer(const Field& f, const Vec& u, const Vec& v);

// scales so that the leading nonzero entry is 1; this is the lexicographically
// smallest nonzero multiple
Vec normalize_line(const Field& f, Vec v);
// for a rank-1 matrix: normalized spanning vectors of its column and row spaces
Vec column_line(const Mat& a);
Vec row_line(const Mat& a);

std::string to_text(const Mat& a);
Mat from_text(const Field& f, int rows, int cols, std::string_view s);

// All of GF(q)^{m x n} in the canonical encoding order. The first entry is the
// most significant digit, so code order equals lexicographic order.
class MatSpace {
 public:
  MatSpace(const Field& f, int rows, int cols);
  const Field& field() const { return *field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int entries() const { return rows_ * cols_; }
  // q^{mn}; throws DomainTooLarge when it does not fit in 62 bits
  std::uint64_t size() const;
  bool size_at_most(std::uint64_t limit) const;
  Mat decode(std::uint64_t code) const;
  void decode_into(std::uint64_t code, Elem* out) const;
  std::uint64_t encode(const Mat& a) const;
  std::uint64_t encode(const Elem* a) const;
  bool contains(const Mat& a) const;
  std::string label() const;

  friend bool operator==(const MatSpace& a, const MatSpace& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_;
  }

 private:
  const Field* field_;
  int rows_;
  int cols_;
};

// Distinct rank-1 matrices generated as outer products u v^T, sorted by encoding.
std::vector<Mat> rank_one_matrices(const Field& f, int rows, int cols);
// Normalized representatives of the one-dimensional subspaces of GF(q)^len.
std::vector<Vec> projective_points(const Field& f, int len);

// Breadth-first distance in the adjacency graph. Neighbours are produced from the
// outer-product generator, never from a rank computation.
int graph_distance(const Mat& a, const Mat& b);

}  // namespace matgeo
