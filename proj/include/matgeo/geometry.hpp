#pragma once

#include <utility>
#include <vector>

#include "matgeo/matrix.hpp"

namespace matgeo {

using VertexSet = std::vector<Mat>;

enum class Kind { TypeOne, TypeTwo };

const char* kind_name(Kind k);

// TypeOne: P*M_1 + A (members differ from A by u x^T, u = first column of P)
// TypeTwo: N_1*Q + A (members differ from A by y v^T, v = first row of Q)
class MaximalSet {
 public:
  MaximalSet(Kind kind, Mat transform, Mat offset);

  // canonical transform built from the defining vector
  static MaximalSet from_axis(Kind kind, const Vec& axis, const Mat& offset);
  // M_i / N_j, zero-based
  static MaximalSet standard_m(const Field& f, int rows, int cols, int i);
  static MaximalSet standard_n(const Field& f, int rows, int cols, int j);

  Kind kind() const { return kind_; }
  const Mat& transform() const { return transform_; }
  const Mat& offset() const { return offset_; }
  // first column of P (TypeOne) or first row of Q (TypeTwo), normalized
  Vec axis() const;
  int rows() const { return offset_.rows(); }
  int cols() const { return offset_.cols(); }
  const Field& field() const { return offset_.field(); }

  bool contains(const Mat& x) const;
  // coordinate vector: row 1 of P^{-1}(X-A) or column 1 of (X-A)Q^{-1}
  Vec coordinate(const Mat& x) const;
  Mat point(const Vec& coord) const;
  // members sorted by encoding
  VertexSet members() const;
  std::uint64_t size() const;
  // same offset class, canonical transform, offset = lexicographically smallest member
  MaximalSet canonical() const;

  friend bool same_set(const MaximalSet& a, const MaximalSet& b);

 private:
  Kind kind_;
  Mat transform_;
  Mat inv_;
  Mat offset_;
};

bool same_set(const MaximalSet& a, const MaximalSet& b);

// Canonical transform whose first column (or row) is the normalized axis and whose
// other columns (rows) are the standard basis vectors skipping the axis pivot.
Mat canonical_transform(Kind kind, const Field& f, const Vec& axis);

std::pair<MaximalSet, MaximalSet> maximal_sets_through(const Mat& a, const Mat& b);
VertexSet intersect(const MaximalSet& m, const MaximalSet& n);
MaximalSet classify_clique(const VertexSet& s);

struct Line {
  MaximalSet host;
  Vec alpha;
  Vec beta;
  VertexSet points() const;
};

Line line_through(const MaximalSet& m, const MaximalSet& n);

// Pairwise adjacency of distinct members.
bool is_adjacent_set(const VertexSet& s);
int dim_adjacent_set(const VertexSet& s);
VertexSet unit_ball(const Mat& a);

// Every maximal set of GF(q)^{m x n} in canonical form: TypeOne sets first.
std::vector<MaximalSet> all_maximal_sets(const Field& f, int rows, int cols);

// rows/cols are zero-based index sets alpha, beta
bool two_pencil_constraint(const Mat& a, const Mat& b1, const Mat& b2, const std::vector<int>& rows,
                           const std::vector<int>& cols);
// precondition part only, without throwing
bool two_pencil_applies(const Mat& a, const Mat& b1, const Mat& b2, const std::vector<int>& rows,
                        const std::vector<int>& cols);

}  // namespace matgeo
