#pragma once

#include <map>
#include <string>

#include "json.hpp"
#include "matgeo/kernels.hpp"

namespace matgeo {

enum class Side { Left, Right };

// An (m-1)-flat of the (m+n)-space. Left flats are spanned by the rows of an
// m x (m+n) matrix, right flats by the columns of an (m+n) x m matrix.
class Flat {
 public:
  Flat(const Mat& rep, Side side);
  const Mat& rep() const { return rep_; }
  Side side() const { return side_; }
  int dim() const { return side_ == Side::Left ? rep_.rows() : rep_.cols(); }
  int ambient() const { return side_ == Side::Left ? rep_.cols() : rep_.rows(); }
  friend bool operator==(const Flat& a, const Flat& b) { return a.side_ == b.side_ && a.rep_ == b.rep_; }

 private:
  Mat rep_;
  Side side_;
};

int flat_ad(const Flat& a, const Flat& b);
// (I_m, X)
Flat embed_graph_point(const Mat& x);
// every left flat of dimension m in the (m+n)-space, as RREF matrices, flattened
std::vector<Elem> left_points(const Field& f, int m, int ambient);

// matrices with rank r and exactly k nonzero rows
std::vector<Mat> row_stratum(const Field& f, int m, int n, int k, int r);

struct LemmaReport {
  std::string lemma;
  nlohmann::json params;
  std::uint64_t strata_checked = 0;
  std::uint64_t vacuous = 0;
  std::uint64_t points = 0;
  std::map<std::string, std::uint64_t> branch_counts;
  std::vector<nlohmann::json> counterexamples;

  bool passed() const { return counterexamples.empty(); }
  nlohmann::json to_json() const;
};

struct LemmaOptions {
  std::uint64_t budget = std::uint64_t{1} << 32;  // strata x points x hypotheses
  std::uint64_t max_strata = 0;                   // 0 checks every A
  std::uint64_t seed = 1;                         // used when max_strata samples
  kernels::Exec exec = kernels::Exec::Parallel;
};

LemmaReport check_lemma_41(const FieldHom& e_to_d, int m, int n, int k, const LemmaOptions& opt = {});
LemmaReport check_lemma_42(const FieldHom& e_to_d, int m, int n, int k, int r, const LemmaOptions& opt = {});
// column versions, by transposition
LemmaReport check_lemma_43(const FieldHom& e_to_d, int m, int n, int k, const LemmaOptions& opt = {});
LemmaReport check_lemma_44(const FieldHom& e_to_d, int m, int n, int k, int r, const LemmaOptions& opt = {});

}  // namespace matgeo
