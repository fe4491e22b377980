#pragma once

#include <optional>
#include <random>

#include "matgeo/geometry.hpp"
#include "matgeo/kernels.hpp"
#include "matgeo/maptable.hpp"

namespace matgeo {

enum class Orientation { Straight, Transposed };

const char* orientation_name(Orientation o);

// Straight:   X -> P diag((I_m + X^t L)^{-1} X^t, 0) Q,    L is n x m
// Transposed: X -> P diag(tX^t (I_m + L tX^t)^{-1}, 0) Q,  L is m x n
// (X^t is the entrywise image under tau, tX the transpose)
struct StandardHomParams {
  Orientation orientation;
  int m;
  int n;
  Mat P;
  Mat Q;
  FieldHom tau;
  Mat L;

  MatSpace src() const { return MatSpace(tau.src(), m, n); }
  MatSpace dst() const { return MatSpace(tau.dst(), P.rows(), Q.rows()); }
};

// throws InvalidParams on inconsistent shapes
void check_shapes(const StandardHomParams& p);
Mat eval_standard(const StandardHomParams& p, const Mat& x);
MapTable standard_table(const StandardHomParams& p);

struct ParamCheck {
  bool valid = false;
  std::optional<Mat> witness;       // first X with a singular I + X^t L
  bool equivalence_holds = true;    // invertibility of both sides agrees at every X
  bool identity_holds = true;       // push-through identity at every invertible X
  std::uint64_t checked = 0;
};

ParamCheck validate_params(const StandardHomParams& p);

Mat random_invertible(const Field& f, int n, std::mt19937_64& rng);
// random tau, P, Q; L drawn until valid, falling back to a rank one L that is valid by construction
StandardHomParams random_valid_params(const Field& d, const Field& d2, int m, int n, int m2, int n2, Orientation o,
                                      std::mt19937_64& rng);

struct HomCheck {
  bool ok = true;
  std::optional<std::pair<Mat, Mat>> witness;
  std::uint64_t pairs = 0;
  std::optional<std::uint64_t> seed;
};

HomCheck is_graph_hom(const MapTable& f, kernels::Exec ex = kernels::Exec::Parallel);
HomCheck is_graph_hom_sampled(const MapTable& f, std::uint64_t n, std::uint64_t seed,
                              kernels::Exec ex = kernels::Exec::Parallel);
bool is_colouring(const MapTable& f);

struct DegeneracyWitness {
  Mat a;
  MaximalSet m;
  MaximalSet n;
};

// throws NotHom (exhaustive check first)
std::optional<DegeneracyWitness> find_degeneracy(const MapTable& f, kernels::Exec ex = kernels::Exec::Parallel);
bool is_degenerate(const MapTable& f);
// enumerates every opposite-kind pair through f(A); small targets only
std::optional<DegeneracyWitness> find_degeneracy_by_enumeration(const MapTable& f);

struct XiMapParams {
  FieldHom embed;
  Elem xi;
  int n;
};

MapTable make_xi_map(const XiMapParams& p);
// smallest element of dst outside the embedded image
Elem smallest_xi(const FieldHom& embed);

enum class TwistSide { Left, Right };

MapTable moebius_twist(const MapTable& f, const Mat& l, TwistSide side);

bool hom_exists(std::uint64_t q, int m, int n, std::uint64_t q2, int m2, int n2);
MapTable proper_coloring(const Field& f, int m, int n);
MapTable build_witness_hom(std::uint64_t q, int m, int n, std::uint64_t q2, int m2, int n2);

}  // namespace matgeo
