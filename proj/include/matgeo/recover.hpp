#pragma once

#include "json.hpp"
#include "matgeo/homs.hpp"

namespace matgeo {

// x -> k(x)^{-1} x^tau P with k(x) = sum x_i^tau a_i + b
struct WeightedSemiAffine {
  FieldHom tau;
  Mat P;
  Vec a;
  Elem b;

  Elem k(const Vec& x) const;
  Vec operator()(const Vec& x) const;
};

// g: row vectors D^{1 x n} -> D'^{1 x n'} with g(0) = 0; throws NoFit
WeightedSemiAffine fit_semiaffine(const MapTable& g);
std::optional<WeightedSemiAffine> fit_semiaffine_with(const MapTable& g, const FieldHom& tau);
MapTable tabulate(const WeightedSemiAffine& w, const MatSpace& src);

enum class RecoveryExit { Ok, NotHom, Degenerate, DimDeficient, NoFit };

const char* exit_name(RecoveryExit e);

struct RecoveryResult {
  RecoveryExit exit = RecoveryExit::NoFit;
  std::optional<StandardHomParams> params;
  bool residual_checked = false;
  std::string witness;
  int taus_tried = 0;

  nlohmann::json to_json() const;
};

// throws UnsupportedField for q < 4, PreconditionViolated when f(0) != 0
RecoveryResult recover_standard(const MapTable& f);

// dim f(S) <= dim S
bool dim_bound_check(const MapTable& f, const VertexSet& s);

}  // namespace matgeo
