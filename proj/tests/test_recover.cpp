#include <random>

#include "doctest.h"
#include "matgeo/recover.hpp"
#include "oracles.hpp"

using namespace matgeo;

namespace {

const Field& F4() { return Field::get(2, 2); }
const Field& F16() { return Field::get(2, 4); }

Mat random_mat(const Field& f, int m, int n, std::mt19937_64& rng) {
  Mat a(f, m, n);
  for (auto& e : a.data()) e = Elem{static_cast<std::uint32_t>(rng() % f.q())};
  return a;
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::IoError;
}

// row vector map x -> k(x)^{-1} x^tau P written out directly
MapTable direct_semiaffine(const FieldHom& tau, const Mat& p, const Vec& a, Elem b, int n) {
  const Field& d = tau.dst();
  return MapTable::tabulate(MatSpace(tau.src(), 1, n), MatSpace(d, 1, p.cols()), [&](const Mat& x) {
    Elem k = b;
    for (int i = 0; i < n; ++i) k = d.add(k, d.mul(tau(x(0, i)), a[i]));
    Mat y = apply_hom(tau, x) * p;
    for (auto& e : y.data()) e = d.mul(e, d.inv(k));
    return y;
  });
}

// slice of f along row i (TypeOne) or column j (TypeTwo) of the source, read off one row/column of the image
MapTable restriction(const MapTable& f, bool rows, int idx) {
  const MatSpace& sp = f.src();
  int len = rows ? sp.cols() : sp.rows();
  int out = rows ? f.dst().cols() : f.dst().rows();
  return MapTable::tabulate(MatSpace(sp.field(), 1, len), MatSpace(f.dst().field(), 1, out), [&](const Mat& x) {
    Mat s(sp.field(), sp.rows(), sp.cols());
    for (int t = 0; t < len; ++t) rows ? s.set(idx, t, x(0, t)) : s.set(t, idx, x(0, t));
    Mat y = f(s);
    Mat r(f.dst().field(), 1, out);
    for (int t = 0; t < out; ++t) r.set(0, t, rows ? y(idx, t) : y(t, idx));
    return r;
  });
}

void check_round_trip(const StandardHomParams& p) {
  MapTable t = standard_table(p);
  auto r = recover_standard(t);
  REQUIRE(r.exit == RecoveryExit::Ok);
  CHECK(r.residual_checked);
  REQUIRE(r.params.has_value());
  CHECK(standard_table(*r.params) == t);
  CHECK(r.params->orientation == p.orientation);
  if (r.params->tau.src().q() == r.params->tau.dst().q()) CHECK(r.params->L.is_zero());
}

}  // namespace

TEST_CASE("fitting weighted semi-affine maps") {
  MatSpace row(F4(), 1, 2);
  auto w = fit_semiaffine(MapTable::identity(row));
  CHECK(w.tau == FieldHom::identity(F4()));
  CHECK(w.P == Mat::identity(F4(), 2));
  CHECK(w.a == Vec{F4().zero(), F4().zero()});
  CHECK(w.b == F4().one());

  std::mt19937_64 rng(50);
  auto frob = enumerate_homs(F4(), F4())[1];
  for (int t = 0; t < 10; ++t) {
    Mat p = random_invertible(F4(), 2, rng);
    MapTable g = direct_semiaffine(frob, p, {F4().zero(), F4().zero()}, F4().one(), 2);
    auto fit = fit_semiaffine(g);
    CHECK(tabulate(fit, row) == g);
    CHECK(fit.tau == frob);
  }

  // genuine denominators into GF(16)
  int with_denominator = 0;
  for (int t = 0; t < 30; ++t) {
    auto tau = enumerate_homs(F4(), F16())[t % 2];
    Vec a{Elem{static_cast<std::uint32_t>(rng() % 16)}, Elem{static_cast<std::uint32_t>(rng() % 16)}};
    Elem b{static_cast<std::uint32_t>(1 + rng() % 15)};
    bool ok = true;
    for (std::uint64_t c = 0; c < row.size() && ok; ++c) {
      Mat x = row.decode(c);
      ok = F16().add(b, F16().add(F16().mul(tau(x(0, 0)), a[0]), F16().mul(tau(x(0, 1)), a[1]))).v != 0;
    }
    if (!ok) continue;
    MapTable g = direct_semiaffine(tau, random_mat(F16(), 2, 3, rng), a, b, 2);
    if (g.image(0) != Mat(F16(), 1, 3)) continue;
    ++with_denominator;
    auto fit = fit_semiaffine(g);
    CHECK(tabulate(fit, row) == g);
    CHECK(fit.b == F16().one());
    for (std::uint64_t c = 0; c < row.size(); ++c) REQUIRE(fit.k(row.decode(c).row(0)).v != 0);
  }
  CHECK(with_denominator > 0);
}

TEST_CASE("fit failures") {
  MatSpace row(F4(), 1, 2);
  MapTable bent = MapTable::tabulate(row, row, [&](const Mat& x) {
    return x == Mat::unit(F4(), 1, 2, 0, 0) ? Mat::unit(F4(), 1, 2, 0, 1) : x;
  });
  CHECK(code_of([&] { fit_semiaffine(bent); }) == Errc::NoFit);
  CHECK_FALSE(fit_semiaffine_with(MapTable::identity(row), enumerate_homs(F4(), F4())[1]).has_value());
  MapTable shifted = MapTable::tabulate(row, row, [&](const Mat& x) { return x + Mat::unit(F4(), 1, 2, 0, 0); });
  CHECK(code_of([&] { fit_semiaffine(shifted); }) == Errc::PreconditionViolated);
  CHECK(code_of([&] { fit_semiaffine(MapTable::identity(MatSpace(F4(), 2, 2))); }) == Errc::ShapeMismatch);
}

TEST_CASE("recovery examples") {
  MatSpace sp(F4(), 2, 2);
  auto id = recover_standard(MapTable::identity(sp));
  REQUIRE(id.exit == RecoveryExit::Ok);
  CHECK(id.residual_checked);
  CHECK(id.params->orientation == Orientation::Straight);
  CHECK(id.params->tau == FieldHom::identity(F4()));
  CHECK(id.params->L.is_zero());
  CHECK(id.params->P == Mat::identity(F4(), 2));
  CHECK(id.params->Q == Mat::identity(F4(), 2));
  auto j = id.to_json();
  CHECK(j["exit"] == "ok");
  CHECK(j["orientation"] == "Straight");
  CHECK(j["tau"]["src"] == "2,2");
  CHECK_FALSE(j.contains("witness"));

  auto tr = recover_standard(MapTable::tabulate(sp, sp, [](const Mat& x) { return transpose(x); }));
  REQUIRE(tr.exit == RecoveryExit::Ok);
  CHECK(tr.params->orientation == Orientation::Transposed);

  std::mt19937_64 rng(51);
  auto p = random_valid_params(F4(), F16(), 2, 2, 3, 3, Orientation::Straight, rng);
  REQUIRE_FALSE(p.L.is_zero());
  check_round_trip(p);

  auto col = recover_standard(build_witness_hom(4, 2, 2, 4, 2, 2));
  CHECK(col.exit == RecoveryExit::Degenerate);
  CHECK(col.to_json()["exit"] == "degenerate");
  CHECK_FALSE(col.params.has_value());

  auto emb = enumerate_homs(F4(), F16())[0];
  auto xi = recover_standard(make_xi_map({emb, smallest_xi(emb), 2}));
  CHECK(xi.exit == RecoveryExit::DimDeficient);
  CHECK(xi.witness == "N_1: dim 2 < 3");

  MapTable swap_adjacent = MapTable::tabulate(sp, sp, [&](const Mat& x) {
    return rank(x) == 2 ? Mat(F4(), 2, 2) + transpose(x) : x;
  });
  CHECK(recover_standard(swap_adjacent).exit == RecoveryExit::NotHom);

  CHECK(code_of([&] { recover_standard(MapTable::identity(MatSpace(Field::get(3, 1), 2, 2))); }) ==
        Errc::UnsupportedField);
  MapTable moved = MapTable::tabulate(sp, sp, [&](const Mat& x) { return x + Mat::identity(F4(), 2); });
  CHECK(code_of([&] { recover_standard(moved); }) == Errc::PreconditionViolated);
}

TEST_CASE("recovery round trips") {
  std::mt19937_64 rng(52);
  struct Case {
    const Field* d;
    const Field* d2;
    int m, n, m2, n2, count;
  };
  const Field& f5 = Field::get(5, 1);
  for (const auto& c : std::vector<Case>{{&F4(), &F4(), 2, 2, 2, 2, 10},
                                         {&F4(), &F16(), 2, 2, 3, 3, 10},
                                         {&F4(), &F16(), 2, 2, 2, 2, 6},
                                         {&f5, &f5, 2, 2, 3, 3, 6},
                                         {&F4(), &F4(), 2, 3, 3, 4, 4},
                                         {&f5, &f5, 2, 3, 3, 4, 2}}) {
    for (int t = 0; t < c.count; ++t) {
      Orientation o = t % 2 ? Orientation::Transposed : Orientation::Straight;
      if (o == Orientation::Transposed && (c.m2 < c.n || c.n2 < c.m)) o = Orientation::Straight;
      check_round_trip(random_valid_params(*c.d, *c.d2, c.m, c.n, c.m2, c.n2, o, rng));
    }
  }
}

TEST_CASE("restrictions of standard tables fit") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 6; ++t) {
    auto p = random_valid_params(F4(), F16(), 2, 2, 3, 3, Orientation::Straight, rng);
    p.P = Mat::identity(F16(), 3);
    MapTable f = standard_table(p);
    for (int i = 0; i < 2; ++i) {
      MapTable g = restriction(f, true, i);
      auto w = fit_semiaffine(g);
      CHECK(tabulate(w, g.src()) == g);
    }
    p.P = random_invertible(F16(), 3, rng);
    p.Q = Mat::identity(F16(), 3);
    MapTable h = standard_table(p);
    for (int j = 0; j < 2; ++j) {
      MapTable g = restriction(h, false, j);
      auto w = fit_semiaffine(g);
      CHECK(tabulate(w, g.src()) == g);
    }
  }
}

TEST_CASE("dimension bound") {
  MatSpace sp(F4(), 2, 2);
  auto m1 = MaximalSet::standard_m(F4(), 2, 2, 0).members();
  CHECK(dim_bound_check(MapTable::identity(sp), m1));
  CHECK(dim_bound_check(MapTable::identity(sp), {Mat(F4(), 2, 2), Mat::unit(F4(), 2, 2, 0, 0)}));
  CHECK(dim_bound_check(build_witness_hom(4, 2, 2, 4, 2, 2), m1));
  std::mt19937_64 rng(54);
  for (int t = 0; t < 10; ++t) {
    MapTable f = standard_table(random_valid_params(F4(), F16(), 2, 2, 3, 3, Orientation::Straight, rng));
    for (int u = 0; u < 10; ++u) {
      VertexSet s{Mat(F4(), 2, 2)};
      for (const auto& x : m1)
        if (!x.is_zero() && rng() % 3 == 0) s.push_back(x);
      CHECK(dim_bound_check(f, s));
    }
  }
  CHECK(code_of([&] { dim_bound_check(MapTable::identity(sp), {Mat::unit(F4(), 2, 2, 0, 0)}); }) ==
        Errc::PreconditionViolated);
  CHECK(code_of([&] { dim_bound_check(MapTable::identity(sp), {Mat(F4(), 2, 2), Mat::identity(F4(), 2)}); }) ==
        Errc::PreconditionViolated);
}
