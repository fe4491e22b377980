#include <random>

#include "doctest.h"
#include "matgeo/field.hpp"
#include "oracles.hpp"

using namespace matgeo;

TEST_CASE("canonical moduli") {
  CHECK(Field::get(2, 2).modulus() == std::vector<int>{1, 1, 1});
  CHECK(Field::get(2, 4).modulus() == std::vector<int>{1, 1, 0, 0, 1});
  CHECK(Field::get(5, 1).modulus() == std::vector<int>{0, 1});
  CHECK(Field::get(2, 4).modulus_text() == "x^4+x+1");
  CHECK(Field::get(5, 1).q() == 5);
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {2, 5}, {2, 6}, {2, 8}, {3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}, {11, 2}}) {
    CAPTURE(p);
    CAPTURE(k);
    const Field& f = Field::get(p, k);
    if (k > 1) CHECK(f.modulus() == oracle::smallest_irreducible(p, k));
    CHECK(oracle::irreducible(f.modulus(), p));
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Field::get(6, 1), Error);
  try {
    Field::get(6, 1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotPrime);
  }
  try {
    Field::get(2, 17);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegreeTooLarge);
  }
  CHECK(&Field::get(2, 2) == &Field::of_order(4));
  CHECK(prime_power(27) == std::pair<int, int>{3, 3});
  CHECK(prime_power(12) == std::pair<int, int>{0, 0});
}

TEST_CASE("multiplication agrees with polynomial arithmetic") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {7, 1}, {2, 8}}) {
    const Field& f = Field::get(p, k);
    for (std::uint32_t a = 0; a < f.q(); ++a)
      for (std::uint32_t b = 0; b < f.q(); ++b) {
        REQUIRE(f.mul({a}, {b}).v == oracle::field_mul(a, b, f.modulus(), p));
        auto ca = oracle::poly_of_index(a, p, k), cb = oracle::poly_of_index(b, p, k);
        oracle::Poly s(k);
        for (int i = 0; i < k; ++i) s[i] = (ca[i] + cb[i]) % p;
        REQUIRE(f.add({a}, {b}).v == oracle::index_of_poly(s, p, k));
      }
  }
}

TEST_CASE("log tables on larger fields") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 10}, {3, 7}, {2, 16}}) {
    const Field& f = Field::get(p, k);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 2000; ++t) {
      std::uint32_t a = rng() % f.q(), b = rng() % f.q();
      REQUIRE(f.mul({a}, {b}).v == oracle::field_mul(a, b, f.modulus(), p));
      if (a != 0) REQUIRE(f.mul({a}, f.inv({a})) == f.one());
    }
  }
}

TEST_CASE("arithmetic examples") {
  const Field& f = Field::get(2, 2);
  Elem alpha = f.generator();
  CHECK(alpha.v == 2);
  CHECK(f.mul(alpha, alpha).v == 3);
  for (auto* g : {&Field::get(2, 2), &Field::get(5, 1), &Field::get(3, 2)}) {
    CHECK(g->inv(g->one()) == g->one());
    for (std::uint32_t a = 0; a < g->q(); ++a) {
      CHECK(g->add({a}, g->neg({a})) == g->zero());
      if (a) CHECK(g->mul({a}, g->inv({a})) == g->one());
      for (std::uint32_t b = 0; b < g->q(); ++b) CHECK(g->mul({a}, {b}) == g->mul({b}, {a}));
    }
  }
  try {
    f.inv(f.zero());
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DivisionByZero);
  }
  CHECK(f.from_coeffs(f.coeffs({3})).v == 3);
  CHECK(f.pow(alpha, 3) == f.one());
}

TEST_CASE("primitive element generates the multiplicative group") {
  for (auto* f : {&Field::get(2, 2), &Field::get(2, 4), &Field::get(5, 1), &Field::get(3, 3)}) {
    std::set<std::uint32_t> seen;
    Elem x = f->one();
    for (std::uint32_t i = 0; i + 1 < f->q(); ++i) {
      seen.insert(x.v);
      x = f->mul(x, f->primitive());
    }
    CHECK(seen.size() == f->q() - 1);
  }
}

TEST_CASE("embedding enumeration") {
  const Field& f4 = Field::get(2, 2);
  CHECK(enumerate_homs(f4, f4).size() == 2);
  CHECK(enumerate_homs(f4, Field::get(2, 3)).empty());
  CHECK(enumerate_homs(f4, Field::get(2, 4)).size() == 2);
  CHECK(enumerate_homs(Field::get(3, 1), Field::get(2, 2)).empty());

  auto homs = enumerate_homs(f4, f4);
  CHECK(homs[0] == FieldHom::identity(f4));
  CHECK(homs[1](f4.generator()).v == 3);
  CHECK(homs[1](f4.zero()).v == 0);
  CHECK(homs[1](f4.one()).v == 1);

  for (auto [a, b] : std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>>{
           {{2, 2}, {2, 2}}, {{2, 2}, {2, 4}}, {{2, 1}, {2, 3}}, {{3, 1}, {3, 2}}, {{2, 2}, {2, 6}}, {{2, 3}, {2, 6}}, {{5, 1}, {5, 2}}}) {
    const Field& s = Field::get(a.first, a.second);
    const Field& d = Field::get(b.first, b.second);
    auto got = enumerate_homs(s, d);
    auto want = oracle::field_homs(s, d);
    CHECK(got.size() == static_cast<std::size_t>(s.k()));
    std::vector<std::vector<Elem>> tables;
    for (const auto& h : got) tables.push_back(h.table());
    std::sort(tables.begin(), tables.end());
    std::sort(want.begin(), want.end());
    CHECK(tables == want);
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1].generator_image() < got[i].generator_image());
    for (const auto& h : got) {
      std::set<std::uint32_t> img;
      for (std::uint32_t x = 0; x < s.q(); ++x) img.insert(h({x}).v);
      CHECK(img.size() == s.q());
    }
  }
}

TEST_CASE("automorphisms form a cyclic group") {
  for (auto* f : {&Field::get(2, 4), &Field::get(3, 2), &Field::get(2, 3)}) {
    auto g = enumerate_homs(*f, *f);
    REQUIRE(g.size() == static_cast<std::size_t>(f->k()));
    for (const auto& a : g)
      for (const auto& b : g) CHECK(std::find(g.begin(), g.end(), compose(a, b)) != g.end());
    bool has_generator = false;
    for (const auto& a : g) {
      std::set<std::vector<Elem>> powers;
      FieldHom x = a;
      for (std::size_t i = 0; i < g.size(); ++i) {
        powers.insert(x.table());
        x = compose(x, a);
      }
      has_generator = has_generator || powers.size() == g.size();
    }
    CHECK(has_generator);
  }
}

TEST_CASE("invalid hom tables are rejected") {
  const Field& f4 = Field::get(2, 2);
  std::vector<Elem> zero(4, Elem{0});
  CHECK_THROWS_AS(FieldHom(f4, f4, zero), Error);
  std::vector<Elem> swap{{0}, {1}, {2}, {2}};
  CHECK_THROWS_AS(FieldHom(f4, f4, swap), Error);
}
