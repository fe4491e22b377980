#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "matgeo/error.hpp"

namespace matgeo {

// Element of GF(p^k), stored as the radix-p index sum c_i p^i of its coefficients.
struct Elem {
  std::uint32_t v = 0;
  constexpr auto operator<=>(const Elem&) const = default;
};

class Field {
 public:
  // Fields are interned: one instance per (p, k) for the whole process.
  static const Field& get(int p, int k);
  // q must be a prime power
  static const Field& of_order(std::uint32_t q);

  int p() const { return p_; }
  int k() const { return k_; }
  std::uint32_t q() const { return q_; }
  // c_0..c_k, monic
  const std::vector<int>& modulus() const { return modulus_; }
  std::string id() const;
  std::string modulus_text() const;

  Elem zero() const { return {0}; }
  Elem one() const { return {1}; }
  // class of x modulo the modulus
  Elem generator() const { return {k_ == 1 ? 0u : static_cast<std::uint32_t>(p_)}; }
  Elem primitive() const { return exp_[1]; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return {a.v ^ b.v};
    if (!add_.empty()) return add_[a.v * q_ + b.v];
    return add_slow(a, b);
  }
  Elem neg(Elem a) const { return neg_[a.v]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (!mul_.empty()) return mul_[a.v * q_ + b.v];
    if (a.v == 0 || b.v == 0) return {0};
    std::uint32_t s = log_[a.v] + log_[b.v];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  std::vector<int> coeffs(Elem a) const;
  Elem from_coeffs(const std::vector<int>& c) const;
  bool contains(Elem a) const { return a.v < q_; }

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field(int p, int k);
  Elem add_slow(Elem a, Elem b) const;
  Elem polymul(Elem a, Elem b) const;

  int p_;
  int k_;
  std::uint32_t q_;
  std::vector<int> modulus_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
};

inline bool operator==(const Field& a, const Field& b) { return &a == &b; }

bool is_prime(std::uint64_t n);
// returns (p, k) with q = p^k, or (0, 0) when q is not a prime power
std::pair<int, int> prime_power(std::uint64_t q);

// Nonzero ring homomorphism between two finite fields (an embedding).
class FieldHom {
 public:
  FieldHom(const Field& src, const Field& dst, std::vector<Elem> table);
  static FieldHom identity(const Field& f);

  const Field& src() const { return *src_; }
  const Field& dst() const { return *dst_; }
  Elem operator()(Elem a) const { return table_[a.v]; }
  Elem generator_image() const { return table_[src_->generator().v]; }
  bool surjective() const { return src_->q() == dst_->q(); }
  bool in_image(Elem b) const { return preimage_[b.v] >= 0; }
  const std::vector<Elem>& table() const { return table_; }

  friend bool operator==(const FieldHom& a, const FieldHom& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.table_ == b.table_;
  }

 private:
  const Field* src_;
  const Field* dst_;
  std::vector<Elem> table_;
  std::vector<int> preimage_;
};

// h o g
FieldHom compose(const FieldHom& h, const FieldHom& g);

// All nonzero homomorphisms src -> dst, sorted by the image of the source generator.
std::vector<FieldHom> enumerate_homs(const Field& src, const Field& dst);

}  // namespace matgeo
