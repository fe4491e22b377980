#include "matgeo/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace matgeo {

namespace {

constexpr std::uint32_t kMaxOrder = 1u << 16;

using Poly = std::vector<int>;  // c_0..c_d

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// remainder of f modulo monic g
Poly polymod(Poly f, const Poly& g, int p) {
  int dg = static_cast<int>(g.size()) - 1;
  trim(f);
  while (static_cast<int>(f.size()) - 1 >= dg) {
    int shift = static_cast<int>(f.size()) - 1 - dg;
    int c = f.back();
    for (int i = 0; i <= dg; ++i) f[shift + i] = ((f[shift + i] - c * g[i]) % p + p) % p;
    trim(f);
  }
  return f;
}

bool irreducible(const Poly& f, int p) {
  int k = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
      Poly g(d + 1);
      std::uint64_t t = n;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(t % p);
        t /= p;
      }
      g[d] = 1;
      if (polymod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly canonical_modulus(int p, int k) {
  if (k == 1) return {0, 1};
  std::uint64_t count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (std::uint64_t n = 0; n < count; ++n) {
    Poly f(k + 1);
    std::uint64_t t = n;
    for (int i = 0; i < k; ++i) {
      f[i] = static_cast<int>(t % p);
      t /= p;
    }
    f[k] = 1;
    if (f[0] == 0) continue;
    if (irreducible(f, p)) return f;
  }
  throw Error(Errc::NotPrime, "no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<int, int> prime_power(std::uint64_t q) {
  if (q < 2) return {0, 0};
  auto f = prime_factors(q);
  if (f.size() != 1) return {0, 0};
  int k = 0;
  while (q > 1) {
    q /= f[0];
    ++k;
  }
  return {static_cast<int>(f[0]), k};
}

Field::Field(int p, int k) : p_(p), k_(k) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (k < 1) throw Error(Errc::DegreeTooLarge, "degree must be at least 1");
  std::uint64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > kMaxOrder) throw Error(Errc::DegreeTooLarge, std::to_string(p) + "^" + std::to_string(k) + " exceeds 2^16");
  }
  q_ = static_cast<std::uint32_t>(q);
  modulus_ = canonical_modulus(p, k);

  neg_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    auto c = coeffs({a});
    for (auto& x : c) x = (p_ - x) % p_;
    neg_[a] = from_coeffs(c);
  }

  if (q_ <= 256) {
    add_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) add_[a * q_ + b] = add_slow({a}, {b});
  }

  // primitive element: order q-1
  auto factors = prime_factors(q_ - 1);
  Elem g{1};
  for (std::uint32_t cand = 1; cand < q_; ++cand) {
    bool ok = true;
    for (auto r : factors) {
      Elem x{1}, base{cand};
      for (std::uint64_t e = (q_ - 1) / r; e > 0; e >>= 1) {
        if (e & 1) x = polymul(x, base);
        base = polymul(base, base);
      }
      if (x.v == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = {cand};
      break;
    }
  }
  exp_.resize(q_ > 1 ? q_ - 1 : 1);
  log_.assign(q_, 0);
  Elem x{1};
  for (std::uint32_t i = 0; i + 1 < q_; ++i) {
    exp_[i] = x;
    log_[x.v] = i;
    x = polymul(x, g);
  }
  // keep exp_[1] addressable for q = 2
  if (exp_.size() < 2) exp_.push_back(exp_[0]);

  inv_.assign(q_, Elem{0});
  for (std::uint32_t a = 1; a < q_; ++a) {
    std::uint32_t l = log_[a];
    inv_[a] = exp_[l == 0 ? 0 : (q_ - 1 - l)];
  }

  if (q_ <= 256) {
    mul_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) mul_[a * q_ + b] = polymul({a}, {b});
  }
}

const Field& Field::get(int p, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  std::unique_ptr<Field> f(new Field(p, k));
  auto& ref = *f;
  cache.emplace(key, std::move(f));
  return ref;
}

const Field& Field::of_order(std::uint32_t q) {
  auto [p, k] = prime_power(q);
  if (p == 0) throw Error(Errc::NotPrime, std::to_string(q) + " is not a prime power");
  return get(p, k);
}

std::string Field::id() const { return std::to_string(p_) + "," + std::to_string(k_); }

std::string Field::modulus_text() const {
  std::string out;
  for (int i = k_; i >= 0; --i) {
    int c = modulus_[i];
    if (c == 0 && i != k_) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return out;
}

std::vector<int> Field::coeffs(Elem a) const {
  std::vector<int> c(k_);
  std::uint32_t t = a.v;
  for (int i = 0; i < k_; ++i) {
    c[i] = static_cast<int>(t % p_);
    t /= p_;
  }
  return c;
}

Elem Field::from_coeffs(const std::vector<int>& c) const {
  std::uint32_t v = 0;
  for (int i = k_ - 1; i >= 0; --i) v = v * p_ + static_cast<std::uint32_t>(i < static_cast<int>(c.size()) ? c[i] : 0);
  return {v};
}

Elem Field::add_slow(Elem a, Elem b) const {
  std::uint32_t x = a.v, y = b.v, v = 0, w = 1;
  for (int i = 0; i < k_; ++i) {
    v += ((x % p_ + y % p_) % p_) * w;
    x /= p_;
    y /= p_;
    w *= p_;
  }
  return {v};
}

Elem Field::polymul(Elem a, Elem b) const {
  auto ca = coeffs(a), cb = coeffs(b);
  Poly prod(2 * k_, 0);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
  return from_coeffs(polymod(prod, modulus_, p_));
}

Elem Field::inv(Elem a) const {
  if (a.v == 0) throw Error(Errc::DivisionByZero, "inverse of zero in GF(" + std::to_string(q_) + ")");
  return inv_[a.v];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FieldHom::FieldHom(const Field& src, const Field& dst, std::vector<Elem> table)
    : src_(&src), dst_(&dst), table_(std::move(table)) {
  if (table_.size() != src.q()) throw Error(Errc::InvalidParams, "hom table has wrong length");
  preimage_.assign(dst.q(), -1);
  for (std::uint32_t a = 0; a < src.q(); ++a) {
    Elem b = table_[a];
    if (!dst.contains(b)) throw Error(Errc::InvalidParams, "hom image outside destination");
    if (preimage_[b.v] >= 0) throw Error(Errc::InvalidParams, "hom is not injective");
    preimage_[b.v] = static_cast<int>(a);
  }
  if (table_[1] != dst.one()) throw Error(Errc::InvalidParams, "hom does not fix 1");
  // full check is q^2; above 1024 elements the construction from a root is trusted
  if (src.q() <= 1024) {
    for (std::uint32_t a = 0; a < src.q(); ++a)
      for (std::uint32_t b = 0; b < src.q(); ++b) {
        if (table_[src.add({a}, {b}).v] != dst.add(table_[a], table_[b]) ||
            table_[src.mul({a}, {b}).v] != dst.mul(table_[a], table_[b]))
          throw Error(Errc::InvalidParams, "table violates the homomorphism laws");
      }
  }
}

FieldHom FieldHom::identity(const Field& f) {
  std::vector<Elem> t(f.q());
  for (std::uint32_t a = 0; a < f.q(); ++a) t[a] = {a};
  return FieldHom(f, f, std::move(t));
}

FieldHom compose(const FieldHom& h, const FieldHom& g) {
  if (!(g.dst() == h.src())) throw Error(Errc::FieldMismatch, "cannot compose homs");
  std::vector<Elem> t(g.src().q());
  for (std::uint32_t a = 0; a < g.src().q(); ++a) t[a] = h(g({a}));
  return FieldHom(g.src(), h.dst(), std::move(t));
}

std::vector<FieldHom> enumerate_homs(const Field& src, const Field& dst) {
  std::vector<FieldHom> out;
  if (src.p() != dst.p() || dst.k() % src.k() != 0) return out;
  const auto& f = src.modulus();
  for (std::uint32_t r = 0; r < dst.q(); ++r) {
    Elem acc = dst.zero();
    for (int i = src.k(); i >= 0; --i) acc = dst.add(dst.mul(acc, {r}), Elem{static_cast<std::uint32_t>(f[i])});
    if (acc != dst.zero()) continue;
    std::vector<Elem> powers(src.k());
    Elem x = dst.one();
    for (int i = 0; i < src.k(); ++i) {
      powers[i] = x;
      x = dst.mul(x, {r});
    }
    std::vector<Elem> t(src.q());
    for (std::uint32_t a = 0; a < src.q(); ++a) {
      auto c = src.coeffs({a});
      Elem v = dst.zero();
      for (int i = 0; i < src.k(); ++i)
        for (int j = 0; j < c[i]; ++j) v = dst.add(v, powers[i]);
      t[a] = v;
    }
    out.emplace_back(src, dst, std::move(t));
  }
  return out;
}

}  // namespace matgeo
