#pragma once

// Slow, independent reference computations used to pin expected values.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

#include "matgeo/matrix.hpp"

namespace oracle {

using Poly = std::vector<int>;  // c_0..c_d

inline Poly trimmed(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return trimmed(c);
}

inline Poly poly_mod(Poly a, const Poly& m, int p) {
  a = trimmed(a);
  int lead_inv = 1;
  while (lead_inv * m.back() % p != 1) ++lead_inv;
  while (a.size() >= m.size()) {
    int shift = static_cast<int>(a.size() - m.size());
    int c = a.back() * lead_inv % p;
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    a = trimmed(a);
  }
  return a;
}

inline Poly poly_of_index(std::uint64_t v, int p, int len) {
  Poly c(len, 0);
  for (int i = 0; i < len; ++i) {
    c[i] = static_cast<int>(v % p);
    v /= p;
  }
  return c;
}

inline std::uint64_t index_of_poly(Poly c, int p, int len) {
  c.resize(len, 0);
  std::uint64_t v = 0;
  for (int i = len - 1; i >= 0; --i) v = v * p + c[i];
  return v;
}

// product of two element indices in GF(p)[x]/(m)
inline std::uint64_t field_mul(std::uint64_t a, std::uint64_t b, const Poly& m, int p) {
  int k = static_cast<int>(m.size()) - 1;
  return index_of_poly(poly_mod(poly_mul(poly_of_index(a, p, k), poly_of_index(b, p, k), p), m, p), p, k);
}

// irreducible iff no product of two monic polynomials of positive degree equals it
inline bool irreducible(const Poly& m, int p) {
  int k = static_cast<int>(m.size()) - 1;
  if (k == 1) return true;
  std::set<Poly> products;
  for (int d = 1; d < k; ++d) {
    std::uint64_t na = 1, nb = 1;
    for (int i = 0; i < d; ++i) na *= p;
    for (int i = 0; i < k - d; ++i) nb *= p;
    for (std::uint64_t a = 0; a < na; ++a)
      for (std::uint64_t b = 0; b < nb; ++b) {
        Poly pa = poly_of_index(a, p, d), pb = poly_of_index(b, p, k - d);
        pa.push_back(1);
        pb.push_back(1);
        if (poly_mul(pa, pb, p) == m) return false;
      }
  }
  return true;
}

// monic irreducible of degree k whose coefficients (c_{k-1}..c_0) form the smallest base-p number
inline Poly smallest_irreducible(int p, int k) {
  std::uint64_t n = 1;
  for (int i = 0; i < k; ++i) n *= p;
  for (std::uint64_t v = 0; v < n; ++v) {
    Poly m = poly_of_index(v, p, k);
    m.push_back(1);
    if (irreducible(m, p)) return m;
  }
  return {};
}

inline matgeo::Elem det(const matgeo::Mat& a) {
  const matgeo::Field& f = a.field();
  int n = a.rows();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  matgeo::Elem total = f.zero();
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    matgeo::Elem term = f.one();
    for (int i = 0; i < n; ++i) term = f.mul(term, a(i, perm[i]));
    total = inversions % 2 ? f.sub(total, term) : f.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void subsets(int n, int r, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> s(r);
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    fn(s);
    int i = r - 1;
    while (i >= 0 && s[i] == n - r + i) --i;
    if (i < 0) return;
    ++s[i];
    for (int j = i + 1; j < r; ++j) s[j] = s[j - 1] + 1;
  }
}

// largest r with a nonzero r x r minor
inline int minor_rank(const matgeo::Mat& a) {
  for (int r = std::min(a.rows(), a.cols()); r > 0; --r) {
    bool found = false;
    subsets(a.rows(), r, [&](const std::vector<int>& rs) {
      if (found) return;
      subsets(a.cols(), r, [&](const std::vector<int>& cs) {
        if (found) return;
        matgeo::Mat sub(a.field(), r, r);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) sub.set(i, j, a(rs[i], cs[j]));
        if (det(sub).v != 0) found = true;
      });
    });
    if (found) return r;
  }
  return 0;
}

inline matgeo::Mat adjugate_inverse(const matgeo::Mat& a) {
  const matgeo::Field& f = a.field();
  matgeo::Elem d = f.inv(det(a));
  matgeo::Mat out(f, 2, 2);
  out.set(0, 0, f.mul(d, a(1, 1)));
  out.set(0, 1, f.mul(d, f.neg(a(0, 1))));
  out.set(1, 0, f.mul(d, f.neg(a(1, 0))));
  out.set(1, 1, f.mul(d, a(0, 0)));
  return out;
}

// every table h with h(1) = 1 and both hom laws, found by testing each candidate generator image
inline std::vector<std::vector<matgeo::Elem>> field_homs(const matgeo::Field& src, const matgeo::Field& dst) {
  std::vector<std::vector<matgeo::Elem>> out;
  for (std::uint32_t g = 0; g < dst.q(); ++g) {
    std::vector<matgeo::Elem> h(src.q());
    for (std::uint32_t a = 0; a < src.q(); ++a) {
      auto c = src.coeffs(matgeo::Elem{a});
      matgeo::Elem acc = dst.zero(), pw = dst.one();
      for (int coef : c) {
        matgeo::Elem term = dst.zero();
        for (int t = 0; t < coef; ++t) term = dst.add(term, pw);
        acc = dst.add(acc, term);
        pw = dst.mul(pw, matgeo::Elem{g});
      }
      h[a] = acc;
    }
    bool ok = h[1] == dst.one();
    for (std::uint32_t a = 0; a < src.q() && ok; ++a)
      for (std::uint32_t b = 0; b < src.q() && ok; ++b) {
        ok = h[src.add({a}, {b}).v] == dst.add(h[a], h[b]) && h[src.mul({a}, {b}).v] == dst.mul(h[a], h[b]);
      }
    if (ok && std::find(out.begin(), out.end(), h) == out.end()) out.push_back(h);
  }
  return out;
}

// adjacency graph of a whole matrix space, edges found by minor rank
inline std::vector<std::vector<std::uint32_t>> adjacency_lists(const matgeo::MatSpace& sp) {
  std::vector<std::vector<std::uint32_t>> adj(sp.size());
  for (std::uint64_t a = 0; a < sp.size(); ++a)
    for (std::uint64_t b = a + 1; b < sp.size(); ++b)
      if (minor_rank(sp.decode(a) - sp.decode(b)) == 1) {
        adj[a].push_back(static_cast<std::uint32_t>(b));
        adj[b].push_back(static_cast<std::uint32_t>(a));
      }
  return adj;
}

inline std::vector<int> bfs(const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t s) {
  std::vector<int> d(adj.size(), -1);
  std::queue<std::uint32_t> q;
  d[s] = 0;
  q.push(s);
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    for (auto w : adj[v])
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        q.push(w);
      }
  }
  return d;
}

// Bron-Kerbosch with pivoting; calls fn on every maximal clique
inline void maximal_cliques(const std::vector<std::vector<std::uint32_t>>& adj,
                            const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
  std::vector<std::set<std::uint32_t>> nb(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v) nb[v] = std::set<std::uint32_t>(adj[v].begin(), adj[v].end());
  std::vector<std::uint32_t> r;
  std::function<void(std::set<std::uint32_t>, std::set<std::uint32_t>)> rec = [&](std::set<std::uint32_t> p,
                                                                                  std::set<std::uint32_t> x) {
    if (p.empty() && x.empty()) {
      fn(r);
      return;
    }
    std::uint32_t pivot = 0;
    std::size_t best = 0;
    bool have = false;
    for (const auto* s : {&p, &x})
      for (auto u : *s) {
        std::size_t c = 0;
        for (auto v : p) c += nb[u].count(v);
        if (!have || c > best) {
          pivot = u;
          best = c;
          have = true;
        }
      }
    std::vector<std::uint32_t> cand;
    for (auto v : p)
      if (!nb[pivot].count(v)) cand.push_back(v);
    for (auto v : cand) {
      std::set<std::uint32_t> p2, x2;
      for (auto w : p)
        if (nb[v].count(w)) p2.insert(w);
      for (auto w : x)
        if (nb[v].count(w)) x2.insert(w);
      r.push_back(v);
      rec(p2, x2);
      r.pop_back();
      p.erase(v);
      x.insert(v);
    }
  };
  std::set<std::uint32_t> all;
  for (std::uint32_t v = 0; v < adj.size(); ++v) all.insert(v);
  rec(all, {});
}

inline std::size_t max_clique_size(const std::vector<std::vector<std::uint32_t>>& adj) {
  std::size_t best = 0;
  maximal_cliques(adj, [&](const std::vector<std::uint32_t>& c) { best = std::max(best, c.size()); });
  return best;
}

// number of m x n matrices of rank r over GF(q)
inline std::uint64_t rank_count(std::uint64_t q, int m, int n, int r) {
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < r; ++i) {
    std::uint64_t qm = 1, qn = 1, qr = 1, qi = 1;
    for (int t = 0; t < m; ++t) qm *= q;
    for (int t = 0; t < n; ++t) qn *= q;
    for (int t = 0; t < r; ++t) qr *= q;
    for (int t = 0; t < i; ++t) qi *= q;
    num *= (qm - qi) * (qn - qi);
    den *= (qr - qi);
  }
  return num / den;
}

}  // namespace oracle
