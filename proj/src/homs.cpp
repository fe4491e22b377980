#include "matgeo/homs.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>

namespace matgeo {

namespace {

void invalid(const std::string& why) { throw Error(Errc::InvalidParams, why); }

Mat tau_of(const StandardHomParams& p, const Mat& x) { return apply_hom(p.tau, x); }

}  // namespace

const char* orientation_name(Orientation o) { return o == Orientation::Straight ? "Straight" : "Transposed"; }

void check_shapes(const StandardHomParams& p) {
  const Field& d2 = p.tau.dst();
  for (const Mat* a : {&p.P, &p.Q, &p.L})
    if (!(a->field() == d2)) invalid("P, Q and L must be over the target field");
  if (p.P.rows() != p.P.cols() || p.Q.rows() != p.Q.cols()) invalid("P and Q must be square");
  int lr = p.orientation == Orientation::Straight ? p.n : p.m;
  int lc = p.orientation == Orientation::Straight ? p.m : p.n;
  if (p.L.rows() != lr || p.L.cols() != lc) invalid("L has the wrong shape");
  int need_rows = p.orientation == Orientation::Straight ? p.m : p.n;
  int need_cols = p.orientation == Orientation::Straight ? p.n : p.m;
  if (p.P.rows() < need_rows || p.Q.rows() < need_cols) invalid("target is smaller than the source block");
  if (!try_inverse(p.P) || !try_inverse(p.Q)) invalid("P and Q must be invertible");
}

Mat eval_standard(const StandardHomParams& p, const Mat& x) {
  check_shapes(p);
  if (!p.src().contains(x)) invalid("argument is not in " + p.src().label());
  const Field& d2 = p.tau.dst();
  Mat xt = tau_of(p, x);
  Mat g(d2, 1, 1);
  if (p.orientation == Orientation::Straight) {
    auto k = try_inverse(Mat::identity(d2, p.m) + xt * p.L);
    if (!k) throw Error(Errc::InvalidParams, "I + X^t L is singular", to_text(x));
    g = *k * xt;
  } else {
    Mat txt = transpose(xt);
    auto k = try_inverse(Mat::identity(d2, p.m) + p.L * txt);
    if (!k) throw Error(Errc::InvalidParams, "I + L tX^t is singular", to_text(x));
    g = txt * *k;
  }
  return p.P * pad(g, p.P.rows(), p.Q.rows()) * p.Q;
}

MapTable standard_table(const StandardHomParams& p) {
  check_shapes(p);
  return MapTable::tabulate(p.src(), p.dst(), [&](const Mat& x) { return eval_standard(p, x); });
}

ParamCheck validate_params(const StandardHomParams& p) {
  check_shapes(p);
  const Field& d2 = p.tau.dst();
  MatSpace sp = p.src();
  if (!sp.size_at_most(MapTable::kMaxDomain)) throw Error(Errc::DomainTooLarge, sp.label() + " is too large to validate");
  ParamCheck out;
  for (std::uint64_t c = 0; c < sp.size(); ++c) {
    Mat x = sp.decode(c);
    Mat xt = tau_of(p, x);
    std::optional<Mat> k1, k2;
    bool id_ok = true;
    if (p.orientation == Orientation::Straight) {
      k1 = try_inverse(Mat::identity(d2, p.m) + xt * p.L);
      k2 = try_inverse(Mat::identity(d2, p.n) + p.L * xt);
      if (k1 && k2) id_ok = *k1 * xt == xt * *k2;
    } else {
      Mat txt = transpose(xt);
      k1 = try_inverse(Mat::identity(d2, p.m) + p.L * txt);
      k2 = try_inverse(Mat::identity(d2, p.n) + txt * p.L);
      if (k1 && k2) id_ok = txt * *k1 == *k2 * txt;
    }
    ++out.checked;
    if (k1.has_value() != k2.has_value()) out.equivalence_holds = false;
    if (!id_ok) out.identity_holds = false;
    if (!k1 && !out.witness) out.witness = x;
  }
  out.valid = !out.witness;
  return out;
}

Mat random_invertible(const Field& f, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
  while (true) {
    Mat a(f, n, n);
    for (auto& e : a.data()) e = Elem{pick(rng)};
    if (rank(a) == n) return a;
  }
}

StandardHomParams random_valid_params(const Field& d, const Field& d2, int m, int n, int m2, int n2, Orientation o,
                                      std::mt19937_64& rng) {
  auto homs = enumerate_homs(d, d2);
  if (homs.empty()) invalid("no embedding " + d.id() + " -> " + d2.id());
  FieldHom tau = homs[std::uniform_int_distribution<std::size_t>(0, homs.size() - 1)(rng)];
  const int lr = o == Orientation::Straight ? n : m;
  const int lc = o == Orientation::Straight ? m : n;
  StandardHomParams p{o, m, n, random_invertible(d2, m2, rng), random_invertible(d2, n2, rng), tau, Mat(d2, lr, lc)};
  check_shapes(p);
  if (tau.surjective()) return p;
  std::uniform_int_distribution<std::uint32_t> pick(0, d2.q() - 1);
  for (int attempt = 0; attempt < 20; ++attempt) {
    for (auto& e : p.L.data()) e = Elem{pick(rng)};
    if (!p.L.is_zero() && validate_params(p).valid) return p;
  }
  // xi u v^T with u, v over the image of tau and xi outside it: det(I + X^t L) = 1 + xi (v^T X^t u) never vanishes
  Elem xi = smallest_xi(tau);
  std::uniform_int_distribution<std::uint32_t> small(0, d.q() - 1);
  Vec u(lr), v(lc);
  do {
    for (auto& e : u) e = tau(Elem{small(rng)});
  } while (std::all_of(u.begin(), u.end(), [](Elem e) { return e.v == 0; }));
  do {
    for (auto& e : v) e = tau(Elem{small(rng)});
  } while (std::all_of(v.begin(), v.end(), [](Elem e) { return e.v == 0; }));
  p.L = scale(xi, outer(d2, u, v));
  return p;
}

HomCheck is_graph_hom(const MapTable& f, kernels::Exec ex) {
  auto scan = kernels::hom_violations(f, ex);
  HomCheck out;
  out.pairs = scan.pairs;
  if (scan.first) {
    out.ok = false;
    out.witness = std::make_pair(f.src().decode(scan.first->a), f.src().decode(scan.first->b));
  }
  return out;
}

HomCheck is_graph_hom_sampled(const MapTable& f, std::uint64_t n, std::uint64_t seed, kernels::Exec ex) {
  auto scan = kernels::sampled_hom_violations(f, n, seed, ex);
  HomCheck out;
  out.pairs = scan.pairs;
  out.seed = seed;
  if (scan.first) {
    out.ok = false;
    out.witness = std::make_pair(f.src().decode(scan.first->a), f.src().decode(scan.first->b));
  }
  return out;
}

bool is_colouring(const MapTable& f) {
  const MatSpace& dp = f.dst();
  std::vector<std::uint64_t> codes;
  codes.reserve(f.size());
  for (std::uint64_t c = 0; c < f.size(); ++c) codes.push_back(dp.encode(f.image_data(c)));
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  std::vector<Elem> a(dp.entries()), b(dp.entries()), scratch(dp.entries());
  for (std::size_t i = 0; i < codes.size(); ++i) {
    dp.decode_into(codes[i], a.data());
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      dp.decode_into(codes[j], b.data());
      if (kernels::rank_diff(dp.field(), a.data(), b.data(), dp.rows(), dp.cols(), scratch.data()) != 1) return false;
    }
  }
  return true;
}

std::optional<DegeneracyWitness> find_degeneracy(const MapTable& f, kernels::Exec ex) {
  auto hom = is_graph_hom(f, ex);
  if (!hom.ok)
    throw Error(Errc::NotHom, "map is not a graph homomorphism",
                to_text(hom.witness->first) + " | " + to_text(hom.witness->second));
  auto cover = kernels::first_degenerate_center(f, ex);
  if (!cover) return std::nullopt;
  Mat a = f.src().decode(cover->center);
  Mat fa = f.image(cover->center);
  return DegeneracyWitness{a, MaximalSet::from_axis(Kind::TypeOne, cover->u, fa),
                           MaximalSet::from_axis(Kind::TypeTwo, cover->v, fa)};
}

bool is_degenerate(const MapTable& f) { return find_degeneracy(f).has_value(); }

std::optional<DegeneracyWitness> find_degeneracy_by_enumeration(const MapTable& f) {
  auto hom = is_graph_hom(f, kernels::Exec::Serial);
  if (!hom.ok) throw Error(Errc::NotHom, "map is not a graph homomorphism");
  const MatSpace& sp = f.src();
  const MatSpace& dp = f.dst();
  std::vector<Mat> centers{Mat(sp.field(), sp.rows(), sp.cols())};
  for (auto& r : rank_one_matrices(sp.field(), sp.rows(), sp.cols())) centers.push_back(r);
  std::sort(centers.begin(), centers.end());
  auto us = projective_points(dp.field(), dp.rows());
  auto vs = projective_points(dp.field(), dp.cols());
  for (const auto& a : centers) {
    Mat fa = f(a);
    std::vector<Mat> images;
    for (const auto& x : unit_ball(a)) images.push_back(f(x));
    for (const auto& u : us)
      for (const auto& v : vs) {
        MaximalSet m = MaximalSet::from_axis(Kind::TypeOne, u, fa);
        MaximalSet n = MaximalSet::from_axis(Kind::TypeTwo, v, fa);
        bool covered = std::all_of(images.begin(), images.end(),
                                   [&](const Mat& y) { return m.contains(y) || n.contains(y); });
        if (covered) return DegeneracyWitness{a, m, n};
      }
  }
  return std::nullopt;
}

Elem smallest_xi(const FieldHom& embed) {
  for (std::uint32_t b = 0; b < embed.dst().q(); ++b)
    if (!embed.in_image({b})) return {b};
  throw Error(Errc::InvalidXi, "embedding is surjective; no element lies outside its image");
}

MapTable make_xi_map(const XiMapParams& p) {
  if (p.n < 2) invalid("the xi-map needs at least two columns");
  const FieldHom& h = p.embed;
  const Field& d2 = h.dst();
  if (!d2.contains(p.xi) || h.in_image(p.xi))
    throw Error(Errc::InvalidXi, "xi = " + std::to_string(p.xi.v) + " lies in the embedded image");
  MatSpace src(h.src(), 3, p.n), dst(d2, 3, p.n);
  return MapTable::tabulate(src, dst, [&](const Mat& x) {
    Mat y(d2, 3, p.n);
    for (int j = 0; j < p.n; ++j) {
      Elem z = d2.mul(p.xi, h(x(2, j)));
      y.set(0, j, d2.add(h(x(0, j)), z));
      y.set(1, j, d2.add(h(x(1, j)), z));
    }
    return y;
  });
}

MapTable moebius_twist(const MapTable& f, const Mat& l, TwistSide side) {
  const MatSpace& dp = f.dst();
  const Field& d2 = dp.field();
  if (!(l.field() == d2) || l.rows() != dp.cols() || l.cols() != dp.rows())
    throw Error(Errc::ShapeMismatch, "twist matrix must be n' x m' over the target field");
  return MapTable::tabulate(f.src(), dp, [&](const Mat& x) {
    Mat fx = f(x);
    if (side == TwistSide::Left) {
      auto k = try_inverse(Mat::identity(d2, dp.rows()) + fx * l);
      if (!k) throw Error(Errc::SingularTwist, "I + f(X) L is singular", to_text(x));
      return *k * fx;
    }
    auto k = try_inverse(Mat::identity(d2, dp.cols()) + l * fx);
    if (!k) throw Error(Errc::SingularTwist, "I + L f(X) is singular", to_text(x));
    return fx * *k;
  });
}

bool hom_exists(std::uint64_t q, int m, int n, std::uint64_t q2, int m2, int n2) {
  if (m < 1 || n < 1 || m2 < 1 || n2 < 1) throw Error(Errc::PreconditionViolated, "dimensions must be positive");
  if (prime_power(q).first == 0 || prime_power(q2).first == 0)
    throw Error(Errc::PreconditionViolated, "field orders must be prime powers");
  using boost::multiprecision::cpp_int;
  cpp_int lhs = boost::multiprecision::pow(cpp_int(q), static_cast<unsigned>(std::max(m, n)));
  cpp_int rhs = boost::multiprecision::pow(cpp_int(q2), static_cast<unsigned>(std::max(m2, n2)));
  return lhs <= rhs;
}

MapTable proper_coloring(const Field& f, int m, int n) {
  MatSpace src(f, m, n);
  if (!src.size_at_most(MapTable::kMaxDomain)) throw Error(Errc::DomainTooLarge, src.label() + " exceeds 2^20 points");
  const bool flip = m > n;
  const int rows = flip ? n : m;
  const int s = flip ? m : n;
  std::uint64_t ext_order = MatSpace(f, 1, s).size();
  if (ext_order > (1u << 16)) throw Error(Errc::DomainTooLarge, "colour field GF(" + std::to_string(ext_order) + ") exceeds 2^16");
  const Field& ext = Field::get(f.p(), f.k() * s);
  FieldHom emb = enumerate_homs(f, ext).front();
  Elem gamma = ext.primitive();
  Vec basis(s);
  for (int j = 0; j < s; ++j) basis[j] = ext.pow(gamma, static_cast<std::uint64_t>(j));
  auto phi = [&](const Vec& v) {
    Elem acc = ext.zero();
    for (int j = 0; j < s; ++j) acc = ext.add(acc, ext.mul(emb(v[j]), basis[j]));
    return acc;
  };
  MatSpace colours(f, 1, s);
  std::vector<std::uint64_t> coord(ext.q());
  for (std::uint64_t c = 0; c < colours.size(); ++c) coord[phi(colours.decode(c).row(0)).v] = c;
  return MapTable::tabulate(src, colours, [&](const Mat& x) {
    Mat xo = flip ? transpose(x) : x;
    Elem acc = ext.zero();
    for (int i = 0; i < rows; ++i) acc = ext.add(acc, ext.mul(basis[i], phi(xo.row(i))));
    return colours.decode(coord[acc.v]);
  });
}

MapTable build_witness_hom(std::uint64_t q, int m, int n, std::uint64_t q2, int m2, int n2) {
  if (!hom_exists(q, m, n, q2, m2, n2)) throw Error(Errc::NoHomExists, "q^max(m,n) exceeds q'^max(m',n')");
  const Field& f = Field::of_order(static_cast<std::uint32_t>(q));
  const Field& f2 = Field::of_order(static_cast<std::uint32_t>(q2));
  MapTable colour = proper_coloring(f, m, n);
  MatSpace dst(f2, m2, n2);
  const bool use_rows = n2 >= m2;
  MatSpace slot(f2, 1, use_rows ? n2 : m2);
  return MapTable::tabulate(colour.src(), dst, [&](const Mat& x) {
    std::uint64_t c = colour.dst().encode(colour.image_data(colour.src().encode(x)));
    Vec w = slot.decode(c).row(0);
    Mat y(f2, m2, n2);
    for (std::size_t t = 0; t < w.size(); ++t) {
      if (use_rows)
        y.set(0, static_cast<int>(t), w[t]);
      else
        y.set(static_cast<int>(t), 0, w[t]);
    }
    return y;
  });
}

}  // namespace matgeo
