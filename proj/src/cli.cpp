#include "matgeo/cli.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "CLI11.hpp"
#include "matgeo/grassmann.hpp"
#include "matgeo/recover.hpp"
#include "matgeo/report.hpp"

namespace matgeo {

namespace {

using nlohmann::json;

const Field& parse_field(const std::string& s) {
  auto comma = s.find_first_of(",^");
  try {
    if (comma != std::string::npos) return Field::get(std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1)));
    return Field::of_order(static_cast<std::uint32_t>(std::stoul(s)));
  } catch (const std::logic_error&) {
    throw Error(Errc::FormatError, "bad field \"" + s + "\"");
  }
}

std::pair<int, int> parse_shape(const std::string& s) {
  auto sep = s.find_first_of(",x");
  try {
    if (sep == std::string::npos) throw std::invalid_argument(s);
    int m = std::stoi(s.substr(0, sep)), n = std::stoi(s.substr(sep + 1));
    if (m < 1 || n < 1) throw std::invalid_argument(s);
    return {m, n};
  } catch (const std::logic_error&) {
    throw Error(Errc::FormatError, "bad shape \"" + s + "\"");
  }
}

// q:mxn
MatSpace parse_space(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw Error(Errc::FormatError, "expected q:mxn, got \"" + s + "\"");
  auto [m, n] = parse_shape(s.substr(colon + 1));
  return MatSpace(parse_field(s.substr(0, colon)), m, n);
}

std::vector<int> parse_index_set(const std::string& s) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < s.size()) {
    auto j = s.find(',', i);
    if (j == std::string::npos) j = s.size();
    try {
      out.push_back(std::stoi(s.substr(i, j - i)) - 1);
    } catch (const std::logic_error&) {
      throw Error(Errc::FormatError, "bad index set \"" + s + "\"");
    }
    i = j + 1;
  }
  return out;
}

void require_domain(const MatSpace& sp, std::uint64_t limit) {
  if (!sp.size_at_most(limit))
    throw Error(Errc::DomainTooLarge, sp.label() + " exceeds --max-domain " + std::to_string(limit));
}

// pairs X < Y with ad(g X, g Y) != ad(f X, f Y)
std::pair<std::uint64_t, std::optional<kernels::CodePair>> rank_identity_scan(const MapTable& f, const MapTable& g) {
  const MatSpace& dp = f.dst();
  std::vector<Elem> scratch(dp.entries());
  std::uint64_t pairs = 0;
  for (std::uint64_t a = 0; a < f.size(); ++a)
    for (std::uint64_t b = a + 1; b < f.size(); ++b) {
      ++pairs;
      int r1 = kernels::rank_diff(dp.field(), f.image_data(a), f.image_data(b), dp.rows(), dp.cols(), scratch.data());
      int r2 = kernels::rank_diff(dp.field(), g.image_data(a), g.image_data(b), dp.rows(), dp.cols(), scratch.data());
      if (r1 != r2) return {pairs, kernels::CodePair{a, b}};
    }
  return {pairs, std::nullopt};
}

json pair_json(const MatSpace& sp, std::uint64_t a, std::uint64_t b) {
  return {{"X", to_text(sp.decode(a))}, {"Y", to_text(sp.decode(b))}};
}

MapTable embedding_table(const MatSpace& sp, const Field& d2) {
  FieldHom h = enumerate_homs(sp.field(), d2).front();
  return MapTable::tabulate(sp, MatSpace(d2, sp.rows(), sp.cols()), [&](const Mat& x) { return apply_hom(h, x); });
}

struct Common {
  std::string out = "-";
  int workers = 0;
  bool timing = false;
  bool serial = false;
  std::uint64_t max_domain = std::uint64_t{1} << 16;
  kernels::Exec exec() const { return serial ? kernels::Exec::Serial : kernels::Exec::Parallel; }
};

RunReport field_info(const std::string& field, const std::string& to) {
  const Field& f = parse_field(field);
  RunReport r;
  r.params = {{"field", f.id()}};
  r.result = {{"p", f.p()}, {"k", f.k()}, {"q", f.q()}, {"modulus", f.modulus_text()},
              {"generator", f.generator().v}, {"primitive", f.primitive().v}};
  if (!to.empty()) {
    const Field& d2 = parse_field(to);
    r.params["to"] = d2.id();
    json images = json::array();
    for (const auto& h : enumerate_homs(f, d2)) images.push_back(h.generator_image().v);
    r.result["embeddings"] = images;
    r.counts["embeddings"] = static_cast<std::int64_t>(images.size());
  }
  return r;
}

RunReport bfs_check(const Common& c, const std::string& field, const std::string& shape) {
  auto [m, n] = parse_shape(shape);
  MatSpace sp(parse_field(field), m, n);
  require_domain(sp, c.max_domain);
  auto scan = kernels::distance_scan(sp, c.exec());
  RunReport r;
  r.params = {{"field", sp.field().id()}, {"shape", std::to_string(m) + "x" + std::to_string(n)}};
  r.counts["pairs"] = static_cast<std::int64_t>(scan.pairs);
  r.counts["mismatches"] = static_cast<std::int64_t>(scan.mismatches);
  if (scan.first) {
    r.verdict = Verdict::Fail;
    r.witnesses.push_back(pair_json(sp, scan.first->a, scan.first->b));
  }
  return r;
}

RunReport clique_classify(const std::string& field, const std::string& shape, const std::vector<std::string>& pts) {
  auto [m, n] = parse_shape(shape);
  const Field& f = parse_field(field);
  VertexSet s;
  for (const auto& p : pts) s.push_back(from_text(f, m, n, p));
  RunReport r;
  r.params = {{"field", f.id()}, {"shape", std::to_string(m) + "x" + std::to_string(n)}, {"points", pts}};
  r.counts["points"] = static_cast<std::int64_t>(s.size());
  try {
    r.result = to_json(classify_clique(s));
  } catch (const Error& e) {
    if (e.code() != Errc::NotMaximal && e.code() != Errc::NotAdjacentSet) throw;
    r.verdict = Verdict::Fail;
    r.result = {{"error", errc_name(e.code())}};
    if (!e.witness().empty()) r.witnesses.push_back(e.witness());
  }
  return r;
}

RunReport line_check(const Common& c, const std::string& field, const std::string& shape) {
  auto [m, n] = parse_shape(shape);
  MatSpace sp(parse_field(field), m, n);
  require_domain(sp, c.max_domain);
  const Field& f = sp.field();
  auto sets = all_maximal_sets(f, m, n);
  std::vector<std::vector<std::uint64_t>> members(sets.size());
  std::vector<std::vector<std::uint32_t>> through(sp.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (const auto& x : sets[i].members()) members[i].push_back(sp.encode(x));
    for (auto code : members[i]) through[code].push_back(static_cast<std::uint32_t>(i));
  }
  RunReport r;
  r.params = {{"field", f.id()}, {"shape", std::to_string(m) + "x" + std::to_string(n)}};
  std::int64_t adjacent_pairs = 0, same = 0, diff = 0, bad = 0;
  // every edge lies in exactly two maximal sets, one of each kind
  auto ones = rank_one_matrices(f, m, n);
  for (std::uint64_t a = 0; a < sp.size(); ++a)
    for (const auto& d : ones) {
      std::uint64_t b = sp.encode(sp.decode(a) + d);
      if (b < a) continue;
      ++adjacent_pairs;
      std::vector<std::uint32_t> both;
      std::set_intersection(through[a].begin(), through[a].end(), through[b].begin(), through[b].end(),
                            std::back_inserter(both));
      if (both.size() != 2 || sets[both[0]].kind() == sets[both[1]].kind()) {
        ++bad;
        r.witnesses.push_back(pair_json(sp, a, b));
      }
    }
  const std::uint64_t q = f.q();
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      std::vector<std::uint64_t> common;
      std::set_intersection(members[i].begin(), members[i].end(), members[j].begin(), members[j].end(),
                            std::back_inserter(common));
      if (common.empty()) continue;
      bool kinds_equal = sets[i].kind() == sets[j].kind();
      bool ok;
      if (kinds_equal) {
        ++same;
        ok = common.size() == 1;
      } else {
        ++diff;
        VertexSet line = line_through(sets[i], sets[j]).points();
        std::vector<std::uint64_t> codes;
        for (const auto& x : line) codes.push_back(sp.encode(x));
        std::sort(codes.begin(), codes.end());
        ok = common.size() == q && codes == common;
      }
      if (!ok) {
        ++bad;
        r.witnesses.push_back({{"M", to_json(sets[i])}, {"N", to_json(sets[j])}});
      }
    }
  r.counts["adjacent_pairs"] = adjacent_pairs;
  r.counts["maximal_sets"] = static_cast<std::int64_t>(sets.size());
  r.counts["same_kind_meeting"] = same;
  r.counts["different_kind_meeting"] = diff;
  r.counts["violations"] = bad;
  if (bad) r.verdict = Verdict::Fail;
  return r;
}

RunReport exists(const std::string& src, const std::string& dst) {
  MatSpace a = parse_space(src), b = parse_space(dst);
  using boost::multiprecision::cpp_int;
  bool ok = hom_exists(a.field().q(), a.rows(), a.cols(), b.field().q(), b.rows(), b.cols());
  cpp_int lhs = boost::multiprecision::pow(cpp_int(a.field().q()), static_cast<unsigned>(std::max(a.rows(), a.cols())));
  cpp_int rhs = boost::multiprecision::pow(cpp_int(b.field().q()), static_cast<unsigned>(std::max(b.rows(), b.cols())));
  RunReport r;
  r.params = {{"src", a.label()}, {"dst", b.label()}};
  r.counts["exists"] = ok ? 1 : 0;
  r.result = {{"exists", ok}, {"src_clique_bound", lhs.str()}, {"dst_clique_bound", rhs.str()}};
  return r;
}

RunReport color(const Common& c, const std::string& field, const std::string& shape) {
  auto [m, n] = parse_shape(shape);
  const Field& f = parse_field(field);
  MatSpace sp(f, m, n);
  require_domain(sp, c.max_domain);
  MapTable col = proper_coloring(f, m, n);
  RunReport r;
  r.params = {{"field", f.id()}, {"shape", std::to_string(m) + "x" + std::to_string(n)}};
  std::set<std::uint64_t> used;
  for (std::uint64_t x = 0; x < col.size(); ++x) used.insert(col.dst().encode(col.image_data(x)));
  std::int64_t edges = 0, mono = 0;
  const int width = col.dst().entries();
  auto ones = rank_one_matrices(f, m, n);
  for (std::uint64_t a = 0; a < sp.size(); ++a) {
    Mat x = sp.decode(a);
    for (const auto& d : ones) {
      std::uint64_t b = sp.encode(x + d);
      if (b < a) continue;
      ++edges;
      if (std::equal(col.image_data(a), col.image_data(a) + width, col.image_data(b))) {
        if (mono == 0) r.witnesses.push_back(pair_json(sp, a, b));
        ++mono;
      }
    }
  }
  std::uint64_t expected = MatSpace(f, 1, std::max(m, n)).size();
  r.counts["colors"] = static_cast<std::int64_t>(used.size());
  r.counts["expected_colors"] = static_cast<std::int64_t>(expected);
  r.counts["edges"] = edges;
  r.counts["monochromatic"] = mono;
  if (mono != 0 || used.size() != expected) r.verdict = Verdict::Fail;
  return r;
}

RunReport witness_hom(const Common& c, const std::string& src, const std::string& dst, const std::string& write) {
  MatSpace a = parse_space(src), b = parse_space(dst);
  RunReport r;
  r.params = {{"src", a.label()}, {"dst", b.label()}};
  std::optional<MapTable> t;
  try {
    t = build_witness_hom(a.field().q(), a.rows(), a.cols(), b.field().q(), b.rows(), b.cols());
  } catch (const Error& e) {
    if (e.code() != Errc::NoHomExists) throw;
    r.result = {{"exists", false}};
    return r;
  }
  auto hom = is_graph_hom(*t, c.exec());
  bool clique = is_colouring(*t);
  std::set<std::vector<Elem>> images;
  for (std::uint64_t x = 0; x < t->size(); ++x)
    images.emplace(t->image_data(x), t->image_data(x) + t->dst().entries());
  r.counts["pairs"] = static_cast<std::int64_t>(hom.pairs);
  r.counts["image_size"] = static_cast<std::int64_t>(images.size());
  r.result = {{"exists", true}, {"is_graph_hom", hom.ok}, {"is_colouring", clique}};
  if (!hom.ok) r.witnesses.push_back({{"X", to_text(hom.witness->first)}, {"Y", to_text(hom.witness->second)}});
  if (!hom.ok || !clique) r.verdict = Verdict::Fail;
  if (!write.empty()) save_map_table(*t, write);
  return r;
}

RunReport hom_verify(const Common& c, const std::string& map, std::uint64_t sample, std::uint64_t seed) {
  MapTable f = parse_map_table(map);
  RunReport r;
  r.params = {{"map", map}, {"src", f.src().label()}, {"dst", f.dst().label()}};
  HomCheck hom;
  if (sample == 0 && f.src().size_at_most(c.max_domain)) {
    r.params["mode"] = "exhaustive";
    hom = is_graph_hom(f, c.exec());
  } else {
    std::uint64_t n = sample ? sample : 100000;
    r.params["mode"] = "sampled";
    r.params["sample"] = n;
    r.seed = seed;
    hom = is_graph_hom_sampled(f, n, seed, c.exec());
  }
  r.counts["pairs"] = static_cast<std::int64_t>(hom.pairs);
  if (!hom.ok) {
    r.verdict = Verdict::Fail;
    r.witnesses.push_back({{"X", to_text(hom.witness->first)}, {"Y", to_text(hom.witness->second)}});
  }
  return r;
}

RunReport degeneracy_check(const Common& c, const std::string& map) {
  MapTable f = parse_map_table(map);
  RunReport r;
  r.params = {{"map", map}, {"src", f.src().label()}, {"dst", f.dst().label()}};
  try {
    auto w = find_degeneracy(f, c.exec());
    r.result = {{"degenerate", w.has_value()}};
    r.counts["degenerate"] = w.has_value() ? 1 : 0;
    if (w) r.witnesses.push_back({{"A", to_text(w->a)}, {"M", to_json(w->m)}, {"N", to_json(w->n)}});
  } catch (const Error& e) {
    if (e.code() != Errc::NotHom) throw;
    r.verdict = Verdict::Fail;
    r.result = {{"error", "NotHom"}};
    r.witnesses.push_back(e.witness());
  }
  return r;
}

RunReport xi_demo(const Common& c, const std::string& src, const std::string& dst, int cols, int xi,
                  const std::string& write) {
  const Field& d = parse_field(src);
  const Field& d2 = parse_field(dst);
  auto homs = enumerate_homs(d, d2);
  if (homs.empty()) throw Error(Errc::InvalidParams, "no embedding " + d.id() + " -> " + d2.id());
  XiMapParams p{homs.front(), xi >= 0 ? Elem{static_cast<std::uint32_t>(xi)} : smallest_xi(homs.front()), cols};
  MapTable f = make_xi_map(p);
  RunReport r;
  r.params = {{"src", d.id()}, {"dst", d2.id()}, {"cols", cols}, {"xi", p.xi.v}};
  auto hom = is_graph_hom(f, c.exec());
  bool degenerate = hom.ok && find_degeneracy(f, c.exec()).has_value();
  Mat x(d, 3, cols);
  x.set(0, 0, d.one());
  x.set(1, 0, d.one());
  x.set(2, 1, d.one());
  int ad_src = rank(x), ad_img = rank(f(x));
  std::int64_t collapsed = 0;
  for (std::uint64_t code = 0; code < f.size(); ++code)
    if (rank(f.src().decode(code)) == 2 && rank(f.image(code)) == 1) ++collapsed;
  r.counts["pairs"] = static_cast<std::int64_t>(hom.pairs);
  r.counts["distance_two_collapsed_from_zero"] = collapsed;
  r.result = {{"is_graph_hom", hom.ok},
              {"degenerate", degenerate},
              {"pair", {{"X", to_text(x)}, {"ad", ad_src}, {"image_ad", ad_img}}}};
  if (!hom.ok || degenerate || ad_src != 2 || ad_img != 1) r.verdict = Verdict::Fail;
  if (!write.empty()) save_map_table(f, write);
  return r;
}

RunReport twist(const Common& c, const std::string& field, const std::string& shape, const std::string& map,
                const std::string& dst_field, const std::string& l_text, bool all_l, const std::string& side) {
  RunReport r;
  std::optional<MapTable> base;
  if (!map.empty()) {
    base = parse_map_table(map);
    r.params["map"] = map;
  } else {
    auto [m, n] = parse_shape(shape);
    MatSpace sp(parse_field(field), m, n);
    require_domain(sp, c.max_domain);
    base = dst_field.empty() ? MapTable::identity(sp) : embedding_table(sp, parse_field(dst_field));
    r.params["base"] = dst_field.empty() ? "identity" : "embedding";
  }
  const MatSpace& dp = base->dst();
  r.params["src"] = base->src().label();
  r.params["dst"] = dp.label();
  if (side != "left" && side != "right") throw Error(Errc::FormatError, "side must be left or right");
  r.params["side"] = side;
  TwistSide ts = side == "left" ? TwistSide::Left : TwistSide::Right;
  MatSpace lspace(dp.field(), dp.cols(), dp.rows());
  std::vector<Mat> ls;
  if (all_l) {
    require_domain(lspace, c.max_domain);
    for (std::uint64_t code = 0; code < lspace.size(); ++code) ls.push_back(lspace.decode(code));
    r.params["L"] = "all";
  } else {
    ls.push_back(from_text(dp.field(), dp.cols(), dp.rows(), l_text));
    r.params["L"] = l_text;
  }
  std::int64_t valid = 0, singular = 0, pairs = 0, bad = 0;
  for (const auto& l : ls) {
    std::optional<MapTable> t;
    try {
      t = moebius_twist(*base, l, ts);
    } catch (const Error& e) {
      if (e.code() != Errc::SingularTwist || !all_l) throw;
      ++singular;
      continue;
    }
    ++valid;
    auto [n, first] = rank_identity_scan(*base, *t);
    pairs += static_cast<std::int64_t>(n);
    if (first) {
      ++bad;
      json w = pair_json(base->src(), first->a, first->b);
      w["L"] = to_text(l);
      r.witnesses.push_back(w);
    }
  }
  r.counts["valid_L"] = valid;
  r.counts["singular_L"] = singular;
  r.counts["pairs"] = pairs;
  r.counts["violations"] = bad;
  if (bad) r.verdict = Verdict::Fail;
  return r;
}

struct LemmaArgs {
  std::string lemma, field, dst_field, shape = "2x2", dst_shape, alpha = "1", beta = "1", orientation = "straight";
  int k = 2, r = 1;
  std::uint64_t max_strata = 0, seed = 1, count = 10;
};

Orientation parse_orientation(const std::string& s) {
  if (s == "straight") return Orientation::Straight;
  if (s == "transposed") return Orientation::Transposed;
  throw Error(Errc::FormatError, "orientation must be straight or transposed");
}

RunReport lemma_31(const Common& c, const LemmaArgs& a) {
  auto [m, n] = parse_shape(a.shape);
  const Field& f = parse_field(a.field);
  MatSpace sp(f, m, n);
  require_domain(sp, c.max_domain);
  auto rows = parse_index_set(a.alpha), cols = parse_index_set(a.beta);
  std::vector<Mat> supported;
  MatSpace block_sp(f, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  require_domain(block_sp, 4096);
  for (std::uint64_t code = 1; code < block_sp.size(); ++code) {
    Mat b0 = block_sp.decode(code), b(f, m, n);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) b.set(rows[i], cols[j], b0(static_cast<int>(i), static_cast<int>(j)));
    supported.push_back(b);
  }
  RunReport r;
  r.params = {{"lemma", "3.1"}, {"field", f.id()}, {"shape", a.shape}, {"alpha", a.alpha}, {"beta", a.beta}};
  std::int64_t scanned = 0, applicable = 0, bad = 0;
  for (std::uint64_t code = 0; code < sp.size(); ++code) {
    Mat x = sp.decode(code);
    for (std::size_t i = 0; i < supported.size(); ++i)
      for (std::size_t j = i + 1; j < supported.size(); ++j) {
        ++scanned;
        if (!two_pencil_applies(x, supported[i], supported[j], rows, cols)) continue;
        ++applicable;
        if (!two_pencil_constraint(x, supported[i], supported[j], rows, cols)) {
          ++bad;
          r.witnesses.push_back({{"A", to_text(x)}, {"B1", to_text(supported[i])}, {"B2", to_text(supported[j])}});
        }
      }
  }
  r.counts["triples"] = scanned;
  r.counts["applicable"] = applicable;
  r.counts["violations"] = bad;
  if (bad) r.verdict = Verdict::Fail;
  return r;
}

RunReport lemma_4x(const Common& c, const LemmaArgs& a) {
  auto [m, n] = parse_shape(a.shape);
  const Field& e = parse_field(a.field);
  const Field& d = a.dst_field.empty() ? e : parse_field(a.dst_field);
  auto homs = enumerate_homs(e, d);
  if (homs.empty()) throw Error(Errc::InvalidParams, "no embedding " + e.id() + " -> " + d.id());
  LemmaOptions opt;
  opt.max_strata = a.max_strata;
  opt.seed = a.seed;
  opt.exec = c.exec();
  LemmaReport rep = a.lemma == "4.1"   ? check_lemma_41(homs.front(), m, n, a.k, opt)
                    : a.lemma == "4.2" ? check_lemma_42(homs.front(), m, n, a.k, a.r, opt)
                    : a.lemma == "4.3" ? check_lemma_43(homs.front(), m, n, a.k, opt)
                                       : check_lemma_44(homs.front(), m, n, a.k, a.r, opt);
  RunReport r;
  r.params = rep.params;
  r.params["lemma"] = rep.lemma;
  if (a.max_strata > 0) r.seed = a.seed;
  r.counts["strata_checked"] = static_cast<std::int64_t>(rep.strata_checked);
  r.counts["vacuous"] = static_cast<std::int64_t>(rep.vacuous);
  r.counts["counterexamples"] = static_cast<std::int64_t>(rep.counterexamples.size());
  for (const auto& [branch, n_b] : rep.branch_counts) r.counts["branch " + branch] = static_cast<std::int64_t>(n_b);
  r.witnesses = rep.counterexamples;
  r.result = rep.to_json();
  if (!rep.passed()) r.verdict = Verdict::Fail;
  return r;
}

json params_json(const StandardHomParams& p) {
  return {{"orientation", orientation_name(p.orientation)},
          {"m", p.m},
          {"n", p.n},
          {"P", to_text(p.P)},
          {"Q", to_text(p.Q)},
          {"L", to_text(p.L)},
          {"tau", {{"src", p.tau.src().id()}, {"dst", p.tau.dst().id()}, {"generator_image", p.tau.generator_image().v}}}};
}

RunReport lemma_51(const LemmaArgs& a) {
  auto [m, n] = parse_shape(a.shape);
  auto [m2, n2] = parse_shape(a.dst_shape.empty() ? a.shape : a.dst_shape);
  const Field& d = parse_field(a.field);
  const Field& d2 = a.dst_field.empty() ? d : parse_field(a.dst_field);
  Orientation o = parse_orientation(a.orientation);
  std::mt19937_64 rng(a.seed);
  RunReport r;
  r.params = {{"lemma", "5.1"}, {"src", MatSpace(d, m, n).label()}, {"dst", MatSpace(d2, m2, n2).label()},
              {"orientation", orientation_name(o)}, {"count", a.count}};
  r.seed = a.seed;
  std::int64_t points = 0, bad = 0;
  for (std::uint64_t t = 0; t < a.count; ++t) {
    StandardHomParams p = random_valid_params(d, d2, m, n, m2, n2, o, rng);
    ParamCheck pc = validate_params(p);
    points += static_cast<std::int64_t>(pc.checked);
    if (!pc.equivalence_holds || !pc.identity_holds) {
      ++bad;
      r.witnesses.push_back(params_json(p));
    }
  }
  r.counts["tuples"] = static_cast<std::int64_t>(a.count);
  r.counts["points"] = points;
  r.counts["violations"] = bad;
  if (bad) r.verdict = Verdict::Fail;
  return r;
}

RunReport fit_cmd(const std::string& map) {
  MapTable g = parse_map_table(map);
  RunReport r;
  r.params = {{"map", map}, {"src", g.src().label()}, {"dst", g.dst().label()}};
  try {
    WeightedSemiAffine w = fit_semiaffine(g);
    r.result = {{"tau", {{"src", w.tau.src().id()}, {"dst", w.tau.dst().id()}, {"generator_image", w.tau.generator_image().v}}},
                {"P", to_text(w.P)},
                {"a", to_text(Mat::row_vector(w.tau.dst(), w.a))},
                {"b", w.b.v}};
  } catch (const Error& e) {
    if (e.code() != Errc::NoFit) throw;
    r.verdict = Verdict::Fail;
    r.result = {{"error", "NoFit"}};
  }
  return r;
}

RunReport recover_cmd(const std::string& map) {
  MapTable f = parse_map_table(map);
  RunReport r;
  r.params = {{"map", map}, {"src", f.src().label()}, {"dst", f.dst().label()}};
  RecoveryResult res = recover_standard(f);
  r.result = res.to_json();
  r.counts["taus_tried"] = res.taus_tried;
  if (res.exit != RecoveryExit::Ok) {
    r.verdict = Verdict::Fail;
    if (!res.witness.empty()) r.witnesses.push_back(res.witness);
  }
  return r;
}

RunReport make_standard(const LemmaArgs& a, const std::string& write) {
  auto [m, n] = parse_shape(a.shape);
  auto [m2, n2] = parse_shape(a.dst_shape.empty() ? a.shape : a.dst_shape);
  const Field& d = parse_field(a.field);
  const Field& d2 = a.dst_field.empty() ? d : parse_field(a.dst_field);
  std::mt19937_64 rng(a.seed);
  StandardHomParams p = random_valid_params(d, d2, m, n, m2, n2, parse_orientation(a.orientation), rng);
  MapTable t = standard_table(p);
  save_map_table(t, write);
  RunReport r;
  r.params = {{"src", t.src().label()}, {"dst", t.dst().label()}, {"write", write}};
  r.seed = a.seed;
  r.result = params_json(p);
  r.counts["points"] = static_cast<std::int64_t>(t.size());
  return r;
}

}  // namespace

int resolve_workers(int flag_value, const char* env_value) {
  if (flag_value > 0) return flag_value;
  if (env_value != nullptr) {
    char* end = nullptr;
    long v = std::strtol(env_value, &end, 10);
    if (end != env_value && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 0;
}

int run_command(const std::vector<std::string>& args) {
  CLI::App app{"Verification and recovery tools for matrix adjacency graphs over finite fields", "matgeo"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--out", c.out, "report path, - for stdout");
  app.add_option("--workers", c.workers, "OpenMP threads (overrides MATGEO_WORKERS)");
  app.add_flag("--timing", c.timing, "add elapsed_ms to the report");
  app.add_flag("--serial", c.serial, "use the serial reference kernels");
  app.add_option("--max-domain", c.max_domain, "largest domain scanned exhaustively");

  std::string field = "2,1", to, shape = "2x2", src, dst, map, write, dst_field, l_text, side = "left";
  std::vector<std::string> points;
  bool all_l = false;
  int cols = 2, xi = -1;
  std::uint64_t sample = 0, seed = 1;
  LemmaArgs la;
  std::function<RunReport()> action;

  auto add_space = [&](CLI::App* s) {
    s->add_option("--field", field, "p,k or q")->required();
    s->add_option("--shape", shape, "m,n or mxn")->required();
  };

  auto* sc = app.add_subcommand("field-info", "field parameters and embeddings");
  sc->add_option("--field", field)->required();
  sc->add_option("--to", to, "list embeddings into this field");
  sc->callback([&] { action = [&] { return field_info(field, to); }; });

  sc = app.add_subcommand("bfs-check", "graph distance against rank distance");
  add_space(sc);
  sc->callback([&] { action = [&] { return bfs_check(c, field, shape); }; });

  sc = app.add_subcommand("clique-classify", "identify the maximal set spanned by points");
  add_space(sc);
  sc->add_option("--point", points, "matrix text, repeatable")->required();
  sc->callback([&] { action = [&] { return clique_classify(field, shape, points); }; });

  sc = app.add_subcommand("line-check", "edges, maximal sets and their intersections");
  add_space(sc);
  sc->callback([&] { action = [&] { return line_check(c, field, shape); }; });

  sc = app.add_subcommand("exists", "decide whether a homomorphism exists");
  sc->add_option("--src", src, "q:mxn")->required();
  sc->add_option("--dst", dst, "q:mxn")->required();
  sc->callback([&] { action = [&] { return exists(src, dst); }; });

  sc = app.add_subcommand("color", "proper colouring with q^max(m,n) colours");
  add_space(sc);
  sc->callback([&] { action = [&] { return color(c, field, shape); }; });

  sc = app.add_subcommand("witness-hom", "construct and verify a homomorphism");
  sc->add_option("--src", src)->required();
  sc->add_option("--dst", dst)->required();
  sc->add_option("--write", write, "save the table");
  sc->callback([&] { action = [&] { return witness_hom(c, src, dst, write); }; });

  sc = app.add_subcommand("hom-verify", "check adjacency preservation of a map table");
  sc->add_option("--map", map)->required();
  sc->add_option("--sample", sample, "number of random adjacent pairs");
  sc->add_option("--seed", seed);
  sc->callback([&] { action = [&] { return hom_verify(c, map, sample, seed); }; });

  sc = app.add_subcommand("degeneracy-check", "search for a degenerate unit ball");
  sc->add_option("--map", map)->required();
  sc->callback([&] { action = [&] { return degeneracy_check(c, map); }; });

  sc = app.add_subcommand("xi-demo", "the xi-map on 3 x n matrices");
  sc->add_option("--field", field, "source field")->required();
  sc->add_option("--dst-field", dst_field, "target field")->required();
  sc->add_option("--cols", cols);
  sc->add_option("--xi", xi, "element index outside the embedded image");
  sc->add_option("--write", write);
  sc->callback([&] { action = [&] { return xi_demo(c, field, dst_field, cols, xi, write); }; });

  sc = app.add_subcommand("twist", "Moebius twist of the identity, an embedding or a map table");
  sc->add_option("--field", field);
  sc->add_option("--shape", shape);
  sc->add_option("--map", map);
  sc->add_option("--dst-field", dst_field, "twist the entrywise embedding into this field");
  auto* lopt = sc->add_option("--L", l_text, "twist matrix text");
  auto* aopt = sc->add_flag("--all-L", all_l, "every twist matrix; singular ones are counted");
  lopt->excludes(aopt);
  sc->add_option("--side", side, "left or right");
  sc->callback([&] {
    if (l_text.empty() && !all_l) throw CLI::ValidationError("twist", "need --L or --all-L");
    action = [&] { return twist(c, field, shape, map, dst_field, l_text, all_l, side); };
  });

  auto add_lemma_opts = [&](CLI::App* s) {
    s->add_option("--field", la.field, "source field")->required();
    s->add_option("--dst-field", la.dst_field, "target field, default the source");
    s->add_option("--shape", la.shape);
    s->add_option("--dst-shape", la.dst_shape);
    s->add_option("--orientation", la.orientation, "straight or transposed");
    s->add_option("--seed", la.seed);
  };

  sc = app.add_subcommand("lemma-check", "exhaustive lemma checkers");
  sc->add_option("--lemma", la.lemma)->required()->check(CLI::IsMember({"3.1", "4.1", "4.2", "4.3", "4.4", "5.1"}));
  add_lemma_opts(sc);
  sc->add_option("--k", la.k);
  sc->add_option("--r", la.r);
  sc->add_option("--alpha", la.alpha, "row index set, one-based");
  sc->add_option("--beta", la.beta, "column index set, one-based");
  sc->add_option("--max-strata", la.max_strata, "sample this many A per run");
  sc->add_option("--count", la.count, "random parameter tuples");
  sc->callback([&] {
    action = [&] {
      if (la.lemma == "3.1") return lemma_31(c, la);
      if (la.lemma == "5.1") return lemma_51(la);
      return lemma_4x(c, la);
    };
  });

  sc = app.add_subcommand("fit-semiaffine", "fit x -> k(x)^-1 x^tau P to a row-vector table");
  sc->add_option("--map", map)->required();
  sc->callback([&] { action = [&] { return fit_cmd(map); }; });

  sc = app.add_subcommand("recover", "recover standard-form parameters from a table");
  sc->add_option("--map", map)->required();
  sc->callback([&] { action = [&] { return recover_cmd(map); }; });

  sc = app.add_subcommand("make-standard", "write the table of random valid standard parameters");
  add_lemma_opts(sc);
  sc->add_option("--write", write)->required();
  sc->callback([&] { action = [&] { return make_standard(la, write); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  int w = resolve_workers(c.workers, std::getenv("MATGEO_WORKERS"));
  if (w > 0) kernels::set_workers(w);

  RunReport report;
  auto start = std::chrono::steady_clock::now();
  try {
    report = action();
  } catch (const Error& e) {
    report = RunReport{};
    report.verdict = Verdict::Error;
    report.result = {{"error", errc_name(e.code())}, {"message", e.what()}};
    if (!e.witness().empty()) report.witnesses.push_back(e.witness());
    std::cerr << "matgeo " << command << ": " << e.what() << "\n";
  }
  report.command = command;
  if (c.timing)
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  try {
    emit_report(report, c.out);
  } catch (const Error& e) {
    std::cerr << "matgeo: " << e.what() << "\n";
    return 2;
  }
  return report.exit_code();
}

}  // namespace matgeo
