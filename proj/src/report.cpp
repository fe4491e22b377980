#include "matgeo/report.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace matgeo {

namespace {

[[noreturn]] void bad_line(int line, const std::string& why) {
  throw Error(Errc::FormatError, "line " + std::to_string(line) + ": " + why);
}

MatSpace parse_space_line(const std::string& text, const std::string& tag, int line) {
  std::istringstream in(text);
  std::string word;
  long p = 0, k = 0, m = 0, n = 0;
  if (!(in >> word >> p >> k >> m >> n) || word != tag) bad_line(line, "expected \"" + tag + " <p> <k> <m> <n>\"");
  std::string extra;
  if (in >> extra) bad_line(line, "trailing text");
  if (m < 1 || n < 1 || m > 64 || n > 64) bad_line(line, "bad shape");
  try {
    return MatSpace(Field::get(static_cast<int>(p), static_cast<int>(k)), static_cast<int>(m), static_cast<int>(n));
  } catch (const Error& e) {
    bad_line(line, e.what());
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

MapTable read_map_table(std::istream& in) {
  std::string raw;
  int line = 0;
  auto next = [&](std::string& out) {
    while (std::getline(in, raw)) {
      ++line;
      out = trim(raw);
      if (line > 1 && (out.empty() || out[0] == '#')) continue;
      return true;
    }
    return false;
  };
  std::string s;
  if (!next(s) || s != "%bfmap 1") bad_line(std::max(line, 1), "expected \"%bfmap 1\"");
  if (!next(s)) bad_line(line + 1, "missing src line");
  MatSpace src = parse_space_line(s, "src", line);
  if (!next(s)) bad_line(line + 1, "missing dst line");
  MatSpace dst = parse_space_line(s, "dst", line);
  if (!src.size_at_most(MapTable::kMaxDomain)) throw Error(Errc::DomainTooLarge, src.label() + " exceeds 2^20 points");

  std::vector<Elem> images(src.size() * dst.entries());
  std::vector<char> seen(src.size(), 0);
  std::uint64_t filled = 0;
  while (next(s)) {
    auto arrow = s.find("->");
    if (arrow == std::string::npos) bad_line(line, "expected \"<X> -> <Y>\"");
    std::string lhs = trim(s.substr(0, arrow)), rhs = trim(s.substr(arrow + 2));
    Mat x(src.field(), 1, 1), y(dst.field(), 1, 1);
    try {
      x = from_text(src.field(), src.rows(), src.cols(), lhs);
      y = from_text(dst.field(), dst.rows(), dst.cols(), rhs);
    } catch (const Error& e) {
      bad_line(line, e.what());
    }
    std::uint64_t c = src.encode(x);
    if (seen[c]) throw Error(Errc::DuplicateKey, "line " + std::to_string(line) + ": " + lhs + " appears twice", lhs);
    seen[c] = 1;
    ++filled;
    std::copy(y.data().begin(), y.data().end(), images.begin() + static_cast<std::ptrdiff_t>(c * dst.entries()));
  }
  if (filled != src.size()) {
    auto miss = std::find(seen.begin(), seen.end(), 0) - seen.begin();
    std::string w = to_text(src.decode(static_cast<std::uint64_t>(miss)));
    throw Error(Errc::IncompleteDomain,
                std::to_string(src.size() - filled) + " of " + std::to_string(src.size()) + " points missing, first " + w,
                w);
  }
  return MapTable(src, dst, std::move(images));
}

MapTable parse_map_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return read_map_table(in);
}

void write_map_table(const MapTable& f, std::ostream& out) {
  auto head = [&](const char* tag, const MatSpace& s) {
    out << tag << ' ' << s.field().p() << ' ' << s.field().k() << ' ' << s.rows() << ' ' << s.cols() << '\n';
  };
  out << "%bfmap 1\n";
  head("src", f.src());
  head("dst", f.dst());
  for (std::uint64_t c = 0; c < f.size(); ++c) out << to_text(f.src().decode(c)) << " -> " << to_text(f.image(c)) << '\n';
}

void save_map_table(const MapTable& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  write_map_table(f, out);
  if (!out) throw Error(Errc::IoError, "write failed: " + path);
}

nlohmann::json to_json(const MaximalSet& s) {
  return {{"kind", kind_name(s.kind())}, {"transform", to_text(s.transform())}, {"offset", to_text(s.offset())}};
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Error: return "error";
  }
  return "?";
}

nlohmann::json RunReport::to_json() const {
  std::vector<nlohmann::json> w = witnesses;
  std::sort(w.begin(), w.end(), [](const nlohmann::json& a, const nlohmann::json& b) { return a.dump() < b.dump(); });
  nlohmann::json j;
  j["command"] = command;
  j["params"] = params;
  j["verdict"] = verdict_name(verdict);
  j["witnesses"] = w;
  j["counts"] = counts;
  if (seed) j["seed"] = *seed;
  if (!result.is_null()) j["result"] = result;
  if (elapsed_ms) j["elapsed_ms"] = *elapsed_ms;
  return j;
}

std::string render_report(const RunReport& r) { return r.to_json().dump(2) + "\n"; }

void emit_report(const RunReport& r, const std::string& path) {
  std::string text = render_report(r);
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(Errc::IoError, "write failed: " + path);
}

}  // namespace matgeo
