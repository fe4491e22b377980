#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "matgeo/cli.hpp"
#include "matgeo/homs.hpp"
#include "matgeo/report.hpp"

using namespace matgeo;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("matgeo_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string text;
  nlohmann::json report;
};

Run run(std::vector<std::string> args, const std::string& name = "report.json") {
  fs::path out = scratch() / name;
  fs::remove(out);
  args.push_back("--out");
  args.push_back(out.string());
  int code = run_command(args);
  std::string text = fs::exists(out) ? slurp(out) : std::string{};
  return {code, text, text.empty() ? nlohmann::json{} : nlohmann::json::parse(text)};
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

std::string table_text(const MapTable& f) {
  std::ostringstream out;
  write_map_table(f, out);
  return out.str();
}

MapTable read_text(const std::string& s) {
  std::istringstream in(s);
  return read_map_table(in);
}

std::string drop_line(const std::string& s, int idx) {
  std::istringstream in(s);
  std::string line, out;
  for (int i = 0; std::getline(in, line); ++i)
    if (i != idx) out += line + "\n";
  return out;
}

}  // namespace

TEST_CASE("map table files round trip") {
  MatSpace sp(Field::get(2, 2), 2, 2);
  MapTable id = MapTable::identity(sp);
  std::string text = table_text(id);
  CHECK(text.rfind("%bfmap 1\nsrc 2 2 2 2\ndst 2 2 2 2\n0,0;0,0 -> 0,0;0,0\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 259);
  CHECK(read_text(text) == id);
  fs::path p = scratch() / "id.bfmap";
  save_map_table(id, p.string());
  CHECK(parse_map_table(p.string()) == id);

  MapTable w = build_witness_hom(2, 2, 2, 4, 2, 3);
  CHECK(read_text(table_text(w)) == w);

  std::string commented = drop_line(text, 5);
  commented.insert(commented.find("dst"), "# comment\n\n");
  commented += "0,0;0,2 -> 0,0;0,2\n";
  CHECK(read_text(commented) == id);
}

TEST_CASE("map table errors") {
  MatSpace sp(Field::get(2, 2), 2, 2);
  std::string text = table_text(MapTable::identity(sp));
  CHECK(code_of([&] { read_text(drop_line(text, 10)); }) == Errc::IncompleteDomain);
  CHECK(code_of([&] { read_text(text + "0,0;0,0 -> 0,0;0,0\n"); }) == Errc::DuplicateKey);
  CHECK(code_of([&] { read_text("%bfmap 2\n"); }) == Errc::FormatError);
  CHECK(code_of([&] { read_text(drop_line(text, 1)); }) == Errc::FormatError);
  CHECK(code_of([&] { read_text("%bfmap 1\nsrc 6 1 2 2\ndst 2 1 2 2\n"); }) == Errc::FormatError);
  CHECK(code_of([&] { parse_map_table((scratch() / "missing.bfmap").string()); }) == Errc::IoError);
  try {
    read_text(text + "0,0;0,7 -> 0,0;0,0\n");
    FAIL("expected FormatError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::FormatError);
    CHECK(std::string(e.what()).find("line 260") != std::string::npos);
  }
  try {
    read_text(text.substr(0, text.find("0,0;0,0 -> 0,0;0,0")) + "0,0;0,0 0,0;0,0\n");
    FAIL("expected FormatError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("report rendering") {
  RunReport r;
  r.command = "demo";
  r.params = {{"z", 1}, {"a", "x"}};
  r.witnesses = {"b", "a", nlohmann::json{{"k", 1}}};
  r.counts["pairs"] = 3;
  std::string s = render_report(r);
  CHECK(s.back() == '\n');
  auto j = nlohmann::json::parse(s);
  CHECK(j["witnesses"][0] == "a");
  CHECK(j["witnesses"][1] == "b");
  CHECK_FALSE(j.contains("seed"));
  CHECK_FALSE(j.contains("elapsed_ms"));
  CHECK_FALSE(j.contains("result"));
  CHECK(s.find("\"a\"") < s.find("\"z\""));
  CHECK(r.exit_code() == 0);
  r.verdict = Verdict::Fail;
  CHECK(r.exit_code() == 1);
  r.verdict = Verdict::Error;
  CHECK(r.exit_code() == 2);
  CHECK(code_of([&] { emit_report(r, (scratch() / "no" / "such" / "dir.json").string()); }) == Errc::IoError);
}

TEST_CASE("commands and exit codes") {
  auto bfs = run({"bfs-check", "--field", "2,2", "--shape", "2,2"});
  CHECK(bfs.code == 0);
  CHECK(bfs.report["verdict"] == "pass");
  CHECK(bfs.report["counts"]["pairs"] == 65536);
  CHECK(bfs.report["counts"]["mismatches"] == 0);

  auto ex = run({"exists", "--src", "4:2x3", "--dst", "2:2x2"});
  CHECK(ex.code == 0);
  CHECK(ex.report["result"]["exists"] == false);
  CHECK(ex.report["counts"]["exists"] == 0);
  CHECK(run({"exists", "--src", "2^2:2x2", "--dst", "4:2,2"}).report["result"]["exists"] == true);

  fs::path table = scratch() / "std.bfmap";
  auto mk = run({"make-standard", "--field", "4", "--dst-field", "16", "--shape", "2x2", "--dst-shape", "3x3", "--seed",
                 "5", "--write", table.string()});
  CHECK(mk.code == 0);
  auto rec = run({"recover", "--map", table.string()});
  CHECK(rec.code == 0);
  CHECK(rec.report["result"]["exit"] == "ok");
  CHECK(rec.report["result"]["residual_checked"] == true);

  fs::path constant = scratch() / "const.bfmap";
  MatSpace sp(Field::get(2, 2), 2, 2);
  save_map_table(MapTable::tabulate(sp, sp, [&](const Mat&) { return Mat(sp.field(), 2, 2); }), constant.string());
  auto bad = run({"hom-verify", "--map", constant.string()});
  CHECK(bad.code == 1);
  CHECK(bad.report["verdict"] == "fail");
  CHECK_FALSE(bad.report["witnesses"].empty());

  auto missing = run({"recover", "--map", (scratch() / "nope.bfmap").string()});
  CHECK(missing.code == 2);
  CHECK(missing.report["verdict"] == "error");
  CHECK(missing.report["result"]["error"] == "IoError");

  CHECK(run({"bfs-check", "--field", "6", "--shape", "2,2"}).code == 2);
  CHECK(run({"bfs-check", "--field", "2,2"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"lemma-check", "--lemma", "9.9", "--field", "4"}).code == 2);

  auto col = run({"color", "--field", "4", "--shape", "2x2"});
  CHECK(col.code == 0);
  CHECK(col.report["counts"]["monochromatic"] == 0);
  auto wh = run({"witness-hom", "--src", "4:2x3", "--dst", "2:2x2"});
  CHECK(wh.code == 0);
  CHECK(wh.report["result"]["exists"] == false);
  auto lemma = run({"lemma-check", "--lemma", "4.2", "--field", "4", "--shape", "2x2", "--k", "2", "--r", "1"});
  CHECK(lemma.code == 0);
  CHECK(lemma.report["result"]["counterexamples"].empty());
}

TEST_CASE("reports are deterministic") {
  std::vector<std::string> args{"line-check", "--field", "2,1", "--shape", "2x3"};
  auto a = run(args, "a.json");
  auto b = run(args, "b.json");
  CHECK(a.text == b.text);
  auto w1 = args;
  w1.insert(w1.end(), {"--workers", "1"});
  CHECK(run(w1, "c.json").text == a.text);
  auto serial = args;
  serial.push_back("--serial");
  CHECK(run(serial, "d.json").text == a.text);
  auto timed = args;
  timed.push_back("--timing");
  auto t = run(timed, "e.json");
  CHECK(t.report.contains("elapsed_ms"));
  t.report.erase("elapsed_ms");
  CHECK(t.report == a.report);

  fs::path constant = scratch() / "const2.bfmap";
  MatSpace sp(Field::get(2, 2), 2, 2);
  save_map_table(MapTable::tabulate(sp, sp, [&](const Mat& x) { return x(0, 0).v == 1 ? Mat(sp.field(), 2, 2) : x; }),
                 constant.string());
  std::vector<std::string> sampled{"hom-verify", "--map", constant.string(), "--sample", "200", "--seed", "7"};
  auto s1 = run(sampled, "s1.json");
  auto s2 = run(sampled, "s2.json");
  CHECK(s1.text == s2.text);
  CHECK(s1.report["seed"] == 7);
  auto other = sampled;
  other.back() = "8";
  auto s3 = run(other, "s3.json");
  CHECK(s3.report["seed"] == 8);
  for (auto* j : {&s1.report, &s3.report}) {
    j->erase("seed");
    j->erase("witnesses");
    j->erase("counts");
  }
  CHECK(s1.report == s3.report);
}

TEST_CASE("worker resolution") {
  CHECK(resolve_workers(3, "5") == 3);
  CHECK(resolve_workers(0, "5") == 5);
  CHECK(resolve_workers(0, nullptr) == 0);
  CHECK(resolve_workers(0, "junk") == 0);
  CHECK(resolve_workers(0, "") == 0);
}
