#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "matgeo/geometry.hpp"
#include "matgeo/maptable.hpp"

namespace matgeo {

// %bfmap 1 files
MapTable parse_map_table(const std::string& path);
MapTable read_map_table(std::istream& in);
void write_map_table(const MapTable& f, std::ostream& out);
void save_map_table(const MapTable& f, const std::string& path);

nlohmann::json to_json(const MaximalSet& s);

enum class Verdict { Pass, Fail, Error };

struct RunReport {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  Verdict verdict = Verdict::Pass;
  std::vector<nlohmann::json> witnesses;
  std::map<std::string, std::int64_t> counts;
  std::optional<std::uint64_t> seed;
  nlohmann::json result;  // command-specific payload, omitted when null
  std::optional<std::int64_t> elapsed_ms;

  int exit_code() const { return verdict == Verdict::Pass ? 0 : verdict == Verdict::Fail ? 1 : 2; }
  nlohmann::json to_json() const;
};

const char* verdict_name(Verdict v);

// sorted keys, witnesses sorted by serialized form, trailing newline; "-" is stdout
std::string render_report(const RunReport& r);
void emit_report(const RunReport& r, const std::string& path);

}  // namespace matgeo
