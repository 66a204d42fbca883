#include "xpair/report.hpp"

#include <cstdio>
#include <fstream>

#include "xpair/errors.hpp"

namespace xpair {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string verification_csv(const VerificationReport& report) {
  std::string out = "t,empirical_tail,ci_upper,bound,vacuous,violated\n";
  for (const VerificationRow& row : report.rows) {
    out += format_double(row.t) + "," + format_double(row.empirical) + "," +
           format_double(row.ci_upper) + "," + format_double(row.bound) + "," +
           (row.vacuous ? "1" : "0") + "," + (row.violated ? "1" : "0") + "\n";
  }
  return out;
}

nlohmann::ordered_json verification_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["bound"] = report.bound_name;
  nlohmann::ordered_json constants;
  for (const auto& [key, value] : report.constants) constants[key] = value;
  j["constants"] = constants;
  j["model"] = report.model;
  j["offset"] = report.offset;
  j["passed"] = report.passed;
  j["vacuous_below"] = report.vacuous_below;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const VerificationRow& row : report.rows) {
    rows.push_back({{"t", row.t},
                    {"empirical_tail", row.empirical},
                    {"ci_upper", row.ci_upper},
                    {"ci_lower", row.ci_lower},
                    {"bound", row.bound},
                    {"vacuous", row.vacuous},
                    {"violated", row.violated}});
  }
  j["rows"] = rows;
  return j;
}

std::string config_hash(const std::string& canonical_config) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : canonical_config) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::ordered_json report_meta(std::uint64_t seed, const std::string& canonical_config) {
  nlohmann::ordered_json meta;
  meta["seed"] = seed;
  meta["config-hash"] = config_hash(canonical_config);
  meta["version"] = kVersion;
  return meta;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open output file: " + path);
  out << contents;
  if (!out) throw config_error("failed writing output file: " + path);
}

}  // namespace xpair
