#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "xpair/harness.hpp"

namespace xpair {

inline constexpr const char* kVersion = "0.1.0";

// Fixed %.17g formatting so identical inputs serialize byte-identically.
std::string format_double(double x);

// Header: t,empirical_tail,ci_upper,bound,vacuous,violated
std::string verification_csv(const VerificationReport& report);

nlohmann::ordered_json verification_json(const VerificationReport& report);

// FNV-1a over the canonical configuration string, hex encoded.
std::string config_hash(const std::string& canonical_config);

nlohmann::ordered_json report_meta(std::uint64_t seed, const std::string& canonical_config);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace xpair
