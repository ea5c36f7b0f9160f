#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "cpw/config.hpp"

namespace cpw {

/// Compact-indented JSON with every float written as %.17g. Object keys keep
/// the json library's sorted order, so equal documents serialize to equal bytes.
std::string dump_report(const nlohmann::json& doc);

/// {"config_hash", "seed", "versions"} header shared by all reports.
nlohmann::json report_header(const Config& cfg);

/// Writes `text` to `path`; "-" means stdout.
void write_text(const std::string& path, const std::string& text);

}  // namespace cpw
