#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace crnf {

// Directory holding the model tables: CRNF_TABLE_DIR if set, else the
// build-time default.
std::string table_dir();
void set_table_dir(const std::string &dir);

// Loads <dir>/<file>, checking its SHA-256 against <dir>/manifest.json.
// Results are cached per directory.
const nlohmann::json &load_table(const std::string &file);

std::string sha256_hex(const std::string &data);

} // namespace crnf
