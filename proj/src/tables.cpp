#include "crnf/tables.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>

#include <openssl/evp.h>

#include "crnf/scalar.hpp"

#ifndef CRNF_DEFAULT_TABLE_DIR
#define CRNF_DEFAULT_TABLE_DIR "resources/tables"
#endif

namespace crnf {

namespace {

std::mutex mu;
std::string override_dir;
std::map<std::string, nlohmann::json> cache;

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error(errc::bad_input, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

std::string sha256_hex(const std::string &data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw error(errc::bad_input, "sha256 failed");
    std::ostringstream ss;
    for (unsigned k = 0; k < len; ++k)
        ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
    return ss.str();
}

std::string table_dir()
{
    std::lock_guard<std::mutex> lock(mu);
    if (!override_dir.empty())
        return override_dir;
    if (const char *env = std::getenv("CRNF_TABLE_DIR"); env && *env)
        return env;
    return CRNF_DEFAULT_TABLE_DIR;
}

void set_table_dir(const std::string &dir)
{
    std::lock_guard<std::mutex> lock(mu);
    override_dir = dir;
}

const nlohmann::json &load_table(const std::string &file)
{
    std::string dir = table_dir();
    std::string key = dir + "/" + file;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;
    std::string data = read_file(key);
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_file(dir + "/manifest.json"));
    } catch (const nlohmann::json::exception &e) {
        throw error(errc::parse_error, "manifest: " + std::string(e.what()));
    }
    auto sums = manifest.value("sha256", nlohmann::json::object());
    if (!sums.contains(file))
        throw error(errc::table_checksum, file + " is not listed in the manifest");
    std::string want = sums[file].get<std::string>();
    std::string got = sha256_hex(data);
    if (want != got)
        throw error(errc::table_checksum, file + ": checksum " + got + " does not match manifest " + want);
    try {
        return cache.emplace(key, nlohmann::json::parse(data)).first->second;
    } catch (const nlohmann::json::exception &e) {
        throw error(errc::parse_error, file + ": " + e.what());
    }
}

} // namespace crnf
