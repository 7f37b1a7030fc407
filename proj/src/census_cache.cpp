#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "oseq/census.hpp"

namespace oseq {

namespace {

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << value;
    return out.str();
}

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (const char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

} // namespace

CacheLoad load_census_cache(const std::filesystem::path& path) {
    CacheLoad result;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        return result;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        result.problem = "cannot open " + path.string();
        return result;
    }
    std::string line;
    if (!std::getline(in, line) || line != kCensusCacheHeader) {
        result.problem = "unrecognised header or format version";
        return result;
    }
    std::vector<BigInt> values;
    std::string records;
    bool have_checksum = false;
    while (std::getline(in, line)) {
        if (have_checksum) {
            result.problem = "data after checksum";
            return result;
        }
        if (line.rfind("checksum ", 0) == 0) {
            if (line.substr(9) != hex64(fnv1a(records))) {
                result.problem = "checksum mismatch";
                return result;
            }
            have_checksum = true;
            continue;
        }
        const auto space = line.find(' ');
        if (space == std::string::npos) {
            result.problem = "malformed record";
            return result;
        }
        const std::string index = line.substr(0, space);
        const std::string value = line.substr(space + 1);
        if (!all_digits(index) || !all_digits(value) ||
            index != std::to_string(values.size() + 1)) {
            result.problem = "malformed or out-of-order record";
            return result;
        }
        values.emplace_back(value, 10);
        records += line;
        records += '\n';
    }
    if (!have_checksum) {
        result.problem = "missing checksum (truncated file?)";
        return result;
    }
    result.values = std::move(values);
    return result;
}

void save_census_cache(const std::filesystem::path& path, const std::vector<BigInt>& values) {
    std::string records;
    for (std::size_t k = 0; k < values.size(); ++k) {
        records += std::to_string(k + 1);
        records += ' ';
        records += to_decimal(values[k]);
        records += '\n';
    }
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::filesystem::path staging = path;
    staging += ".tmp";
    {
        std::ofstream out(staging, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write census cache " + staging.string());
        }
        out << kCensusCacheHeader << '\n' << records << "checksum " << hex64(fnv1a(records)) << '\n';
        if (!out) {
            throw std::runtime_error("short write to census cache " + staging.string());
        }
    }
    std::filesystem::rename(staging, path);
}

} // namespace oseq
