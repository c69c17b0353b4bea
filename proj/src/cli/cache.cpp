#include "moebius/cache.hpp"

#include "moebius/errors.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace moebius {

std::string cache_status_name(CacheStatus s)
{
    switch (s) {
    case CacheStatus::disabled: return "disabled";
    case CacheStatus::hit: return "hit";
    case CacheStatus::miss: return "miss";
    case CacheStatus::regenerated: return "regenerated";
    }
    return "?";
}

std::optional<std::filesystem::path> resolve_cache_dir(const std::optional<std::string>& flag)
{
    if (flag && !flag->empty()) return std::filesystem::path(*flag);
    if (const char* env = std::getenv("MOEBIUS_CACHE_DIR"); env && *env)
        return std::filesystem::path(env);
    return std::nullopt;
}

std::string checksum_hex(std::string_view data)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

std::filesystem::path cache_file(const std::filesystem::path& dir, Family f, int n, int lambda, int K)
{
    return dir / ("half_" + family_name(f) + "_n" + std::to_string(n) + "_l" + std::to_string(lambda) +
                  "_K" + std::to_string(K) + ".json");
}

namespace {

std::string payload(const std::vector<std::string>& literals)
{
    std::string s;
    for (const auto& l : literals) {
        s += l;
        s += '\n';
    }
    return s;
}

std::optional<std::vector<HalfDiagram>> try_load(const std::filesystem::path& file, Family f, int n,
                                                 int lambda, int K)
{
    std::ifstream in(file);
    if (!in) return std::nullopt;
    try {
        auto j = nlohmann::json::parse(in);
        if (j.at("format_version").get<int>() != kCacheFormatVersion) return std::nullopt;
        if (j.at("family").get<std::string>() != family_name(f) || j.at("n").get<int>() != n ||
            j.at("lambda").get<int>() != lambda || j.at("K").get<int>() != K)
            return std::nullopt;
        auto literals = j.at("diagrams").get<std::vector<std::string>>();
        if (checksum_hex(payload(literals)) != j.at("checksum").get<std::string>()) return std::nullopt;
        std::vector<HalfDiagram> out;
        for (const auto& l : literals) {
            Diagram d = parse_diagram(l);
            if (d.n() != n || d.m() != lambda) return std::nullopt;
            out.push_back(HalfDiagram{d, lambda});
        }
        return out;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void store(const std::filesystem::path& file, Family f, int n, int lambda, int K,
           const std::vector<HalfDiagram>& halves)
{
    std::vector<std::string> literals;
    for (const auto& h : halves) literals.push_back(render_diagram(h.base));
    nlohmann::ordered_json j;
    j["format_version"] = kCacheFormatVersion;
    j["family"] = family_name(f);
    j["n"] = n;
    j["lambda"] = lambda;
    j["K"] = K;
    j["checksum"] = checksum_hex(payload(literals));
    j["diagrams"] = literals;
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << j.dump() << '\n';
        if (!out) return;
    }
    std::filesystem::rename(tmp, file, ec);
}

} // namespace

std::vector<HalfDiagram> cached_half_diagrams(Family f, int n, int lambda, int K,
                                              const std::optional<std::filesystem::path>& dir,
                                              CacheStatus* status)
{
    auto set = [&](CacheStatus s) {
        if (status) *status = s;
    };
    if (!dir) {
        set(CacheStatus::disabled);
        return enumerate_half_diagrams(f, n, lambda, K);
    }
    check_lambda_admissible(f, n, lambda);
    auto file = cache_file(*dir, f, n, lambda, K);
    bool existed = std::filesystem::exists(file);
    if (auto loaded = try_load(file, f, n, lambda, K)) {
        set(CacheStatus::hit);
        return *loaded;
    }
    auto halves = enumerate_half_diagrams(f, n, lambda, K);
    store(file, f, n, lambda, K, halves);
    set(existed ? CacheStatus::regenerated : CacheStatus::miss);
    return halves;
}

} // namespace moebius
