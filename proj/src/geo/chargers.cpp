#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>
#include <string>

#include "spatialui/geo/geo.hpp"
#include "text_util.hpp"

namespace spatialui {

namespace {

constexpr std::array<std::pair<ChargerType, const char*>, 3> kTypeNames{{
    {ChargerType::Slow, "slow"},
    {ChargerType::Fast, "fast"},
    {ChargerType::Rapid, "rapid"},
}};

constexpr std::array<const char*, 6> kColumns{"id", "lat", "lon", "type", "available", "scan_path"};

// Splits one CSV record; double quotes may wrap a field and "" escapes a quote.
std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    for (std::string& f : fields) f = std::string(detail::trim(f));
    return fields;
}

std::optional<bool> parse_bool(std::string_view text) {
    const std::string t = detail::lower(text);
    if (t == "true" || t == "1") return true;
    if (t == "false" || t == "0") return false;
    return std::nullopt;
}

}  // namespace

const char* to_string(ChargerType type) noexcept {
    for (const auto& [t, name] : kTypeNames) {
        if (t == type) return name;
    }
    return "unknown";
}

std::optional<ChargerType> charger_type_from_string(std::string_view text) noexcept {
    const std::string t = detail::lower(detail::trim(text));
    for (const auto& [type, name] : kTypeNames) {
        if (t == name) return type;
    }
    return std::nullopt;
}

bool ChargerQuery::matches(const ChargerRecord& record) const {
    return (types.empty() || types.count(record.type) != 0) && (!available_only || record.available);
}

std::vector<ChargerRecord> query_chargers(const std::vector<ChargerRecord>& records, const ChargerQuery& query) {
    std::vector<ChargerRecord> out;
    std::copy_if(records.begin(), records.end(), std::back_inserter(out),
                 [&](const ChargerRecord& r) { return query.matches(r); });
    return out;
}

ChargerLoad load_chargers(std::string_view csv_text) {
    const std::vector<std::string_view> lines = detail::split_lines(csv_text);
    std::string_view header = lines.empty() ? std::string_view{} : lines.front();
    if (header.substr(0, 3) == "\xEF\xBB\xBF") header.remove_prefix(3);

    const std::vector<std::string> columns = split_csv(header);
    bool header_ok = columns.size() == kColumns.size();
    for (std::size_t i = 0; header_ok && i < columns.size(); ++i) {
        header_ok = detail::lower(columns[i]) == kColumns[i];
    }
    if (!header_ok) {
        throw Error(ErrorCode::Format, "charger CSV must start with header id,lat,lon,type,available,scan_path");
    }

    ChargerLoad out;
    std::set<std::string> ids;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        if (detail::trim(lines[i]).empty()) continue;
        auto reject = [&](std::string message) { out.errors.push_back({line_no, std::move(message)}); };

        const std::vector<std::string> f = split_csv(lines[i]);
        if (f.size() != 5 && f.size() != 6) {
            reject("expected 6 columns, found " + std::to_string(f.size()));
            continue;
        }
        ChargerRecord r;
        r.id = f[0];
        if (r.id.empty()) {
            reject("empty id");
            continue;
        }
        if (ids.count(r.id)) {
            reject("duplicate id '" + r.id + "'");
            continue;
        }
        const std::optional<double> lat = detail::parse_double(f[1]);
        const std::optional<double> lon = detail::parse_double(f[2]);
        if (!lat || !lon) {
            reject("lat/lon must be numbers");
            continue;
        }
        if (!(std::abs(*lat) <= kMaxMercatorLatitude)) {
            reject("lat " + f[1] + " outside Web Mercator domain [-85.05113, 85.05113]");
            continue;
        }
        if (!(*lon >= -180.0 && *lon < 180.0)) {
            reject("lon " + f[2] + " outside [-180, 180)");
            continue;
        }
        r.latitude = *lat;
        r.longitude = *lon;
        const std::optional<ChargerType> type = charger_type_from_string(f[3]);
        if (!type) {
            reject("type '" + f[3] + "' is not slow, fast or rapid");
            continue;
        }
        r.type = *type;
        const std::optional<bool> available = parse_bool(f[4]);
        if (!available) {
            reject("available '" + f[4] + "' is not true/false/0/1");
            continue;
        }
        r.available = *available;
        if (f.size() == 6 && !f[5].empty()) r.scan_path = f[5];

        ids.insert(r.id);
        out.records.push_back(std::move(r));
    }
    return out;
}

}  // namespace spatialui
