#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "spatialui/runtime/world.hpp"

namespace spatialui {

struct DemoOptions {
    std::optional<LayoutDocument> layout;
    std::optional<ContextRules> rules;            // default rules when absent
    std::optional<std::filesystem::path> scan_root;  // resolves relative scan paths
};

struct DemoBuild {
    World world;
    std::vector<RowError> row_errors;
};

/// Context rules used when the caller supplies none.
ContextRules default_demo_rules();

/// The geospatial charger scene: a map plane with one marker per charger, a
/// filter panel whose buttons toggle the type/availability query, and a scale
/// panel whose slider drives the map scale. Bad charger rows are reported,
/// not fatal. A missing CSV header throws Format.
DemoBuild build_demo_world(const Config& config, std::string_view chargers_csv, const DemoOptions& options = {});

}  // namespace spatialui
