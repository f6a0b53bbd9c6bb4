// config.hpp - Analysis configuration: schema-validated ingestion of the
// JSON config document and conversion into canonical engine inputs
// (bits/seconds internally; Mbps/ms only at the boundary, as the key names
// say).
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#ifndef SNC_CONFIG_HPP
#define SNC_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "snc/bounds.hpp"
#include "snc/traffic.hpp"

namespace snc {

// Parse or validation failure; the message names the offending field (or the
// line/column for syntax errors).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TrafficSpec {
    enum class Model { Mmoo, SigmaRho };

    Model model = Model::Mmoo;
    // mmoo fields
    double peakMbps = 0.0;
    double meanOnMs = 0.0;
    double meanOffMs = 0.0;
    // sigma_rho fields
    std::vector<double> tabTheta;     // 1/bits
    std::vector<double> tabSigmaBits;
    std::vector<double> tabRhoMbps;
    int count = 1;

    TrafficModel build() const;
};

struct AnalysisConfig {
    int hops = 1;
    double capacityMbps = 0.0;
    TrafficSpec through;
    TrafficSpec cross;
    double epsilon = 0.0;
    ThetaGrid thetaGrid{};
    DeltaPolicy deltaPolicy = DeltaPolicy::Midpoint;
    double slotMs = 0.1;
    Objective objective = Objective::Delay;
    bool independence = false;

    double capacityBits() const { return capacityMbps * 1e6; }
    double slotSeconds() const { return slotMs * 1e-3; }
    TrafficModel throughModel() const { return through.build(); }
    TrafficModel crossModel() const { return cross.build(); }
    NetworkSpec networkSpec() const;
    BoundOptions boundOptions(BoundMethod method) const;
};

// Parses and validates the JSON text. Unknown keys are rejected; all
// physical quantities must be positive.
AnalysisConfig parseConfig(const std::string& text);
AnalysisConfig loadConfigFile(const std::string& path);

// Round-trip: the canonical JSON text of a config (used for record files).
std::string configToJson(const AnalysisConfig& cfg);

const char* objectiveName(Objective obj);
const char* methodName(BoundMethod m);

} // namespace snc

#endif // SNC_CONFIG_HPP
