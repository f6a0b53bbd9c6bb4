// config.cpp - JSON config ingestion with field-addressed validation errors.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#include "snc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace snc {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config error at " + path + ": " + what);
}

void requireKeys(const json& obj, const std::string& path, const std::set<std::string>& allowed,
                 const std::set<std::string>& required) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) fail(path + "/" + item.key(), "unknown key");
    }
    for (const auto& key : required) {
        if (!obj.contains(key)) fail(path + "/" + key, "missing required key");
    }
}

double positiveNumber(const json& obj, const std::string& path, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + "/" + key, "expected a number");
    double x = v.get<double>();
    if (!(x > 0.0)) fail(path + "/" + key, "must be > 0");
    return x;
}

int positiveInt(const json& obj, const std::string& path, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + "/" + key, "expected an integer");
    auto x = v.get<long long>();
    if (x < 1) fail(path + "/" + key, "must be >= 1");
    if (x > 1000000000LL) fail(path + "/" + key, "implausibly large");
    return static_cast<int>(x);
}

std::vector<double> numberArray(const json& obj, const std::string& path, const std::string& key,
                                bool strictlyPositive) {
    const json& v = obj.at(key);
    if (!v.is_array() || v.empty()) fail(path + "/" + key, "expected a non-empty array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) fail(path + "/" + key, "expected numbers");
        double x = e.get<double>();
        if (strictlyPositive ? !(x > 0.0) : x < 0.0)
            fail(path + "/" + key, strictlyPositive ? "entries must be > 0" : "entries must be >= 0");
        out.push_back(x);
    }
    return out;
}

TrafficSpec parseTraffic(const json& obj, const std::string& path) {
    TrafficSpec spec;
    if (!obj.is_object()) fail(path, "expected an object");
    std::string model = obj.value("model", std::string("mmoo"));
    if (model == "mmoo") {
        requireKeys(obj, path, {"model", "peak_mbps", "mean_on_ms", "mean_off_ms", "count"},
                    {"peak_mbps", "mean_on_ms", "mean_off_ms", "count"});
        spec.model = TrafficSpec::Model::Mmoo;
        spec.peakMbps = positiveNumber(obj, path, "peak_mbps");
        spec.meanOnMs = positiveNumber(obj, path, "mean_on_ms");
        spec.meanOffMs = positiveNumber(obj, path, "mean_off_ms");
    } else if (model == "sigma_rho") {
        requireKeys(obj, path, {"model", "theta", "sigma_bits", "rho_mbps", "count"},
                    {"theta", "sigma_bits", "rho_mbps", "count"});
        spec.model = TrafficSpec::Model::SigmaRho;
        spec.tabTheta = numberArray(obj, path, "theta", true);
        spec.tabSigmaBits = numberArray(obj, path, "sigma_bits", false);
        spec.tabRhoMbps = numberArray(obj, path, "rho_mbps", false);
        if (spec.tabTheta.size() != spec.tabSigmaBits.size() ||
            spec.tabTheta.size() != spec.tabRhoMbps.size())
            fail(path, "theta, sigma_bits and rho_mbps must have equal length");
    } else {
        fail(path + "/model", "must be \"mmoo\" or \"sigma_rho\"");
    }
    spec.count = positiveInt(obj, path, "count");
    return spec;
}

} // namespace

TrafficModel TrafficSpec::build() const {
    if (model == Model::Mmoo) {
        return TrafficModel(
            MmooParams(peakMbps * 1e6, 1.0 / (meanOnMs * 1e-3), 1.0 / (meanOffMs * 1e-3)), count);
    }
    std::vector<double> rho(tabRhoMbps.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = tabRhoMbps[i] * 1e6;
    return TrafficModel(SigmaRhoTable(tabTheta, tabSigmaBits, rho), count);
}

NetworkSpec AnalysisConfig::networkSpec() const {
    return NetworkSpec{hops, capacityBits(), crossModel(), epsilon};
}

BoundOptions AnalysisConfig::boundOptions(BoundMethod method) const {
    BoundOptions opts;
    opts.thetaGrid = thetaGrid;
    opts.deltaPolicy = deltaPolicy;
    opts.slot = slotSeconds();
    opts.method = method;
    return opts;
}

AnalysisConfig parseConfig(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw ConfigError("config parse error at line " + std::to_string(line) + ": " + e.what());
    }

    requireKeys(doc, "/",
                {"network", "through", "cross", "epsilon", "theta_grid", "delta_policy",
                 "slot_ms", "objective", "independence"},
                {"network", "through", "cross", "epsilon"});

    AnalysisConfig cfg;
    const json& net = doc.at("network");
    requireKeys(net, "/network", {"hops", "capacity_mbps"}, {"hops", "capacity_mbps"});
    cfg.hops = positiveInt(net, "/network", "hops");
    cfg.capacityMbps = positiveNumber(net, "/network", "capacity_mbps");

    cfg.through = parseTraffic(doc.at("through"), "/through");
    cfg.cross = parseTraffic(doc.at("cross"), "/cross");

    if (!doc.at("epsilon").is_number()) fail("/epsilon", "expected a number");
    cfg.epsilon = doc.at("epsilon").get<double>();
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) fail("/epsilon", "must lie in (0, 1)");

    if (doc.contains("theta_grid")) {
        const json& tg = doc.at("theta_grid");
        requireKeys(tg, "/theta_grid", {"min", "max", "points"}, {"min", "max", "points"});
        cfg.thetaGrid.min = positiveNumber(tg, "/theta_grid", "min");
        cfg.thetaGrid.max = positiveNumber(tg, "/theta_grid", "max");
        cfg.thetaGrid.points = positiveInt(tg, "/theta_grid", "points");
        if (!(cfg.thetaGrid.max > cfg.thetaGrid.min)) fail("/theta_grid/max", "must exceed min");
        if (cfg.thetaGrid.points < 2) fail("/theta_grid/points", "must be >= 2");
    }
    if (doc.contains("delta_policy")) {
        std::string p = doc.at("delta_policy").get<std::string>();
        if (p == "midpoint")
            cfg.deltaPolicy = DeltaPolicy::Midpoint;
        else if (p == "refine")
            cfg.deltaPolicy = DeltaPolicy::Refine;
        else
            fail("/delta_policy", "must be \"midpoint\" or \"refine\"");
    }
    if (doc.contains("slot_ms")) cfg.slotMs = positiveNumber(doc, "/", "slot_ms");
    if (doc.contains("objective")) {
        std::string o = doc.at("objective").get<std::string>();
        if (o == "delay")
            cfg.objective = Objective::Delay;
        else if (o == "backlog")
            cfg.objective = Objective::Backlog;
        else if (o == "output")
            cfg.objective = Objective::OutputBurstiness;
        else
            fail("/objective", "must be \"delay\", \"backlog\" or \"output\"");
    }
    if (doc.contains("independence")) {
        if (!doc.at("independence").is_boolean()) fail("/independence", "expected a boolean");
        cfg.independence = doc.at("independence").get<bool>();
    }
    return cfg;
}

AnalysisConfig loadConfigFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parseConfig(ss.str());
}

std::string configToJson(const AnalysisConfig& cfg) {
    json doc;
    doc["network"] = {{"hops", cfg.hops}, {"capacity_mbps", cfg.capacityMbps}};
    auto traffic = [](const TrafficSpec& t) {
        json j;
        if (t.model == TrafficSpec::Model::Mmoo) {
            j["model"] = "mmoo";
            j["peak_mbps"] = t.peakMbps;
            j["mean_on_ms"] = t.meanOnMs;
            j["mean_off_ms"] = t.meanOffMs;
        } else {
            j["model"] = "sigma_rho";
            j["theta"] = t.tabTheta;
            j["sigma_bits"] = t.tabSigmaBits;
            j["rho_mbps"] = t.tabRhoMbps;
        }
        j["count"] = t.count;
        return j;
    };
    doc["through"] = traffic(cfg.through);
    doc["cross"] = traffic(cfg.cross);
    doc["epsilon"] = cfg.epsilon;
    doc["theta_grid"] = {{"min", cfg.thetaGrid.min},
                         {"max", cfg.thetaGrid.max},
                         {"points", cfg.thetaGrid.points}};
    doc["delta_policy"] = cfg.deltaPolicy == DeltaPolicy::Midpoint ? "midpoint" : "refine";
    doc["slot_ms"] = cfg.slotMs;
    doc["objective"] = objectiveName(cfg.objective);
    doc["independence"] = cfg.independence;
    return doc.dump(2);
}

const char* objectiveName(Objective obj) {
    switch (obj) {
        case Objective::Delay: return "delay";
        case Objective::Backlog: return "backlog";
        default: return "output";
    }
}

const char* methodName(BoundMethod m) {
    switch (m) {
        case BoundMethod::Theorem2: return "thm2";
        case BoundMethod::Theorem3Independent: return "thm3";
        default: return "closed-form";
    }
}

} // namespace snc
