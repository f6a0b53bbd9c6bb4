// report.cpp - Deterministic sweep-table formatting.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#include "snc/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace snc {

bool ReportRow::operator==(const ReportRow& o) const {
    auto eq = [](double a, double b) {
        return a == b || (std::isnan(a) && std::isnan(b));
    };
    return eq(sweepValue, o.sweepValue) && eq(bound, o.bound) && eq(thetaStar, o.thetaStar) &&
           eq(deltaStar, o.deltaStar) && eq(epsilonAchieved, o.epsilonAchieved) &&
           method == o.method;
}

std::string formatDouble(double v) {
    char buf[40];
    // shortest representation that parses back to the same double
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v || std::isnan(v)) return buf;
    }
    return buf;
}

std::string rowHeader(const std::string& sweepName, const std::vector<std::string>& extras) {
    std::ostringstream out;
    out << sweepName << "\tbound\ttheta_star\tdelta_star\tepsilon_achieved\tmethod";
    for (const auto& e : extras) out << '\t' << e;
    out << "\tstatus";
    return out.str();
}

std::string formatRow(const ReportRow& row, const std::vector<double>& extras,
                      const std::string& status) {
    std::ostringstream out;
    out << formatDouble(row.sweepValue) << '\t' << formatDouble(row.bound) << '\t'
        << formatDouble(row.thetaStar) << '\t' << formatDouble(row.deltaStar) << '\t'
        << formatDouble(row.epsilonAchieved) << '\t' << row.method;
    for (double e : extras) out << '\t' << formatDouble(e);
    out << '\t' << status;
    return out.str();
}

ReportRow parseRow(const std::string& line) {
    std::istringstream in(line);
    std::string f[6];
    for (auto& field : f) {
        if (!std::getline(in, field, '\t'))
            throw std::invalid_argument("report row needs at least 6 fields: " + line);
    }
    auto num = [](const std::string& s) {
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str()) throw std::invalid_argument("bad number in report row: " + s);
        return v;
    };
    return ReportRow{num(f[0]), num(f[1]), num(f[2]), num(f[3]), num(f[4]), f[5]};
}

} // namespace snc
