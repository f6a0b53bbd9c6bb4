// report.hpp - Tabular result rows: deterministic formatting and the
// round-trip parser for the machine-readable sweep files.
//
// Copyright (c) 2026 snetcalc contributors.
// Licensed under the MIT License. See LICENSE file for details.

#ifndef SNC_REPORT_HPP
#define SNC_REPORT_HPP

#include <string>
#include <vector>

namespace snc {

// One sweep point under one method. Extra derived columns may follow these
// six in a file; the parser reads exactly the first six.
struct ReportRow {
    double sweepValue;       // H, or N+M, depending on the sweep
    double bound;            // seconds for delay, bits otherwise
    double thetaStar;        // 1/bits
    double deltaStar;        // bits/second
    double epsilonAchieved;
    std::string method;      // "thm2" | "thm3" | "closed-form"

    bool operator==(const ReportRow& o) const;
};

// Shortest exact decimal representation (round-trips through strtod).
std::string formatDouble(double v);

std::string rowHeader(const std::string& sweepName, const std::vector<std::string>& extras = {});
std::string formatRow(const ReportRow& row, const std::vector<double>& extras = {},
                      const std::string& status = "ok");
// Parses one data line written by formatRow. Throws std::invalid_argument on
// malformed input.
ReportRow parseRow(const std::string& line);

} // namespace snc

#endif // SNC_REPORT_HPP
