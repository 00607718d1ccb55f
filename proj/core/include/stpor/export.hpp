#pragma once

#include <string>
#include <vector>

#include "stpor/explorer.hpp"

namespace stpor {

/// One exploration, as written to stats files.
struct StatsRow {
    std::string model;
    std::string algo;
    std::string order;  // see order_digest
    ExploreStats stats;
};

/// "decl" for declaration order, otherwise "fnv1a:" plus 16 hex digits over the
/// space-joined action names in order.
std::string order_digest(const System& sys);

/// DOT text: one node per ReducedTS node in id order, labelled "id s<state> {sleep}";
/// subsumption edges dashed.
std::string export_dot(const System& sys, const ReducedTS& ts);

struct CsvOptions {
    bool status_column = false;  // append ",status" (termination reason)
    bool timing = true;          // false leaves time_ms empty for byte-stable output
};

std::string stats_csv_header(const CsvOptions& opt = {});  // no trailing newline
std::string export_stats_csv_row(const StatsRow& row, const CsvOptions& opt = {});
std::string export_stats_csv(const std::vector<StatsRow>& rows, const CsvOptions& opt = {});  // header + rows
std::string export_stats_json(const StatsRow& row, const std::vector<std::string>& order_names = {});

}  // namespace stpor
