#include "stpor/export.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace stpor {

std::string order_digest(const System& sys) {
    if (sys.has_declaration_order()) return "decl";
    std::uint64_t h = 0xcbf29ce484222325ull;
    bool first = true;
    for (ActionId a : sys.order()) {
        if (!first) {
            h ^= static_cast<unsigned char>(' ');
            h *= 0x100000001b3ull;
        }
        first = false;
        for (unsigned char ch : sys.action_name(a)) {
            h ^= ch;
            h *= 0x100000001b3ull;
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string export_dot(const System& sys, const ReducedTS& ts) {
    std::ostringstream os;
    os << "digraph reduced {\n  node [shape=box];\n";
    for (NodeId n = 0; n < ts.num_nodes(); ++n)
        os << "  n" << n << " [label=\"" << n << " s" << ts.state_id(n) << ' '
           << format_actions(sys, ts.sleep(n)) << "\"];\n";
    for (const auto& e : ts.edges()) {
        os << "  n" << e.from << " -> n" << e.to << " [label=\"" << sys.action_name(e.action) << '"';
        if (e.kind == EdgeKind::subsumption) os << ", style=dashed";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string stats_csv_header(const CsvOptions& opt) {
    std::string h = "model,algo,order,nodes,edges,subs_edges,paths,oracle_calls,time_ms";
    if (opt.status_column) h += ",status";
    return h;
}

std::string export_stats_csv_row(const StatsRow& r, const CsvOptions& opt) {
    std::ostringstream os;
    os << r.model << ',' << r.algo << ',' << r.order << ',' << r.stats.nodes << ','
       << r.stats.edges << ',' << r.stats.subsumption_edges << ',';
    if (r.stats.full_paths) os << r.stats.full_paths->str();
    os << ',' << r.stats.oracle_calls << ',';
    if (opt.timing) {
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.1f", r.stats.wall_ms);
        os << ms;
    }
    if (opt.status_column) os << ',' << to_string(r.stats.status);
    return os.str();
}

std::string export_stats_csv(const std::vector<StatsRow>& rows, const CsvOptions& opt) {
    std::string out = stats_csv_header(opt) + "\n";
    for (const auto& r : rows) out += export_stats_csv_row(r, opt) + "\n";
    return out;
}

std::string export_stats_json(const StatsRow& r, const std::vector<std::string>& order_names) {
    nlohmann::ordered_json j;
    j["model"] = r.model;
    j["algo"] = r.algo;
    j["order"] = r.order;
    if (!order_names.empty()) j["order_actions"] = order_names;
    j["nodes"] = r.stats.nodes;
    j["edges"] = r.stats.edges;
    j["subs_edges"] = r.stats.subsumption_edges;
    j["paths"] = r.stats.full_paths ? nlohmann::ordered_json(r.stats.full_paths->str())
                                    : nlohmann::ordered_json(nullptr);
    j["oracle_calls"] = r.stats.oracle_calls;
    j["oracle_true"] = r.stats.oracle_true;
    j["time_ms"] = r.stats.wall_ms;
    j["status"] = std::string(to_string(r.stats.status));
    return j.dump(2) + "\n";
}

}  // namespace stpor
