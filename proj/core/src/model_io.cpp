#include "stpor/model_io.hpp"

#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace stpor {

namespace {

struct Token {
    std::string text;
    int column;
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
               line[i] != '#')
            ++i;
        out.push_back(Token{line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

}  // namespace

bool is_identifier(const std::string& name) {
    if (name.empty()) return false;
    for (char ch : name) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                        (ch >= '0' && ch <= '9') || ch == '_' || ch == '.' || ch == '!' ||
                        ch == '^' || ch == 'v' || ch == '-';
        if (!ok) return false;
    }
    return true;
}

System parse_system(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    bool have_order = false;
    std::optional<SystemBuilder> builder;
    // Process whose block is open; none before the first header and after 'order'.
    constexpr ProcessId no_process = std::numeric_limits<ProcessId>::max();
    ProcessId current = no_process;
    std::vector<std::string> order;
    int order_line = 0;
    std::size_t nprocs = 0;

    auto need_ident = [&](const Token& t) {
        if (!is_identifier(t.text))
            throw ModelError("invalid identifier '" + t.text + "'", lineno, t.column);
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0].text;
        if (!have_header) {
            if (kw != "system" || toks.size() != 2)
                throw ModelError("expected 'system <name>'", lineno, toks[0].column);
            need_ident(toks[1]);
            builder.emplace(toks[1].text);
            have_header = true;
            continue;
        }
        if (kw == "system") throw ModelError("duplicate 'system' line", lineno, toks[0].column);
        if (kw == "client" || kw == "server") {
            if (have_order)
                throw ModelError("process declared after 'order'", lineno, toks[0].column);
            if (toks.size() != 2)
                throw ModelError("expected '" + kw + " <name>'", lineno, toks[0].column);
            need_ident(toks[1]);
            try {
                current = builder->add_process(
                    toks[1].text, kw == "client" ? ProcessKind::client : ProcessKind::server);
            } catch (const ModelError& e) {
                throw ModelError(e.what(), lineno, toks[1].column);
            }
            ++nprocs;
            continue;
        }
        if (kw == "order") {
            if (have_order) throw ModelError("duplicate 'order' line", lineno, toks[0].column);
            for (std::size_t i = 1; i < toks.size(); ++i) {
                need_ident(toks[i]);
                order.push_back(toks[i].text);
            }
            have_order = true;
            order_line = lineno;
            current = no_process;
            continue;
        }
        if (current == no_process)
            throw ModelError("statement outside a process block", lineno, toks[0].column);
        if (kw == "init" && toks.size() == 2) {
            need_ident(toks[1]);
            try {
                builder->set_initial(current, toks[1].text);
            } catch (const ModelError& e) {
                throw ModelError(e.what(), lineno, toks[0].column);
            }
            continue;
        }
        if (toks.size() != 3)
            throw ModelError("expected '<state> <action> <state>'", lineno, toks[0].column);
        for (const auto& t : toks) need_ident(t);
        builder->add_transition(current, toks[0].text, toks[1].text, toks[2].text);
    }
    if (!have_header || nprocs == 0) throw ModelError("no processes", lineno > 0 ? lineno : 1, 1);
    if (have_order) {
        for (const auto& n : order)
            if (!builder->has_action(n))
                throw ModelError("unknown action '" + n + "' in order", order_line, 1);
        builder->set_order(order);
    }
    try {
        return std::move(*builder).build();
    } catch (const ModelError& e) {
        if (e.line() > 0) throw;
        throw ModelError(e.what(), have_order ? order_line : lineno, 0);
    }
}

System load_system(const std::string& text) {
    System sys = parse_system(text);
    require_valid(sys);
    return sys;
}

System load_system_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ModelError("cannot open model file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return load_system(ss.str());
}

std::string format_system(const System& sys) {
    std::ostringstream os;
    os << "system " << sys.name() << '\n';
    for (const auto& p : sys.processes()) {
        os << (p.kind == ProcessKind::client ? "client " : "server ") << p.name << '\n';
        os << "  init " << p.state_names[p.initial] << '\n';
        for (const auto& t : p.transitions)
            os << "  " << p.state_names[t.from] << ' ' << sys.action_name(t.action) << ' '
               << p.state_names[t.to] << '\n';
    }
    os << "order";
    for (ActionId a : sys.order()) os << ' ' << sys.action_name(a);
    os << '\n';
    return os.str();
}

}  // namespace stpor
