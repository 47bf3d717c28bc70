// vbec: parse, validate, and analyze Value Register files.
//
// Exit codes are stable for CI use: 0 pass, 1 diagnostics failed the gate,
// 2 usage or I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vbec/vbec.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitGate = 1;
constexpr int kExitUsage = 2;

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << content;
    return bool(out);
}

void print_diagnostics(const std::vector<vbec::Diagnostic>& diags) {
    for (const vbec::Diagnostic& d : diags) std::cerr << vbec::render_diagnostic(d) << '\n';
}

struct Loaded {
    std::vector<vbec::SyntaxItem> items;
    std::vector<vbec::Diagnostic> diagnostics;
    std::optional<vbec::Register> reg;
};

// VBEC_CONFIG may name a .vbr of config blocks applied when the inputs
// declare none; a broken config file is a usage error, not a finding.
std::optional<vbec::RiskConfig> env_risk_config(bool& io_error) {
    io_error = false;
    const char* path = std::getenv("VBEC_CONFIG");
    if (!path || !*path) return std::nullopt;
    std::string text;
    if (!read_file(path, text)) {
        std::cerr << "vbec: cannot read VBEC_CONFIG file '" << path << "'\n";
        io_error = true;
        return std::nullopt;
    }
    vbec::ParseResult parsed = vbec::parse(text, path);
    if (!parsed.diagnostics.empty()) {
        print_diagnostics(parsed.diagnostics);
        std::cerr << "vbec: VBEC_CONFIG file '" << path << "' does not parse\n";
        io_error = true;
        return std::nullopt;
    }
    for (const vbec::SyntaxItem& item : parsed.items)
        if (item.kind == vbec::ItemKind::config && item.id == "risk")
            return vbec::RiskConfig{item.find("low_max")->value.number,
                                    item.find("medium_max")->value.number};
    return std::nullopt;
}

// parse + link + validate over the concatenated inputs. Returns nullopt on
// I/O errors (exit 2); parse/link/validate findings land in diagnostics.
std::optional<Loaded> load(const std::vector<std::string>& files) {
    Loaded loaded;
    for (const std::string& path : files) {
        std::string text;
        if (!read_file(path, text)) {
            std::cerr << "vbec: cannot read '" << path << "'\n";
            return std::nullopt;
        }
        vbec::ParseResult parsed = vbec::parse(text, path);
        for (vbec::SyntaxItem& item : parsed.items) loaded.items.push_back(std::move(item));
        for (vbec::Diagnostic& d : parsed.diagnostics)
            loaded.diagnostics.push_back(std::move(d));
    }

    bool env_error = false;
    std::optional<vbec::RiskConfig> fallback = env_risk_config(env_error);
    if (env_error) return std::nullopt;

    vbec::LinkResult linked = vbec::link(loaded.items);
    for (vbec::Diagnostic& d : linked.diagnostics) loaded.diagnostics.push_back(std::move(d));
    if (linked.reg) {
        loaded.reg = std::move(linked.reg);
        if (!loaded.reg->config_explicit && fallback) loaded.reg->config = *fallback;
        std::vector<vbec::Diagnostic> findings = vbec::validate(*loaded.reg);
        for (vbec::Diagnostic& d : findings) loaded.diagnostics.push_back(std::move(d));
    }
    vbec::sort_diagnostics(loaded.diagnostics);
    return loaded;
}

int gate_exit(const Loaded& loaded, bool strict) {
    print_diagnostics(loaded.diagnostics);
    return vbec::severity_gate(loaded.diagnostics, strict) == vbec::Gate::pass ? kExitPass
                                                                               : kExitGate;
}

std::string full_json(const Loaded& loaded) {
    std::vector<vbec::RiskAssessment> assessments;
    vbec::MaturityMetrics m;
    if (loaded.reg) {
        assessments = vbec::assess(*loaded.reg, loaded.reg->config);
        m = vbec::metrics(*loaded.reg);
    }
    return vbec::emit_json(loaded.reg ? &*loaded.reg : nullptr, loaded.diagnostics, assessments, m);
}

int emit_to(const std::string& output, const std::string& text) {
    if (output.empty()) {
        std::cout << text;
        return kExitPass;
    }
    if (!write_file(output, text)) {
        std::cerr << "vbec: cannot write '" << output << "'\n";
        return kExitUsage;
    }
    return kExitPass;
}

const char* kInitTemplate =
    "project \"New project\" {\n"
    "  soi: \"Describe the system of interest here.\"\n"
    "  precondition stakeholder_inclusion: no\n"
    "  precondition open_culture: no\n"
    "  precondition quality_commitment: no\n"
    "  precondition top_level_value_dedication: no\n"
    "  precondition resourcing: no\n"
    "}\n"
    "\n"
    "config {\n"
    "  version: 1\n"
    "}\n"
    "\n"
    "ranking {\n"
    "  criteria: [c1, c2, c3, c4, c5, c6, c7]\n"
    "  order: []\n"
    "}\n";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vbec: a requirements-as-code toolchain for Value Registers"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    bool strict = false;
    std::string format;
    std::string output;
    std::string trace_id;
    std::string direction = "up";
    std::string init_path = "register.vbr";

    auto add_inputs = [&](CLI::App* cmd) {
        cmd->add_option("files", files, "register .vbr files, concatenated in order")
            ->required()
            ->expected(-1);
        cmd->add_flag("--strict", strict, "treat warnings as failures");
    };

    CLI::App* check = app.add_subcommand("check", "parse, link, and validate");
    add_inputs(check);
    check->add_option("--format", format, "text (default) or json")
        ->check(CLI::IsMember({"text", "json"}));
    check->add_option("--output", output, "write the JSON document here (requires --format json)");

    CLI::App* trace_cmd = app.add_subcommand("trace", "print traceability chains for an entity");
    add_inputs(trace_cmd);
    trace_cmd->add_option("--id", trace_id, "entity id to trace")->required();
    trace_cmd->add_option("--direction", direction, "up (default) or down")
        ->check(CLI::IsMember({"up", "down"}));

    CLI::App* risk = app.add_subcommand("risk", "print risk assessments and residuals");
    add_inputs(risk);

    CLI::App* report = app.add_subcommand("report", "emit the Value Register document");
    add_inputs(report);
    report->add_option("--format", format, "md (default) or json")
        ->check(CLI::IsMember({"md", "json"}));
    report->add_option("--output", output, "write the document here instead of stdout");

    CLI::App* metrics_cmd = app.add_subcommand("metrics", "print ethical-maturity metrics");
    add_inputs(metrics_cmd);
    metrics_cmd->add_option("--format", format, "text (default) or json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* number = app.add_subcommand("number", "print the canonical chain numbers");
    add_inputs(number);

    CLI::App* fmt = app.add_subcommand("fmt", "rewrite files in canonical form");
    fmt->add_option("files", files, "register .vbr files to rewrite")->required()->expected(-1);

    CLI::App* init = app.add_subcommand("init", "scaffold a minimal register file");
    init->add_option("path", init_path, "file to create (default register.vbr)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    if (init->parsed()) {
        if (std::ifstream(init_path).good()) {
            std::cerr << "vbec: refusing to overwrite '" << init_path << "'\n";
            return kExitUsage;
        }
        if (!write_file(init_path, kInitTemplate)) {
            std::cerr << "vbec: cannot write '" << init_path << "'\n";
            return kExitUsage;
        }
        return kExitPass;
    }

    if (fmt->parsed()) {
        // two phases so a parse error in any file leaves every file untouched
        std::vector<std::pair<std::string, std::string>> rewrites;
        bool clean = true;
        for (const std::string& path : files) {
            std::string text;
            if (!read_file(path, text)) {
                std::cerr << "vbec: cannot read '" << path << "'\n";
                return kExitUsage;
            }
            vbec::ParseResult parsed = vbec::parse(text, path);
            if (!parsed.diagnostics.empty()) {
                print_diagnostics(parsed.diagnostics);
                clean = false;
                continue;
            }
            std::string canonical = vbec::format(parsed.items);
            if (canonical != text) rewrites.emplace_back(path, std::move(canonical));
        }
        if (!clean) return kExitGate;
        for (const auto& [path, canonical] : rewrites) {
            if (!write_file(path, canonical)) {
                std::cerr << "vbec: cannot write '" << path << "'\n";
                return kExitUsage;
            }
        }
        return kExitPass;
    }

    if (!output.empty() && check->parsed() && format != "json") {
        std::cerr << "vbec: check --output requires --format json\n";
        return kExitUsage;
    }

    std::optional<Loaded> loaded = load(files);
    if (!loaded) return kExitUsage;

    if (check->parsed()) {
        int exit_code = gate_exit(*loaded, strict);
        if (format == "json") {
            std::string doc = full_json(*loaded);
            std::cout << doc;  // emitted even on failure; diagnostics ride along
            if (exit_code == kExitPass && !output.empty()) return emit_to(output, doc);
        }
        return exit_code;
    }

    // every remaining command needs a register that passed the gate
    int exit_code = gate_exit(*loaded, strict);
    if (exit_code != kExitPass) return exit_code;
    const vbec::Register& reg = *loaded->reg;

    if (trace_cmd->parsed()) {
        vbec::TraceBuildResult built = vbec::trace_build(reg);
        if (!built.graph || !built.graph->find(trace_id)) {
            std::cerr << "vbec: unknown entity id '" << trace_id << "'\n";
            return kExitUsage;
        }
        auto dir = direction == "down" ? vbec::Direction::down : vbec::Direction::up;
        for (const std::vector<std::string>& path : vbec::trace(*built.graph, trace_id, dir)) {
            std::string out;
            for (const std::string& id : path) out += (out.empty() ? "" : " -> ") + id;
            std::cout << out << '\n';
        }
        return kExitPass;
    }

    if (risk->parsed()) {
        std::vector<vbec::RiskAssessment> assessments = vbec::assess(reg, reg.config);
        std::map<std::string, vbec::ChainNumber> numbers = vbec::canonical_numbers(reg);
        for (const vbec::RiskAssessment& a : assessments) {
            std::cout << vbec::detail::number_or_dash(numbers, a.threat) << ' ' << a.threat
                      << " evr=" << a.evr
                      << " score=" << (a.score ? std::to_string(*a.score) : "-")
                      << " band=" << (a.band ? std::string(to_string(*a.band)) : "-")
                      << " obligation=" << to_string(a.obligation)
                      << " satisfied=" << (a.satisfied ? "yes" : "no") << '\n';
        }
        for (const vbec::ResidualEntry& r : vbec::residual_report(assessments))
            std::cout << "residual " << r.threat
                      << (r.score ? " (score " + std::to_string(*r.score) + ")" : " (unscored)")
                      << ": " << r.residual << '\n';
        return kExitPass;
    }

    if (report->parsed()) {
        std::vector<vbec::RiskAssessment> assessments = vbec::assess(reg, reg.config);
        vbec::MaturityMetrics m = vbec::metrics(reg);
        std::string doc;
        if (format == "json") {
            doc = vbec::emit_json(&reg, loaded->diagnostics, assessments, m);
        } else {
            std::optional<std::string> md =
                vbec::emit_report(reg, assessments, m, loaded->diagnostics);
            if (!md) return kExitGate;  // unreachable: the gate already passed
            doc = std::move(*md);
        }
        return emit_to(output, doc);
    }

    if (metrics_cmd->parsed()) {
        vbec::MaturityMetrics m = vbec::metrics(reg);
        if (format == "json") {
            std::cout << vbec::detail::metrics_json(m).dump(2) << '\n';
            return kExitPass;
        }
        auto ratio = [](double v, bool defined) {
            return defined ? vbec::detail::fmt_ratio(v) : std::string("n/a");
        };
        std::cout << "values_per_stakeholder: "
                  << ratio(m.values_per_stakeholder, m.values_per_stakeholder_defined) << '\n'
                  << "harm_count: " << m.harm_count << '\n'
                  << "benefit_count: " << m.benefit_count << '\n'
                  << "evr_coverage: " << ratio(m.evr_coverage, m.evr_coverage_defined) << '\n'
                  << "value_based_share: "
                  << ratio(m.value_based_share, m.value_based_share_defined) << '\n'
                  << "residual_count: " << m.residual_count << '\n'
                  << "reopened_count: " << m.reopened_count << '\n';
        return kExitPass;
    }

    if (number->parsed()) {
        std::map<std::string, vbec::ChainNumber> numbers = vbec::canonical_numbers(reg);
        std::vector<std::pair<vbec::ChainNumber, std::string>> rows;
        for (const auto& [id, n] : numbers) rows.emplace_back(n, id);
        std::sort(rows.begin(), rows.end());
        for (const auto& [n, id] : rows) std::cout << n.str() << ' ' << id << '\n';
        return kExitPass;
    }

    return kExitUsage;  // unreachable: require_subcommand(1)
}
