#pragma once

// Small conveniences shared across the test binaries.

#include <vbec/vbec.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vbec::testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(VBEC_FIXTURE_DIR) + "/" + name;
}

inline std::vector<std::string> codes(const std::vector<Diagnostic>& diags) {
    std::vector<std::string> out;
    for (const Diagnostic& d : diags) out.push_back(d.code);
    return out;
}

inline bool has_code(const std::vector<Diagnostic>& diags, const std::string& code) {
    for (const Diagnostic& d : diags)
        if (d.code == code) return true;
    return false;
}

inline std::vector<std::string> error_codes(const std::vector<Diagnostic>& diags) {
    std::vector<std::string> out;
    for (const Diagnostic& d : diags)
        if (d.severity == Severity::error) out.push_back(d.code);
    return out;
}

// Parses a single source buffer and requires it to be schema-clean.
inline std::vector<SyntaxItem> parse_ok(const std::string& src,
                                        const std::string& file = "test.vbr") {
    ParseResult r = parse(src, file);
    if (!r.diagnostics.empty())
        throw std::runtime_error("unexpected parse diagnostic: " +
                                 render_diagnostic(r.diagnostics.front()));
    return r.items;
}

// Parse + link, requiring both to succeed.
inline Register link_ok(const std::string& src, const std::string& file = "test.vbr") {
    LinkResult r = link(parse_ok(src, file));
    if (!r.reg)
        throw std::runtime_error("unexpected link diagnostic: " +
                                 render_diagnostic(r.diagnostics.front()));
    return *r.reg;
}

struct PipelineResult {
    std::optional<Register> reg;
    std::vector<Diagnostic> diagnostics;  // parse + link + validate, sorted
};

// The whole front half of the toolchain, as the CLI wires it.
inline PipelineResult run_pipeline(const std::string& src,
                                   const std::string& file = "test.vbr") {
    PipelineResult out;
    ParseResult p = parse(src, file);
    out.diagnostics = p.diagnostics;
    LinkResult l = link(p.items);
    out.diagnostics.insert(out.diagnostics.end(), l.diagnostics.begin(), l.diagnostics.end());
    if (l.reg) {
        std::vector<Diagnostic> v = validate(*l.reg);
        out.diagnostics.insert(out.diagnostics.end(), v.begin(), v.end());
        out.reg = std::move(l.reg);
    }
    sort_diagnostics(out.diagnostics);
    return out;
}

}  // namespace vbec::testutil
