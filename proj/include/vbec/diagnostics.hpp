#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace vbec {

// Location of a construct in an input file. line/column are 1-based,
// length and offset are in bytes.
struct SourceSpan {
    std::string file;
    int line = 1;
    int column = 1;
    int length = 0;
    int offset = 0;

    bool operator==(const SourceSpan&) const = default;
};

enum class Severity { error, warning };

// A coded finding. E-codes are always errors, W-codes always warnings;
// make_diagnostic derives the severity so the two can never disagree.
struct Diagnostic {
    std::string code;
    Severity severity = Severity::error;
    std::string message;
    SourceSpan span;
    std::string related;  // id of the entity the finding points at, if any

    bool operator==(const Diagnostic&) const = default;
};

inline Diagnostic make_diagnostic(std::string code, std::string message, SourceSpan span,
                                  std::string related = {}) {
    Severity sev = (!code.empty() && code.front() == 'W') ? Severity::warning : Severity::error;
    return Diagnostic{std::move(code), sev, std::move(message), std::move(span),
                      std::move(related)};
}

inline const char* severity_name(Severity s) {
    return s == Severity::error ? "error" : "warning";
}

// <file>:<line>:<col>: <severity>[<code>]: <message>
inline std::string render_diagnostic(const Diagnostic& d) {
    std::string out;
    out += d.span.file;
    out += ':';
    out += std::to_string(d.span.line);
    out += ':';
    out += std::to_string(d.span.column);
    out += ": ";
    out += severity_name(d.severity);
    out += '[';
    out += d.code;
    out += "]: ";
    out += d.message;
    return out;
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

enum class Gate { pass, fail };

// fail iff any error, or (strict and any warning).
inline Gate severity_gate(const std::vector<Diagnostic>& diags, bool strict) {
    for (const Diagnostic& d : diags) {
        if (d.severity == Severity::error) return Gate::fail;
        if (strict && d.severity == Severity::warning) return Gate::fail;
    }
    return Gate::pass;
}

// Stable presentation order: by code, then by span position.
inline void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.code != b.code) return a.code < b.code;
        if (a.span.file != b.span.file) return a.span.file < b.span.file;
        if (a.span.line != b.span.line) return a.span.line < b.span.line;
        return a.span.column < b.span.column;
    });
}

}  // namespace vbec
