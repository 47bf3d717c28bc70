#pragma once

#include <string>
#include <vector>

#include "vbec/syntax.hpp"

namespace vbec {

namespace detail {

inline void append_escaped(std::string& out, const std::string& text) {
    out += '"';
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}

inline void append_value(std::string& out, const Value& v) {
    switch (v.kind) {
        case Value::Kind::string: append_escaped(out, v.text); break;
        case Value::Kind::ident: out += v.text; break;
        case Value::Kind::integer: out += std::to_string(v.number); break;
        case Value::Kind::boolean: out += v.flag ? "yes" : "no"; break;
        case Value::Kind::list: {
            out += '[';
            bool first = true;
            for (const Value& e : v.items) {
                if (!first) out += ", ";
                first = false;
                append_value(out, e);
            }
            out += ']';
            break;
        }
        case Value::Kind::tuple:
            out += v.tuple_first;
            out += '/';
            out += v.tuple_second;
            break;
        case Value::Kind::constraint:
            // rendered by append_field; a constraint value never nests
            break;
    }
}

inline void append_field(std::string& out, const Field& f) {
    out += "  ";
    if (f.value.kind == Value::Kind::constraint) {
        out += "constraint ";
        out += f.value.constraint_cluster;
        out += " min_rank ";
        out += std::to_string(f.value.constraint_min_rank);
        out += " because ";
        append_escaped(out, f.value.constraint_reason);
    } else {
        out += f.key;
        out += ": ";
        append_value(out, f.value);
    }
    out += '\n';
}

}  // namespace detail

// Renders items back to source in canonical form: declaration order kept,
// fields reordered to schema order (repeated fields keep their relative
// order), two-space indent, no separator commas, one blank line between
// items. Comments are not part of the item model and are not preserved.
inline std::string format(const std::vector<SyntaxItem>& items) {
    std::string out;
    for (const SyntaxItem& item : items) {
        if (!out.empty()) out += '\n';
        out += item_kind_name(item.kind);
        if (!item.id.empty()) {
            out += ' ';
            out += item.id;
        }
        if (item.has_label) {
            out += ' ';
            detail::append_escaped(out, item.label);
        }
        if (item.fields.empty()) {
            out += " {}\n";
            continue;
        }
        out += " {\n";
        const KindSpec& spec = kind_schemas().at(item.kind);
        std::vector<const Field*> pending;
        pending.reserve(item.fields.size());
        for (const Field& f : item.fields) pending.push_back(&f);
        for (const FieldSpec& fs : spec.fields) {
            for (const Field*& p : pending) {
                if (p && p->key == fs.key) {
                    detail::append_field(out, *p);
                    p = nullptr;
                }
            }
        }
        for (const Field* p : pending)
            if (p) detail::append_field(out, *p);  // unreachable for schema-valid items
        out += "}\n";
    }
    return out;
}

}  // namespace vbec
