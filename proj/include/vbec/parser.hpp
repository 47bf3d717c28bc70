#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vbec/diagnostics.hpp"
#include "vbec/lexer.hpp"
#include "vbec/syntax.hpp"

namespace vbec {

struct ParseResult {
    std::vector<SyntaxItem> items;  // schema-valid items only
    std::vector<Diagnostic> diagnostics;
};

namespace detail {

// Recursive-descent parser with per-field recovery. A block that produces
// any diagnostic is withheld from the item list, so downstream stages only
// ever see schema-valid items.
class Parser {
  public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic> lex_diags)
        : toks_(std::move(tokens)), diags_(std::move(lex_diags)) {}

    ParseResult run() {
        while (!at(TokKind::end)) {
            if (at(TokKind::ident)) {
                if (auto kind = item_kind_from(cur().text)) {
                    parse_item(*kind);
                    continue;
                }
            }
            error("expected an entity keyword (project, config, stakeholder, ...)", cur().span);
            skip_to_top_level();
        }
        ParseResult result;
        result.items = std::move(items_);
        result.diagnostics = std::move(diags_);
        return result;
    }

  private:
    // --- token cursor -----------------------------------------------------

    const Token& cur() const { return toks_[i_]; }
    const Token& peek(size_t n) const {
        size_t j = i_ + n;
        return toks_[j < toks_.size() ? j : toks_.size() - 1];
    }
    bool at(TokKind k) const { return cur().kind == k; }
    const Token& take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

    void error(std::string message, SourceSpan span) {
        diags_.push_back(make_diagnostic("E015", std::move(message), std::move(span)));
    }

    // A kind keyword not followed by ':' marks the start of the next item;
    // a kind-named field key ("statement:" inside an evr) does not.
    bool at_top_level_keyword() const {
        return at(TokKind::ident) && item_kind_from(cur().text).has_value() &&
               peek(1).kind != TokKind::colon;
    }

    void skip_to_top_level() {
        while (!at(TokKind::end) && !at_top_level_keyword()) take();
    }

    enum class Sync { next_field, block_end, top_level, eof };

    Sync recover_in_block() {
        while (true) {
            if (at(TokKind::end)) return Sync::eof;
            if (at(TokKind::comma)) {
                take();
                return Sync::next_field;
            }
            if (at(TokKind::rbrace)) {
                take();
                return Sync::block_end;
            }
            if (at_top_level_keyword()) return Sync::top_level;
            take();
        }
    }

    static int span_end(const SourceSpan& s) { return s.offset + s.length; }

    SourceSpan span_from(const SourceSpan& start) const {
        SourceSpan s = start;
        const SourceSpan& last = toks_[i_ > 0 ? i_ - 1 : 0].span;
        s.length = std::max(0, span_end(last) - s.offset);
        return s;
    }

    // --- grammar ----------------------------------------------------------

    void parse_item(ItemKind kind) {
        size_t diags_before = diags_.size();
        SyntaxItem item;
        item.kind = kind;
        SourceSpan start = cur().span;
        take();  // kind keyword

        if (at(TokKind::ident)) item.id = take().text;
        if (at(TokKind::string)) {
            item.has_label = true;
            item.label = take().text;
        }

        if (!at(TokKind::lbrace)) {
            error(std::string("expected '{' to open the ") + std::string(item_kind_name(kind)) +
                      " block, got " + token_kind_name(cur().kind),
                  cur().span);
            skip_to_top_level();
            return;
        }
        take();  // '{'

        bool closed = false;
        while (!closed) {
            if (at(TokKind::rbrace)) {
                take();
                closed = true;
                break;
            }
            if (at(TokKind::end)) {
                error(std::string("unexpected end of file inside ") +
                          std::string(item_kind_name(kind)) + " block",
                      cur().span);
                break;
            }
            switch (parse_field(item)) {
                case Sync::next_field: break;
                case Sync::block_end: closed = true; break;
                case Sync::top_level: closed = true; break;  // unclosed block, resync
                case Sync::eof: closed = true; break;
            }
        }
        item.span = span_from(start);

        if (diags_.size() == diags_before) check_schema(item);
        if (diags_.size() == diags_before) items_.push_back(std::move(item));
    }

    Sync parse_field(SyntaxItem& item) {
        if (!at(TokKind::ident)) {
            error(std::string("expected a field key, got ") + token_kind_name(cur().kind),
                  cur().span);
            return recover_in_block();
        }

        SourceSpan key_span = cur().span;
        Field field;

        if (cur().text == "precondition" && peek(1).kind == TokKind::ident) {
            take();
            field.key = "precondition " + take().text;
            if (!expect(TokKind::colon, "':' after the precondition key")) return recover_in_block();
            bool ok = true;
            field.value = parse_value(ok);
            if (!ok) return recover_in_block();
        } else if (cur().text == "constraint" && peek(1).kind == TokKind::ident) {
            take();
            std::string cluster = take().text;
            if (!at(TokKind::ident) || cur().text != "min_rank") {
                error("expected 'min_rank' in constraint", cur().span);
                return recover_in_block();
            }
            take();
            if (!at(TokKind::integer)) {
                error("expected an integer rank in constraint", cur().span);
                return recover_in_block();
            }
            long long min_rank = take().number;
            if (!at(TokKind::ident) || cur().text != "because") {
                error("expected 'because' in constraint", cur().span);
                return recover_in_block();
            }
            take();
            if (!at(TokKind::string)) {
                error("expected a quoted reason after 'because'", cur().span);
                return recover_in_block();
            }
            std::string reason = take().text;
            field.key = "constraint";
            field.value = Value::constraint(std::move(cluster), min_rank, std::move(reason));
        } else {
            field.key = take().text;
            if (!expect(TokKind::colon, "':' after field key '" + field.key + "'"))
                return recover_in_block();
            bool ok = true;
            field.value = parse_value(ok);
            if (!ok) return recover_in_block();
        }

        field.span = span_from(key_span);
        item.fields.push_back(std::move(field));
        if (at(TokKind::comma)) take();
        return Sync::next_field;
    }

    bool expect(TokKind k, const std::string& what) {
        if (at(k)) {
            take();
            return true;
        }
        error("expected " + what + ", got " + token_kind_name(cur().kind), cur().span);
        return false;
    }

    Value parse_value(bool& ok) {
        switch (cur().kind) {
            case TokKind::string: return Value::str(take().text);
            case TokKind::integer: return Value::integer(take().number);
            case TokKind::ident: {
                std::string name = take().text;
                if (name == "yes") return Value::boolean(true);
                if (name == "no") return Value::boolean(false);
                if (at(TokKind::slash)) {
                    take();
                    if (!at(TokKind::ident)) {
                        error("expected an identifier after '/' in tuple", cur().span);
                        ok = false;
                        return Value::ident(std::move(name));
                    }
                    std::string second = take().text;
                    return Value::tuple(std::move(name), std::move(second));
                }
                return Value::ident(std::move(name));
            }
            case TokKind::lbracket: {
                take();
                std::vector<Value> elems;
                if (!at(TokKind::rbracket)) {
                    elems.push_back(parse_value(ok));
                    if (!ok) return Value::list(std::move(elems));
                    while (at(TokKind::comma)) {
                        take();
                        elems.push_back(parse_value(ok));
                        if (!ok) return Value::list(std::move(elems));
                    }
                }
                if (!expect(TokKind::rbracket, "']' to close the list")) {
                    ok = false;
                    return Value::list(std::move(elems));
                }
                return Value::list(std::move(elems));
            }
            default:
                error(std::string("expected a value, got ") + token_kind_name(cur().kind),
                      cur().span);
                ok = false;
                return Value::ident("");
        }
    }

    // --- strict schema ------------------------------------------------------

    void check_schema(const SyntaxItem& item) {
        const KindSpec& spec = kind_schemas().at(item.kind);
        std::string kind_name(item_kind_name(item.kind));

        if (spec.id_rule == HeaderRule::required && item.id.empty())
            error(kind_name + " requires an identifier", item.span);
        if (spec.id_rule == HeaderRule::forbidden && !item.id.empty())
            error(kind_name + " does not take an identifier", item.span);
        if (spec.label_rule == HeaderRule::required && !item.has_label)
            error(kind_name + " requires a quoted name", item.span);
        if (spec.label_rule == HeaderRule::forbidden && item.has_label)
            error(kind_name + " does not take a quoted name", item.span);

        if (item.kind == ItemKind::config && !item.id.empty() && item.id != "risk")
            error("unknown config block '" + item.id + "' (expected 'risk')", item.span);

        // key validity and duplicates
        std::vector<const Field*> seen;
        for (const Field& f : item.fields) {
            const FieldSpec* fs = find_spec(spec, f.key);
            if (!fs) {
                diags_.push_back(make_diagnostic(
                    "E013", "unknown field key '" + f.key + "' for " + kind_name, f.span));
                continue;
            }
            if (!fs->repeatable) {
                bool dup = false;
                for (const Field* p : seen)
                    if (p->key == f.key) dup = true;
                if (dup) {
                    diags_.push_back(make_diagnostic(
                        "E014", "duplicate field '" + f.key + "' in " + kind_name, f.span));
                    continue;
                }
            }
            seen.push_back(&f);
            check_field_type(*fs, f);
        }

        // required keys
        for (const FieldSpec& fs : spec.fields) {
            if (!fs.required) continue;
            if (!item.find(fs.key))
                error("missing required field '" + std::string(fs.key) + "' in " + kind_name +
                          " block",
                      item.span);
        }

        check_cross_field(item);
    }

    static const FieldSpec* find_spec(const KindSpec& spec, std::string_view key) {
        for (const FieldSpec& fs : spec.fields)
            if (fs.key == key) return &fs;
        return nullptr;
    }

    static bool is_canonical_lens(std::string_view name) {
        for (std::string_view l : kCanonicalLenses)
            if (l == name) return true;
        return false;
    }

    void check_field_type(const FieldSpec& fs, const Field& f) {
        const Value& v = f.value;
        auto fail = [&](const std::string& msg) { error("field '" + std::string(fs.key) + "' " + msg, f.span); };
        switch (fs.type) {
            case FieldType::string_:
                if (v.kind != Value::Kind::string) fail("expects a quoted string");
                break;
            case FieldType::ref:
                if (v.kind != Value::Kind::ident) fail("expects an identifier reference");
                break;
            case FieldType::bool_:
                if (v.kind != Value::Kind::boolean) fail("expects yes or no");
                break;
            case FieldType::int_:
                if (v.kind != Value::Kind::integer)
                    fail("expects an integer");
                else if (v.number < fs.int_min || v.number > fs.int_max)
                    fail("must be between " + std::to_string(fs.int_min) + " and " +
                         std::to_string(fs.int_max));
                break;
            case FieldType::enum_: {
                if (v.kind != Value::Kind::ident) {
                    fail("expects one of: " + join_enum(fs));
                    break;
                }
                bool found = false;
                for (std::string_view e : fs.enum_values)
                    if (e == v.text) found = true;
                if (!found) fail("expects one of: " + join_enum(fs) + " (got '" + v.text + "')");
                break;
            }
            case FieldType::ref_list:
                if (v.kind != Value::Kind::list)
                    fail("expects a list of identifiers");
                else if (v.items.empty())
                    fail("must not be empty");
                else
                    for (const Value& e : v.items)
                        if (e.kind != Value::Kind::ident) fail("expects identifiers only");
                break;
            case FieldType::string_list:
                if (v.kind != Value::Kind::list)
                    fail("expects a list of strings");
                else
                    for (const Value& e : v.items)
                        if (e.kind != Value::Kind::string) fail("expects strings only");
                break;
            case FieldType::tuple_list:
                if (v.kind != Value::Kind::list)
                    fail("expects a list of CORE/QUALITY tuples");
                else if (v.items.empty())
                    fail("must not be empty");
                else
                    for (const Value& e : v.items)
                        if (e.kind != Value::Kind::tuple) fail("expects CORE/QUALITY tuples only");
                break;
            case FieldType::ident_list:
                if (v.kind != Value::Kind::list)
                    fail("expects a list of identifiers");
                else
                    for (const Value& e : v.items)
                        if (e.kind != Value::Kind::ident) fail("expects identifiers only");
                break;
            case FieldType::lens:
                if (v.kind == Value::Kind::ident) {
                    if (!is_canonical_lens(v.text))
                        fail("expects utilitarian, virtue, duty, or a quoted custom lens name");
                } else if (v.kind == Value::Kind::string) {
                    if (v.text.empty())
                        fail("custom lens name must not be empty");
                    else if (is_canonical_lens(v.text))
                        fail("custom lens must not shadow a canonical lens; write lens: " + v.text);
                } else {
                    fail("expects a lens");
                }
                break;
            case FieldType::source:
                if (v.kind == Value::Kind::string) {
                    if (v.text.empty()) fail("citation must not be empty");
                } else if (v.kind != Value::Kind::ident) {
                    fail("expects a statement reference or a quoted citation");
                }
                break;
            case FieldType::observes:
                if (v.kind == Value::Kind::string) {
                    if (v.text.empty()) fail("free-text value name must not be empty");
                } else if (v.kind != Value::Kind::ident) {
                    fail("expects a quality reference or a quoted value name");
                }
                break;
            case FieldType::constraint:
                if (v.kind != Value::Kind::constraint)
                    fail("must use the form: constraint ID min_rank N because \"reason\"");
                else if (v.constraint_min_rank < 1)
                    fail("min_rank must be at least 1");
                break;
        }
    }

    static std::string join_enum(const FieldSpec& fs) {
        std::string out;
        for (std::string_view e : fs.enum_values) {
            if (!out.empty()) out += ", ";
            out += e;
        }
        return out;
    }

    void check_cross_field(const SyntaxItem& item) {
        switch (item.kind) {
            case ItemKind::config: {
                const Field* low = item.find("low_max");
                const Field* med = item.find("medium_max");
                const Field* version = item.find("version");
                if (item.id == "risk") {
                    if (version)
                        error("'version' does not belong in config risk", version->span);
                    if (!low || !med)
                        error("config risk requires both low_max and medium_max", item.span);
                    else if (low->value.kind == Value::Kind::integer &&
                             med->value.kind == Value::Kind::integer &&
                             low->value.number >= med->value.number)
                        error("low_max must be smaller than medium_max", med->span);
                } else {
                    if (low) error("'low_max' belongs in config risk", low->span);
                    if (med) error("'medium_max' belongs in config risk", med->span);
                }
                break;
            }
            case ItemKind::sysreq: {
                if (!item.find("from") && !item.find("text"))
                    error("sysreq without 'from' is functional and requires 'text'", item.span);
                break;
            }
            case ItemKind::monitor: {
                const Field* obs = item.find("observes");
                const Field* outcome = item.find("outcome");
                if (obs && obs->value.kind == Value::Kind::string && outcome &&
                    outcome->value.kind == Value::Kind::ident && outcome->value.text != "unexpected")
                    error("a free-text observes value requires outcome: unexpected", obs->span);
                break;
            }
            case ItemKind::ranking: {
                if (const Field* crit = item.find("criteria");
                    crit && crit->value.kind == Value::Kind::list) {
                    std::vector<std::string_view> seen;
                    for (const Value& e : crit->value.items) {
                        if (e.kind != Value::Kind::ident) continue;
                        bool known = false;
                        for (std::string_view c : kCriteria)
                            if (c == e.text) known = true;
                        if (!known) {
                            error("unknown criterion '" + e.text + "' (expected c1..c7)",
                                  crit->span);
                            continue;
                        }
                        for (std::string_view s : seen)
                            if (s == e.text)
                                error("duplicate criterion '" + e.text + "'", crit->span);
                        seen.push_back(e.text);
                    }
                }
                break;
            }
            default: break;
        }
    }

    std::vector<Token> toks_;
    std::vector<Diagnostic> diags_;
    std::vector<SyntaxItem> items_;
    size_t i_ = 0;
};

}  // namespace detail

// Parses one source file. Never aborts: every failure is a diagnostic, and
// blocks with diagnostics are dropped so the returned items are schema-valid.
inline ParseResult parse(std::string_view source, std::string file_name) {
    std::vector<Diagnostic> lex_diags;
    detail::Lexer lexer(source, file_name);
    std::vector<detail::Token> tokens = lexer.run(lex_diags);
    detail::Parser parser(std::move(tokens), std::move(lex_diags));
    return parser.run();
}

}  // namespace vbec
