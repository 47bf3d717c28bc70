#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vbec/diagnostics.hpp"

namespace vbec {

// The 14 entity keywords of the register DSL.
enum class ItemKind {
    project,
    config,
    stakeholder,
    partner,
    statement,
    corevalue,
    quality,
    ranking,
    evr,
    measure,
    threat,
    control,
    sysreq,
    monitor,
};

inline constexpr std::array<std::pair<std::string_view, ItemKind>, 14> kItemKinds = {{
    {"project", ItemKind::project},
    {"config", ItemKind::config},
    {"stakeholder", ItemKind::stakeholder},
    {"partner", ItemKind::partner},
    {"statement", ItemKind::statement},
    {"corevalue", ItemKind::corevalue},
    {"quality", ItemKind::quality},
    {"ranking", ItemKind::ranking},
    {"evr", ItemKind::evr},
    {"measure", ItemKind::measure},
    {"threat", ItemKind::threat},
    {"control", ItemKind::control},
    {"sysreq", ItemKind::sysreq},
    {"monitor", ItemKind::monitor},
}};

inline std::optional<ItemKind> item_kind_from(std::string_view word) {
    for (const auto& [name, kind] : kItemKinds)
        if (name == word) return kind;
    return std::nullopt;
}

inline std::string_view item_kind_name(ItemKind k) {
    for (const auto& [name, kind] : kItemKinds)
        if (kind == k) return name;
    return "?";
}

// A parsed field value. Tagged struct rather than std::variant so the
// recursive list case stays simple.
struct Value {
    enum class Kind { string, ident, integer, boolean, list, tuple, constraint };

    Kind kind = Kind::ident;
    std::string text;          // string literal or identifier
    long long number = 0;      // integer
    bool flag = false;         // boolean
    std::vector<Value> items;  // list elements
    std::string tuple_first;   // tuple: IDENT "/" IDENT
    std::string tuple_second;
    std::string constraint_cluster;  // constraint IDENT min_rank INT because STRING
    long long constraint_min_rank = 0;
    std::string constraint_reason;

    bool operator==(const Value&) const = default;

    static Value str(std::string s) {
        Value v;
        v.kind = Kind::string;
        v.text = std::move(s);
        return v;
    }
    static Value ident(std::string s) {
        Value v;
        v.kind = Kind::ident;
        v.text = std::move(s);
        return v;
    }
    static Value integer(long long n) {
        Value v;
        v.kind = Kind::integer;
        v.number = n;
        return v;
    }
    static Value boolean(bool b) {
        Value v;
        v.kind = Kind::boolean;
        v.flag = b;
        return v;
    }
    static Value list(std::vector<Value> xs) {
        Value v;
        v.kind = Kind::list;
        v.items = std::move(xs);
        return v;
    }
    static Value tuple(std::string a, std::string b) {
        Value v;
        v.kind = Kind::tuple;
        v.tuple_first = std::move(a);
        v.tuple_second = std::move(b);
        return v;
    }
    static Value constraint(std::string cluster, long long min_rank, std::string reason) {
        Value v;
        v.kind = Kind::constraint;
        v.constraint_cluster = std::move(cluster);
        v.constraint_min_rank = min_rank;
        v.constraint_reason = std::move(reason);
        return v;
    }
};

struct Field {
    std::string key;  // preconditions use the composite key "precondition <name>"
    Value value;
    SourceSpan span;
};

struct SyntaxItem {
    ItemKind kind = ItemKind::project;
    std::string id;     // empty when the kind has none
    bool has_label = false;
    std::string label;  // header string after the id
    std::vector<Field> fields;
    SourceSpan span;

    const Field* find(std::string_view key) const {
        for (const Field& f : fields)
            if (f.key == key) return &f;
        return nullptr;
    }
};

// ---------------------------------------------------------------------------
// Per-kind schema. Unknown keys are E013, duplicates E014, everything else
// that does not fit the declared shape is E015.
// ---------------------------------------------------------------------------

enum class FieldType {
    string_,      // STRING
    ref,          // IDENT naming another entity
    enum_,        // IDENT from a fixed set
    int_,         // INT within [int_min, int_max]
    bool_,        // yes | no
    ref_list,     // non-empty [IDENT, ...]
    string_list,  // [STRING, ...], may be empty
    tuple_list,   // non-empty [IDENT/IDENT, ...]
    ident_list,   // [IDENT, ...], may be empty (ranking order, criteria)
    lens,         // utilitarian|virtue|duty, or STRING naming a custom lens
    source,       // IDENT (statement ref) or STRING (conceptual citation)
    observes,     // IDENT (quality ref) or STRING (free-text value name)
    constraint,   // constraint IDENT min_rank INT because STRING
};

struct FieldSpec {
    std::string_view key;
    FieldType type;
    bool required = false;
    bool repeatable = false;
    std::vector<std::string_view> enum_values = {};
    long long int_min = 0;
    long long int_max = 0;
};

enum class HeaderRule { forbidden, optional, required };

struct KindSpec {
    HeaderRule id_rule;
    HeaderRule label_rule;
    std::vector<FieldSpec> fields;  // canonical emission order
};

inline constexpr std::array<std::string_view, 5> kPreconditionKeys = {
    "stakeholder_inclusion", "open_culture", "quality_commitment",
    "top_level_value_dedication", "resourcing"};

inline constexpr std::array<std::string_view, 3> kCanonicalLenses = {"utilitarian", "virtue",
                                                                     "duty"};
inline constexpr std::array<std::string_view, 7> kCriteria = {"c1", "c2", "c3", "c4",
                                                              "c5", "c6", "c7"};

inline constexpr std::array<std::string_view, 5> kLikelihoodNames = {"rare", "unlikely", "possible",
                                                                     "likely", "frequent"};
inline constexpr std::array<std::string_view, 5> kDamageNames = {"negligible", "limited",
                                                                 "substantial", "serious",
                                                                 "catastrophic"};

inline const std::map<ItemKind, KindSpec>& kind_schemas() {
    static const std::map<ItemKind, KindSpec> schemas = [] {
        std::map<ItemKind, KindSpec> m;
        m[ItemKind::project] = KindSpec{
            HeaderRule::forbidden,
            HeaderRule::required,
            {
                {"soi", FieldType::string_, true},
                {"value_lead", FieldType::string_, false},
                {"precondition stakeholder_inclusion", FieldType::bool_, true},
                {"precondition open_culture", FieldType::bool_, true},
                {"precondition quality_commitment", FieldType::bool_, true},
                {"precondition top_level_value_dedication", FieldType::bool_, true},
                {"precondition resourcing", FieldType::bool_, true},
            }};
        m[ItemKind::config] = KindSpec{
            HeaderRule::optional,
            HeaderRule::forbidden,
            {
                {"version", FieldType::int_, false, false, {}, 1, 1},
                {"low_max", FieldType::int_, false, false, {}, 1, 23},
                {"medium_max", FieldType::int_, false, false, {}, 2, 24},
            }};
        m[ItemKind::stakeholder] = KindSpec{
            HeaderRule::required,
            HeaderRule::optional,
            {
                {"kind", FieldType::enum_, true, false, {"direct", "indirect"}},
                {"critical", FieldType::bool_, false},
            }};
        m[ItemKind::partner] = KindSpec{
            HeaderRule::required,
            HeaderRule::optional,
            {
                {"system_access", FieldType::bool_, true},
            }};
        m[ItemKind::statement] = KindSpec{
            HeaderRule::required,
            HeaderRule::forbidden,
            {
                {"by", FieldType::ref, true},
                {"lens", FieldType::lens, true},
                {"polarity", FieldType::enum_, true, false, {"benefit", "harm"}},
                {"value", FieldType::string_, true},
                {"text", FieldType::string_, true},
            }};
        m[ItemKind::corevalue] = KindSpec{
            HeaderRule::required,
            HeaderRule::optional,
            {
                {"intrinsic", FieldType::bool_, false},
            }};
        m[ItemKind::quality] = KindSpec{
            HeaderRule::required,
            HeaderRule::optional,
            {
                {"core", FieldType::ref, true},
                {"relation", FieldType::enum_, false, false, {"instrumental", "undermining"}},
                {"source", FieldType::source, true},
            }};
        m[ItemKind::ranking] = KindSpec{
            HeaderRule::forbidden,
            HeaderRule::forbidden,
            {
                {"criteria", FieldType::ident_list, false},
                {"order", FieldType::ident_list, true},
                {"constraint", FieldType::constraint, false, true},
            }};
        m[ItemKind::evr] = KindSpec{
            HeaderRule::required,
            HeaderRule::forbidden,
            {
                {"covers", FieldType::tuple_list, true},
                {"path",
                 FieldType::enum_,
                 true,
                 false,
                 {"organizational", "standard", "impact_assessment"}},
                {"nature", FieldType::enum_, false, false, {"organizational", "technical", "mixed"}},
                {"statement", FieldType::string_, true},
                {"thresholds", FieldType::string_list, false},
            }};
        m[ItemKind::measure] = KindSpec{
            HeaderRule::required,
            HeaderRule::forbidden,
            {
                {"implements", FieldType::ref, true},
                {"text", FieldType::string_, true},
            }};
        m[ItemKind::threat] = KindSpec{
            HeaderRule::required,
            HeaderRule::forbidden,
            {
                {"against", FieldType::ref, true},
                {"text", FieldType::string_, true},
                {"likelihood",
                 FieldType::enum_,
                 false,
                 false,
                 {kLikelihoodNames[0], kLikelihoodNames[1], kLikelihoodNames[2],
                  kLikelihoodNames[3], kLikelihoodNames[4]}},
                {"damage",
                 FieldType::enum_,
                 false,
                 false,
                 {kDamageNames[0], kDamageNames[1], kDamageNames[2], kDamageNames[3],
                  kDamageNames[4]}},
                {"accepted", FieldType::bool_, false},
                {"residual", FieldType::string_, false},
            }};
        m[ItemKind::control] = KindSpec{
            HeaderRule::required,
            HeaderRule::forbidden,
            {
                {"mitigates", FieldType::ref_list, true},
                {"text", FieldType::string_, true},
            }};
        m[ItemKind::sysreq] = KindSpec{
            HeaderRule::required,
            HeaderRule::forbidden,
            {
                {"from", FieldType::ref, false},
                {"status", FieldType::enum_, false, false, {"roadmap", "implemented", "validated"}},
                {"text", FieldType::string_, false},
            }};
        m[ItemKind::monitor] = KindSpec{
            HeaderRule::required,
            HeaderRule::forbidden,
            {
                {"observes", FieldType::observes, true},
                {"outcome",
                 FieldType::enum_,
                 true,
                 false,
                 {"actualized", "not_actualized", "unexpected"}},
                {"note", FieldType::string_, false},
                {"action", FieldType::enum_, false, false, {"none", "reopen"}},
            }};
        return m;
    }();
    return schemas;
}

// ---------------------------------------------------------------------------
// Structural equality, the round-trip notion: spans are ignored and field
// order is irrelevant (the canonical formatter reorders keys). Repeated
// `constraint` fields keep their relative order.
// ---------------------------------------------------------------------------

inline bool structurally_equal(const SyntaxItem& a, const SyntaxItem& b) {
    if (a.kind != b.kind || a.id != b.id || a.has_label != b.has_label || a.label != b.label)
        return false;
    std::vector<const Value*> ca, cb;
    std::map<std::string_view, const Value*> ma, mb;
    for (const Field& f : a.fields) {
        if (f.key == "constraint")
            ca.push_back(&f.value);
        else
            ma[f.key] = &f.value;
    }
    for (const Field& f : b.fields) {
        if (f.key == "constraint")
            cb.push_back(&f.value);
        else
            mb[f.key] = &f.value;
    }
    if (ca.size() != cb.size() || ma.size() != mb.size()) return false;
    for (size_t i = 0; i < ca.size(); ++i)
        if (!(*ca[i] == *cb[i])) return false;
    for (const auto& [key, val] : ma) {
        auto it = mb.find(key);
        if (it == mb.end() || !(*val == *it->second)) return false;
    }
    return true;
}

inline bool structurally_equal(const std::vector<SyntaxItem>& a,
                               const std::vector<SyntaxItem>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!structurally_equal(a[i], b[i])) return false;
    return true;
}

}  // namespace vbec
