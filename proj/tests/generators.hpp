#pragma once

// Seeded random input builders shared by the property tests and the
// acceptance suite. Two flavors: free-standing schema-valid items rendered
// with deliberately messy surface layout (round-trip food), and small
// registers whose references all resolve (graph and pipeline food).

#include <vbec/vbec.hpp>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace vbec::testgen {

class Rng {
public:
    explicit Rng(unsigned seed) : eng_(seed) {}

    int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

    bool chance(int percent) { return range(1, 100) <= percent; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(range(0, static_cast<int>(v.size()) - 1))];
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        std::shuffle(v.begin(), v.end(), eng_);
    }

    std::string ident(int min_len = 1, int max_len = 8) {
        static const std::string first = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
        static const std::string rest = first + "_0123456789";
        std::string out;
        int len = range(min_len, max_len);
        out += first[static_cast<std::size_t>(range(0, static_cast<int>(first.size()) - 1))];
        while (static_cast<int>(out.size()) < len)
            out += rest[static_cast<std::size_t>(range(0, static_cast<int>(rest.size()) - 1))];
        if (out == "yes" || out == "no") out += "_x";
        return out;
    }

    std::string text(int max_len = 40) {
        static const std::string alphabet =
            " abcdefghijklmnopqrstuvwxyz ABCDEFGHIJKLMNOPQRSTUVWXYZ 0123456789 .,;:!?()-'/#{}[]";
        std::string out;
        int len = range(0, max_len);
        for (int i = 0; i < len; ++i) {
            if (chance(4)) {
                switch (range(0, 3)) {
                    case 0: out += '"'; break;
                    case 1: out += '\\'; break;
                    case 2: out += '\n'; break;
                    default: out += '\t'; break;
                }
            } else {
                out += alphabet[static_cast<std::size_t>(
                    range(0, static_cast<int>(alphabet.size()) - 1))];
            }
        }
        return out;
    }

    std::string nonempty_text(int max_len = 40) {
        std::string out = text(max_len);
        if (out.empty()) out = ident();
        return out;
    }

private:
    std::mt19937 eng_;
};

// One schema-valid item of the given kind. References may dangle; the
// round-trip property never links. Optional fields come and go at random and
// field order is scrambled, which structural comparison must tolerate.
inline SyntaxItem random_item(Rng& rng, ItemKind kind, int ordinal) {
    SyntaxItem item;
    item.kind = kind;
    const KindSpec& spec = kind_schemas().at(kind);
    if (spec.id_rule == HeaderRule::required ||
        (spec.id_rule == HeaderRule::optional && kind != ItemKind::config && rng.chance(70)))
        item.id = std::string(item_kind_name(kind)).substr(0, 2) + "_" + std::to_string(ordinal);
    if (spec.label_rule == HeaderRule::required ||
        (spec.label_rule == HeaderRule::optional && rng.chance(50))) {
        item.has_label = true;
        item.label = rng.text(24);
    }

    auto add = [&](std::string key, Value v) {
        item.fields.push_back(Field{std::move(key), std::move(v), SourceSpan{}});
    };
    auto lens_value = [&]() {
        if (rng.chance(70))
            return Value::ident(std::string(rng.pick(std::vector<std::string>(
                kCanonicalLenses.begin(), kCanonicalLenses.end()))));
        std::string custom = rng.nonempty_text(16);
        for (std::string_view l : kCanonicalLenses)
            if (custom == l) custom += " lens";  // custom lenses must not shadow a canonical one
        return Value::str(custom);
    };
    auto ident_list = [&](int min_n, int max_n) {
        Value v = Value::list({});
        int n = rng.range(min_n, max_n);
        for (int i = 0; i < n; ++i) v.items.push_back(Value::ident(rng.ident()));
        return v;
    };

    switch (kind) {
        case ItemKind::project:
            add("soi", Value::str(rng.nonempty_text()));
            if (rng.chance(50)) add("value_lead", Value::str(rng.text(20)));
            for (std::string_view key : kPreconditionKeys)
                add("precondition " + std::string(key), Value::boolean(rng.chance(50)));
            break;
        case ItemKind::config:
            if (rng.chance(50)) {
                item.id = "risk";
                int low = rng.range(1, 23);
                add("low_max", Value::integer(low));
                add("medium_max", Value::integer(rng.range(low + 1, 24)));
            } else {
                item.id.clear();
                if (rng.chance(70)) add("version", Value::integer(1));
            }
            break;
        case ItemKind::stakeholder:
            add("kind", Value::ident(rng.chance(50) ? "direct" : "indirect"));
            if (rng.chance(50)) add("critical", Value::boolean(rng.chance(50)));
            break;
        case ItemKind::partner:
            add("system_access", Value::boolean(rng.chance(50)));
            break;
        case ItemKind::statement:
            add("by", Value::ident(rng.ident()));
            add("lens", lens_value());
            add("polarity", Value::ident(rng.chance(50) ? "benefit" : "harm"));
            add("value", Value::str(rng.nonempty_text(16)));
            add("text", Value::str(rng.text()));
            break;
        case ItemKind::corevalue:
            if (rng.chance(50)) add("intrinsic", Value::boolean(rng.chance(50)));
            break;
        case ItemKind::quality:
            add("core", Value::ident(rng.ident()));
            if (rng.chance(40))
                add("relation", Value::ident(rng.chance(50) ? "instrumental" : "undermining"));
            add("source", rng.chance(50) ? Value::ident(rng.ident())
                                         : Value::str(rng.nonempty_text(24)));
            break;
        case ItemKind::ranking: {
            if (rng.chance(60)) {
                std::vector<std::string> pool(kCriteria.begin(), kCriteria.end());
                rng.shuffle(pool);
                pool.resize(static_cast<std::size_t>(rng.range(0, 7)));
                Value v = Value::list({});
                for (const std::string& c : pool) v.items.push_back(Value::ident(c));
                add("criteria", v);
            }
            add("order", ident_list(0, 4));
            int n = rng.range(0, 2);
            for (int i = 0; i < n; ++i)
                add("constraint",
                    Value::constraint(rng.ident(), rng.range(1, 7), rng.text(20)));
            break;
        }
        case ItemKind::evr: {
            Value covers = Value::list({});
            int n = rng.range(1, 3);
            for (int i = 0; i < n; ++i)
                covers.items.push_back(Value::tuple(rng.ident(), rng.ident()));
            add("covers", covers);
            static const std::vector<std::string> paths = {"organizational", "standard",
                                                           "impact_assessment"};
            add("path", Value::ident(rng.pick(paths)));
            if (rng.chance(40)) {
                static const std::vector<std::string> natures = {"organizational", "technical",
                                                                 "mixed"};
                add("nature", Value::ident(rng.pick(natures)));
            }
            add("statement", Value::str(rng.nonempty_text()));
            if (rng.chance(40)) {
                Value v = Value::list({});
                int k = rng.range(0, 2);
                for (int i = 0; i < k; ++i) v.items.push_back(Value::str(rng.text(24)));
                add("thresholds", v);
            }
            break;
        }
        case ItemKind::measure:
            add("implements", Value::ident(rng.ident()));
            add("text", Value::str(rng.text()));
            break;
        case ItemKind::threat: {
            add("against", Value::ident(rng.ident()));
            add("text", Value::str(rng.text()));
            if (rng.chance(60))
                add("likelihood", Value::ident(std::string(
                                      kLikelihoodNames[static_cast<std::size_t>(rng.range(0, 4))])));
            if (rng.chance(60))
                add("damage", Value::ident(std::string(
                                  kDamageNames[static_cast<std::size_t>(rng.range(0, 4))])));
            if (rng.chance(30)) add("accepted", Value::boolean(rng.chance(50)));
            if (rng.chance(30)) add("residual", Value::str(rng.text(30)));
            break;
        }
        case ItemKind::control: {
            Value v = Value::list({});
            int n = rng.range(1, 3);
            for (int i = 0; i < n; ++i) v.items.push_back(Value::ident(rng.ident()));
            add("mitigates", v);
            add("text", Value::str(rng.text()));
            break;
        }
        case ItemKind::sysreq:
            if (rng.chance(60)) {
                add("from", Value::ident(rng.ident()));
                if (rng.chance(50)) add("text", Value::str(rng.text()));
            } else {
                add("text", Value::str(rng.nonempty_text()));
            }
            if (rng.chance(70)) {
                static const std::vector<std::string> statuses = {"roadmap", "implemented",
                                                                  "validated"};
                add("status", Value::ident(rng.pick(statuses)));
            }
            break;
        case ItemKind::monitor: {
            bool free_text = rng.chance(30);
            if (free_text)
                add("observes", Value::str(rng.nonempty_text(16)));
            else
                add("observes", Value::ident(rng.ident()));
            if (free_text) {
                add("outcome", Value::ident("unexpected"));
            } else {
                static const std::vector<std::string> outcomes = {"actualized", "not_actualized",
                                                                  "unexpected"};
                add("outcome", Value::ident(rng.pick(outcomes)));
            }
            if (rng.chance(40)) add("note", Value::str(rng.text(30)));
            if (rng.chance(40)) add("action", Value::ident(rng.chance(50) ? "none" : "reopen"));
            break;
        }
    }
    rng.shuffle(item.fields);
    return item;
}

inline std::vector<SyntaxItem> random_items(Rng& rng, int max_entities) {
    static const std::vector<ItemKind> kinds = {
        ItemKind::project,   ItemKind::config,  ItemKind::stakeholder, ItemKind::partner,
        ItemKind::statement, ItemKind::corevalue, ItemKind::quality,   ItemKind::ranking,
        ItemKind::evr,       ItemKind::measure, ItemKind::threat,      ItemKind::control,
        ItemKind::sysreq,    ItemKind::monitor};
    std::vector<SyntaxItem> items;
    int n = rng.range(1, max_entities);
    for (int i = 0; i < n; ++i) items.push_back(random_item(rng, rng.pick(kinds), i + 1));
    return items;
}

namespace detail {

inline void append_messy_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
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

inline void append_messy_value(std::string& out, const Value& v, Rng& rng) {
    auto pad = [&] { out.append(static_cast<std::size_t>(rng.range(0, 2)), ' '); };
    switch (v.kind) {
        case Value::Kind::string: append_messy_string(out, v.text); break;
        case Value::Kind::ident: out += v.text; break;
        case Value::Kind::integer: out += std::to_string(v.number); break;
        case Value::Kind::boolean: out += v.flag ? "yes" : "no"; break;
        case Value::Kind::tuple:
            out += v.tuple_first;
            pad();
            out += '/';
            pad();
            out += v.tuple_second;
            break;
        case Value::Kind::list:
            out += '[';
            for (std::size_t i = 0; i < v.items.size(); ++i) {
                if (i) out += ',';
                pad();
                append_messy_value(out, v.items[i], rng);
            }
            pad();
            out += ']';
            break;
        case Value::Kind::constraint: break;  // rendered by the field writer
    }
}

}  // namespace detail

// Renders items with randomized spacing, comments, optional commas, and line
// breaks. Parsing the result must recover the items exactly.
inline std::string messy_source(const std::vector<SyntaxItem>& items, Rng& rng) {
    std::string out;
    auto pad = [&] { out.append(static_cast<std::size_t>(rng.range(0, 3)), ' '); };
    auto maybe_comment = [&] {
        if (rng.chance(15)) out += "# " + rng.ident(0, 12) + "\n";
    };
    for (const SyntaxItem& item : items) {
        maybe_comment();
        pad();
        out += item_kind_name(item.kind);
        if (!item.id.empty()) {
            out += ' ';
            pad();
            out += item.id;
        }
        if (item.has_label) {
            out += ' ';
            pad();
            detail::append_messy_string(out, item.label);
        }
        pad();
        out += '{';
        if (rng.chance(60)) out += '\n';
        for (const Field& f : item.fields) {
            pad();
            if (f.value.kind == Value::Kind::constraint) {
                out += "constraint ";
                pad();
                out += f.value.constraint_cluster;
                out += " min_rank ";
                pad();
                out += std::to_string(f.value.constraint_min_rank);
                out += " because ";
                pad();
                detail::append_messy_string(out, f.value.constraint_reason);
            } else {
                out += f.key;  // precondition keys carry their space already
                pad();
                out += ':';
                pad();
                detail::append_messy_value(out, f.value, rng);
            }
            if (rng.chance(50)) out += ',';
            if (rng.chance(80))
                out += '\n';
            else
                out += ' ';
            maybe_comment();
        }
        pad();
        out += '}';
        out += '\n';
        if (rng.chance(50)) out += '\n';
    }
    return out;
}

// A register whose references all resolve and whose graph is acyclic by
// construction. Validator warnings (and some E-codes such as E008) may still
// apply; callers that need a clean validate() should not use this directly.
inline std::vector<SyntaxItem> random_linked_items(Rng& rng) {
    std::vector<SyntaxItem> items;
    int counter = 0;
    auto fresh = [&](const char* prefix) { return std::string(prefix) + std::to_string(++counter); };
    auto add_field = [](SyntaxItem& it, std::string key, Value v) {
        it.fields.push_back(Field{std::move(key), std::move(v), SourceSpan{}});
    };
    auto make = [&](ItemKind kind, std::string id) {
        SyntaxItem it;
        it.kind = kind;
        it.id = std::move(id);
        return it;
    };

    std::vector<std::string> stakeholders;
    std::vector<std::string> statements;
    std::vector<std::string> corevalues;
    std::vector<std::pair<std::string, std::string>> qualities;  // id, owning cluster
    std::vector<std::pair<std::string, std::string>> evrs;       // id, path
    std::vector<std::string> threats;
    std::vector<std::string> controls;

    int n_sh = rng.range(0, 2);
    for (int i = 0; i < n_sh; ++i) {
        SyntaxItem it = make(ItemKind::stakeholder, fresh("SH"));
        add_field(it, "kind", Value::ident(rng.chance(50) ? "direct" : "indirect"));
        stakeholders.push_back(it.id);
        items.push_back(std::move(it));
    }
    for (const std::string& sh : stakeholders) {
        int n_st = rng.range(0, 2);
        for (int i = 0; i < n_st; ++i) {
            SyntaxItem it = make(ItemKind::statement, fresh("ST"));
            add_field(it, "by", Value::ident(sh));
            add_field(it, "lens", Value::ident(std::string(
                                      kCanonicalLenses[static_cast<std::size_t>(rng.range(0, 2))])));
            add_field(it, "polarity", Value::ident(rng.chance(50) ? "benefit" : "harm"));
            add_field(it, "value", Value::str(rng.ident()));
            add_field(it, "text", Value::str("elicited note"));
            statements.push_back(it.id);
            items.push_back(std::move(it));
        }
    }

    int n_cv = rng.range(1, 5);
    for (int i = 0; i < n_cv; ++i) {
        SyntaxItem it = make(ItemKind::corevalue, fresh("CV"));
        corevalues.push_back(it.id);
        items.push_back(std::move(it));
    }
    for (const std::string& cv : corevalues) {
        int n_q = rng.range(0, 3);
        for (int i = 0; i < n_q; ++i) {
            SyntaxItem it = make(ItemKind::quality, fresh("VQ"));
            add_field(it, "core", Value::ident(cv));
            if (!statements.empty() && rng.chance(50))
                add_field(it, "source", Value::ident(rng.pick(statements)));
            else
                add_field(it, "source", Value::str("literature note"));
            qualities.emplace_back(it.id, cv);
            items.push_back(std::move(it));
        }
    }

    for (const auto& [vq, cv] : qualities) {
        int n_e = rng.range(0, 2);
        for (int i = 0; i < n_e; ++i) {
            SyntaxItem it = make(ItemKind::evr, fresh("EVR"));
            Value covers = Value::list({Value::tuple(cv, vq)});
            if (qualities.size() > 1 && rng.chance(30)) {
                const auto& extra = rng.pick(qualities);
                if (extra.first != vq) covers.items.push_back(Value::tuple(extra.second, extra.first));
            }
            add_field(it, "covers", covers);
            static const std::vector<std::string> paths = {"organizational", "standard",
                                                           "impact_assessment"};
            std::string path = rng.pick(paths);
            add_field(it, "path", Value::ident(path));
            add_field(it, "statement", Value::str("value requirement"));
            evrs.emplace_back(it.id, path);
            items.push_back(std::move(it));
        }
    }

    for (const auto& [evr, path] : evrs) {
        if (path == "organizational") {
            int n_m = rng.range(0, 2);
            for (int i = 0; i < n_m; ++i) {
                SyntaxItem it = make(ItemKind::measure, fresh("MEA"));
                add_field(it, "implements", Value::ident(evr));
                add_field(it, "text", Value::str("organizational action"));
                items.push_back(std::move(it));
            }
            continue;
        }
        int n_t = rng.range(0, 2);
        for (int i = 0; i < n_t; ++i) {
            SyntaxItem it = make(ItemKind::threat, fresh("THR"));
            add_field(it, "against", Value::ident(evr));
            add_field(it, "text", Value::str("failure mode"));
            if (rng.chance(70)) {
                add_field(it, "likelihood",
                          Value::ident(std::string(
                              kLikelihoodNames[static_cast<std::size_t>(rng.range(0, 4))])));
                add_field(it, "damage",
                          Value::ident(std::string(
                              kDamageNames[static_cast<std::size_t>(rng.range(0, 4))])));
            }
            threats.push_back(it.id);
            items.push_back(std::move(it));
        }
    }

    for (const std::string& thr : threats) {
        if (!rng.chance(70)) continue;
        SyntaxItem it = make(ItemKind::control, fresh("CTL"));
        add_field(it, "mitigates", Value::list({Value::ident(thr)}));
        add_field(it, "text", Value::str("mitigation"));
        controls.push_back(it.id);
        items.push_back(std::move(it));
    }
    for (const std::string& ctl : controls) {
        int n_s = rng.range(0, 2);
        for (int i = 0; i < n_s; ++i) {
            SyntaxItem it = make(ItemKind::sysreq, fresh("SR"));
            add_field(it, "from", Value::ident(ctl));
            static const std::vector<std::string> statuses = {"roadmap", "implemented",
                                                              "validated"};
            add_field(it, "status", Value::ident(rng.pick(statuses)));
            items.push_back(std::move(it));
        }
    }
    if (rng.chance(30)) {
        SyntaxItem it = make(ItemKind::sysreq, fresh("SR"));
        add_field(it, "text", Value::str("functional requirement"));
        items.push_back(std::move(it));
    }
    if (!qualities.empty()) {
        int n_m = rng.range(0, 2);
        for (int i = 0; i < n_m; ++i) {
            SyntaxItem it = make(ItemKind::monitor, fresh("MON"));
            add_field(it, "observes", Value::ident(rng.pick(qualities).first));
            static const std::vector<std::string> outcomes = {"actualized", "not_actualized",
                                                              "unexpected"};
            add_field(it, "outcome", Value::ident(rng.pick(outcomes)));
            items.push_back(std::move(it));
        }
    }

    if (rng.chance(40)) {
        SyntaxItem it = make(ItemKind::ranking, "");
        std::vector<std::string> order = corevalues;
        rng.shuffle(order);
        if (rng.chance(30) && order.size() > 1) order.pop_back();  // numbering must cope
        Value v = Value::list({});
        for (const std::string& cv : order) v.items.push_back(Value::ident(cv));
        add_field(it, "order", v);
        items.push_back(std::move(it));
    }
    return items;
}

}  // namespace vbec::testgen
