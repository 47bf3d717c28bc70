#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vbec/diagnostics.hpp"
#include "vbec/syntax.hpp"

namespace vbec {

// ===========================================================================
// Domain enums
// ===========================================================================

enum class StakeholderKind { direct, indirect };
enum class Polarity { benefit, harm };
enum class Relation { instrumental, undermining };
enum class Path { organizational, standard, impact_assessment };  // I, II, III
enum class Nature { organizational, technical, mixed };
enum class SysReqStatus { roadmap, implemented, validated };
enum class MonitorOutcome { actualized, not_actualized, unexpected };
enum class MonitorAction { none, reopen };
enum class EvrState { draft, risk_analyzed, implemented, validated, reopened };

inline std::string_view to_string(StakeholderKind k) {
    return k == StakeholderKind::direct ? "direct" : "indirect";
}
inline std::string_view to_string(Polarity p) { return p == Polarity::benefit ? "benefit" : "harm"; }
inline std::string_view to_string(Relation r) {
    return r == Relation::instrumental ? "instrumental" : "undermining";
}
inline std::string_view to_string(Path p) {
    switch (p) {
        case Path::organizational: return "organizational";
        case Path::standard: return "standard";
        default: return "impact_assessment";
    }
}
inline std::string_view to_string(Nature n) {
    switch (n) {
        case Nature::organizational: return "organizational";
        case Nature::technical: return "technical";
        default: return "mixed";
    }
}
inline std::string_view to_string(SysReqStatus s) {
    switch (s) {
        case SysReqStatus::roadmap: return "roadmap";
        case SysReqStatus::implemented: return "implemented";
        default: return "validated";
    }
}
inline std::string_view to_string(MonitorOutcome o) {
    switch (o) {
        case MonitorOutcome::actualized: return "actualized";
        case MonitorOutcome::not_actualized: return "not_actualized";
        default: return "unexpected";
    }
}
inline std::string_view to_string(MonitorAction a) {
    return a == MonitorAction::none ? "none" : "reopen";
}
inline std::string_view to_string(EvrState s) {
    switch (s) {
        case EvrState::draft: return "draft";
        case EvrState::risk_analyzed: return "risk_analyzed";
        case EvrState::implemented: return "implemented";
        case EvrState::validated: return "validated";
        default: return "reopened";
    }
}

// Likelihood and damage levels are 1..5; names come from the DSL enums.
inline std::string_view likelihood_name(int level) { return kLikelihoodNames[level - 1]; }
inline std::string_view damage_name(int level) { return kDamageNames[level - 1]; }

inline std::optional<int> likelihood_level(std::string_view name) {
    for (int i = 0; i < 5; ++i)
        if (kLikelihoodNames[i] == name) return i + 1;
    return std::nullopt;
}
inline std::optional<int> damage_level(std::string_view name) {
    for (int i = 0; i < 5; ++i)
        if (kDamageNames[i] == name) return i + 1;
    return std::nullopt;
}

// An elicitation lens: one of the three canonical ones, or a named custom
// lens. Ordering puts the canonical three first, then customs by name.
struct Lens {
    std::string name = "utilitarian";
    bool custom = false;

    bool operator==(const Lens&) const = default;
    bool operator<(const Lens& o) const {
        if (custom != o.custom) return !custom;
        if (!custom) return canonical_rank(name) < canonical_rank(o.name);
        return name < o.name;
    }

    static int canonical_rank(std::string_view n) {
        for (int i = 0; i < 3; ++i)
            if (kCanonicalLenses[i] == n) return i;
        return 3;
    }
};

// ===========================================================================
// Entities
// ===========================================================================

struct Project {
    std::string name;
    std::string soi;
    std::string value_lead;  // empty when not named
    std::array<bool, 5> preconditions{};  // indexed like kPreconditionKeys
    SourceSpan span;

    bool precondition(std::string_view key) const {
        for (size_t i = 0; i < kPreconditionKeys.size(); ++i)
            if (kPreconditionKeys[i] == key) return preconditions[i];
        return false;
    }
};

struct RiskConfig {
    long long low_max = 4;
    long long medium_max = 14;
};

struct Stakeholder {
    std::string id;
    std::string name;
    StakeholderKind kind = StakeholderKind::direct;
    bool critical = false;
    SourceSpan span;
};

struct Partner {
    std::string id;
    std::string name;
    bool system_access = false;
    SourceSpan span;
};

struct Statement {
    std::string id;
    std::string by;  // stakeholder id
    Lens lens;
    Polarity polarity = Polarity::benefit;
    std::string value_name;
    std::string text;
    SourceSpan span;
};

struct CoreValue {
    std::string id;
    std::string name;
    bool intrinsic = true;
    SourceSpan span;
};

struct Quality {
    std::string id;
    std::string name;
    std::string core;  // cluster id
    Relation relation = Relation::instrumental;
    bool conceptual = false;     // source was a citation, not a statement
    std::string source_ref;      // statement id when stakeholder-sourced
    std::string source_citation; // citation text when conceptual
    SourceSpan span;
};

struct RankConstraint {
    std::string cluster;
    long long min_rank = 1;
    std::string reason;
    SourceSpan span;
};

struct Ranking {
    std::vector<std::string> criteria;  // acknowledged subset of c1..c7
    std::vector<std::string> order;     // cluster ids, rank 1 first
    std::vector<RankConstraint> constraints;
    SourceSpan span;
    SourceSpan order_span;
};

struct CoverTuple {
    std::string core;
    std::string quality;
};

struct Evr {
    std::string id;
    std::vector<CoverTuple> covers;
    Path path = Path::standard;
    Nature nature = Nature::technical;
    std::string statement;
    std::vector<std::string> thresholds;
    SourceSpan span;
    SourceSpan covers_span;
};

struct Measure {
    std::string id;
    std::string implements;  // evr id
    std::string text;
    SourceSpan span;
};

struct Threat {
    std::string id;
    std::string against;  // evr id
    std::string text;
    std::optional<int> likelihood;  // 1..5
    std::optional<int> damage;      // 1..5
    bool accepted = false;
    std::string residual;  // empty when undocumented
    SourceSpan span;
};

struct Control {
    std::string id;
    std::vector<std::string> mitigates;  // threat ids
    std::string text;
    SourceSpan span;
};

struct SysReq {
    std::string id;
    bool control_origin = false;
    std::string from;  // control id when control_origin
    SysReqStatus status = SysReqStatus::roadmap;
    std::string text;
    SourceSpan span;
};

struct Monitor {
    std::string id;
    bool free_text = false;  // observes carries a value name, not a quality id
    std::string observes;
    MonitorOutcome outcome = MonitorOutcome::actualized;
    std::string note;
    MonitorAction action = MonitorAction::none;
    SourceSpan span;
};

// ===========================================================================
// Register
// ===========================================================================

// The fully linked model of one project's register. Immutable after link();
// all vectors keep declaration order, which canonical numbering relies on.
struct Register {
    std::optional<Project> project;
    RiskConfig config;
    bool config_explicit = false;  // a `config risk` block was declared
    std::optional<Ranking> ranking;
    std::vector<Stakeholder> stakeholders;
    std::vector<Partner> partners;
    std::vector<Statement> statements;
    std::vector<CoreValue> corevalues;
    std::vector<Quality> qualities;
    std::vector<Evr> evrs;
    std::vector<Measure> measures;
    std::vector<Threat> threats;
    std::vector<Control> controls;
    std::vector<SysReq> sysreqs;
    std::vector<Monitor> monitors;

    const Stakeholder* find_stakeholder(std::string_view id) const { return find(stakeholders, id); }
    const Partner* find_partner(std::string_view id) const { return find(partners, id); }
    const Statement* find_statement(std::string_view id) const { return find(statements, id); }
    const CoreValue* find_corevalue(std::string_view id) const { return find(corevalues, id); }
    const Quality* find_quality(std::string_view id) const { return find(qualities, id); }
    const Evr* find_evr(std::string_view id) const { return find(evrs, id); }
    const Measure* find_measure(std::string_view id) const { return find(measures, id); }
    const Threat* find_threat(std::string_view id) const { return find(threats, id); }
    const Control* find_control(std::string_view id) const { return find(controls, id); }
    const SysReq* find_sysreq(std::string_view id) const { return find(sysreqs, id); }
    const Monitor* find_monitor(std::string_view id) const { return find(monitors, id); }

  private:
    template <class T>
    static const T* find(const std::vector<T>& xs, std::string_view id) {
        for (const T& x : xs)
            if (x.id == id) return &x;
        return nullptr;
    }
};

struct LinkResult {
    std::optional<Register> reg;  // engaged iff diagnostics is empty
    std::vector<Diagnostic> diagnostics;
};

// ===========================================================================
// Linking
// ===========================================================================

namespace detail {

class Linker {
  public:
    explicit Linker(const std::vector<SyntaxItem>& items) : items_(items) {}

    LinkResult run() {
        for (const SyntaxItem& item : items_) build(item);
        resolve();
        LinkResult result;
        result.diagnostics = std::move(diags_);
        if (result.diagnostics.empty()) result.reg = std::move(reg_);
        return result;
    }

  private:
    // --- field access; items are schema-valid so required keys exist -------

    static const Value& val(const SyntaxItem& item, std::string_view key) {
        return item.find(key)->value;
    }
    static std::string str(const SyntaxItem& item, std::string_view key) {
        return val(item, key).text;
    }
    static std::string opt_str(const SyntaxItem& item, std::string_view key) {
        const Field* f = item.find(key);
        return f ? f->value.text : std::string();
    }
    static bool flag(const SyntaxItem& item, std::string_view key, bool fallback) {
        const Field* f = item.find(key);
        return f ? f->value.flag : fallback;
    }
    static std::string name_of(const SyntaxItem& item) {
        return item.has_label ? item.label : item.id;
    }

    void error(std::string code, std::string message, SourceSpan span, std::string related = {}) {
        diags_.push_back(
            make_diagnostic(std::move(code), std::move(message), std::move(span), std::move(related)));
    }

    // Global id namespace over the eleven id-bearing kinds.
    bool claim_id(const SyntaxItem& item) {
        auto [it, inserted] = ids_.try_emplace(item.id, item.kind);
        if (!inserted) {
            error("E002",
                  "duplicate id '" + item.id + "' (already declared as " +
                      std::string(item_kind_name(it->second)) + ")",
                  item.span, item.id);
            return false;
        }
        return true;
    }

    // --- first pass: materialize entities with defaults --------------------

    void build(const SyntaxItem& item) {
        switch (item.kind) {
            case ItemKind::project: {
                if (reg_.project) {
                    error("E002", "duplicate project block", item.span);
                    return;
                }
                Project p;
                p.name = item.label;
                p.soi = str(item, "soi");
                p.value_lead = opt_str(item, "value_lead");
                for (size_t i = 0; i < kPreconditionKeys.size(); ++i)
                    p.preconditions[i] =
                        val(item, "precondition " + std::string(kPreconditionKeys[i])).flag;
                p.span = item.span;
                reg_.project = std::move(p);
                break;
            }
            case ItemKind::config: {
                if (!configs_.insert(item.id).second) {
                    error("E002",
                          item.id.empty() ? "duplicate config block"
                                          : "duplicate config " + item.id + " block",
                          item.span);
                    return;
                }
                if (item.id == "risk") {
                    reg_.config.low_max = val(item, "low_max").number;
                    reg_.config.medium_max = val(item, "medium_max").number;
                    reg_.config_explicit = true;
                }
                break;
            }
            case ItemKind::stakeholder: {
                if (!claim_id(item)) return;
                Stakeholder s;
                s.id = item.id;
                s.name = name_of(item);
                s.kind = str(item, "kind") == "direct" ? StakeholderKind::direct
                                                       : StakeholderKind::indirect;
                s.critical = flag(item, "critical", false);
                s.span = item.span;
                reg_.stakeholders.push_back(std::move(s));
                break;
            }
            case ItemKind::partner: {
                if (!claim_id(item)) return;
                Partner p;
                p.id = item.id;
                p.name = name_of(item);
                p.system_access = flag(item, "system_access", false);
                p.span = item.span;
                reg_.partners.push_back(std::move(p));
                break;
            }
            case ItemKind::statement: {
                if (!claim_id(item)) return;
                Statement s;
                s.id = item.id;
                s.by = str(item, "by");
                const Value& lens = val(item, "lens");
                s.lens = Lens{lens.text, lens.kind == Value::Kind::string};
                s.polarity = str(item, "polarity") == "benefit" ? Polarity::benefit : Polarity::harm;
                s.value_name = str(item, "value");
                s.text = str(item, "text");
                s.span = item.span;
                reg_.statements.push_back(std::move(s));
                break;
            }
            case ItemKind::corevalue: {
                if (!claim_id(item)) return;
                CoreValue cv;
                cv.id = item.id;
                cv.name = name_of(item);
                cv.intrinsic = flag(item, "intrinsic", true);
                cv.span = item.span;
                reg_.corevalues.push_back(std::move(cv));
                break;
            }
            case ItemKind::quality: {
                if (!claim_id(item)) return;
                Quality q;
                q.id = item.id;
                q.name = name_of(item);
                q.core = str(item, "core");
                if (const Field* rel = item.find("relation"))
                    q.relation = rel->value.text == "undermining" ? Relation::undermining
                                                                  : Relation::instrumental;
                const Value& source = val(item, "source");
                if (source.kind == Value::Kind::string) {
                    q.conceptual = true;
                    q.source_citation = source.text;
                } else {
                    q.source_ref = source.text;
                }
                q.span = item.span;
                reg_.qualities.push_back(std::move(q));
                break;
            }
            case ItemKind::ranking: {
                if (reg_.ranking) {
                    error("E002", "duplicate ranking block", item.span);
                    return;
                }
                Ranking r;
                if (const Field* crit = item.find("criteria"))
                    for (const Value& e : crit->value.items) r.criteria.push_back(e.text);
                const Field* order = item.find("order");
                for (const Value& e : order->value.items) r.order.push_back(e.text);
                r.order_span = order->span;
                for (const Field& f : item.fields)
                    if (f.key == "constraint")
                        r.constraints.push_back(RankConstraint{f.value.constraint_cluster,
                                                               f.value.constraint_min_rank,
                                                               f.value.constraint_reason, f.span});
                r.span = item.span;
                reg_.ranking = std::move(r);
                break;
            }
            case ItemKind::evr: {
                if (!claim_id(item)) return;
                Evr e;
                e.id = item.id;
                const Field* covers = item.find("covers");
                for (const Value& t : covers->value.items)
                    e.covers.push_back(CoverTuple{t.tuple_first, t.tuple_second});
                e.covers_span = covers->span;
                std::string path = str(item, "path");
                e.path = path == "organizational" ? Path::organizational
                         : path == "standard"     ? Path::standard
                                                  : Path::impact_assessment;
                if (const Field* nature = item.find("nature"))
                    e.nature = nature->value.text == "organizational" ? Nature::organizational
                               : nature->value.text == "mixed"        ? Nature::mixed
                                                                      : Nature::technical;
                else
                    e.nature = e.path == Path::organizational ? Nature::organizational
                                                              : Nature::technical;
                e.statement = str(item, "statement");
                if (const Field* th = item.find("thresholds"))
                    for (const Value& t : th->value.items) e.thresholds.push_back(t.text);
                e.span = item.span;
                reg_.evrs.push_back(std::move(e));
                break;
            }
            case ItemKind::measure: {
                if (!claim_id(item)) return;
                reg_.measures.push_back(
                    Measure{item.id, str(item, "implements"), str(item, "text"), item.span});
                break;
            }
            case ItemKind::threat: {
                if (!claim_id(item)) return;
                Threat t;
                t.id = item.id;
                t.against = str(item, "against");
                t.text = str(item, "text");
                if (const Field* l = item.find("likelihood"))
                    t.likelihood = likelihood_level(l->value.text);
                if (const Field* d = item.find("damage")) t.damage = damage_level(d->value.text);
                t.accepted = flag(item, "accepted", false);
                t.residual = opt_str(item, "residual");
                t.span = item.span;
                reg_.threats.push_back(std::move(t));
                break;
            }
            case ItemKind::control: {
                if (!claim_id(item)) return;
                Control c;
                c.id = item.id;
                for (const Value& e : val(item, "mitigates").items) c.mitigates.push_back(e.text);
                c.text = str(item, "text");
                c.span = item.span;
                reg_.controls.push_back(std::move(c));
                break;
            }
            case ItemKind::sysreq: {
                if (!claim_id(item)) return;
                SysReq s;
                s.id = item.id;
                if (const Field* from = item.find("from")) {
                    s.control_origin = true;
                    s.from = from->value.text;
                }
                if (const Field* st = item.find("status"))
                    s.status = st->value.text == "implemented" ? SysReqStatus::implemented
                               : st->value.text == "validated" ? SysReqStatus::validated
                                                               : SysReqStatus::roadmap;
                s.text = opt_str(item, "text");
                s.span = item.span;
                reg_.sysreqs.push_back(std::move(s));
                break;
            }
            case ItemKind::monitor: {
                if (!claim_id(item)) return;
                Monitor m;
                m.id = item.id;
                const Value& obs = val(item, "observes");
                m.free_text = obs.kind == Value::Kind::string;
                m.observes = obs.text;
                std::string outcome = str(item, "outcome");
                m.outcome = outcome == "actualized"       ? MonitorOutcome::actualized
                            : outcome == "not_actualized" ? MonitorOutcome::not_actualized
                                                          : MonitorOutcome::unexpected;
                m.note = opt_str(item, "note");
                if (const Field* a = item.find("action"))
                    m.action = a->value.text == "reopen" ? MonitorAction::reopen : MonitorAction::none;
                m.span = item.span;
                reg_.monitors.push_back(std::move(m));
                break;
            }
        }
    }

    // --- second pass: every reference must name a declared entity ----------

    SourceSpan field_span(std::string_view owner_id, ItemKind kind, std::string_view key) const {
        for (const SyntaxItem& item : items_)
            if (item.kind == kind && item.id == owner_id)
                if (const Field* f = item.find(key)) return f->span;
        return SourceSpan{};
    }

    template <class Finder>
    void check_ref(const Finder& find, std::string_view target_kind, const std::string& ref,
                   SourceSpan span, const std::string& referrer) {
        if (find(ref)) return;
        error("E001", "reference to unknown " + std::string(target_kind) + " '" + ref + "'",
              std::move(span), referrer);
    }

    void resolve() {
        const Register& r = reg_;
        auto stakeholder = [&](const std::string& id) { return r.find_stakeholder(id); };
        auto statement = [&](const std::string& id) { return r.find_statement(id); };
        auto corevalue = [&](const std::string& id) { return r.find_corevalue(id); };
        auto quality = [&](const std::string& id) { return r.find_quality(id); };
        auto evr = [&](const std::string& id) { return r.find_evr(id); };
        auto threat = [&](const std::string& id) { return r.find_threat(id); };
        auto control = [&](const std::string& id) { return r.find_control(id); };

        for (const Statement& s : r.statements)
            check_ref(stakeholder, "stakeholder", s.by,
                      field_span(s.id, ItemKind::statement, "by"), s.id);
        for (const Quality& q : r.qualities) {
            check_ref(corevalue, "corevalue", q.core, field_span(q.id, ItemKind::quality, "core"),
                      q.id);
            if (!q.conceptual)
                check_ref(statement, "statement", q.source_ref,
                          field_span(q.id, ItemKind::quality, "source"), q.id);
        }
        if (r.ranking) {
            for (const std::string& id : r.ranking->order)
                check_ref(corevalue, "corevalue", id, r.ranking->order_span, "");
            for (const RankConstraint& c : r.ranking->constraints)
                check_ref(corevalue, "corevalue", c.cluster, c.span, "");
        }
        for (const Evr& e : r.evrs)
            for (const CoverTuple& t : e.covers) {
                check_ref(corevalue, "corevalue", t.core, e.covers_span, e.id);
                check_ref(quality, "quality", t.quality, e.covers_span, e.id);
            }
        for (const Measure& m : r.measures)
            check_ref(evr, "evr", m.implements, field_span(m.id, ItemKind::measure, "implements"),
                      m.id);
        for (const Threat& t : r.threats)
            check_ref(evr, "evr", t.against, field_span(t.id, ItemKind::threat, "against"), t.id);
        for (const Control& c : r.controls)
            for (const std::string& id : c.mitigates)
                check_ref(threat, "threat", id, field_span(c.id, ItemKind::control, "mitigates"),
                          c.id);
        for (const SysReq& s : r.sysreqs)
            if (s.control_origin)
                check_ref(control, "control", s.from, field_span(s.id, ItemKind::sysreq, "from"),
                          s.id);
        for (const Monitor& m : r.monitors)
            if (!m.free_text)
                check_ref(quality, "quality", m.observes,
                          field_span(m.id, ItemKind::monitor, "observes"), m.id);

        // control-origin sysreq text defaults to its control's text
        for (SysReq& s : reg_.sysreqs)
            if (s.control_origin && s.text.empty())
                if (const Control* c = reg_.find_control(s.from)) s.text = c->text;
    }

    const std::vector<SyntaxItem>& items_;
    Register reg_;
    std::vector<Diagnostic> diags_;
    std::map<std::string, ItemKind> ids_;
    std::set<std::string> configs_;
};

}  // namespace detail

// Resolves parsed items into a Register. Total: returns either a register or
// at least one diagnostic, never both and never a partially linked model.
inline LinkResult link(const std::vector<SyntaxItem>& items) {
    return detail::Linker(items).run();
}

// Statement counts per lens. The three canonical lenses are always present
// (with zero counts if unused); custom lenses appear when cited.
inline std::map<Lens, int> lens_coverage(const Register& reg) {
    std::map<Lens, int> counts;
    for (std::string_view l : kCanonicalLenses) counts[Lens{std::string(l), false}] = 0;
    for (const Statement& s : reg.statements) ++counts[s.lens];
    return counts;
}

}  // namespace vbec
