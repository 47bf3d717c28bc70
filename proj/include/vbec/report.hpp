#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vbec/diagnostics.hpp"
#include "vbec/lifecycle.hpp"
#include "vbec/metrics.hpp"
#include "vbec/model.hpp"
#include "vbec/riskengine.hpp"
#include "vbec/tracegraph.hpp"

namespace vbec {

namespace detail {

// Ratios print with up to six decimals, round-half-even, trailing zeros
// trimmed.
inline double round6(double x) { return std::nearbyint(x * 1e6) / 1e6; }

inline std::string fmt_ratio(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", round6(x));
    std::string s = buf;
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (s.size() > 1 && s.back() == '.') s.pop_back();
    return s;
}

inline std::string number_or_dash(const std::map<std::string, ChainNumber>& numbers,
                                  const std::string& id) {
    auto it = numbers.find(id);
    return it == numbers.end() ? std::string("-") : it->second.str();
}

}  // namespace detail

// ===========================================================================
// Markdown report
// ===========================================================================

// The printed Value Register. Refuses to render when errors are present:
// a document generated from an invalid register is worse than none.
inline std::optional<std::string> emit_report(const Register& reg,
                                              const std::vector<RiskAssessment>& assessments,
                                              const MaturityMetrics& m,
                                              const std::vector<Diagnostic>& diagnostics) {
    if (has_errors(diagnostics)) return std::nullopt;

    std::map<std::string, ChainNumber> numbers = canonical_numbers(reg);
    std::string out;
    auto line = [&](const std::string& s = "") {
        out += s;
        out += '\n';
    };

    line(reg.project ? "# Value Register: " + reg.project->name : "# Value Register");

    line();
    line("## Project & Preconditions");
    line();
    if (reg.project) {
        const Project& p = *reg.project;
        line("- soi: " + p.soi);
        line("- value lead: " + (p.value_lead.empty() ? "none" : p.value_lead));
        line("- preconditions:");
        for (size_t i = 0; i < kPreconditionKeys.size(); ++i)
            line("  - " + std::string(kPreconditionKeys[i]) + ": " +
                 (p.preconditions[i] ? "yes" : "no"));
    } else {
        line("No project block declared.");
    }

    line();
    line("## Stakeholders & Partners");
    line();
    if (reg.stakeholders.empty() && reg.partners.empty()) line("None declared.");
    for (const Stakeholder& s : reg.stakeholders)
        line("- " + s.id + " (" + std::string(to_string(s.kind)) +
             (s.critical ? ", critical" : "") + "): " + s.name);
    for (const Partner& p : reg.partners)
        line("- partner " + p.id + " (system access: " + (p.system_access ? "yes" : "no") +
             "): " + p.name);

    line();
    line("## Elicitation Summary");
    line();
    for (const auto& [lens, count] : lens_coverage(reg))
        line("- " + (lens.custom ? "custom \"" + lens.name + "\"" : lens.name) + ": " +
             std::to_string(count));
    line("- statements: " + std::to_string(reg.statements.size()) + " (benefits " +
         std::to_string(m.benefit_count) + ", harms " + std::to_string(m.harm_count) + ")");

    line();
    line("## Core Value Clusters");
    if (reg.corevalues.empty()) {
        line();
        line("None declared.");
    }
    std::vector<const CoreValue*> clusters;
    for (const CoreValue& cv : reg.corevalues) clusters.push_back(&cv);
    std::sort(clusters.begin(), clusters.end(), [&](const CoreValue* a, const CoreValue* b) {
        return numbers.at(a->id) < numbers.at(b->id);
    });
    for (const CoreValue* cv : clusters) {
        line();
        line("### " + numbers.at(cv->id).str() + ". " + cv->name + " (" + cv->id + ")");
        line();
        line(cv->intrinsic ? "Intrinsic core value." : "Instrumental core value.");
        for (const Quality& q : reg.qualities) {
            if (q.core != cv->id) continue;
            std::string provenance = q.conceptual ? "conceptual: " + q.source_citation
                                                  : "stakeholder: " + q.source_ref;
            line("- " + detail::number_or_dash(numbers, q.id) + " " + q.name + " (" + q.id + ", " +
                 std::string(to_string(q.relation)) + "; " + provenance + ")");
            for (const Evr& e : reg.evrs) {
                bool covers = false;
                bool primary = !e.covers.empty() && e.covers.front().quality == q.id;
                for (const CoverTuple& t : e.covers)
                    if (t.quality == q.id) covers = true;
                if (!covers) continue;
                if (primary)
                    line("  - " + detail::number_or_dash(numbers, e.id) + " " + e.id + ": " +
                         e.statement);
                else
                    line("  - cross-reference: " + detail::number_or_dash(numbers, e.id) + " " +
                         e.id);
            }
        }
    }

    line();
    line("## Ranking");
    line();
    if (reg.ranking) {
        const Ranking& r = *reg.ranking;
        for (size_t i = 0; i < r.order.size(); ++i) {
            const CoreValue* cv = reg.find_corevalue(r.order[i]);
            line(std::to_string(i + 1) + ". " + r.order[i] + (cv ? ": " + cv->name : ""));
        }
        for (const RankConstraint& c : r.constraints)
            line("- constraint: " + c.cluster + " min_rank " + std::to_string(c.min_rank) + " (" +
                 c.reason + ")");
        std::string criteria;
        for (const std::string& c : r.criteria) criteria += (criteria.empty() ? "" : ", ") + c;
        line("- criteria acknowledged: " + (criteria.empty() ? "none" : criteria));
    } else {
        line("No ranking declared.");
    }

    line();
    line("## EVRs");
    if (reg.evrs.empty()) {
        line();
        line("None declared.");
    }
    for (const Evr& e : reg.evrs) {
        line();
        line("### " + detail::number_or_dash(numbers, e.id) + " " + e.id);
        line();
        line("- statement: " + e.statement);
        std::string covers;
        for (const CoverTuple& t : e.covers)
            covers += (covers.empty() ? "" : ", ") + t.core + "/" + t.quality;
        line("- covers: " + covers);
        line("- path: " + std::string(to_string(e.path)));
        line("- nature: " + std::string(to_string(e.nature)));
        line("- status: " + std::string(to_string(evr_status(reg, e.id))));
        if (!e.thresholds.empty()) {
            line("- thresholds:");
            for (const std::string& t : e.thresholds) line("  - " + t);
        }
    }

    line();
    line("## Risk Analysis");
    line();
    if (assessments.empty()) {
        line("No assessed threats.");
    } else {
        line("| threat | evr | score | band | obligation | satisfied |");
        line("|---|---|---|---|---|---|");
        for (const RiskAssessment& a : assessments)
            line("| " + detail::number_or_dash(numbers, a.threat) + " " + a.threat + " | " +
                 a.evr + " | " + (a.score ? std::to_string(*a.score) : "-") + " | " +
                 (a.band ? std::string(to_string(*a.band)) : "-") + " | " +
                 std::string(to_string(a.obligation)) + " | " + (a.satisfied ? "yes" : "no") +
                 " |");
    }
    line();
    line("Residual risks:");
    line();
    std::vector<ResidualEntry> residuals = residual_report(assessments);
    if (residuals.empty()) line("- none");
    for (const ResidualEntry& r : residuals)
        line("- " + r.threat + (r.score ? " (score " + std::to_string(*r.score) + ")" : "") +
             ": " + r.residual);

    line();
    line("## Measures");
    line();
    if (reg.measures.empty()) line("None declared.");
    for (const Measure& me : reg.measures)
        line("- " + detail::number_or_dash(numbers, me.id) + " " + me.id + " implements " +
             me.implements + ": " + me.text);

    line();
    line("## Roadmap");
    line();
    if (reg.sysreqs.empty()) line("None declared.");
    for (const SysReq& s : reg.sysreqs) {
        std::string origin = s.control_origin ? "from " + s.from : "functional";
        line("- " + detail::number_or_dash(numbers, s.id) + " " + s.id + " (" + origin + ", " +
             std::string(to_string(s.status)) + "): " + s.text);
    }

    line();
    line("## Monitoring");
    line();
    if (reg.monitors.empty()) line("None declared.");
    for (const Monitor& mo : reg.monitors) {
        std::string target = mo.free_text ? "\"" + mo.observes + "\"" : mo.observes;
        line("- " + mo.id + " observes " + target + ": " + std::string(to_string(mo.outcome)) +
             " (action: " + std::string(to_string(mo.action)) + ")" +
             (mo.note.empty() ? "" : " " + mo.note));
    }

    line();
    line("## Metrics");
    line();
    line("- values_per_stakeholder: " +
         (m.values_per_stakeholder_defined ? detail::fmt_ratio(m.values_per_stakeholder) : "n/a"));
    line("- harm_count: " + std::to_string(m.harm_count));
    line("- benefit_count: " + std::to_string(m.benefit_count));
    line("- evr_coverage: " + (m.evr_coverage_defined ? detail::fmt_ratio(m.evr_coverage) : "n/a"));
    line("- value_based_share: " +
         (m.value_based_share_defined ? detail::fmt_ratio(m.value_based_share) : "n/a"));
    line("- residual_count: " + std::to_string(m.residual_count));
    line("- reopened_count: " + std::to_string(m.reopened_count));

    return out;
}

// ===========================================================================
// JSON export
// ===========================================================================

namespace detail {

using json = nlohmann::json;  // std::map backing: object keys come out sorted

inline json lens_json(const Lens& l) { return json{{"custom", l.custom}, {"name", l.name}}; }

inline json entity_fields(const Register&, const Stakeholder& s) {
    return json{{"critical", s.critical}, {"kind", std::string(to_string(s.kind))}, {"name", s.name}};
}
inline json entity_fields(const Register&, const Partner& p) {
    return json{{"name", p.name}, {"system_access", p.system_access}};
}
inline json entity_fields(const Register&, const Statement& s) {
    return json{{"by", s.by},
                {"lens", lens_json(s.lens)},
                {"polarity", std::string(to_string(s.polarity))},
                {"text", s.text},
                {"value", s.value_name}};
}
inline json entity_fields(const Register&, const CoreValue& cv) {
    return json{{"intrinsic", cv.intrinsic}, {"name", cv.name}};
}
inline json entity_fields(const Register&, const Quality& q) {
    json source = q.conceptual ? json{{"citation", q.source_citation}}
                               : json{{"statement", q.source_ref}};
    return json{{"core", q.core},
                {"name", q.name},
                {"relation", std::string(to_string(q.relation))},
                {"source", source}};
}
inline json entity_fields(const Register&, const Evr& e) {
    json covers = json::array();
    for (const CoverTuple& t : e.covers)
        covers.push_back(json{{"core", t.core}, {"quality", t.quality}});
    return json{{"covers", covers},
                {"nature", std::string(to_string(e.nature))},
                {"path", std::string(to_string(e.path))},
                {"statement", e.statement},
                {"thresholds", e.thresholds}};
}
inline json entity_fields(const Register&, const Measure& m) {
    return json{{"implements", m.implements}, {"text", m.text}};
}
inline json entity_fields(const Register&, const Threat& t) {
    return json{{"accepted", t.accepted},
                {"against", t.against},
                {"damage", t.damage ? json(std::string(damage_name(*t.damage))) : json()},
                {"likelihood",
                 t.likelihood ? json(std::string(likelihood_name(*t.likelihood))) : json()},
                {"residual", t.residual.empty() ? json() : json(t.residual)},
                {"text", t.text}};
}
inline json entity_fields(const Register&, const Control& c) {
    return json{{"mitigates", c.mitigates}, {"text", c.text}};
}
inline json entity_fields(const Register&, const SysReq& s) {
    return json{{"from", s.control_origin ? json(s.from) : json()},
                {"origin", s.control_origin ? "control" : "functional"},
                {"status", std::string(to_string(s.status))},
                {"text", s.text}};
}
inline json entity_fields(const Register&, const Monitor& m) {
    json observes =
        m.free_text ? json{{"value", m.observes}} : json{{"quality", m.observes}};
    return json{{"action", std::string(to_string(m.action))},
                {"note", m.note},
                {"observes", observes},
                {"outcome", std::string(to_string(m.outcome))}};
}

inline json metrics_json(const MaturityMetrics& m) {
    return json{{"benefit_count", m.benefit_count},
                {"evr_coverage", round6(m.evr_coverage)},
                {"evr_coverage_defined", m.evr_coverage_defined},
                {"harm_count", m.harm_count},
                {"reopened_count", m.reopened_count},
                {"residual_count", m.residual_count},
                {"value_based_share", round6(m.value_based_share)},
                {"value_based_share_defined", m.value_based_share_defined},
                {"values_per_stakeholder", round6(m.values_per_stakeholder)},
                {"values_per_stakeholder_defined", m.values_per_stakeholder_defined}};
}

}  // namespace detail

// Machine-readable export. Unlike the Markdown report this never refuses:
// diagnostics ride along, and a register that failed linking exports with an
// empty entity map. Keys are sorted and output is byte-stable.
inline std::string emit_json(const Register* reg, const std::vector<Diagnostic>& diagnostics,
                             const std::vector<RiskAssessment>& assessments,
                             const MaturityMetrics& m) {
    using detail::json;

    json doc;
    json entities = json::object();
    if (reg) {
        std::map<std::string, ChainNumber> numbers = canonical_numbers(*reg);
        auto put = [&](const std::string& key, std::string_view kind, json fields) {
            json e{{"fields", std::move(fields)}, {"kind", std::string(kind)}};
            if (auto it = numbers.find(key); it != numbers.end())
                e["canonical_number"] = it->second.str();
            entities[key] = std::move(e);
        };
        if (reg->project) {
            json pre = json::object();
            for (size_t i = 0; i < kPreconditionKeys.size(); ++i)
                pre[std::string(kPreconditionKeys[i])] = reg->project->preconditions[i];
            entities["$project"] =
                json{{"fields",
                      json{{"name", reg->project->name},
                           {"preconditions", pre},
                           {"soi", reg->project->soi},
                           {"value_lead", reg->project->value_lead.empty()
                                              ? json()
                                              : json(reg->project->value_lead)}}},
                     {"kind", "project"}};
        }
        entities["$config"] = json{
            {"fields", json{{"low_max", reg->config.low_max}, {"medium_max", reg->config.medium_max}}},
            {"kind", "config"}};
        if (reg->ranking) {
            json constraints = json::array();
            for (const RankConstraint& c : reg->ranking->constraints)
                constraints.push_back(json{
                    {"cluster", c.cluster}, {"min_rank", c.min_rank}, {"reason", c.reason}});
            entities["$ranking"] = json{{"fields", json{{"constraints", constraints},
                                                        {"criteria", reg->ranking->criteria},
                                                        {"order", reg->ranking->order}}},
                                        {"kind", "ranking"}};
        }
        for (const Stakeholder& x : reg->stakeholders)
            put(x.id, "stakeholder", detail::entity_fields(*reg, x));
        for (const Partner& x : reg->partners) put(x.id, "partner", detail::entity_fields(*reg, x));
        for (const Statement& x : reg->statements)
            put(x.id, "statement", detail::entity_fields(*reg, x));
        for (const CoreValue& x : reg->corevalues)
            put(x.id, "corevalue", detail::entity_fields(*reg, x));
        for (const Quality& x : reg->qualities) put(x.id, "quality", detail::entity_fields(*reg, x));
        for (const Evr& x : reg->evrs) {
            put(x.id, "evr", detail::entity_fields(*reg, x));
            entities[x.id]["status"] = std::string(to_string(evr_status(*reg, x.id)));
        }
        for (const Measure& x : reg->measures) put(x.id, "measure", detail::entity_fields(*reg, x));
        for (const Threat& x : reg->threats) put(x.id, "threat", detail::entity_fields(*reg, x));
        for (const Control& x : reg->controls) put(x.id, "control", detail::entity_fields(*reg, x));
        for (const SysReq& x : reg->sysreqs) put(x.id, "sysreq", detail::entity_fields(*reg, x));
        for (const Monitor& x : reg->monitors) put(x.id, "monitor", detail::entity_fields(*reg, x));
    }
    doc["entities"] = std::move(entities);

    json diags = json::array();
    for (const Diagnostic& d : diagnostics) {
        json j{{"code", d.code},
               {"column", d.span.column},
               {"file", d.span.file},
               {"line", d.span.line},
               {"message", d.message},
               {"severity", d.severity == Severity::error ? "error" : "warning"}};
        if (!d.related.empty()) j["related"] = d.related;
        diags.push_back(std::move(j));
    }
    doc["diagnostics"] = std::move(diags);

    json rows = json::array();
    for (const RiskAssessment& a : assessments)
        rows.push_back(json{{"accepted", a.accepted},
                            {"band", a.band ? json(std::string(to_string(*a.band))) : json()},
                            {"evr", a.evr},
                            {"obligation", std::string(to_string(a.obligation))},
                            {"path", std::string(to_string(a.path))},
                            {"residual", a.residual ? json(*a.residual) : json()},
                            {"satisfied", a.satisfied},
                            {"score", a.score ? json(*a.score) : json()},
                            {"threat", a.threat}});
    doc["assessments"] = std::move(rows);

    doc["metrics"] = detail::metrics_json(m);
    return doc.dump(2) + "\n";
}

}  // namespace vbec
