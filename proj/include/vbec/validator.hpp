#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "vbec/diagnostics.hpp"
#include "vbec/model.hpp"
#include "vbec/riskengine.hpp"
#include "vbec/tracegraph.hpp"

namespace vbec {

// Semantic checks over a linked register. Reference resolution (E001/E002)
// already happened at link time and syntax shape (E013..E015) at parse time;
// everything here is about the rules of the method itself.
//
//   E003 accepted threat without a residual note
//   E004 covers tuple pairing a quality with the wrong core value
//   E005 traceability cycle (delegated to the trace graph)
//   E006 path III threat missing likelihood or damage
//   E007 threat with no mitigating control and not accepted
//   E008 ranking omits or repeats a declared core value
//   E009 constrained core value ranked below its minimum rank
//   E010 path I EVR without a measure
//   E011 accepted threat in the high risk band
//   E012 ranking that does not acknowledge all seven criteria
//   W001 core value without qualities
//   W002 quality no EVR covers
//   W003 stakeholder without statements
//   W004 canonical lens unused (once elicitation has begun)
//   W005 organizational precondition answered no
//   W007 core value lacking a conceptual-analysis quality
//   W008 partner that grants no system access
inline std::vector<Diagnostic> validate(const Register& reg) {
    std::vector<Diagnostic> out;
    auto emit = [&](const char* code, std::string message, SourceSpan span,
                    std::string related = {}) {
        out.push_back(
            make_diagnostic(code, std::move(message), std::move(span), std::move(related)));
    };

    for (const Threat& t : reg.threats) {
        if (t.accepted && t.residual.empty())
            emit("E003", "accepted threat '" + t.id + "' documents no residual risk", t.span,
                 t.id);

        bool mitigated = detail::has_mitigating_control(reg, t.id);
        if (!mitigated && !t.accepted)
            emit("E007", "threat '" + t.id + "' has no mitigating control and is not accepted",
                 t.span, t.id);

        if (const Evr* evr = reg.find_evr(t.against)) {
            if (evr->path == Path::impact_assessment && (!t.likelihood || !t.damage)) {
                std::string missing = !t.likelihood && !t.damage ? "likelihood and damage"
                                      : !t.likelihood            ? "likelihood"
                                                                 : "damage";
                emit("E006",
                     "threat '" + t.id + "' against path III evr '" + evr->id + "' is missing " +
                         missing,
                     t.span, t.id);
            }
        }
        if (t.accepted && t.likelihood && t.damage &&
            risk_score(*t.likelihood, *t.damage, reg.config).second == RiskBand::high)
            emit("E011", "threat '" + t.id + "' is accepted despite a high risk band", t.span,
                 t.id);
    }

    for (const Evr& e : reg.evrs) {
        for (const CoverTuple& t : e.covers) {
            const Quality* q = reg.find_quality(t.quality);
            if (q && q->core != t.core)
                emit("E004",
                     "covers tuple " + t.core + "/" + t.quality + ": quality '" + t.quality +
                         "' belongs to corevalue '" + q->core + "'",
                     e.covers_span, e.id);
        }
        if (e.path == Path::organizational) {
            bool measured = false;
            for (const Measure& m : reg.measures)
                if (m.implements == e.id) measured = true;
            if (!measured)
                emit("E010", "path I evr '" + e.id + "' has no implementing measure", e.span,
                     e.id);
        }
    }

    {
        TraceBuildResult built = trace_build(reg);
        for (Diagnostic& d : built.diagnostics) out.push_back(std::move(d));
    }

    if (reg.ranking) {
        const Ranking& r = *reg.ranking;
        for (const CoreValue& cv : reg.corevalues) {
            long long n = std::count(r.order.begin(), r.order.end(), cv.id);
            if (n == 0)
                emit("E008", "ranking omits corevalue '" + cv.id + "'", r.order_span, cv.id);
            else if (n > 1)
                emit("E008",
                     "ranking lists corevalue '" + cv.id + "' " + std::to_string(n) + " times",
                     r.order_span, cv.id);
        }
        for (const RankConstraint& c : r.constraints) {
            auto it = std::find(r.order.begin(), r.order.end(), c.cluster);
            if (it == r.order.end()) continue;  // E008 already reports the omission
            long long rank = it - r.order.begin() + 1;
            if (rank > c.min_rank)
                emit("E009",
                     "corevalue '" + c.cluster + "' is ranked " + std::to_string(rank) +
                         ", below its required rank " + std::to_string(c.min_rank) + " (" +
                         c.reason + ")",
                     c.span, c.cluster);
        }
        std::set<std::string> acknowledged(r.criteria.begin(), r.criteria.end());
        if (acknowledged.size() != kCriteria.size())
            emit("E012",
                 "ranking acknowledges " + std::to_string(acknowledged.size()) +
                     " of the seven prioritization criteria",
                 r.span);
    }

    for (const CoreValue& cv : reg.corevalues) {
        int qualities = 0;
        int conceptual = 0;
        for (const Quality& q : reg.qualities) {
            if (q.core != cv.id) continue;
            ++qualities;
            if (q.conceptual) ++conceptual;
        }
        if (qualities == 0)
            emit("W001", "corevalue '" + cv.id + "' has no qualities", cv.span, cv.id);
        else if (conceptual == 0)
            emit("W007", "corevalue '" + cv.id + "' has no conceptual-analysis quality", cv.span,
                 cv.id);
    }

    for (const Quality& q : reg.qualities) {
        bool covered = false;
        for (const Evr& e : reg.evrs)
            for (const CoverTuple& t : e.covers)
                if (t.quality == q.id) covered = true;
        if (!covered) emit("W002", "no evr covers quality '" + q.id + "'", q.span, q.id);
    }

    for (const Stakeholder& s : reg.stakeholders) {
        bool spoke = false;
        for (const Statement& st : reg.statements)
            if (st.by == s.id) spoke = true;
        if (!spoke) emit("W003", "stakeholder '" + s.id + "' has no statements", s.span, s.id);
    }

    if (!reg.statements.empty()) {
        std::map<Lens, int> lenses = lens_coverage(reg);
        for (std::string_view l : kCanonicalLenses)
            if (lenses.at(Lens{std::string(l), false}) == 0)
                emit("W004", "no statements elicited through the " + std::string(l) + " lens",
                     reg.statements.front().span);
    }

    if (reg.project)
        for (size_t i = 0; i < kPreconditionKeys.size(); ++i)
            if (!reg.project->preconditions[i])
                emit("W005",
                     "organizational precondition '" + std::string(kPreconditionKeys[i]) +
                         "' is answered no",
                     reg.project->span);

    for (const Partner& p : reg.partners)
        if (!p.system_access)
            emit("W008", "partner '" + p.id + "' grants no system access", p.span, p.id);

    sort_diagnostics(out);
    return out;
}

}  // namespace vbec
