#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vbec/model.hpp"
#include "vbec/tracegraph.hpp"

namespace vbec {

enum class RiskBand { low, medium, high };
enum class Obligation { control_required, control_or_accept, acceptance_ok };

inline std::string_view to_string(RiskBand b) {
    switch (b) {
        case RiskBand::low: return "low";
        case RiskBand::medium: return "medium";
        default: return "high";
    }
}
inline std::string_view to_string(Obligation o) {
    switch (o) {
        case Obligation::control_required: return "control_required";
        case Obligation::control_or_accept: return "control_or_accept";
        default: return "acceptance_ok";
    }
}

inline void check_config(const RiskConfig& config) {
    if (config.low_max < 1 || config.low_max >= config.medium_max || config.medium_max >= 25)
        throw std::invalid_argument("risk config requires 1 <= low_max < medium_max < 25");
}

// score = likelihood x damage on the 5x5 matrix; the band cut-offs come from
// the register's risk config.
inline std::pair<int, RiskBand> risk_score(int likelihood, int damage, const RiskConfig& config) {
    if (likelihood < 1 || likelihood > 5) throw std::out_of_range("likelihood level out of range");
    if (damage < 1 || damage > 5) throw std::out_of_range("damage level out of range");
    check_config(config);
    int score = likelihood * damage;
    RiskBand band = score <= config.low_max      ? RiskBand::low
                    : score <= config.medium_max ? RiskBand::medium
                                                 : RiskBand::high;
    return {score, band};
}

struct RiskAssessment {
    std::string threat;
    std::string evr;
    Path path = Path::standard;
    std::optional<int> score;      // engaged when both levels are declared
    std::optional<RiskBand> band;
    Obligation obligation = Obligation::control_or_accept;
    bool satisfied = false;
    bool accepted = false;
    std::optional<std::string> residual;  // accepted threats with a documented note
};

namespace detail {

inline bool has_mitigating_control(const Register& reg, std::string_view threat_id) {
    for (const Control& c : reg.controls)
        for (const std::string& id : c.mitigates)
            if (id == threat_id) return true;
    return false;
}

inline Obligation obligation_for(Path path, std::optional<RiskBand> band) {
    if (path != Path::impact_assessment) return Obligation::control_or_accept;
    if (!band) return Obligation::control_required;  // unscored path III threat: be conservative
    switch (*band) {
        case RiskBand::high: return Obligation::control_required;
        case RiskBand::medium: return Obligation::control_or_accept;
        default: return Obligation::acceptance_ok;
    }
}

inline bool obligation_satisfied(Obligation o, bool has_control, bool accepted) {
    return o == Obligation::control_required ? has_control : has_control || accepted;
}

}  // namespace detail

// Whether a threat's path obligation is met: a control for control_required,
// a control or documented acceptance otherwise. Shared by assess() and the
// EVR lifecycle so the two never disagree.
inline bool threat_obligation_satisfied(const Register& reg, const Threat& t, Path path,
                                        const RiskConfig& config) {
    std::optional<RiskBand> band;
    if (t.likelihood && t.damage) band = risk_score(*t.likelihood, *t.damage, config).second;
    return detail::obligation_satisfied(detail::obligation_for(path, band),
                                        detail::has_mitigating_control(reg, t.id), t.accepted);
}

// Path III threats are always assessed (unscored ones conservatively); path
// II threats only when both levels are declared; path I produces no
// assessments. Rows come out in canonical-number order.
inline std::vector<RiskAssessment> assess(const Register& reg, const RiskConfig& config) {
    check_config(config);
    std::map<std::string, ChainNumber> numbers = canonical_numbers(reg);

    std::vector<std::pair<std::vector<long long>, RiskAssessment>> rows;
    long long decl = 0;
    for (const Threat& t : reg.threats) {
        ++decl;
        const Evr* evr = reg.find_evr(t.against);
        if (!evr || evr->path == Path::organizational) continue;
        bool has_levels = t.likelihood && t.damage;
        if (evr->path == Path::standard && !has_levels) continue;

        RiskAssessment row;
        row.threat = t.id;
        row.evr = evr->id;
        row.path = evr->path;
        if (has_levels) {
            auto [score, band] = risk_score(*t.likelihood, *t.damage, config);
            row.score = score;
            row.band = band;
        }
        row.obligation = detail::obligation_for(row.path, row.band);
        row.satisfied = detail::obligation_satisfied(
            row.obligation, detail::has_mitigating_control(reg, t.id), t.accepted);
        row.accepted = t.accepted;
        if (t.accepted && !t.residual.empty()) row.residual = t.residual;

        std::vector<long long> key{1, decl};
        if (auto it = numbers.find(t.id); it != numbers.end()) {
            key.assign({0});
            for (const ChainNumber::Part& p : it->second.parts) {
                key.push_back(p.measure ? 1 : 0);
                key.push_back(p.n);
            }
        }
        rows.emplace_back(std::move(key), std::move(row));
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<RiskAssessment> out;
    out.reserve(rows.size());
    for (auto& [key, row] : rows) out.push_back(std::move(row));
    return out;
}

// Documented residual risks: the accepted, note-carrying assessments ordered
// by descending score (unscored last), ties by assessment order (canonical).
struct ResidualEntry {
    std::string threat;
    std::optional<int> score;
    std::string residual;
};

inline std::vector<ResidualEntry> residual_report(const std::vector<RiskAssessment>& assessments) {
    std::vector<ResidualEntry> out;
    for (const RiskAssessment& a : assessments)
        if (a.residual) out.push_back(ResidualEntry{a.threat, a.score, *a.residual});
    std::stable_sort(out.begin(), out.end(), [](const ResidualEntry& a, const ResidualEntry& b) {
        return a.score.value_or(-1) > b.score.value_or(-1);
    });
    return out;
}

}  // namespace vbec
