#pragma once

#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "vbec/lifecycle.hpp"
#include "vbec/model.hpp"

namespace vbec {

// Ethical-maturity numbers derived from a linked register. Ratios whose
// denominator is empty stay 0 and drop their `defined` flag so reports can
// say "n/a" instead of implying a perfect or empty score.
struct MaturityMetrics {
    double values_per_stakeholder = 0;  // mean distinct value names, speaking stakeholders only
    bool values_per_stakeholder_defined = false;
    long long harm_count = 0;
    long long benefit_count = 0;
    double evr_coverage = 0;  // qualities covered by >=1 EVR / all qualities
    bool evr_coverage_defined = false;
    double value_based_share = 0;  // control-origin system requirements / all
    bool value_based_share_defined = false;
    long long residual_count = 0;  // accepted threats with a documented note
    long long reopened_count = 0;  // EVRs currently in the reopened state
};

namespace detail {

// Distinct-value counting is case-insensitive but merges nothing else:
// "Privacy" and "privacy" are one value, "privacy" and "data protection"
// stay two.
inline std::string fold_ascii(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace detail

inline MaturityMetrics metrics(const Register& reg) {
    MaturityMetrics m;

    long long speaking = 0;
    long long distinct_total = 0;
    for (const Stakeholder& s : reg.stakeholders) {
        std::set<std::string> values;
        for (const Statement& st : reg.statements)
            if (st.by == s.id) values.insert(detail::fold_ascii(st.value_name));
        if (values.empty()) continue;
        ++speaking;
        distinct_total += static_cast<long long>(values.size());
    }
    if (speaking > 0) {
        m.values_per_stakeholder = static_cast<double>(distinct_total) / static_cast<double>(speaking);
        m.values_per_stakeholder_defined = true;
    }

    for (const Statement& st : reg.statements)
        ++(st.polarity == Polarity::harm ? m.harm_count : m.benefit_count);

    if (!reg.qualities.empty()) {
        long long covered = 0;
        for (const Quality& q : reg.qualities) {
            bool hit = false;
            for (const Evr& e : reg.evrs)
                for (const CoverTuple& t : e.covers)
                    if (t.quality == q.id) hit = true;
            if (hit) ++covered;
        }
        m.evr_coverage = static_cast<double>(covered) / static_cast<double>(reg.qualities.size());
        m.evr_coverage_defined = true;
    }

    if (!reg.sysreqs.empty()) {
        long long control_origin = 0;
        for (const SysReq& s : reg.sysreqs)
            if (s.control_origin) ++control_origin;
        m.value_based_share =
            static_cast<double>(control_origin) / static_cast<double>(reg.sysreqs.size());
        m.value_based_share_defined = true;
    }

    for (const Threat& t : reg.threats)
        if (t.accepted && !t.residual.empty()) ++m.residual_count;

    for (const Evr& e : reg.evrs)
        if (evr_status(reg, e.id) == EvrState::reopened) ++m.reopened_count;

    return m;
}

}  // namespace vbec
