#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vbec/model.hpp"
#include "vbec/riskengine.hpp"

namespace vbec {

// Derives an EVR's lifecycle state from the register; nothing is stored.
//
//   draft          obligations unmet: a path I EVR without a measure, or a
//                  path II/III EVR with no threats or an unmet threat
//   risk_analyzed  obligations met but the chain is not built out (path I
//                  EVRs top out here: measures carry no tracked requirements)
//   implemented    every reachable control exists, carries at least one
//                  system requirement, and all of those are implemented or
//                  validated
//   validated      as above with every requirement validated
//   reopened       a reopen monitor observes a covered quality; wins always
inline EvrState evr_status(const Register& reg, std::string_view evr_id) {
    const Evr* evr = reg.find_evr(evr_id);
    if (!evr) throw std::out_of_range("no such evr: " + std::string(evr_id));

    std::set<std::string_view> covered;
    for (const CoverTuple& t : evr->covers) covered.insert(t.quality);
    for (const Monitor& m : reg.monitors)
        if (m.action == MonitorAction::reopen && !m.free_text && covered.count(m.observes))
            return EvrState::reopened;

    if (evr->path == Path::organizational) {
        for (const Measure& m : reg.measures)
            if (m.implements == evr->id) return EvrState::risk_analyzed;
        return EvrState::draft;
    }

    std::vector<const Threat*> threats;
    for (const Threat& t : reg.threats)
        if (t.against == evr->id) threats.push_back(&t);
    if (threats.empty()) return EvrState::draft;
    for (const Threat* t : threats)
        if (!threat_obligation_satisfied(reg, *t, evr->path, reg.config)) return EvrState::draft;

    std::vector<const Control*> controls;
    for (const Control& c : reg.controls)
        for (const Threat* t : threats)
            if (std::find(c.mitigates.begin(), c.mitigates.end(), t->id) != c.mitigates.end()) {
                controls.push_back(&c);
                break;
            }
    if (controls.empty()) return EvrState::risk_analyzed;  // all threats accepted

    bool all_validated = true;
    for (const Control* c : controls) {
        bool any_sr = false;
        for (const SysReq& s : reg.sysreqs) {
            if (!s.control_origin || s.from != c->id) continue;
            any_sr = true;
            if (s.status == SysReqStatus::roadmap) return EvrState::risk_analyzed;
            if (s.status != SysReqStatus::validated) all_validated = false;
        }
        if (!any_sr) return EvrState::risk_analyzed;  // control not yet on the roadmap
    }
    return all_validated ? EvrState::validated : EvrState::implemented;
}

}  // namespace vbec
