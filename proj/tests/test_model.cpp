#include <catch2/catch_amalgamated.hpp>

#include <vbec/model.hpp>
#include <vbec/parser.hpp>

#include "helpers.hpp"

using namespace vbec;
using namespace vbec::testutil;

namespace {

LinkResult link_src(const std::string& src) { return link(parse_ok(src)); }

}  // namespace

TEST_CASE("a linked register either exists or explains why not") {
    LinkResult ok = link_src("corevalue CV {}");
    CHECK(ok.reg.has_value());
    CHECK(ok.diagnostics.empty());

    LinkResult bad = link_src("quality VQ { core: CV9, source: \"c\" }");
    CHECK_FALSE(bad.reg.has_value());
    CHECK_FALSE(bad.diagnostics.empty());
}

TEST_CASE("defaults are applied during linking") {
    Register reg = link_ok(
        "stakeholder S1 { kind: direct }\n"
        "corevalue CV_A {}\n"
        "quality VQ_A { core: CV_A, source: \"cite\" }\n"
        "evr EVR_ORG { covers: [CV_A/VQ_A], path: organizational, statement: \"s\" }\n"
        "evr EVR_STD { covers: [CV_A/VQ_A], path: standard, statement: \"s\" }\n"
        "threat THR_1 { against: EVR_STD, text: \"t\" }\n"
        "control CTL_1 { mitigates: [THR_1], text: \"shared wording\" }\n"
        "sysreq SR_1 { from: CTL_1 }\n"
        "monitor MON_1 { observes: VQ_A, outcome: actualized }\n");

    CHECK(reg.stakeholders[0].name == "S1");         // no label: id stands in
    CHECK_FALSE(reg.stakeholders[0].critical);
    CHECK(reg.corevalues[0].intrinsic);
    CHECK(reg.qualities[0].relation == Relation::instrumental);
    CHECK(reg.evrs[0].nature == Nature::organizational);  // path I
    CHECK(reg.evrs[1].nature == Nature::technical);       // path II
    CHECK_FALSE(reg.threats[0].accepted);
    CHECK(reg.sysreqs[0].status == SysReqStatus::roadmap);
    CHECK(reg.sysreqs[0].control_origin);
    CHECK(reg.sysreqs[0].text == "shared wording");  // inherited from the control
    CHECK(reg.monitors[0].action == MonitorAction::none);
    CHECK_FALSE(reg.config_explicit);
    CHECK(reg.config.low_max == 4);
    CHECK(reg.config.medium_max == 14);
}

TEST_CASE("labels become names") {
    Register reg = link_ok("corevalue CV_A \"privacy\" {}");
    CHECK(reg.corevalues[0].name == "privacy");
}

TEST_CASE("E001 covers every reference field") {
    auto expect_unknown = [](const std::string& src, const std::string& kind,
                             const std::string& ref, const std::string& related) {
        LinkResult r = link_src(src);
        REQUIRE(r.diagnostics.size() == 1);
        const Diagnostic& d = r.diagnostics[0];
        CHECK(d.code == "E001");
        CHECK(d.message == "reference to unknown " + kind + " '" + ref + "'");
        CHECK(d.related == related);
    };
    expect_unknown(
        "statement ST1 { by: S9, lens: duty, polarity: harm, value: \"v\", text: \"t\" }",
        "stakeholder", "S9", "ST1");
    expect_unknown("quality VQ1 { core: CV9, source: \"c\" }", "corevalue", "CV9", "VQ1");
    expect_unknown(
        "stakeholder S1 { kind: direct }\n"
        "quality VQ1 { core: CV1, source: ST9 }\ncorevalue CV1 {}",
        "statement", "ST9", "VQ1");
    expect_unknown("corevalue CV1 {}\nevr E1 { covers: [CV1/VQ9], path: standard, "
                   "statement: \"s\" }",
                   "quality", "VQ9", "E1");
    expect_unknown("measure M1 { implements: E9, text: \"t\" }", "evr", "E9", "M1");
    expect_unknown("threat T1 { against: E9, text: \"t\" }", "evr", "E9", "T1");
    expect_unknown("control C1 { mitigates: [T9], text: \"t\" }", "threat", "T9", "C1");
    expect_unknown("sysreq R1 { from: C9 }", "control", "C9", "R1");
    expect_unknown("monitor M1 { observes: VQ9, outcome: actualized }", "quality", "VQ9", "M1");
    expect_unknown("ranking { order: [CV9] }", "corevalue", "CV9", "");
    expect_unknown("ranking { order: [], constraint CV9 min_rank 1 because \"r\" }",
                   "corevalue", "CV9", "");
}

TEST_CASE("declaration order is preserved for entity vectors") {
    Register reg = link_ok("corevalue CV_B {}\ncorevalue CV_A {}\ncorevalue CV_C {}");
    REQUIRE(reg.corevalues.size() == 3);
    CHECK(reg.corevalues[0].id == "CV_B");
    CHECK(reg.corevalues[2].id == "CV_C");
}

TEST_CASE("E002 duplicate identifiers across kinds") {
    LinkResult r = link_src("corevalue X {} sysreq X { text: \"t\" }");
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].code == "E002");
    CHECK(r.diagnostics[0].message == "duplicate id 'X' (already declared as corevalue)");
    CHECK(r.diagnostics[0].related == "X");
}

TEST_CASE("E002 singleton blocks") {
    const std::string project =
        "project \"P\" { soi: \"s\" precondition stakeholder_inclusion: yes "
        "precondition open_culture: yes precondition quality_commitment: yes "
        "precondition top_level_value_dedication: yes precondition resourcing: yes }\n";
    LinkResult r = link_src(project + project);
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].message == "duplicate project block");

    r = link_src("config { version: 1 } config {}");
    REQUIRE(has_code(r.diagnostics, "E002"));
    CHECK(r.diagnostics[0].message == "duplicate config block");

    r = link_src("config risk { low_max: 1, medium_max: 2 } "
                 "config risk { low_max: 2, medium_max: 3 }");
    CHECK(r.diagnostics[0].message == "duplicate config risk block");

    // One bare config and one risk config coexist.
    r = link_src("config { version: 1 } config risk { low_max: 1, medium_max: 2 }");
    CHECK(r.diagnostics.empty());
    CHECK(r.reg->config_explicit);
    CHECK(r.reg->config.low_max == 1);

    r = link_src("ranking { order: [] } ranking { order: [] }");
    CHECK(r.diagnostics[0].message == "duplicate ranking block");
}

TEST_CASE("project preconditions land in the register") {
    Register reg = link_ok(
        "project \"P\" { soi: \"the system\" value_lead: \"R. Chen\" "
        "precondition stakeholder_inclusion: yes precondition open_culture: no "
        "precondition quality_commitment: yes precondition top_level_value_dedication: yes "
        "precondition resourcing: yes }");
    REQUIRE(reg.project.has_value());
    CHECK(reg.project->soi == "the system");
    CHECK(reg.project->value_lead == "R. Chen");
    CHECK(reg.project->precondition("open_culture") == false);
    CHECK(reg.project->precondition("resourcing") == true);
}

TEST_CASE("find helpers resolve ids") {
    Register reg = link_ok("corevalue CV_A {}\nquality VQ_A { core: CV_A, source: \"c\" }");
    CHECK(reg.find_corevalue("CV_A") != nullptr);
    CHECK(reg.find_corevalue("CV_B") == nullptr);
    CHECK(reg.find_quality("VQ_A")->core == "CV_A");
}

TEST_CASE("likelihood and damage names map to levels and back") {
    CHECK(likelihood_level("rare") == 1);
    CHECK(likelihood_level("frequent") == 5);
    CHECK_FALSE(likelihood_level("always").has_value());
    CHECK(damage_level("negligible") == 1);
    CHECK(damage_level("catastrophic") == 5);
    CHECK(likelihood_name(3) == "possible");
    CHECK(damage_name(4) == "serious");
}

TEST_CASE("lens ordering ranks canonical lenses before custom ones") {
    Lens u;  // defaults to utilitarian
    Lens v{"virtue", false};
    Lens d{"duty", false};
    Lens a{"anything", true};
    Lens b{"before", true};
    CHECK(u < v);
    CHECK(v < d);
    CHECK(d < a);
    CHECK(a < b);  // custom lenses sort by name
}

TEST_CASE("lens coverage always reports the canonical three") {
    Register reg = link_ok(
        "stakeholder S1 { kind: direct }\n"
        "statement ST1 { by: S1, lens: utilitarian, polarity: benefit, value: \"v\", "
        "text: \"t\" }\n"
        "statement ST2 { by: S1, lens: \"ubuntu\", polarity: benefit, value: \"v\", "
        "text: \"t\" }\n");
    std::map<Lens, int> cov = lens_coverage(reg);
    REQUIRE(cov.size() == 4);
    CHECK(cov.at(Lens{"utilitarian", false}) == 1);
    CHECK(cov.at(Lens{"virtue", false}) == 0);
    CHECK(cov.at(Lens{"duty", false}) == 0);
    CHECK(cov.at(Lens{"ubuntu", true}) == 1);
}

TEST_CASE("statement.by never resolves through partners") {
    LinkResult r = link_src(
        "partner P1 { system_access: yes }\n"
        "statement ST1 { by: P1, lens: duty, polarity: harm, value: \"v\", text: \"t\" }");
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].code == "E001");
    CHECK(r.diagnostics[0].message == "reference to unknown stakeholder 'P1'");
}

TEST_CASE("threat levels survive linking") {
    Register reg = link_ok(
        "corevalue CV {}\nquality VQ { core: CV, source: \"c\" }\n"
        "evr E1 { covers: [CV/VQ], path: impact_assessment, statement: \"s\" }\n"
        "threat T1 { against: E1, text: \"t\", likelihood: likely, damage: limited }\n"
        "threat T2 { against: E1, text: \"t\", likelihood: rare, damage: catastrophic, "
        "accepted: yes, residual: \"documented\" }\n");
    CHECK(reg.threats[0].likelihood == 4);
    CHECK(reg.threats[0].damage == 2);
    CHECK_FALSE(reg.threats[0].accepted);
    CHECK_FALSE(reg.threats[1].likelihood == std::nullopt);
    CHECK(reg.threats[1].accepted);
    CHECK(reg.threats[1].residual == "documented");
}
