#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vbec/diagnostics.hpp"
#include "vbec/model.hpp"

namespace vbec {

// ===========================================================================
// Chain numbers
// ===========================================================================

// Dotted chain position, e.g. 1.2.1; measures carry an m-suffixed final
// part, e.g. 1.2.1.m1. Measure parts order after plain parts at the same
// depth.
struct ChainNumber {
    struct Part {
        bool measure = false;
        int n = 0;
        auto operator<=>(const Part&) const = default;
    };
    std::vector<Part> parts;

    auto operator<=>(const ChainNumber&) const = default;

    ChainNumber child(int n, bool measure = false) const {
        ChainNumber c = *this;
        c.parts.push_back(Part{measure, n});
        return c;
    }

    std::string str() const {
        std::string out;
        for (const Part& p : parts) {
            if (!out.empty()) out += '.';
            if (p.measure) out += 'm';
            out += std::to_string(p.n);
        }
        return out;
    }
};

// Core values by ranking order (then unranked by declaration), qualities by
// declaration within their cluster, EVRs under the quality of their first
// covers tuple, threats/controls/system requirements by declaration under
// their parent, measures with an mN suffix under their EVR. Monitors and
// functional system requirements stay unnumbered.
inline std::map<std::string, ChainNumber> canonical_numbers(const Register& reg) {
    std::map<std::string, ChainNumber> num;

    std::vector<const CoreValue*> clusters;
    if (reg.ranking) {
        for (const std::string& id : reg.ranking->order) {
            const CoreValue* cv = reg.find_corevalue(id);
            if (cv && std::find(clusters.begin(), clusters.end(), cv) == clusters.end())
                clusters.push_back(cv);
        }
    }
    for (const CoreValue& cv : reg.corevalues)
        if (std::find(clusters.begin(), clusters.end(), &cv) == clusters.end())
            clusters.push_back(&cv);
    for (size_t i = 0; i < clusters.size(); ++i)
        num[clusters[i]->id] = ChainNumber{}.child(static_cast<int>(i + 1));

    std::map<std::string, int> fanout;  // children assigned under a parent id
    for (const Quality& q : reg.qualities) {
        auto parent = num.find(q.core);
        if (parent == num.end()) continue;
        num[q.id] = parent->second.child(++fanout[q.core]);
    }
    for (const Evr& e : reg.evrs) {
        if (e.covers.empty()) continue;
        auto parent = num.find(e.covers.front().quality);
        if (parent == num.end()) continue;
        num[e.id] = parent->second.child(++fanout[e.covers.front().quality]);
    }
    for (const Threat& t : reg.threats) {
        auto parent = num.find(t.against);
        if (parent == num.end()) continue;
        num[t.id] = parent->second.child(++fanout[t.against]);
    }
    for (const Measure& m : reg.measures) {
        auto parent = num.find(m.implements);
        if (parent == num.end()) continue;
        num[m.id] = parent->second.child(++fanout["m:" + m.implements], true);
    }
    for (const Control& c : reg.controls) {
        if (c.mitigates.empty()) continue;
        auto parent = num.find(c.mitigates.front());
        if (parent == num.end()) continue;
        num[c.id] = parent->second.child(++fanout[c.mitigates.front()]);
    }
    for (const SysReq& s : reg.sysreqs) {
        if (!s.control_origin) continue;
        auto parent = num.find(s.from);
        if (parent == num.end()) continue;
        num[s.id] = parent->second.child(++fanout[s.from]);
    }
    return num;
}

// ===========================================================================
// Graph
// ===========================================================================

enum class NodeKind { corevalue, quality, evr, measure, threat, control, sysreq, monitor };

inline std::string_view to_string(NodeKind k) {
    switch (k) {
        case NodeKind::corevalue: return "corevalue";
        case NodeKind::quality: return "quality";
        case NodeKind::evr: return "evr";
        case NodeKind::measure: return "measure";
        case NodeKind::threat: return "threat";
        case NodeKind::control: return "control";
        case NodeKind::sysreq: return "sysreq";
        default: return "monitor";
    }
}

enum class Direction { up, down };

struct TraceGraph {
    struct Node {
        std::string id;
        NodeKind kind = NodeKind::corevalue;
        std::vector<std::string> up;    // toward core values
        std::vector<std::string> down;  // toward leaves
        std::optional<ChainNumber> number;
        std::vector<long long> order_key;  // canonical listing order
    };

    std::map<std::string, Node> nodes;
    std::vector<std::string> listing;  // node ids in canonical order

    const Node* find(std::string_view id) const {
        auto it = nodes.find(std::string(id));
        return it == nodes.end() ? nullptr : &it->second;
    }
};

struct TraceBuildResult {
    std::optional<TraceGraph> graph;  // engaged iff diagnostics is empty
    std::vector<Diagnostic> diagnostics;
};

namespace detail {

inline SourceSpan entity_span(const Register& reg, const std::string& id) {
    if (const CoreValue* x = reg.find_corevalue(id)) return x->span;
    if (const Quality* x = reg.find_quality(id)) return x->span;
    if (const Evr* x = reg.find_evr(id)) return x->span;
    if (const Measure* x = reg.find_measure(id)) return x->span;
    if (const Threat* x = reg.find_threat(id)) return x->span;
    if (const Control* x = reg.find_control(id)) return x->span;
    if (const SysReq* x = reg.find_sysreq(id)) return x->span;
    if (const Monitor* x = reg.find_monitor(id)) return x->span;
    return SourceSpan{};
}

}  // namespace detail

// Builds the layered traceability graph. On a linked register the layering
// makes cycles impossible; the E005 check guards registers assembled by
// hand, where an id aliased across layers can tie a knot.
inline TraceBuildResult trace_build(const Register& reg) {
    TraceGraph g;
    long long decl = 0;
    auto add_node = [&](const std::string& id, NodeKind kind) {
        auto [it, inserted] = g.nodes.try_emplace(id);
        if (inserted) {
            it->second.id = id;
            it->second.kind = kind;
            it->second.order_key = {1, static_cast<long long>(kind), decl};
        }
        ++decl;
    };
    for (const CoreValue& x : reg.corevalues) add_node(x.id, NodeKind::corevalue);
    for (const Quality& x : reg.qualities) add_node(x.id, NodeKind::quality);
    for (const Evr& x : reg.evrs) add_node(x.id, NodeKind::evr);
    for (const Measure& x : reg.measures) add_node(x.id, NodeKind::measure);
    for (const Threat& x : reg.threats) add_node(x.id, NodeKind::threat);
    for (const Control& x : reg.controls) add_node(x.id, NodeKind::control);
    for (const SysReq& x : reg.sysreqs) add_node(x.id, NodeKind::sysreq);
    for (const Monitor& x : reg.monitors) add_node(x.id, NodeKind::monitor);

    auto add_edge = [&](const std::string& from, const std::string& to) {
        auto f = g.nodes.find(from);
        auto t = g.nodes.find(to);
        if (f == g.nodes.end() || t == g.nodes.end()) return;  // dangling ref in hand-built model
        f->second.down.push_back(to);
        t->second.up.push_back(from);
    };
    for (const Quality& q : reg.qualities) add_edge(q.core, q.id);
    for (const Evr& e : reg.evrs)
        for (const CoverTuple& t : e.covers) add_edge(t.quality, e.id);
    for (const Measure& m : reg.measures) add_edge(m.implements, m.id);
    for (const Threat& t : reg.threats) add_edge(t.against, t.id);
    for (const Control& c : reg.controls)
        for (const std::string& t : c.mitigates) add_edge(t, c.id);
    for (const SysReq& s : reg.sysreqs)
        if (s.control_origin) add_edge(s.from, s.id);
    for (const Monitor& m : reg.monitors)
        if (!m.free_text) add_edge(m.observes, m.id);

    // cycle check: iterative three-color DFS over down edges
    std::map<std::string, int> color;  // 0 new, 1 on stack, 2 done
    for (const auto& [start, node] : g.nodes) {
        if (color[start]) continue;
        std::vector<std::pair<std::string, size_t>> stack{{start, 0}};
        color[start] = 1;
        while (!stack.empty()) {
            auto& [id, next] = stack.back();
            const TraceGraph::Node& n = g.nodes.at(id);
            if (next >= n.down.size()) {
                color[id] = 2;
                stack.pop_back();
                continue;
            }
            const std::string& to = n.down[next++];
            if (color[to] == 1) {
                std::string cycle = to;
                for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                    cycle = it->first + " -> " + cycle;
                    if (it->first == to) break;
                }
                TraceBuildResult bad;
                bad.diagnostics.push_back(make_diagnostic(
                    "E005", "traceability cycle: " + cycle, detail::entity_span(reg, to), to));
                return bad;
            }
            if (color[to] == 0) {
                color[to] = 1;
                stack.emplace_back(to, 0);
            }
        }
    }

    std::map<std::string, ChainNumber> numbers = canonical_numbers(reg);
    for (auto& [id, node] : g.nodes) {
        auto it = numbers.find(id);
        if (it == numbers.end()) continue;
        node.number = it->second;
        node.order_key.assign({0});
        for (const ChainNumber::Part& p : it->second.parts) {
            node.order_key.push_back(p.measure ? 1 : 0);
            node.order_key.push_back(p.n);
        }
    }

    auto by_order = [&](const std::string& a, const std::string& b) {
        const auto& ka = g.nodes.at(a).order_key;
        const auto& kb = g.nodes.at(b).order_key;
        return ka != kb ? ka < kb : a < b;
    };
    for (auto& [id, node] : g.nodes) {
        std::sort(node.up.begin(), node.up.end(), by_order);
        node.up.erase(std::unique(node.up.begin(), node.up.end()), node.up.end());
        std::sort(node.down.begin(), node.down.end(), by_order);
        node.down.erase(std::unique(node.down.begin(), node.down.end()), node.down.end());
        g.listing.push_back(id);
    }
    std::sort(g.listing.begin(), g.listing.end(), by_order);

    TraceBuildResult result;
    result.graph = std::move(g);
    return result;
}

// All maximal paths from the entity toward core values (up) or toward leaf
// entities (down), in canonical-number order. A node with no neighbors in
// the requested direction yields the single one-node path.
inline std::vector<std::vector<std::string>> trace(const TraceGraph& g, std::string_view id,
                                                   Direction dir) {
    const TraceGraph::Node* start = g.find(id);
    if (!start) throw std::out_of_range("no such entity: " + std::string(id));

    std::vector<std::vector<std::string>> paths;
    std::vector<std::string> path{start->id};
    auto dfs = [&](auto&& self, const TraceGraph::Node& n) -> void {
        const std::vector<std::string>& next = dir == Direction::up ? n.up : n.down;
        if (next.empty()) {
            paths.push_back(path);
            return;
        }
        for (const std::string& to : next) {
            path.push_back(to);
            self(self, g.nodes.at(to));
            path.pop_back();
        }
    };
    dfs(dfs, *start);
    return paths;
}

// Per-cluster counts of reachable qualities, EVRs, and controls. Row order
// follows canonical numbering.
struct CoverageRow {
    std::string corevalue;
    int qualities = 0;
    int evrs = 0;
    int controls = 0;
};

inline std::vector<CoverageRow> coverage_matrix(const Register& reg) {
    TraceBuildResult built = trace_build(reg);
    std::vector<CoverageRow> rows;
    if (!built.graph) return rows;
    const TraceGraph& g = *built.graph;

    std::vector<const TraceGraph::Node*> clusters;
    for (const std::string& id : g.listing) {
        const TraceGraph::Node& n = g.nodes.at(id);
        if (n.kind == NodeKind::corevalue) clusters.push_back(&n);
    }
    for (const TraceGraph::Node* cv : clusters) {
        CoverageRow row;
        row.corevalue = cv->id;
        std::set<std::string> seen{cv->id};
        std::vector<const TraceGraph::Node*> frontier{cv};
        while (!frontier.empty()) {
            const TraceGraph::Node* n = frontier.back();
            frontier.pop_back();
            for (const std::string& to : n->down) {
                if (!seen.insert(to).second) continue;
                const TraceGraph::Node& t = g.nodes.at(to);
                if (t.kind == NodeKind::quality) ++row.qualities;
                if (t.kind == NodeKind::evr) ++row.evrs;
                if (t.kind == NodeKind::control) ++row.controls;
                frontier.push_back(&t);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace vbec
