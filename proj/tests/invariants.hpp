#pragma once

#include <algorithm>
#include <sstream>
#include <string>

#include "rsec/cspace.hpp"
#include "rsec/roadmap.hpp"
#include "rsec/sparsify.hpp"

namespace rsec::test {

/// Checks every documented postcondition of sparsify(). Returns an empty
/// string when all hold, otherwise a description of the first violations.
inline std::string sparsify_violations(const Roadmap& input, const SparsifyResult& out, const Scenario& s,
                                       double drift) {
    std::ostringstream err;
    const auto& g = out.roadmap;
    const auto& r = out.report;
    const double d_eff = drift * s.diagonal();

    for (VertexId v : g.vertex_ids()) {
        if (!s.is_free(g.config(v))) err << "vertex " << v << " in collision; ";
        for (const auto& a : g.ancestors(v)) {
            if (distance(g.config(v), a) > d_eff + 1e-9) {
                err << "vertex " << v << " drifts " << distance(g.config(v), a) << " > " << d_eff << "; ";
                break;
            }
        }
    }
    std::size_t degree_sum = 0;
    for (VertexId v : g.vertex_ids()) {
        VertexId prev = v;
        bool first = true;
        for (const auto& n : g.adjacency(v)) {
            if (n.id == v) err << "self-loop at " << v << "; ";
            if (!first && n.id <= prev) err << "parallel or unsorted edge at " << v << "; ";
            prev = n.id;
            first = false;
        }
        degree_sum += g.degree(v);
    }
    if (degree_sum != 2 * g.edge_count()) err << "degree sum mismatch; ";
    for (const auto& e : g.edges()) {
        if (!s.local_planner(g.config(e.u), g.config(e.v))) err << "edge " << e.u << "-" << e.v << " blocked; ";
    }
    if (connected_components(g).count != connected_components(input).count) err << "component count changed; ";
    if (r.contractions_succeeded + r.reject_collision + r.reject_drift + r.reject_local_planner !=
        r.contractions_attempted) {
        err << "report counts do not add up; ";
    }
    if (g.vertex_count() != input.vertex_count() - r.contractions_succeeded) err << "vertex delta != successes; ";
    const bool shrank = g.vertex_count() < input.vertex_count();
    if (shrank != (r.contractions_succeeded > 0)) err << "vertex count strictly decreasing iff success violated; ";
    if (g.edge_count() > input.edge_count()) err << "edge count grew; ";
    if (size_measure(g) > size_measure(input)) err << "size grew; ";
    if (r.contractions_succeeded > 0 && !(size_measure(g) < size_measure(input))) err << "size not strictly smaller; ";
    if (r.queue_pops > 50 * std::max<std::size_t>(input.edge_count(), 1)) err << "queue pops exceed 50|E0|; ";
    if (r.initial_vertices != input.vertex_count() || r.initial_edges != input.edge_count() ||
        r.final_vertices != g.vertex_count() || r.final_edges != g.edge_count()) {
        err << "report sizes wrong; ";
    }
    return err.str();
}

}  // namespace rsec::test
