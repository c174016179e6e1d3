#pragma once

#include <string>

#include "curlkit/geometry.hpp"
#include "curlkit/poly.hpp"

namespace curlkit {

/// Contact-flow request: the flowed field is the contact field of the
/// Hamiltonian in the given Darboux-type chart.
struct FlowSpec {
    Poly hamiltonian;
    DarbouxChart chart;
    double time = 0.0;
    int steps = 1;
    double box_bound = 8.0;  // trajectory escape guard
};

/// Classical RK4 applied to the contact field ODE with the whole state carried
/// as order-2 jets seeded at p, so the flow map's first and second derivatives
/// come out of the same integration.
JetVec contact_flow(const FlowSpec& spec, const Point& p);

/// The time-t flow as a chart self-map.
ChartMap contact_flow_map(const FlowSpec& spec, const Chart& chart);

}  // namespace curlkit
