#include "curlkit/flow.hpp"

#include <cmath>

namespace curlkit {

namespace {

JetVec field_at(const PolyVec& field, const JetVec& state) {
    JetVec out;
    out.reserve(field.size());
    for (const Poly& comp : field) out.push_back(comp.eval_jets(state));
    return out;
}

JetVec axpy(const JetVec& base, double scale, const JetVec& dir) {
    JetVec out = base;
    for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] + scale * dir[i];
    return out;
}

}  // namespace

JetVec contact_flow(const FlowSpec& spec, const Point& p) {
    if (spec.steps <= 0) throw DomainError("flow needs a positive step count");
    const PolyVec field = darboux_contact_field(spec.hamiltonian, spec.chart);
    const double h = spec.time / spec.steps;
    if (!(std::fabs(h) > 0.0) && spec.time != 0.0)
        throw DomainError("flow step underflow");

    JetVec state = seed_point(p, 2);
    for (int s = 0; s < spec.steps; ++s) {
        JetVec k1 = field_at(field, state);
        JetVec k2 = field_at(field, axpy(state, 0.5 * h, k1));
        JetVec k3 = field_at(field, axpy(state, 0.5 * h, k2));
        JetVec k4 = field_at(field, axpy(state, h, k3));
        for (size_t i = 0; i < state.size(); ++i)
            state[i] = state[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        for (const Jet& c : state)
            if (std::fabs(c.value()) > spec.box_bound)
                throw DomainError("flow trajectory escaped the chart box");
    }
    return state;
}

ChartMap contact_flow_map(const FlowSpec& spec, const Chart& chart) {
    return ChartMap(chart, chart, [spec](const JetVec& seeds) {
        Point p(seeds.size());
        for (size_t i = 0; i < seeds.size(); ++i) p[i] = seeds[i].value();
        JetVec image = contact_flow(spec, p);
        if (seeds.front().order() < 2)
            for (auto& c : image) c = c.truncated(seeds.front().order());
        return image;
    });
}

}  // namespace curlkit
