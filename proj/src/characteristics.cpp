#include "dp3/characteristics.hpp"

#include <atomic>
#include <cmath>

#include "dp3/errors.hpp"
#include "dp3/kernels.hpp"
#include "dp3/spectral.hpp"

namespace dp3 {

namespace {

Spectrum product_spectrum(const Field& u, const Field& v) {
    Field w(u.size());
    kernels::mul2(u.data(), v.data(), w.data(), u.size());
    return fft::forward(w);
}

Spectrum derivative_spectrum(const Field& f, const Grid& g) {
    Spectrum s = fft::forward(f);
    for (std::size_t j = 0; j < s.size(); ++j) s[j] *= std::complex<double>(0.0, g.k(j));
    s.back() = 0.0;
    return s;
}

}  // namespace

CharTrace CharTrace::start(double x0, const FieldState& s0, const Grid& g) {
    CharTrace tr;
    tr.x0 = x0;
    tr.t.push_back(s0.t);
    tr.q.push_back(x0);
    tr.q_wrapped.push_back(g.wrap(x0));
    tr.f.push_back(trig_eval(derivative_spectrum(s0.u, g), g, x0));
    tr.v_at_q.push_back(trig_eval(fft::forward(s0.v), g, x0));
    return tr;
}

void advance_char(CharTrace& trace, const FieldState& at_t, const FieldState& at_t_dt, const Grid& g) {
    validate(at_t, g, "advance_char");
    validate(at_t_dt, g, "advance_char");
    if (trace.t.empty()) throw domain_error("advance_char: trace has no starting sample");
    const double dt = at_t_dt.t - at_t.t;
    if (!(dt > 0.0)) throw domain_error("advance_char: states do not bracket a positive step");

    const Spectrum wa = product_spectrum(at_t.u, at_t.v);
    const Spectrum wb = product_spectrum(at_t_dt.u, at_t_dt.v);
    Spectrum wm(wa.size());
    for (std::size_t j = 0; j < wa.size(); ++j) wm[j] = 0.5 * (wa[j] + wb[j]);

    const double q0 = trace.q.back();
    const double k1 = trig_eval(wa, g, q0);
    const double k2 = trig_eval(wm, g, q0 + 0.5 * dt * k1);
    const double k3 = trig_eval(wm, g, q0 + 0.5 * dt * k2);
    const double k4 = trig_eval(wb, g, q0 + dt * k3);
    const double q1 = q0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(q1)) throw numeric_error("characteristic position");

    trace.t.push_back(at_t_dt.t);
    trace.q.push_back(q1);
    trace.q_wrapped.push_back(g.wrap(q1));
    trace.f.push_back(trig_eval(derivative_spectrum(at_t_dt.u, g), g, q1));
    trace.v_at_q.push_back(trig_eval(fft::forward(at_t_dt.v), g, q1));
}

RiccatiCheck riccati_check(const CharTrace& trace, double a, double b, double tol) {
    if (trace.t.size() < 3) throw domain_error("riccati_check: need at least 3 samples");
    if (!(a > 0.0) || !(b > 0.0)) throw domain_error("riccati_check: a and b must be positive");
    if (tol < 0.0) tol = 1e-2 * (1.0 + b);

    RiccatiCheck out;
    const std::size_t n = trace.t.size();
    out.t.reserve(n);
    out.margin.reserve(n);
    auto push = [&](std::size_t i, double fprime) {
        const double fi = trace.f[i];
        out.t.push_back(trace.t[i]);
        out.margin.push_back(-a * fi * fi + b - fprime);
    };
    // one-sided at the ends, centered inside
    push(0, (trace.f[1] - trace.f[0]) / (trace.t[1] - trace.t[0]));
    for (std::size_t i = 1; i + 1 < n; ++i)
        push(i, (trace.f[i + 1] - trace.f[i - 1]) / (trace.t[i + 1] - trace.t[i - 1]));
    push(n - 1, (trace.f[n - 1] - trace.f[n - 2]) / (trace.t[n - 1] - trace.t[n - 2]));

    out.min_margin = kernels::min(out.margin.data(), out.margin.size());
    out.ok = out.min_margin >= -tol;
    return out;
}

bool order_preserved(const std::vector<CharTrace>& traces) {
    if (traces.size() < 2) throw domain_error("order check needs at least 2 probes");
    const std::size_t len = traces.front().t.size();
    for (const auto& tr : traces)
        if (tr.t.size() != len) throw shape_error("order check: trace lengths differ");
    for (std::size_t s = 0; s < len; ++s)
        for (std::size_t i = 0; i + 1 < traces.size(); ++i)
            if (!(traces[i].q[s] < traces[i + 1].q[s])) return false;
    return true;
}

std::vector<CharTrace> trace_probes(const std::vector<FieldState>& states,
                                    const std::vector<double>& probes, const Grid& g) {
    if (states.size() < 2) throw domain_error("trace_probes: need at least 2 snapshots");
    std::vector<CharTrace> traces;
    traces.reserve(probes.size());
    for (double x0 : probes) traces.push_back(CharTrace::start(x0, states.front(), g));
    std::atomic<bool> failed{false};
    for (std::size_t s = 0; s + 1 < states.size(); ++s) {
        // independent traces; snapshots are immutable
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(traces.size()); ++i) {
            try {
                advance_char(traces[static_cast<std::size_t>(i)], states[s], states[s + 1], g);
            } catch (...) {
                failed.store(true);
            }
        }
        if (failed.load()) throw numeric_error("characteristic advance");
    }
    return traces;
}

bool monotone_diffeo_check(const std::vector<FieldState>& states, const std::vector<double>& probes,
                           const Grid& g) {
    if (probes.size() < 2) throw domain_error("monotone_diffeo_check: need at least 2 probes");
    return order_preserved(trace_probes(states, probes, g));
}

}  // namespace dp3
