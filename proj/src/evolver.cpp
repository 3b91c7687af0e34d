#include "sgk/evolver.hpp"

#include "sgk/conserved.hpp"
#include "sgk/field_ops.hpp"
#include "sgk/solutions.hpp"

#include <sstream>

namespace sgk {

std::string to_string(BackgroundKind k) {
    switch (k) {
        case BackgroundKind::none: return "none";
        case BackgroundKind::static_kink: return "static-kink";
        case BackgroundKind::moving_kink: return "moving-kink";
    }
    return "?";
}

Sample Background::at(const Model& m, double t, double x) const {
    if (kind == BackgroundKind::none) return {};
    const double b = kind == BackgroundKind::static_kink ? 0.0 : beta;
    const double g = lorentz_gamma(b);
    const double z = g * (x - b * t + x0);
    if (m.kind == ModelKind::sine_gordon) {
        const double value = z < 0 ? 4.0 * std::atan(std::exp(z)) : 2.0 * pi - 4.0 * std::atan(std::exp(-z));
        return {value, -2.0 * b * g / std::cosh(z)};
    }
    const double s = z / std::sqrt(2.0);
    const double sech = 1.0 / std::cosh(s);
    return {std::tanh(s), -b * g * sech * sech / std::sqrt(2.0)};
}

FieldState Background::state(const Model& m, double t, const Grid& g) const {
    Field u(g.n), v(g.n);
    for (long i = 0; i < g.n; ++i) {
        Sample s = at(m, t, g.x(i));
        u[i] = s.value;
        v[i] = s.rate;
    }
    return FieldState(t, g, std::move(u), std::move(v));
}

double Background::acceleration(const Model& m, double t, double x) const {
    if (kind != BackgroundKind::moving_kink) return 0.0;
    const double g = lorentz_gamma(beta);
    const double z = g * (x - beta * t + x0);
    const double scale = beta * beta * g * g;
    if (m.kind == ModelKind::sine_gordon) return scale * -2.0 * std::tanh(z) / std::cosh(z);
    const double s = z / std::sqrt(2.0), sech = 1.0 / std::cosh(s);
    return scale * -std::tanh(s) * sech * sech;
}

double Trajectory::drift(const std::vector<double>& e) {
    if (e.empty()) return 0.0;
    double worst = 0.0;
    for (double x : e) worst = std::max(worst, std::abs(x - e.front()));
    return worst / std::max(std::abs(e.front()), 1e-300);
}

double modified_energy(const SnapshotView& s, const Model& m) {
    const Grid& g = s.full.grid;
    const Field& v = s.full.v;
    Field Kv = -second_derivative(v, g, 4);
    for (long i = 0; i < g.n; ++i) Kv[i] += m.dN(s.full.u[i]) * v[i];
    Kv[0] = Kv[g.n - 1] = 0.0;
    const double dt2 = s.dt * s.dt;
    return energy(s.full, m) + dt2 / 12.0 * quadrature(Field(v.cwiseProduct(Kv)), g) -
           dt2 / 24.0 * quadrature(Field(s.force.cwiseAbs2()), g);
}

FieldState reversed(const FieldState& s) { return FieldState(s.t, s.grid, s.u, -s.v); }

namespace {

// Background-dependent pieces of N(B + u) - N(B).
struct Coefficients {
    Field a, b;  // SG: sin B, cos B; phi4: B, 3B^2 - 1
};

class Stepper {
public:
    Stepper(const Grid& g, const Model& m, const EvolveConfig& cfg, double left, double right)
        : g_(g), m_(m), cfg_(cfg), left_(left), right_(right), inv_h2_(1.0 / (g.h() * g.h())) {
        coef_.a.resize(g.n);
        coef_.b.resize(g.n);
        if (cfg.background.kind != BackgroundKind::moving_kink) fill(0.0);
    }

    void fill(double t) {
        const Background& bg = cfg_.background;
        const bool sg = m_.kind == ModelKind::sine_gordon;
        const double b = bg.kind == BackgroundKind::moving_kink ? bg.beta : 0.0;
        const double gam = lorentz_gamma(b);
        for (long i = 0; i < g_.n; ++i) {
            if (sg && bg.kind != BackgroundKind::none) {
                // analytic half-angle form keeps the frame exactly odd/even
                const double z = gam * (g_.x(i) - b * t + bg.x0);
                const double sech = 1.0 / std::cosh(z), th = std::tanh(z);
                coef_.a[i] = -2.0 * sech * th;
                coef_.b[i] = 1.0 - 2.0 * sech * sech;
            } else if (sg) {
                coef_.a[i] = 0.0;
                coef_.b[i] = 1.0;
            } else {
                const double B = bg.at(m_, t, g_.x(i)).value;
                coef_.a[i] = B;
                coef_.b[i] = 3.0 * B * B - 1.0;
            }
        }
    }

    // u_tt = Lap u - [N(B + u) - N(B)] at the interior nodes.
    void accel(double t, const Field& u, Field& out) {
        if (cfg_.background.kind == BackgroundKind::moving_kink) fill(t);
        const long n = g_.n;
        out.setZero(n);
        auto at = [&](long j) {
            if (j < 0) return 2.0 * left_ - u[-j];
            if (j > n - 1) return 2.0 * right_ - u[2 * (n - 1) - j];
            return u[j];
        };
        for (long i = 1; i < n - 1; ++i) {
            double lap;
            if (cfg_.spatial_order == 4) {
                const double near = at(i - 1) + at(i + 1);
                const double far = at(i - 2) + at(i + 2);
                lap = (16.0 * near - far - 30.0 * u[i]) * inv_h2_ / 12.0;
            } else {
                lap = (u[i - 1] + u[i + 1] - 2.0 * u[i]) * inv_h2_;
            }
            const double w = u[i];
            double nl;
            if (m_.kind == ModelKind::sine_gordon) {
                nl = coef_.a[i] * (std::cos(w) - 1.0) + coef_.b[i] * std::sin(w);
            } else {
                const double B = coef_.a[i];
                nl = coef_.b[i] * w + 3.0 * B * w * w + w * w * w;
            }
            out[i] = lap - nl;
        }
    }

private:
    const Grid& g_;
    const Model& m_;
    const EvolveConfig& cfg_;
    double left_, right_;
    double inv_h2_;
    Coefficients coef_;
};

void validate(const FieldState& s, const EvolveConfig& cfg) {
    const double h = s.grid.h();
    if (cfg.spatial_order != 2 && cfg.spatial_order != 4) throw ParameterError("evolve: spatial_order must be 2 or 4");
    if (!(cfg.dt > 0)) throw ParameterError("evolve: dt must be positive");
    if (cfg.dt > cfg.max_dt(h)) {
        std::ostringstream os;
        os << "evolve: CFL violated (dt = " << cfg.dt << " > " << cfg.max_dt(h) << ")";
        throw ParameterError(os.str());
    }
    if (!(cfg.t_end >= 0)) throw ParameterError("evolve: t_end must be non-negative");
    if (cfg.stride < 1) throw ParameterError("evolve: stride must be positive");
    if (!s.u.allFinite() || !s.v.allFinite()) throw ContractViolation("evolve: initial state not finite");
}

}  // namespace

struct Integrator::Impl {
    Impl(const FieldState& initial, const Model& m, const EvolveConfig& c)
        : grid(initial.grid), model(m), cfg(c), t0(initial.t),
          bg0(c.background.state(m, initial.t, initial.grid)),
          u(initial.u - bg0.u), v(initial.v - bg0.v),
          stepper(grid, model, cfg, u[0], u[grid.n - 1]) {
        steps = cfg.t_end > 0 ? long(std::ceil(cfg.t_end / cfg.dt - 1e-9)) : 0;
        dt = steps > 0 ? (cfg.backward ? -1.0 : 1.0) * cfg.t_end / double(steps) : 0.0;
        a.resize(grid.n);
        stepper.accel(t0, u, a);
    }

    double time() const { return t0 + double(k) * dt; }

    Grid grid;
    Model model;
    EvolveConfig cfg;
    double t0;
    FieldState bg0;
    Field u, v, a;
    Stepper stepper;
    long steps = 0;
    long k = 0;
    double dt = 0.0;
};

Integrator::Integrator(const FieldState& initial, const Model& model, const EvolveConfig& cfg) {
    validate(initial, cfg);
    impl_ = std::make_unique<Impl>(initial, model, cfg);
}
Integrator::~Integrator() = default;
Integrator::Integrator(Integrator&&) noexcept = default;
Integrator& Integrator::operator=(Integrator&&) noexcept = default;

long Integrator::total_steps() const { return impl_->steps; }
long Integrator::step_index() const { return impl_->k; }
double Integrator::time() const { return impl_->time(); }
const Field& Integrator::perturbation() const { return impl_->u; }

void Integrator::step() {
    Impl& s = *impl_;
    const double t_prev = s.time();
    s.v += 0.5 * s.dt * s.a;
    s.u += s.dt * s.v;
    ++s.k;
    s.stepper.accel(s.time(), s.u, s.a);
    s.v += 0.5 * s.dt * s.a;
    if (!s.u.allFinite() || !s.v.allFinite()) {
        std::ostringstream os;
        os << "evolve: non-finite state after t = " << t_prev;
        throw EvolutionAborted(os.str(), s.time());
    }
}

FieldState Integrator::full_state() const {
    const Impl& s = *impl_;
    const double t = s.time();
    if (s.cfg.background.kind == BackgroundKind::moving_kink) {
        FieldState b = s.cfg.background.state(s.model, t, s.grid);
        return FieldState(t, s.grid, b.u + s.u, b.v + s.v);
    }
    return FieldState(t, s.grid, s.bg0.u + s.u, s.bg0.v + s.v);
}

void Integrator::view(const SnapshotVisitor& visit) const {
    const Impl& s = *impl_;
    FieldState full = full_state();
    if (s.cfg.background.kind == BackgroundKind::moving_kink) {
        Field force = s.a;
        for (long i = 1; i < s.grid.n - 1; ++i) force[i] += s.cfg.background.acceleration(s.model, full.t, s.grid.x(i));
        visit({full, s.u, force, std::abs(s.dt)});
    } else {
        visit({full, s.u, s.a, std::abs(s.dt)});
    }
}

void evolve_visit(const FieldState& initial, const Model& model, const EvolveConfig& cfg, const SnapshotVisitor& visit) {
    Integrator it(initial, model, cfg);
    it.view(visit);
    while (!it.done()) {
        it.step();
        if (it.step_index() % cfg.stride == 0 || it.done()) it.view(visit);
    }
}

Trajectory evolve(const FieldState& initial, const Model& model, const EvolveConfig& cfg) {
    Trajectory tr;
    evolve_visit(initial, model, cfg, [&](const SnapshotView& s) {
        tr.snapshots.push_back(s.full);
        if (cfg.log_energy) {
            tr.energy.push_back(modified_energy(s, model));
            tr.energy_raw.push_back(energy(s.full, model));
            tr.momentum.push_back(momentum(s.full));
        }
    });
    return tr;
}

Probe energy_probe(const Model& m) {
    return {"energy", [m](const FieldState& s, const Field&) { return energy(s, m); }};
}

Probe momentum_probe() {
    return {"momentum", [](const FieldState& s, const Field&) { return momentum(s); }};
}

namespace {

PerturbationPair frame_pair(const Background& bg, const Model& m, const FieldState& s, const Field& u) {
    FieldState b = bg.state(m, s.t, s.grid);
    return PerturbationPair(s.grid, u, s.v - b.v);
}

}  // namespace

Probe local_norm_probe(const Background& bg, const Model& m, double a, double b, const std::string& name) {
    return {name, [=](const FieldState& s, const Field& u) {
                return local_energy_norm(frame_pair(bg, m, s, u), a, b, functional_order);
            }};
}

Probe weighted_norm_probe(const Background& bg, const Model& m, const WeightSpec& w, const std::string& name) {
    return {name, [=](const FieldState& s, const Field& u) {
                return weighted_norm_sq(frame_pair(bg, m, s, u), w, functional_order);
            }};
}

ProbeSeries evolve_probe(const FieldState& initial, const Model& model, const EvolveConfig& cfg,
                         const std::vector<Probe>& probes) {
    ProbeSeries out;
    for (const auto& p : probes) out.values[p.name];
    evolve_visit(initial, model, cfg, [&](const SnapshotView& s) {
        out.t.push_back(s.full.t);
        for (const auto& p : probes) out.values[p.name].push_back(p.eval(s.full, s.perturbation));
    });
    return out;
}

ProbeSeries evolve_probe(const SolutionSampler& initial, double t0, const Grid& g, const Model& model,
                         const EvolveConfig& cfg, const std::vector<Probe>& probes) {
    return evolve_probe(initial.state(t0, g), model, cfg, probes);
}

}  // namespace sgk
