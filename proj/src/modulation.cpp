#include "sgk/modulation.hpp"

#include "sgk/field_ops.hpp"

#include <sstream>

namespace sgk {

namespace {

KinkProfile profile_at(double beta, double t, double rho) { return KinkProfile(beta, beta * t + rho); }

}  // namespace

double shift_functional(const FieldState& s, double beta, double rho) {
    const KinkProfile q = profile_at(beta, s.t, rho);
    const Grid& g = s.grid;
    Field f(g.n);
    for (long i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        f[i] = (s.u[i] - q.Q(x)) * q.Qx(x) + (s.v[i] - q.Qt(x)) * q.Qtx(x);
    }
    return quadrature(f, g);
}

namespace {

double shift_derivative(const FieldState& s, double beta, double rho) {
    const KinkProfile q = profile_at(beta, s.t, rho);
    const Grid& g = s.grid;
    Field f(g.n);
    for (long i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        const double qx = q.Qx(x), qtx = q.Qtx(x);
        f[i] = qx * qx + qtx * qtx - (s.u[i] - q.Q(x)) * q.Qxx(x) - (s.v[i] - q.Qt(x)) * q.Qtxx(x);
    }
    return quadrature(f, g);
}

}  // namespace

PerturbationPair decompose(const FieldState& s, double beta, double rho) {
    const KinkProfile q = profile_at(beta, s.t, rho);
    return PerturbationPair(s.grid, s.u - q.sample(&KinkProfile::Q, s.grid), s.v - q.sample(&KinkProfile::Qt, s.grid));
}

double solve_shift(const FieldState& s, double beta, double rho_guess, const ShiftOptions& opt) {
    double rho = rho_guess;
    double Y = shift_functional(s, beta, rho);
    for (int k = 0; k < opt.max_iterations && std::abs(Y) > opt.tol; ++k) {
        const double dY = shift_derivative(s, beta, rho);
        if (!(std::abs(dY) > 1e-12) || !std::isfinite(Y)) break;
        rho -= Y / dY;
        if (!std::isfinite(rho) || rho - 1.0 < s.grid.x_min - beta * s.t || rho + 1.0 > s.grid.x_max - beta * s.t) break;
        Y = shift_functional(s, beta, rho);
    }
    bool converged = std::isfinite(Y) && std::abs(Y) <= opt.tol;
    if (converged) {
        // one polishing step: without it rho only moves once |Y| crosses tol, so a slowly
        // drifting shift is quantised and its time derivative picks up steps
        const double dY = shift_derivative(s, beta, rho);
        if (std::abs(dY) > 1e-12) {
            const double polished = rho - Y / dY;
            const double Yp = shift_functional(s, beta, polished);
            if (std::isfinite(Yp) && std::abs(Yp) <= std::abs(Y)) rho = polished, Y = Yp;
        }
        converged = std::abs(Y) <= opt.tol;
    }
    const double dist = converged ? energy_norm(decompose(s, beta, rho), opt.order) : INFINITY;
    if (!converged || dist >= opt.tube_radius) {
        std::ostringstream os;
        os << "solve_shift: left the tube at t = " << s.t << " (|Y| = " << Y << ", distance = " << dist << ")";
        throw TubeExit(os.str(), s.t, dist);
    }
    return rho;
}

ModulationTracker::ModulationTracker(double beta, double rho0, ShiftOptions opt, std::vector<Interval> intervals)
    : beta_(beta), rho_(rho0), opt_(opt), intervals_(std::move(intervals)) {
    lorentz_gamma(beta);
}

bool ModulationTracker::observe(const FieldState& s) {
    if (exit_) return false;
    try {
        rho_ = solve_shift(s, beta_, rho_, opt_);
    } catch (const TubeExit& e) {
        exit_ = e.t;
        return false;
    }
    ModulationRecord r;
    r.t = s.t;
    r.rho = rho_;
    r.ortho_residual = std::abs(shift_functional(s, beta_, rho_));
    PerturbationPair p = decompose(s, beta_, rho_);
    for (const auto& iv : intervals_)
        r.local_norms[iv.name] = local_energy_norm(p, rho_ + beta_ * s.t + iv.a, rho_ + beta_ * s.t + iv.b, opt_.order);
    records_.push_back(std::move(r));
    if (keep_) pairs_.push_back(std::move(p));
    return true;
}

void ModulationTracker::finish() {
    const size_t n = records_.size();
    if (n < 2) return;
    for (size_t i = 0; i < n; ++i) {
        const size_t lo = i == 0 ? 0 : i - 1, hi = i + 1 == n ? n - 1 : i + 1;
        records_[i].rho_rate = (records_[hi].rho - records_[lo].rho) / (records_[hi].t - records_[lo].t);
        records_[i].lhs_rate = std::abs(records_[i].rho_rate);
    }
}

Probe modulation_probe(ModulationTracker& tracker) {
    return {"rho", [&tracker](const FieldState& s, const Field&) {
                return tracker.observe(s) ? tracker.records().back().rho : NAN;
            }};
}

const BoundRatio& RhoRateReport::get(const std::string& name) const {
    for (const auto& r : ratios)
        if (r.name == name) return r;
    throw ContractViolation("RhoRateReport: no ratio named " + name);
}

namespace {

double weighted(const Grid& g, const Field& density, double rho, double rate) {
    Field w = (-rate * (g.nodes().array() - rho).abs()).exp().matrix();
    return quadrature(Field(w.cwiseProduct(density)), g);
}

double sech_weighted(const Grid& g, const Field& density, double rho, double power) {
    Field w(g.n);
    for (long i = 0; i < g.n; ++i) w[i] = std::pow(1.0 / std::cosh(g.x(i) - rho), power);
    return quadrature(Field(w.cwiseProduct(density)), g);
}

void track(BoundRatio& b, double lhs, double rhs, double floor) {
    b.max_lhs = std::max(b.max_lhs, lhs);
    b.max_rhs = std::max(b.max_rhs, rhs);
    if (rhs > floor) b.max_ratio = std::max(b.max_ratio, lhs / rhs);
}

}  // namespace

BoundTerms bound_terms(const PerturbationPair* us, const PerturbationPair& yv, double rho, double eps) {
    const Grid& g = yv.grid;
    Field yx = derivative(yv.first, g, 6);
    Field y2 = yv.first.cwiseAbs2(), v2 = yv.second.cwiseAbs2(), yx2 = yx.cwiseAbs2();
    BoundTerms b;
    b.rate_vacuum = weighted(g, Field(v2 + y2 + yx2), rho, 1.0 - eps);
    if (!us) return b;
    if (!(us->grid == g)) throw ContractViolation("bound_terms: grids differ");
    Field ux = derivative(us->first, g, 6);
    Field u2 = us->first.cwiseAbs2(), ux2 = ux.cwiseAbs2();
    b.has_kink_side = true;
    b.rate_mixed = weighted(g, Field(u2 + ux2), rho, 1.0 + eps) + weighted(g, Field(y2 + yx2), rho, 1.0 - eps);
    b.gradient_lhs = weighted(g, ux2, rho, 1.0 + eps);
    b.gradient_rhs = weighted(g, Field(u2 + y2 + v2), rho, 1.0 + eps);
    b.sech_lhs = sech_weighted(g, u2, rho, 1.0 + eps);
    b.sech_rhs = sech_weighted(g, Field(y2 + yx2 + v2), rho, 1.0 - eps);
    return b;
}

RhoRateReport rho_rate_check(std::vector<ModulationRecord>& records, double floor) {
    RhoRateReport rep;
    rep.ratios = {{"rate-vacuum"}, {"rate-mixed"}, {"gradient"}, {"sech"}};
    for (ModulationRecord& r : records) {
        const double lhs = std::abs(r.rho_rate);
        r.lhs_rate = lhs;
        r.rhs_bound = r.bounds.rate_vacuum;
        rep.max_rate = std::max(rep.max_rate, lhs);
        track(rep.ratios[0], lhs, r.bounds.rate_vacuum, floor);
        if (!r.bounds.has_kink_side) continue;
        track(rep.ratios[1], lhs, r.bounds.rate_mixed, floor);
        track(rep.ratios[2], r.bounds.gradient_lhs, r.bounds.gradient_rhs, floor);
        track(rep.ratios[3], r.bounds.sech_lhs, r.bounds.sech_rhs, floor);
    }
    return rep;
}

RhoRateReport rho_rate_check(std::vector<ModulationRecord>& records, const std::vector<PerturbationPair>& zero_pairs,
                             const std::vector<PerturbationPair>& kink_pairs, double eps, double floor) {
    if (zero_pairs.size() != records.size()) throw ContractViolation("rho_rate_check: series lengths differ");
    if (!kink_pairs.empty() && kink_pairs.size() != records.size())
        throw ContractViolation("rho_rate_check: series lengths differ");
    for (size_t i = 0; i < records.size(); ++i)
        records[i].bounds = bound_terms(kink_pairs.empty() ? nullptr : &kink_pairs[i], zero_pairs[i], records[i].rho, eps);
    RhoRateReport rep = rho_rate_check(records, floor);
    rep.eps = eps;
    return rep;
}

StildeReport stilde_bound_check(const PerturbationPair& us, const PerturbationPair& yv, double rho, int order) {
    if (!(us.grid == yv.grid)) throw ContractViolation("stilde_bound_check: grids differ");
    const Grid& g = us.grid;
    Field yx = derivative(yv.first, g, order);
    StildeReport rep;
    const double scale = std::max((yx.cwiseAbs() + yv.first.cwiseAbs()).maxCoeff(), 1e-300);
    for (long i = 0; i < g.n; ++i) {
        const double z = g.x(i) - rho;
        const double sq = std::tanh(z), cq = 1.0 / std::cosh(z);
        const double hu = 0.5 * us.first[i];
        const double rhs = yx[i] - 2.0 * (cq * std::sin(hu) + sq * std::cos(hu)) * std::sin(0.5 * yv.first[i]);
        rep.identity_residual = std::max(rep.identity_residual, std::abs(us.second[i] - rhs));
        const double den = std::abs(yx[i]) + std::abs(yv.first[i]);
        if (den > 1e-8 * scale) rep.bound_constant = std::max(rep.bound_constant, std::abs(us.second[i]) / den);
    }
    return rep;
}

std::string to_string(ConvergenceKind k) {
    return k == ConvergenceKind::bounded_converging ? "bounded-converging" : "excursion";
}

Classification convergence_classifier(const std::vector<ModulationRecord>& records, double variation_tol,
                                      const std::string& interval) {
    Classification c;
    if (records.empty()) return c;
    const size_t n = records.size();
    const size_t start = n - std::max<size_t>(n / 4, 1);
    double mean = 0.0;
    for (size_t i = start; i < n; ++i) {
        mean += records[i].rho;
        if (i > start) c.tail_variation += std::abs(records[i].rho - records[i - 1].rho);
    }
    mean /= double(n - start);
    for (const auto& r : records) {
        auto it = r.local_norms.find(interval);
        if (it != r.local_norms.end()) c.local_norm_series.push_back(it->second);
    }
    if (c.tail_variation < variation_tol) {
        c.kind = ConvergenceKind::bounded_converging;
        c.rho_bar = mean;
        return c;
    }
    c.kind = ConvergenceKind::excursion;
    double best = -1.0;
    for (const auto& r : records)
        if (std::abs(r.rho) > best) {
            best = std::abs(r.rho);
            c.excursion_times.push_back(r.t);
        }
    return c;
}

}  // namespace sgk
