#pragma once

#include "sgk/core.hpp"

#include <functional>
#include <string>

namespace sgk {

struct Sample {
    double value = 0.0;
    double rate = 0.0;
};

// A closed-form solution (t, x) -> (phi, phi_t).
struct SolutionSampler {
    std::function<Sample(double, double)> eval;
    std::string label;

    Sample operator()(double t, double x) const { return eval(t, x); }

    FieldState state(double t, const Grid& g) const {
        Field u(g.n), v(g.n);
        for (long i = 0; i < g.n; ++i) {
            Sample s = eval(t, g.x(i));
            u[i] = s.value;
            v[i] = s.rate;
        }
        return FieldState(t, g, std::move(u), std::move(v));
    }

    Field values(double t, const Grid& g) const {
        Field u(g.n);
        for (long i = 0; i < g.n; ++i) u[i] = eval(t, g.x(i)).value;
        return u;
    }
};

// Complex-valued mode, stored as explicit (re, im) parts with their time derivatives.
struct ModeSample {
    double re = 0.0, im = 0.0;
    double re_t = 0.0, im_t = 0.0;
};

struct ModeSampler {
    std::function<ModeSample(double, double)> eval;
    std::string label;
    bool complex = false;

    ModeSample operator()(double t, double x) const { return eval(t, x); }

    SolutionSampler real_part() const {
        auto f = eval;
        return {[f](double t, double x) {
                    ModeSample m = f(t, x);
                    return Sample{m.re, m.re_t};
                },
                label + ".re"};
    }
};

}  // namespace sgk
