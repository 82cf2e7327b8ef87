// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#include "ballfield/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace ballfield {

void QuadratureConfig::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
}

namespace {

// Kronrod-15 abscissae/weights and the embedded Gauss-7 weights (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel
{
    double a, b;
    double value;
    double error;
};

struct PanelWorse
{
    bool operator()(const Panel& x, const Panel& y) const
    {
        if (x.error != y.error)
            return x.error < y.error;
        return x.a > y.a;  // deterministic tie-break
    }
};

Panel eval_gk15(const std::function<double(double)>& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    for (int i = 0; i < 7; ++i)
    {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);

    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i)
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i)
    {
        const int j = 2 * i + 1;
        resg += kWg[i] * (fv[j] + fv[14 - j]);
    }

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));
    resasc *= h;

    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return Panel{a, b, resk * h, err};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureConfig& cfg, int initial_panels)
{
    cfg.validate();
    QuadratureResult res;
    if (a == b)
    {
        res.converged = true;
        return res;
    }
    initial_panels = std::clamp(initial_panels, 1, 1 << 16);

    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
    double value = 0.0;
    double error = 0.0;
    const double width = (b - a) / initial_panels;
    for (int i = 0; i < initial_panels; ++i)
    {
        const double lo = a + i * width;
        const double hi = (i + 1 == initial_panels) ? b : a + (i + 1) * width;
        Panel p = eval_gk15(f, lo, hi);
        value += p.value;
        error += p.error;
        heap.push(p);
    }
    res.evaluations = 15L * initial_panels;

    int splits = 0;
    while (error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)) &&
           splits < cfg.max_subdivisions)
    {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
        {
            heap.push(worst);  // interval exhausted at machine precision
            break;
        }
        Panel left = eval_gk15(f, worst.a, mid);
        Panel right = eval_gk15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        res.evaluations += 30;
        ++splits;
    }

    // Re-sum panels in positional order for a scheduling-independent result.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty())
    {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double total = 0.0;
    double err_total = 0.0;
    for (const Panel& p : panels)
    {
        total += p.value;
        err_total += p.error;
    }

    res.value = total;
    res.error = err_total;
    res.panels = static_cast<int>(panels.size());
    res.converged = err_total <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    return res;
}

}  // namespace ballfield
