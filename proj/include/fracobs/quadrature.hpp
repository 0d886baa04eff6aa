#pragma once

// Gauss-Legendre rules (nodes by Newton on P_n) and composite panel helpers.

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

namespace fracobs {

struct QuadRule {
    std::vector<double> x;  // nodes on [-1,1]
    std::vector<double> w;
};

/// n-point Gauss-Legendre rule on [-1,1]; cached per n.
inline const QuadRule& gauss_legendre(int n) {
    static std::map<int, QuadRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(r)).first->second;
}

struct PanelQuad {
    std::vector<double> x;
    std::vector<double> w;

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * f(x[i]);
        return acc;
    }
};

/// Composite GL over explicit panel edges.
inline PanelQuad composite_gl(const std::vector<double>& edges, int pts) {
    const QuadRule& g = gauss_legendre(pts);
    PanelQuad out;
    out.x.reserve((edges.size() - 1) * pts);
    out.w.reserve((edges.size() - 1) * pts);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        double a = edges[p], b = edges[p + 1];
        for (int i = 0; i < pts; ++i) {
            out.x.push_back(0.5 * (b - a) * g.x[i] + 0.5 * (a + b));
            out.w.push_back(0.5 * (b - a) * g.w[i]);
        }
    }
    return out;
}

/// Uniform panels on [a,b].
inline PanelQuad composite_gl_uniform(double a, double b, int panels, int pts) {
    std::vector<double> edges(panels + 1);
    for (int p = 0; p <= panels; ++p) edges[p] = a + (b - a) * p / panels;
    return composite_gl(edges, pts);
}

/// Panels on [0,T] graded toward 0: bottom sliver + dyadic octaves up to T,
/// refined (largest-panel bisection) until at least `min_panels` panels.
/// `u_scale` is the smallest feature scale that must be resolved.
inline PanelQuad composite_gl_octave(double T, double u_scale, int min_panels, int pts) {
    double u0 = std::min(u_scale, T / 8.0);
    u0 = std::max(u0, T * 0x1p-60);
    int K = std::max(1, static_cast<int>(std::ceil(std::log2(T / u0))));
    std::vector<double> edges;
    edges.push_back(0.0);
    for (int k = K; k >= 1; --k) edges.push_back(T * std::ldexp(1.0, -k));
    edges.push_back(T);
    while (static_cast<int>(edges.size()) - 1 < min_panels) {
        std::size_t imax = 0;
        double wmax = 0.0;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            if (edges[i + 1] - edges[i] > wmax) {
                wmax = edges[i + 1] - edges[i];
                imax = i;
            }
        }
        edges.insert(edges.begin() + imax + 1, 0.5 * (edges[imax] + edges[imax + 1]));
    }
    return composite_gl(edges, pts);
}

}  // namespace fracobs
