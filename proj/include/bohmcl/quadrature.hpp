#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace bohmcl::quadrature {

struct Rule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n.
inline Rule gauss_legendre(int n) {
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

// Integral of f over [a, b] x [a, b] with an n-point tensor rule.
template <typename F>
double integrate_square(F&& f, double a, double b, int n = 64) {
    const Rule rule = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = mid + half * rule.nodes[i];
        double inner = 0.0;
        for (int j = 0; j < n; ++j) {
            const double y = mid + half * rule.nodes[j];
            inner += rule.weights[j] * f(x, y);
        }
        sum += rule.weights[i] * inner;
    }
    return sum * half * half;
}

}  // namespace bohmcl::quadrature
