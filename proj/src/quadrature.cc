#include "ghz/quadrature.h"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace ghz {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; k++) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1)};
}

}  // namespace

GaussLegendre gauss_legendre(int n) {
    if (n < 1) {
        throw std::invalid_argument("gauss_legendre: need at least one node");
    }
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; i++) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; iter++) {
            auto [p, dp] = legendre(n, x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        double dp = legendre(n, x).second;
        double w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0;
    }
    return rule;
}

double sphere_average_fixed(const SphereIntegrand &f, int nodes) {
    GaussLegendre rule = gauss_legendre(nodes);
    double dphi = 2 * std::numbers::pi / nodes;
    double sum = 0;
    for (int i = 0; i < nodes; i++) {
        double theta = std::acos(rule.nodes[i]);
        double ring = 0;
        for (int j = 0; j < nodes; j++) {
            ring += f(theta, j * dphi);
        }
        sum += rule.weights[i] * ring * dphi;
    }
    return sum / (4 * std::numbers::pi);
}

SphereAverage sphere_average(const SphereIntegrand &f, double tol, int max_nodes) {
    int nodes = 8;
    double previous = sphere_average_fixed(f, nodes);
    while (nodes * 2 <= max_nodes) {
        nodes *= 2;
        double current = sphere_average_fixed(f, nodes);
        if (std::abs(current - previous) < tol) {
            return {current, nodes};
        }
        previous = current;
    }
    throw QuadratureError("sphere_average: no convergence to " + std::to_string(tol) + " within " +
                          std::to_string(max_nodes) + " nodes per axis");
}

}  // namespace ghz
