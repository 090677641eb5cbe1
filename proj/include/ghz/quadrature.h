#ifndef GHZ_QUADRATURE_H
#define GHZ_QUADRATURE_H

#include <functional>
#include <stdexcept>
#include <vector>

namespace ghz {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

class QuadratureError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

using SphereIntegrand = std::function<double(double theta, double phi)>;

/// (1/4pi) integral of f over the unit sphere with `nodes` points per axis:
/// Gauss-Legendre in u = cos(theta), uniform periodic nodes in phi.
double sphere_average_fixed(const SphereIntegrand &f, int nodes);

struct SphereAverage {
    double value;
    int nodes;
};

/// Starts at 8 nodes per axis and doubles until two successive values differ
/// by less than `tol`. Throws QuadratureError past `max_nodes`.
SphereAverage sphere_average(const SphereIntegrand &f, double tol = 1e-10, int max_nodes = 256);

}  // namespace ghz

#endif
