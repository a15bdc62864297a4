#include "ugkwp/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace ugkwp {

RectMesh RectMesh::uniform_1d(double x0, double x1, int nx) {
    if (nx <= 0 || !(x1 > x0)) throw std::invalid_argument("mesh: bad 1d extents");
    RectMesh m;
    m.dim = 1;
    m.nx = nx;
    m.ny = 1;
    m.xs.resize(nx + 1);
    for (int i = 0; i <= nx; ++i) m.xs[i] = x0 + (x1 - x0) * i / nx;
    m.ys = {0.0, 1.0};
    return m;
}

RectMesh RectMesh::from_nodes(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() < 2) throw std::invalid_argument("mesh: need at least one cell");
    RectMesh m;
    m.xs = std::move(xs);
    m.nx = static_cast<int>(m.xs.size()) - 1;
    if (ys.size() >= 2) {
        m.dim = 2;
        m.ys = std::move(ys);
        m.ny = static_cast<int>(m.ys.size()) - 1;
    } else {
        m.dim = 1;
        m.ny = 1;
        m.ys = {0.0, 1.0};
    }
    for (int i = 0; i < m.nx; ++i)
        if (!(m.xs[i + 1] > m.xs[i])) throw std::invalid_argument("mesh: x nodes not increasing");
    for (int j = 0; j < m.ny; ++j)
        if (!(m.ys[j + 1] > m.ys[j])) throw std::invalid_argument("mesh: y nodes not increasing");
    return m;
}

std::vector<double> stretched_nodes(double x0, double x1, int n, double w0,
                                    bool from_low) {
    const double L = x1 - x0;
    if (n <= 0 || !(L > 0.0) || !(w0 > 0.0))
        throw std::invalid_argument("stretched_nodes: bad arguments");
    if (n == 1 || w0 * n >= L) {
        // uniform fallback when the requested first width cannot stretch
        std::vector<double> xs(n + 1);
        for (int i = 0; i <= n; ++i) xs[i] = x0 + L * i / n;
        return xs;
    }
    // solve w0 (r^n - 1)/(r - 1) = L for the ratio r > 1 by Newton
    double r = std::pow(L / w0, 1.0 / (n - 1));  // crude start
    for (int it = 0; it < 100; ++it) {
        const double f = w0 * (std::pow(r, n) - 1.0) / (r - 1.0) - L;
        const double df = w0 * (n * std::pow(r, n - 1) * (r - 1.0) -
                                (std::pow(r, n) - 1.0)) /
                          ((r - 1.0) * (r - 1.0));
        const double step = f / df;
        r -= step;
        if (r <= 1.0) r = 1.0 + 1e-12;
        if (std::abs(step) < 1e-14 * r) break;
    }
    std::vector<double> xs(n + 1);
    xs[0] = 0.0;
    double w = w0;
    for (int i = 0; i < n; ++i) {
        xs[i + 1] = xs[i] + w;
        w *= r;
    }
    const double scale = L / xs[n];  // absorb residual roundoff
    std::vector<double> out(n + 1);
    for (int i = 0; i <= n; ++i)
        out[i] = from_low ? x0 + xs[i] * scale : x1 - xs[n - i] * scale;
    out[0] = x0;
    out[n] = x1;
    return out;
}

}  // namespace ugkwp
