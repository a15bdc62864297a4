// Structured rectilinear mesh (1D / 2D), per-face boundary conditions, and an
// optional stair-step body mask for exploratory bluff-body configs.
#pragma once

#include <cstdint>
#include <vector>

#include "ugkwp/gas_model.hpp"

namespace ugkwp {

enum class BcType {
    periodic,
    reservoir,      // fixed far-field state; particles removed / injected
    outflow,        // zero-gradient wave ghost; particles removed
    diffuse_wall,   // Maxwellian re-emission at (Tw, Uw), zero net mass flux
    symmetry,       // mirror ghost; specular particle reflection
    plate,          // symmetry for x < plate_x0, diffuse wall beyond
};

struct BcSpec {
    BcType type = BcType::periodic;
    MacroState state{};                    // reservoir state
    double Tw = 1.0;                       // wall temperature
    std::array<double, 3> Uw{0.0, 0.0, 0.0};  // wall velocity
    double plate_x0 = 0.0;
};

// Face ids: 0 = low-x, 1 = high-x, 2 = low-y, 3 = high-y.
enum Face : int { kWest = 0, kEast = 1, kSouth = 2, kNorth = 3 };

struct RectMesh {
    int dim = 1;
    int nx = 0, ny = 1;
    std::vector<double> xs, ys;      // node coordinates, sizes nx+1 / ny+1
    std::vector<uint8_t> solid;      // optional body mask, size nx*ny

    int ncells() const { return nx * ny; }
    int id(int i, int j) const { return j * nx + i; }
    double xc(int i) const { return 0.5 * (xs[i] + xs[i + 1]); }
    double yc(int j) const { return 0.5 * (ys[j] + ys[j + 1]); }
    double dx(int i) const { return xs[i + 1] - xs[i]; }
    double dy(int j) const { return ys[j + 1] - ys[j]; }
    double volume(int i, int j) const { return dim == 1 ? dx(i) : dx(i) * dy(j); }
    bool is_solid(int i, int j) const {
        return !solid.empty() && solid[id(i, j)] != 0;
    }

    static RectMesh uniform_1d(double x0, double x1, int nx);
    static RectMesh from_nodes(std::vector<double> xs, std::vector<double> ys);
};

// Node array with geometric stretching: first cell width w0 at the `from_low`
// end, ratio solved so that n cells span [x0, x1] exactly.
std::vector<double> stretched_nodes(double x0, double x1, int n, double w0,
                                    bool from_low);

struct Boundaries {
    BcSpec face[4];
    BcSpec body;  // wall model of the stair-step body mask, if present
};

}  // namespace ugkwp
