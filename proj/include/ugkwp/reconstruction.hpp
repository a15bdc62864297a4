// Limited piecewise-linear reconstruction of conservative fields on the
// structured mesh, with ghost states supplied by the boundary conditions.
#pragma once

#include <vector>

#include "ugkwp/gas_model.hpp"
#include "ugkwp/mesh.hpp"

namespace ugkwp {

// s = (sign(sl)+sign(sr)) |sl||sr| / (|sl|+|sr|), zero for opposing signs.
double van_leer_slope(double s_l, double s_r);

// Per-cell conservative field with limited slopes along each mesh direction.
struct CellField {
    const RectMesh* mesh = nullptr;
    std::vector<MacroState> W;
    std::vector<Vec5> slope_x, slope_y;

    const MacroState& at(int i, int j) const { return W[mesh->id(i, j)]; }
};

// One-sided interface data along an axis: extrapolated states, cell averages,
// center-to-interface distances, and the per-direction slopes of each side.
struct InterfaceStates {
    MacroState WL, WR;      // extrapolated to the interface
    MacroState cellL, cellR;
    double distL = 0.0, distR = 0.0;  // cell center to interface, both > 0
    Vec5 slopeL_n{}, slopeR_n{};      // normal-direction slopes
    Vec5 slopeL_t{}, slopeR_t{};      // tangential (in-plane) slopes
};

// Ghost-state provider: returns the cell state mirrored/held across a domain
// face as the boundary condition dictates. Implemented by the stepper's
// boundary logic; reconstruction only needs values.
struct GhostProvider {
    virtual MacroState ghost(Face f, int i, int j) const = 0;
    virtual ~GhostProvider() = default;
};

// Compute limited slopes for every interior cell; boundary-adjacent one-sided
// differences use ghost states. Slopes that would extrapolate to a state with
// non-positive density or internal energy are zeroed (positivity guard).
void compute_slopes(CellField& field, const GhostProvider& ghosts,
                    const GasModel& gas);

// Assemble the one-sided data for the interface with cell (il,jl) on the low
// side and (ir,jr) on the high side of `axis` (0 = x, 1 = y). Explicit indices
// admit periodic wrap-around. `left_ghost`/`right_ghost` replace the
// respective cell when the interface lies on a domain face.
InterfaceStates interface_states(const CellField& field, int il, int jl, int ir,
                                 int jr, int axis, const MacroState* left_ghost,
                                 const MacroState* right_ghost);

}  // namespace ugkwp
