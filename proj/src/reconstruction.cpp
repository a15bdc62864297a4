#include "ugkwp/reconstruction.hpp"

#include <cmath>

namespace ugkwp {

double van_leer_slope(double s_l, double s_r) {
    if (s_l * s_r <= 0.0) return 0.0;
    const double sgn = s_l > 0.0 ? 2.0 : -2.0;
    return sgn * std::abs(s_l) * std::abs(s_r) / (std::abs(s_l) + std::abs(s_r));
}

namespace {

bool physical(const MacroState& W) {
    if (!(W.rho > 0.0)) return false;
    const double kin = 0.5 * (W.mom[0] * W.mom[0] + W.mom[1] * W.mom[1] +
                              W.mom[2] * W.mom[2]) / W.rho;
    return W.rhoE - kin > 0.0;
}

Vec5 limited_slope(const MacroState& Wm, const MacroState& W0, const MacroState& Wp,
                   double hm, double hp) {
    Vec5 s;
    const Vec5 vm = Wm.vec(), v0 = W0.vec(), vp = Wp.vec();
    for (int q = 0; q < 5; ++q)
        s[q] = van_leer_slope((v0[q] - vm[q]) / hm, (vp[q] - v0[q]) / hp);
    return s;
}

// positivity guard: extrapolations to +-h/2 must remain physical
bool extrapolation_ok(const MacroState& W0, const Vec5& s, double h) {
    const MacroState lo = MacroState::from_vec(W0.vec() - (0.5 * h) * s);
    const MacroState hi = MacroState::from_vec(W0.vec() + (0.5 * h) * s);
    return physical(lo) && physical(hi);
}

}  // namespace

void compute_slopes(CellField& field, const GhostProvider& ghosts,
                    const GasModel& /*gas*/) {
    const RectMesh& mesh = *field.mesh;
    field.slope_x.assign(mesh.ncells(), Vec5{});
    if (mesh.dim == 2) field.slope_y.assign(mesh.ncells(), Vec5{});

    for (int j = 0; j < mesh.ny; ++j) {
        for (int i = 0; i < mesh.nx; ++i) {
            if (mesh.is_solid(i, j)) continue;
            const int c = mesh.id(i, j);
            const MacroState& W0 = field.W[c];

            const bool solid_w = i > 0 && mesh.is_solid(i - 1, j);
            const bool solid_e = i + 1 < mesh.nx && mesh.is_solid(i + 1, j);
            const MacroState Wm = (i == 0) ? ghosts.ghost(kWest, i, j)
                                 : solid_w ? W0
                                           : field.W[mesh.id(i - 1, j)];
            const MacroState Wp = (i + 1 == mesh.nx) ? ghosts.ghost(kEast, i, j)
                                  : solid_e ? W0
                                            : field.W[mesh.id(i + 1, j)];
            const double hm = (i == 0 || solid_w)
                                  ? mesh.dx(i)
                                  : 0.5 * (mesh.dx(i - 1) + mesh.dx(i));
            const double hp = (i + 1 == mesh.nx || solid_e)
                                  ? mesh.dx(i)
                                  : 0.5 * (mesh.dx(i) + mesh.dx(i + 1));
            Vec5 sx = limited_slope(Wm, W0, Wp, hm, hp);
            if (!extrapolation_ok(W0, sx, mesh.dx(i))) sx = Vec5{};
            field.slope_x[c] = sx;

            if (mesh.dim == 2) {
                const bool solid_s = j > 0 && mesh.is_solid(i, j - 1);
                const bool solid_n = j + 1 < mesh.ny && mesh.is_solid(i, j + 1);
                const MacroState Ws = (j == 0) ? ghosts.ghost(kSouth, i, j)
                                      : solid_s ? W0
                                                : field.W[mesh.id(i, j - 1)];
                const MacroState Wn = (j + 1 == mesh.ny) ? ghosts.ghost(kNorth, i, j)
                                      : solid_n ? W0
                                                : field.W[mesh.id(i, j + 1)];
                const double hs = (j == 0 || solid_s)
                                      ? mesh.dy(j)
                                      : 0.5 * (mesh.dy(j - 1) + mesh.dy(j));
                const double hn = (j + 1 == mesh.ny || solid_n)
                                      ? mesh.dy(j)
                                      : 0.5 * (mesh.dy(j) + mesh.dy(j + 1));
                Vec5 sy = limited_slope(Ws, W0, Wn, hs, hn);
                if (!extrapolation_ok(W0, sy, mesh.dy(j))) sy = Vec5{};
                field.slope_y[c] = sy;
            }
        }
    }
}

InterfaceStates interface_states(const CellField& field, int il, int jl, int ir,
                                 int jr, int axis, const MacroState* left_ghost,
                                 const MacroState* right_ghost) {
    const RectMesh& mesh = *field.mesh;
    InterfaceStates s;

    const double hl = axis == 0 ? mesh.dx(left_ghost ? ir : il)
                                : mesh.dy(left_ghost ? jr : jl);
    if (left_ghost) {
        s.cellL = *left_ghost;
        s.WL = *left_ghost;
        s.distL = 0.5 * hl;  // ghost mirrors the adjacent width
    } else {
        const int cl = mesh.id(il, jl);
        s.cellL = field.W[cl];
        const Vec5& sn = axis == 0 ? field.slope_x[cl] : field.slope_y[cl];
        s.slopeL_n = sn;
        s.slopeL_t = (mesh.dim == 2) ? (axis == 0 ? field.slope_y[cl] : field.slope_x[cl])
                                     : Vec5{};
        s.distL = 0.5 * hl;
        s.WL = MacroState::from_vec(s.cellL.vec() + s.distL * sn);
        if (!(s.WL.rho > 0.0)) s.WL = s.cellL;
    }

    if (right_ghost) {
        const double hr = axis == 0 ? mesh.dx(il) : mesh.dy(jl);
        s.cellR = *right_ghost;
        s.WR = *right_ghost;
        s.distR = 0.5 * hr;
    } else {
        const int cr = mesh.id(ir, jr);
        const double hr = axis == 0 ? mesh.dx(ir) : mesh.dy(jr);
        s.cellR = field.W[cr];
        const Vec5& sn = axis == 0 ? field.slope_x[cr] : field.slope_y[cr];
        s.slopeR_n = sn;
        s.slopeR_t = (mesh.dim == 2) ? (axis == 0 ? field.slope_y[cr] : field.slope_x[cr])
                                     : Vec5{};
        s.distR = 0.5 * hr;
        s.WR = MacroState::from_vec(s.cellR.vec() - s.distR * sn);
        if (!(s.WR.rho > 0.0)) s.WR = s.cellR;
    }
    return s;
}

}  // namespace ugkwp
