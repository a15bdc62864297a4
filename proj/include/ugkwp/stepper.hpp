// One time step of UGKWP / UGKP / GKS: CFL control, reconstruction, wave
// fluxes, particle streaming, macroscopic update with corrections, hydro
// quantities, and resampling.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ugkwp/gas_model.hpp"
#include "ugkwp/mesh.hpp"
#include "ugkwp/moments.hpp"
#include "ugkwp/particles.hpp"
#include "ugkwp/reconstruction.hpp"
#include "ugkwp/wave_flux.hpp"

namespace ugkwp {

enum class Mode { UGKWP, UGKP, GKS };

struct numerical_abort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Diagnostics {
    long correction_w_fires = 0;   // clamps on the updated macroscopic field
    long correction_h_fires = 0;   // clamps on the hydro quantities
    long degenerate_hydro = 0;     // cells whose hydro state could not be sampled
    long tau_floor_hits = 0;
    long transform_fallbacks = 0;
    long eliminated_total = 0;
    long wall_hits_total = 0;
    double sampled_mass_last = 0.0;     // fresh hydro mass sampled in last step
    double sampled_frac_max_last = 0.0; // max per-cell sampled/hydro mass ratio
    long live_particles = 0;
};

struct SimState {
    RectMesh mesh;
    GasModel gas;
    Boundaries bc;
    Mode mode = Mode::UGKWP;

    std::vector<MacroState> W;       // cell averages
    std::vector<MacroState> Wwave;   // analytic hydro remainder driving F_f^h
    std::vector<double> carry;       // per-cell sampling mass residual
    ParticlePool pool;
    std::vector<RngStream> cell_rng;    // classification + wall interaction
    std::vector<RngStream> sample_rng;  // batch sampling
    std::vector<FaceInjector> injectors;

    double time = 0.0;
    long step_count = 0;
    double m_p = 1.0;
    double cfl = 0.95;
    double visc_jump_coeff = 1.0;   // pressure-jump addition to the interface tau
    double thermal_margin = 0.0;    // optional sqrt(T) multiple in the CFL signal
    uint64_t seed = 0;
    bool particles_initialized = false;
    Diagnostics diag;
};

SimState make_state(RectMesh mesh, const GasModel& gas, const Boundaries& bc,
                    Mode mode, const std::vector<MacroState>& W0, double m_p,
                    double cfl, uint64_t seed);

// cfl * min over cells of 1 / sum_axes (|U|+c+sqrt(T))/dx
double compute_dt(const SimState& s);

// density floored at zero, total energy floored at kinetic energy
MacroState apply_correction(const MacroState& W, long* fires);

// First particle population (fixed-point wave/particle split); no-op in GKS
// mode or when already initialized.
void initialize_particles(SimState& s, double dt);

// One full step of the configured mode.
void advance(SimState& s, double dt);

// Deterministic wave flux (F_g, F_f^h) of one interior x/y interface, exposed
// for the flux-equivalence checks. `axis` 0/1; interface between (i,j) and its
// +axis neighbor.
struct FluxPair {
    Vec5 Fg{}, Ffh{};
};
FluxPair wave_interface_flux(const SimState& s, int i, int j, int axis, double dt);

struct RunControl {
    double t_end = 0.0;
    long max_steps = 1000000000L;
    double avg_start = -1.0;   // start of time averaging; < 0 disables
    double steady_tol = 0.0;   // stop when averaged residual drops below; 0 = off
    long steady_check_every = 200;
    std::function<void(const SimState&)> on_step;  // optional observer
};

struct RunResult {
    std::vector<MacroState> averaged;   // time-averaged field (or final if off)
    std::vector<double> avg_particles;  // averaged per-cell live particle count
    double residual = 0.0;
    long steps = 0;
    bool reached_steady = false;
};

RunResult run(SimState& s, const RunControl& rc);

// Live particle count and mass per cell (diagnostics / output columns).
void particle_counts(const SimState& s, std::vector<long>& n, std::vector<double>& mass);

}  // namespace ugkwp
