// Stochastic half of the solver: particle storage, first-collision-time
// sampling and classification, moment-exact Maxwellian batch sampling, and
// streaming with boundary interaction plus the per-cell net transport tally.
#pragma once

#include <cstdint>
#include <vector>

#include "ugkwp/gas_model.hpp"
#include "ugkwp/mesh.hpp"
#include "ugkwp/rng.hpp"

namespace ugkwp {

enum class ParticleTag : uint8_t { collisionless = 0, collisional = 1, fresh_hydro = 2 };

struct ParticlePool {
    std::vector<double> mass, x, y, vx, vy, vz, eint, tc;
    std::vector<int32_t> cell;
    std::vector<uint8_t> tag;
    std::vector<uint8_t> dead;

    size_t size() const { return mass.size(); }
    void push(double m, double px, double py, double vx_, double vy_, double vz_,
              double e, int32_t c, ParticleTag t);
    void compact();  // drop dead particles
    void clear();

    // energy content of particle k: 0.5 m v^2 + m eint
    Vec5 content(size_t k) const {
        const double m = mass[k];
        const double e = 0.5 * (vx[k] * vx[k] + vy[k] * vy[k] + vz[k] * vz[k]) + eint[k];
        return {m, m * vx[k], m * vy[k], m * vz[k], m * e};
    }
};

// t_c = -tau ln(eta), eta ~ U(0,1]
double sample_tc(double tau, RngStream& rng);

struct ClassifyCounts {
    long collisionless = 0;
    long collisional = 0;
};

// Fresh t_c for every particle from its cell's stream; tags by t_c >= dt.
ClassifyCounts classify(ParticlePool& pool, double dt,
                        const std::vector<double>& tau_cell,
                        std::vector<RngStream>& cell_rng);

struct SampleTarget {
    double mass = 0.0;                 // total mass to realize
    std::array<double, 3> U{0, 0, 0};  // bulk velocity
    double lambda = 0.0;
    double eint = 0.0;                 // specific internal energy
};

struct CellBox {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    int32_t cell_id = 0;
    int dim = 1;
};

struct SamplingDiag {
    long transform_fallbacks = 0;
    long batches = 0;
};

// Appends N = round(target.mass/m_p) particles with positions uniform in the
// cell, Gaussian velocities, eint = target.eint, then applies
// consistent_transform so the batch moments are exact. Returns realized mass
// (N*m_p); the caller keeps the residual in its per-cell accumulator.
double sample_maxwellian_batch(ParticlePool& pool, const SampleTarget& target,
                               double m_p, const CellBox& box, ParticleTag tag,
                               RngStream& rng, SamplingDiag* diag = nullptr);

// v' = b (v - a - U) + U on pool indices [first, first+n); exact first and
// second moments against (U, Etarget). Returns false on shift-only fallback.
bool consistent_transform(ParticlePool& pool, size_t first, size_t n,
                          const std::array<double, 3>& U, double E_specific);

// Reservoir injection bookkeeping for one boundary cell face.
struct FaceInjector {
    Face face = kWest;
    int i = 0, j = 0;          // adjacent interior cell
    double rate = 0.0;         // current expected mass per unit time
    double rate_full = 0.0;    // full reservoir half-Maxwellian mass rate
    double tau = 0.0;          // reservoir relaxation time
    Primitive res;             // reservoir state
    double carry = 0.0;
    RngStream rng;
};

struct StreamLedger {
    std::vector<Vec5> net_flux;  // F_f^P per cell: after - before
    Vec5 outflow{};              // content that left through open boundaries
    Vec5 inflow{};               // content injected from reservoirs
    Vec5 wall_exchange{};        // momentum/energy handed over by diffuse walls
    long eliminated = 0;         // collisional particles absorbed
    long wall_hits = 0;
};

// Streams every live particle for min(t_c, dt) with boundary interaction,
// tallies per-cell net transport, then eliminates collisional particles
// (their content stays in the tally of the stopping cell).
StreamLedger stream_and_tally(ParticlePool& pool, double dt, const RectMesh& mesh,
                              const Boundaries& bc, const GasModel& gas,
                              std::vector<RngStream>& cell_rng,
                              std::vector<FaceInjector>& injectors, double m_p);

// Sum of live-particle content per cell (used for the hydro quantities).
void particle_content_per_cell(const ParticlePool& pool, int ncells,
                               std::vector<Vec5>& out);

// Inward-flux-weighted half-Maxwellian normal speed for a drifting reservoir,
// p(w) ~ w exp(-lambda (w - Un)^2), w > 0 (acceptance-rejection).
double sample_inward_speed(double Un, double lambda, RngStream& rng);

}  // namespace ugkwp
