#include "ugkwp/stepper.hpp"

#include <algorithm>
#include <cmath>

namespace ugkwp {

namespace {

MacroState mirror_state(const MacroState& W, int axis) {
    MacroState g = W;
    g.mom[axis] = -g.mom[axis];
    return g;
}

Vec5 swap_xy(Vec5 v) {
    std::swap(v[1], v[2]);
    return v;
}

MacroState swap_xy(const MacroState& W) {
    return MacroState::from_vec(swap_xy(W.vec()));
}

InterfaceStates to_local(InterfaceStates st, int axis) {
    if (axis == 0) return st;
    st.WL = swap_xy(st.WL);
    st.WR = swap_xy(st.WR);
    st.cellL = swap_xy(st.cellL);
    st.cellR = swap_xy(st.cellR);
    st.slopeL_n = swap_xy(st.slopeL_n);
    st.slopeR_n = swap_xy(st.slopeR_n);
    st.slopeL_t = swap_xy(st.slopeL_t);
    st.slopeR_t = swap_xy(st.slopeR_t);
    return st;
}

// Ghost states for reconstruction and boundary interfaces. The wave field
// scales reservoir ghosts by the analytic (unsampled) fraction so boundaries
// mirror the interior wave/particle split.
struct StateGhosts final : GhostProvider {
    const SimState* s = nullptr;
    const std::vector<MacroState>* field = nullptr;
    bool wave = false;
    double wave_frac[4] = {1.0, 1.0, 1.0, 1.0};

    MacroState ghost(Face f, int i, int j) const override {
        const RectMesh& mesh = s->mesh;
        const BcSpec& spec = s->bc.face[f];
        const MacroState& interior = (*field)[mesh.id(i, j)];
        switch (spec.type) {
            case BcType::periodic:
                switch (f) {
                    case kWest: return (*field)[mesh.id(mesh.nx - 1, j)];
                    case kEast: return (*field)[mesh.id(0, j)];
                    case kSouth: return (*field)[mesh.id(i, mesh.ny - 1)];
                    case kNorth: return (*field)[mesh.id(i, 0)];
                }
                break;
            case BcType::reservoir:
                return wave ? wave_frac[f] * spec.state : spec.state;
            case BcType::outflow:
            case BcType::diffuse_wall:
                return interior;
            case BcType::symmetry:
                return mirror_state(interior, f == kWest || f == kEast ? 0 : 1);
            case BcType::plate:
                return mesh.xc(i) < spec.plate_x0
                           ? mirror_state(interior, f == kWest || f == kEast ? 0 : 1)
                           : interior;
        }
        return interior;
    }
};

// steady-state particle mass fraction of the sampling circulation at a given
// per-step collisionless fraction e
double particle_fraction_fixed_point(double e) {
    return e / (1.0 - e + e * e);
}

struct FluxWork {
    CellField Wf;       // total conservative field
    CellField wavef;    // analytic hydro remainder
    StateGhosts gw, gwave;
    bool use_wave = false;
};

}  // namespace

SimState make_state(RectMesh mesh, const GasModel& gas, const Boundaries& bc,
                    Mode mode, const std::vector<MacroState>& W0, double m_p,
                    double cfl, uint64_t seed) {
    SimState s;
    s.mesh = std::move(mesh);
    s.gas = gas;
    s.bc = bc;
    s.mode = mode;
    s.W = W0;
    const int nc = s.mesh.ncells();
    if (static_cast<int>(s.W.size()) != nc)
        throw std::invalid_argument("make_state: field size mismatch");
    s.Wwave.assign(nc, MacroState{});
    s.carry.assign(nc, 0.0);
    s.m_p = m_p;
    s.cfl = cfl;
    s.seed = seed;
    s.cell_rng.resize(nc);
    s.sample_rng.resize(nc);
    for (int c = 0; c < nc; ++c) {
        s.cell_rng[c] = RngStream(seed, 3ull * c);
        s.sample_rng[c] = RngStream(seed, 3ull * c + 1);
    }

    // reservoir faces inject particles; set up per-boundary-cell injectors
    if (mode != Mode::GKS) {
        uint64_t stream = 3ull * nc;
        for (int f = 0; f < 4; ++f) {
            if (s.bc.face[f].type != BcType::reservoir) continue;
            if (s.mesh.dim == 1 && f >= 2) continue;
            const Primitive res = to_primitive(s.bc.face[f].state, gas);
            const MomentTable m = maxwell_moments(res, gas);
            const int n_along = (f == kWest || f == kEast) ? s.mesh.ny : s.mesh.nx;
            for (int k = 0; k < n_along; ++k) {
                FaceInjector inj;
                inj.face = static_cast<Face>(f);
                inj.res = res;
                inj.tau = relaxation_time(res, gas);
                inj.rng = RngStream(seed, stream++);
                double area = 1.0;
                double flux_in = 0.0;  // inward mass flux per area per time
                switch (f) {
                    case kWest:
                        inj.i = 0; inj.j = k;
                        flux_in = res.rho * m.u(1, Half::positive);
                        area = s.mesh.dim == 2 ? s.mesh.dy(k) : 1.0;
                        break;
                    case kEast:
                        inj.i = s.mesh.nx - 1; inj.j = k;
                        flux_in = -res.rho * m.u(1, Half::negative);
                        area = s.mesh.dim == 2 ? s.mesh.dy(k) : 1.0;
                        break;
                    case kSouth: {
                        inj.i = k; inj.j = 0;
                        MomentTable mv = maxwell_moments(
                            Primitive{res.rho, {res.U[1], res.U[0], res.U[2]}, res.lambda, res.p}, gas);
                        flux_in = res.rho * mv.u(1, Half::positive);
                        area = s.mesh.dx(k);
                        break;
                    }
                    case kNorth: {
                        inj.i = k; inj.j = s.mesh.ny - 1;
                        MomentTable mv = maxwell_moments(
                            Primitive{res.rho, {res.U[1], res.U[0], res.U[2]}, res.lambda, res.p}, gas);
                        flux_in = -res.rho * mv.u(1, Half::negative);
                        area = s.mesh.dx(k);
                        break;
                    }
                }
                inj.rate_full = std::max(flux_in, 0.0) * area;
                if (inj.rate_full > 0.0) s.injectors.push_back(inj);
            }
        }
    }
    return s;
}

double compute_dt(const SimState& s) {
    const RectMesh& mesh = s.mesh;
    if (mesh.ncells() == 0) throw std::invalid_argument("compute_dt: empty mesh");
    double dt = std::numeric_limits<double>::infinity();
    for (int j = 0; j < mesh.ny; ++j) {
        for (int i = 0; i < mesh.nx; ++i) {
            if (mesh.is_solid(i, j)) continue;
            const Primitive prim = to_primitive(s.W[mesh.id(i, j)], s.gas);
            const double c = sound_speed(prim, s.gas);
            const double vth = s.thermal_margin * std::sqrt(temperature(prim));
            double rate = (std::abs(prim.U[0]) + c + vth) / mesh.dx(i);
            if (mesh.dim == 2)
                rate += (std::abs(prim.U[1]) + c + vth) / mesh.dy(j);
            dt = std::min(dt, 1.0 / rate);
        }
    }
    return s.cfl * dt;
}

MacroState apply_correction(const MacroState& W, long* fires) {
    MacroState out = W;
    bool changed = false;
    if (!(out.rho >= 0.0)) {
        out.rho = 0.0;
        changed = true;
    }
    const double kin = out.rho > 0.0
                           ? 0.5 * (out.mom[0] * out.mom[0] + out.mom[1] * out.mom[1] +
                                    out.mom[2] * out.mom[2]) / out.rho
                           : 0.0;
    if (out.rhoE < kin) {
        out.rhoE = kin;
        changed = true;
    }
    if (changed && fires) ++(*fires);
    return out;
}

namespace {

// Shared per-cell resampling body: computes the hydro target, samples the
// collisionless fraction (all of it in UGKP mode), and leaves the analytic
// remainder in Wwave.
void resample_cell(SimState& s, int i, int j, const MacroState& Wh_raw, double dt) {
    const RectMesh& mesh = s.mesh;
    const int c = mesh.id(i, j);
    const double vol = mesh.volume(i, j);

    if (s.mode == Mode::GKS) {
        s.Wwave[c] = s.W[c];
        return;
    }
    MacroState Wh = Wh_raw;
    {
        MacroState clamped = apply_correction(Wh, nullptr);
        if (clamped.rho != Wh.rho || clamped.rhoE != Wh.rhoE) ++s.diag.correction_h_fires;
        Wh = clamped;
    }
    const double rho_cell = s.W[c].rho;
    const double kin = Wh.rho > 0.0
                           ? 0.5 * (Wh.mom[0] * Wh.mom[0] + Wh.mom[1] * Wh.mom[1] +
                                    Wh.mom[2] * Wh.mom[2]) / Wh.rho
                           : 0.0;
    if (!(Wh.rho > 1e-14 * rho_cell) || !(Wh.rhoE - kin > 0.0)) {
        // noise-level hydro content: keep it in the equilibrium description
        if (Wh.rho > 0.0) ++s.diag.degenerate_hydro;
        s.Wwave[c] = MacroState{};
        return;
    }
    const Primitive ph = to_primitive(Wh, s.gas);

    double frac = 1.0;
    if (s.mode == Mode::UGKWP) {
        const Primitive pc = to_primitive(s.W[c], s.gas);
        frac = std::exp(-dt / relaxation_time(pc, s.gas));
    }
    const double avail = Wh.rho * vol;
    const double target = frac * avail + s.carry[c];
    long N = std::lround(target / s.m_p);
    const long Nmax = static_cast<long>(std::floor(avail / s.m_p + 1e-9));
    N = std::clamp(N, 0L, Nmax);
    const double realized = N * s.m_p;
    s.carry[c] = target - realized;

    if (N > 0) {
        SampleTarget st;
        st.mass = realized;
        st.U = ph.U;
        st.lambda = ph.lambda;
        st.eint = internal_energy(ph, s.gas);
        CellBox box{mesh.xs[i], mesh.xs[i + 1], mesh.ys[j], mesh.ys[j + 1], c, mesh.dim};
        SamplingDiag sd;
        sample_maxwellian_batch(s.pool, st, s.m_p, box, ParticleTag::fresh_hydro,
                                s.sample_rng[c], &sd);
        s.diag.transform_fallbacks += sd.transform_fallbacks;
        s.diag.sampled_mass_last += realized;
        s.diag.sampled_frac_max_last =
            std::max(s.diag.sampled_frac_max_last, realized / std::max(avail, 1e-300));
    }
    // analytic remainder: the batch moments are exact, so the subtraction is too
    const double E_spec = Wh.rhoE / Wh.rho;
    Vec5 wave = Wh.vec();
    wave[0] -= realized / vol;
    for (int d = 0; d < 3; ++d) wave[1 + d] -= realized / vol * ph.U[d];
    wave[4] -= realized / vol * E_spec;
    s.Wwave[c] = apply_correction(MacroState::from_vec(wave), nullptr);
}

}  // namespace

void initialize_particles(SimState& s, double dt) {
    if (s.particles_initialized) return;
    s.particles_initialized = true;
    if (s.mode == Mode::GKS) {
        s.Wwave = s.W;
        return;
    }
    s.diag.sampled_mass_last = 0.0;
    s.diag.sampled_frac_max_last = 0.0;
    for (int j = 0; j < s.mesh.ny; ++j)
        for (int i = 0; i < s.mesh.nx; ++i) {
            if (s.mesh.is_solid(i, j)) continue;
            const int c = s.mesh.id(i, j);
            if (s.mode == Mode::UGKP) {
                resample_cell(s, i, j, s.W[c], dt);
            } else {
                // start at the circulation fixed point: the steady particle
                // mass fraction is phi(e), not one step's worth e; feed the
                // sampler a scaled hydro target since it multiplies by e
                const Primitive pc = to_primitive(s.W[c], s.gas);
                const double e = std::exp(-dt / relaxation_time(pc, s.gas));
                const double phi = particle_fraction_fixed_point(e);
                const double scale = e > 1e-300 ? std::min(phi / e, 1.0) : 0.0;
                resample_cell(s, i, j, scale * s.W[c], dt);
            }
        }
    if (s.mode == Mode::UGKWP) {
        // rebuild the wave remainder exactly: W minus realized particle content
        std::vector<Vec5> content;
        particle_content_per_cell(s.pool, s.mesh.ncells(), content);
        for (int j = 0; j < s.mesh.ny; ++j)
            for (int i = 0; i < s.mesh.nx; ++i) {
                const int c = s.mesh.id(i, j);
                if (s.mesh.is_solid(i, j)) continue;
                const double vol = s.mesh.volume(i, j);
                Vec5 wave = s.W[c].vec() - (1.0 / vol) * content[c];
                s.Wwave[c] = apply_correction(MacroState::from_vec(wave), nullptr);
            }
    }
    s.diag.live_particles = static_cast<long>(s.pool.size());
}

namespace {

struct FluxAccumulator {
    std::vector<Vec5> dContent;  // net content change per cell from wave fluxes
    explicit FluxAccumulator(int nc) : dContent(nc, Vec5{}) {}
    void scatter(int cl, int cr, const Vec5& F, double area) {
        const Vec5 aF = area * F;
        if (cl >= 0) dContent[cl] -= aF;
        if (cr >= 0) dContent[cr] += aF;
    }
};

// Equilibrium + hydro-transport flux across one interface; all state lookups
// already resolved into InterfaceStates (global frame, +axis orientation).
Vec5 wave_flux_from_states(const SimState& s, const InterfaceStates& st_total,
                           const InterfaceStates& st_wave, bool use_wave,
                           int axis, double dt, Diagnostics* diag) {
    const InterfaceStates loc = to_local(st_total, axis);
    EquilibriumInterface eq =
        build_equilibrium_interface(loc, s.gas, s.mesh.dim == 2);
    double tau = relaxation_time(eq.prim0, s.gas);
    tau += s.visc_jump_coeff * dt * std::abs(eq.prim_l.p - eq.prim_r.p) /
           (eq.prim_l.p + eq.prim_r.p);
    TimeCoeffs tc = time_coeffs(dt, tau, diag ? &diag->tau_floor_hits : nullptr);
    Vec5 F = flux_equilibrium(eq.prim0, eq.coeffs, tc, s.gas);

    if (use_wave) {
        const InterfaceStates wl = to_local(st_wave, axis);
        SideExpansion L, R;
        if (wl.WL.rho > 1e-14 * loc.WL.rho) {
            const double kin = 0.5 * (wl.WL.mom[0] * wl.WL.mom[0] + wl.WL.mom[1] * wl.WL.mom[1] +
                                      wl.WL.mom[2] * wl.WL.mom[2]) / wl.WL.rho;
            if (wl.WL.rhoE - kin > 0.0)
                L = build_side_expansion(wl.WL, wl.slopeL_n, wl.slopeL_t, s.gas,
                                         s.mesh.dim == 2);
        }
        if (wl.WR.rho > 1e-14 * loc.WR.rho) {
            const double kin = 0.5 * (wl.WR.mom[0] * wl.WR.mom[0] + wl.WR.mom[1] * wl.WR.mom[1] +
                                      wl.WR.mom[2] * wl.WR.mom[2]) / wl.WR.rho;
            if (wl.WR.rhoE - kin > 0.0)
                R = build_side_expansion(wl.WR, wl.slopeR_n, wl.slopeR_t, s.gas,
                                         s.mesh.dim == 2);
        }
        F += flux_hydro_transport(L, R, tc, s.gas);
    }
    if (axis == 1) F = swap_xy(F);
    return F;
}

// Outward wall flux for the fluid cell (i,j) through `face` (or a body face
// along `axis` toward +axis when `high`). Returns the flux with outward
// orientation in global components.
Vec5 wall_face_flux(const SimState& s, const CellField& Wf, int i, int j,
                    const BcSpec& spec, int axis, bool high, double dt) {
    const RectMesh& mesh = s.mesh;
    const int c = mesh.id(i, j);
    // one-sided state extrapolated to the wall
    const Vec5& sl = axis == 0 ? Wf.slope_x[c] : Wf.slope_y[c];
    const double h = axis == 0 ? mesh.dx(i) : mesh.dy(j);
    Vec5 wv = Wf.W[c].vec() + (high ? 0.5 * h : -0.5 * h) * sl;
    MacroState Win = MacroState::from_vec(wv);
    if (!(Win.rho > 0.0)) Win = Wf.W[c];
    Primitive prim = to_primitive(Win, s.gas);

    // local frame with u pointing out of the fluid (into the wall)
    double Uu, Uv, Uw_;
    double Uwt1, Uwt2;
    if (axis == 0) {
        Uu = high ? prim.U[0] : -prim.U[0];
        Uv = prim.U[1];
        Uw_ = prim.U[2];
        Uwt1 = spec.Uw[1];
        Uwt2 = spec.Uw[2];
    } else {
        Uu = high ? prim.U[1] : -prim.U[1];
        Uv = prim.U[0];
        Uw_ = prim.U[2];
        Uwt1 = spec.Uw[0];
        Uwt2 = spec.Uw[2];
    }
    Primitive ploc = prim;
    ploc.U = {Uu, Uv, Uw_};
    Vec5 F = flux_diffuse_wall(ploc, spec.Tw, Uwt1, Uwt2, dt, s.gas);
    // map momentum back to global components, outward orientation
    Vec5 out;
    out[0] = F[0];
    out[4] = F[4];
    if (axis == 0) {
        out[1] = high ? F[1] : -F[1];
        out[2] = F[2];
        out[3] = F[3];
    } else {
        out[1] = F[2];
        out[2] = high ? F[1] : -F[1];
        out[3] = F[3];
    }
    return out;
}

}  // namespace

FluxPair wave_interface_flux(const SimState& s, int i, int j, int axis, double dt) {
    // test/diagnostic entry: interior interface, both flux parts separately
    CellField Wf{&s.mesh, s.W, {}, {}};
    CellField wavef{&s.mesh, s.mode == Mode::GKS ? s.W : s.Wwave, {}, {}};
    StateGhosts gw;
    gw.s = &s;
    gw.field = &Wf.W;
    StateGhosts gv;
    gv.s = &s;
    gv.field = &wavef.W;
    gv.wave = true;
    compute_slopes(Wf, gw, s.gas);
    compute_slopes(wavef, gv, s.gas);
    const int ir = axis == 0 ? i + 1 : i;
    const int jr = axis == 0 ? j : j + 1;
    InterfaceStates st = interface_states(Wf, i, j, ir, jr, axis, nullptr, nullptr);
    InterfaceStates sw = interface_states(wavef, i, j, ir, jr, axis, nullptr, nullptr);

    const InterfaceStates loc = to_local(st, axis);
    EquilibriumInterface eq = build_equilibrium_interface(loc, s.gas, s.mesh.dim == 2);
    double tau = relaxation_time(eq.prim0, s.gas);
    tau += s.visc_jump_coeff * dt * std::abs(eq.prim_l.p - eq.prim_r.p) /
           (eq.prim_l.p + eq.prim_r.p);
    TimeCoeffs tc = time_coeffs(dt, tau, nullptr);

    FluxPair fp;
    fp.Fg = flux_equilibrium(eq.prim0, eq.coeffs, tc, s.gas);
    const InterfaceStates wl = to_local(sw, axis);
    SideExpansion L, R;
    if (wl.WL.rho > 1e-14 * loc.WL.rho)
        L = build_side_expansion(wl.WL, wl.slopeL_n, wl.slopeL_t, s.gas, s.mesh.dim == 2);
    if (wl.WR.rho > 1e-14 * loc.WR.rho)
        R = build_side_expansion(wl.WR, wl.slopeR_n, wl.slopeR_t, s.gas, s.mesh.dim == 2);
    fp.Ffh = flux_hydro_transport(L, R, tc, s.gas);
    if (axis == 1) {
        fp.Fg = swap_xy(fp.Fg);
        fp.Ffh = swap_xy(fp.Ffh);
    }
    return fp;
}

void advance(SimState& s, double dt) {
    const RectMesh& mesh = s.mesh;
    const int nc = mesh.ncells();
    if (!s.particles_initialized) initialize_particles(s, dt);

    // (1) fresh first-collision times and classification
    std::vector<double> tau_cell(nc, 0.0);
    for (int j = 0; j < mesh.ny; ++j)
        for (int i = 0; i < mesh.nx; ++i) {
            if (mesh.is_solid(i, j)) continue;
            const int c = mesh.id(i, j);
            tau_cell[c] = relaxation_time(to_primitive(s.W[c], s.gas), s.gas);
        }
    if (s.mode != Mode::GKS) classify(s.pool, dt, tau_cell, s.cell_rng);

    // (2) reconstruction of the total and wave fields
    FluxWork work;
    work.use_wave = s.mode != Mode::UGKP;
    work.Wf.mesh = &mesh;
    work.Wf.W = s.W;
    work.gw.s = &s;
    work.gw.field = &work.Wf.W;
    work.gw.wave = false;
    compute_slopes(work.Wf, work.gw, s.gas);

    double wave_frac[4] = {1, 1, 1, 1};
    double part_frac[4] = {0, 0, 0, 0};
    for (int f = 0; f < 4; ++f) {
        if (s.bc.face[f].type != BcType::reservoir) continue;
        if (s.mode == Mode::GKS) {
            wave_frac[f] = 1.0;
            part_frac[f] = 0.0;
        } else if (s.mode == Mode::UGKP) {
            wave_frac[f] = 0.0;
            part_frac[f] = 1.0;
        } else {
            const Primitive res = to_primitive(s.bc.face[f].state, s.gas);
            const double e = std::exp(-dt / relaxation_time(res, s.gas));
            const double phi = particle_fraction_fixed_point(e);
            part_frac[f] = phi;
            wave_frac[f] = (1.0 - e) * (1.0 - e * phi);
        }
    }
    if (work.use_wave) {
        work.wavef.mesh = &mesh;
        work.wavef.W = (s.mode == Mode::GKS) ? s.W : s.Wwave;
        work.gwave.s = &s;
        work.gwave.field = &work.wavef.W;
        work.gwave.wave = s.mode != Mode::GKS;
        for (int f = 0; f < 4; ++f) work.gwave.wave_frac[f] = wave_frac[f];
        compute_slopes(work.wavef, work.gwave, s.gas);
    } else {
        work.wavef.mesh = &mesh;
        work.wavef.W.assign(nc, MacroState{});
        work.wavef.slope_x.assign(nc, Vec5{});
        work.wavef.slope_y.assign(nc, Vec5{});
    }

    // (3) wave fluxes over all interfaces
    FluxAccumulator acc(nc);
    const bool per_x = s.bc.face[kWest].type == BcType::periodic;
    const bool per_y = mesh.dim == 2 && s.bc.face[kSouth].type == BcType::periodic;

    auto flux_between = [&](int il, int jl, int ir, int jr, int axis,
                            const MacroState* gl, const MacroState* gr,
                            const MacroState* wgl, const MacroState* wgr) {
        InterfaceStates st = interface_states(work.Wf, il, jl, ir, jr, axis, gl, gr);
        InterfaceStates sw = work.use_wave
                                 ? interface_states(work.wavef, il, jl, ir, jr, axis, wgl, wgr)
                                 : InterfaceStates{};
        return wave_flux_from_states(s, st, sw, work.use_wave, axis, dt, &s.diag);
    };

    for (int axis = 0; axis < (mesh.dim == 2 ? 2 : 1); ++axis) {
        const bool periodic = axis == 0 ? per_x : per_y;
        const int nfa = axis == 0 ? mesh.nx : mesh.ny;  // faces along the axis
        const int nrow = axis == 0 ? mesh.ny : mesh.nx;
        const Face lo_face = axis == 0 ? kWest : kSouth;
        const Face hi_face = axis == 0 ? kEast : kNorth;
        for (int r = 0; r < nrow; ++r) {
            for (int fi = 0; fi <= nfa; ++fi) {
                if (periodic && fi == nfa) continue;
                int il = fi - 1, ir = fi;
                if (periodic && fi == 0) il = nfa - 1;
                const bool lbound = !periodic && fi == 0;
                const bool rbound = !periodic && fi == nfa;
                // map (along, row) -> (i, j)
                auto IJ = [&](int a) {
                    return axis == 0 ? std::pair<int, int>{a, r}
                                     : std::pair<int, int>{r, a};
                };
                const auto [li, lj] = IJ(il);
                const auto [ri, rj] = IJ(ir);
                const bool lsolid = !lbound && mesh.is_solid(li, lj);
                const bool rsolid = !rbound && mesh.is_solid(ri, rj);
                if ((lbound || lsolid) && (rbound || rsolid)) continue;

                const double area = axis == 0 ? (mesh.dim == 2 ? mesh.dy(r) : 1.0)
                                              : mesh.dx(r);
                const int cl = (lbound || lsolid) ? -1 : mesh.id(li, lj);
                const int cr = (rbound || rsolid) ? -1 : mesh.id(ri, rj);

                if (cl >= 0 && cr >= 0) {
                    acc.scatter(cl, cr, flux_between(li, lj, ri, rj, axis,
                                                     nullptr, nullptr, nullptr, nullptr),
                                area);
                    continue;
                }
                // one fluid side: domain boundary or body face
                const bool fluid_left = cl >= 0;
                const int fi_ = fluid_left ? li : ri;
                const int fj_ = fluid_left ? lj : rj;
                const bool body = fluid_left ? rsolid : lsolid;
                const BcSpec& spec = body ? s.bc.body
                                          : s.bc.face[fluid_left ? hi_face : lo_face];
                const Face dom_face = fluid_left ? hi_face : lo_face;

                BcType type = spec.type;
                if (!body && type == BcType::plate)
                    type = mesh.xc(fi_) < spec.plate_x0 ? BcType::symmetry
                                                        : BcType::diffuse_wall;
                if (body) type = BcType::diffuse_wall;

                switch (type) {
                    case BcType::diffuse_wall: {
                        const Vec5 F = wall_face_flux(s, work.Wf, fi_, fj_, spec,
                                                      axis, fluid_left, dt);
                        acc.dContent[mesh.id(fi_, fj_)] -= area * F;
                        break;
                    }
                    case BcType::reservoir:
                    case BcType::outflow:
                    case BcType::symmetry: {
                        StateGhosts& g = work.gw;
                        StateGhosts& gv = work.gwave;
                        MacroState gs = g.ghost(dom_face, fi_, fj_);
                        MacroState gvs = work.use_wave ? gv.ghost(dom_face, fi_, fj_)
                                                       : MacroState{};
                        const MacroState* gl = fluid_left ? nullptr : &gs;
                        const MacroState* gr = fluid_left ? &gs : nullptr;
                        const MacroState* wgl = fluid_left ? nullptr : &gvs;
                        const MacroState* wgr = fluid_left ? &gvs : nullptr;
                        const Vec5 F = flux_between(li, lj, ri, rj, axis, gl, gr, wgl, wgr);
                        acc.scatter(cl, cr, F, area);
                        break;
                    }
                    case BcType::periodic:
                    case BcType::plate:
                        throw std::logic_error("advance: unreachable boundary type");
                }
            }
        }
    }

    // (4) particle streaming and net transport
    StreamLedger ledger;
    if (s.mode != Mode::GKS) {
        for (FaceInjector& inj : s.injectors)
            inj.rate = part_frac[inj.face] * inj.rate_full;
        ledger = stream_and_tally(s.pool, dt, mesh, s.bc, s.gas, s.cell_rng,
                                  s.injectors, s.m_p);
        s.diag.eliminated_total += ledger.eliminated;
        s.diag.wall_hits_total += ledger.wall_hits;
    } else {
        ledger.net_flux.assign(nc, Vec5{});
    }

    // (5) macroscopic update with correction
    for (int j = 0; j < mesh.ny; ++j)
        for (int i = 0; i < mesh.nx; ++i) {
            if (mesh.is_solid(i, j)) continue;
            const int c = mesh.id(i, j);
            const double vol = mesh.volume(i, j);
            Vec5 Wn = s.W[c].vec() + (1.0 / vol) * (acc.dContent[c] + ledger.net_flux[c]);
            MacroState Wnew = apply_correction(MacroState::from_vec(Wn),
                                               &s.diag.correction_w_fires);
            for (int q = 0; q < 5; ++q)
                if (!std::isfinite(Wnew.vec()[q]))
                    throw numerical_abort("advance: non-finite state in cell " +
                                          std::to_string(c));
            s.W[c] = Wnew;
        }

    // (6)+(7) hydro quantities and resampling of the collisionless fraction
    s.diag.sampled_mass_last = 0.0;
    s.diag.sampled_frac_max_last = 0.0;
    if (s.mode != Mode::GKS) {
        std::vector<Vec5> content;
        particle_content_per_cell(s.pool, nc, content);
        for (int j = 0; j < mesh.ny; ++j)
            for (int i = 0; i < mesh.nx; ++i) {
                if (mesh.is_solid(i, j)) continue;
                const int c = mesh.id(i, j);
                const double vol = mesh.volume(i, j);
                const MacroState Wh = MacroState::from_vec(
                    s.W[c].vec() - (1.0 / vol) * content[c]);
                resample_cell(s, i, j, Wh, dt);
            }
    } else {
        for (int c = 0; c < nc; ++c) s.Wwave[c] = s.W[c];
    }
    s.diag.live_particles = 0;
    for (size_t k = 0; k < s.pool.size(); ++k)
        if (!s.pool.dead[k]) ++s.diag.live_particles;

    s.time += dt;
    ++s.step_count;
}

RunResult run(SimState& s, const RunControl& rc) {
    RunResult out;
    const int nc = s.mesh.ncells();
    std::vector<Vec5> sumW(nc, Vec5{});
    std::vector<double> sumN(nc, 0.0);
    long nsamp = 0;
    std::vector<Vec5> prev_avg;
    double prev_avg_time = -1.0;

    if (!s.particles_initialized) initialize_particles(s, compute_dt(s));

    std::vector<long> np;
    std::vector<double> pm;
    while (s.time < rc.t_end - 1e-14 && out.steps < rc.max_steps) {
        double dt = compute_dt(s);
        if (s.time + dt > rc.t_end) dt = rc.t_end - s.time;  // exact landing
        advance(s, dt);
        ++out.steps;
        if (rc.avg_start >= 0.0 && s.time >= rc.avg_start) {
            particle_counts(s, np, pm);
            for (int c = 0; c < nc; ++c) {
                sumW[c] += s.W[c].vec();
                sumN[c] += static_cast<double>(np[c]);
            }
            ++nsamp;
        }
        if (rc.on_step) rc.on_step(s);
        if (rc.steady_tol > 0.0 && nsamp > 0 && out.steps % rc.steady_check_every == 0) {
            std::vector<Vec5> avg(nc);
            for (int c = 0; c < nc; ++c) avg[c] = (1.0 / nsamp) * sumW[c];
            if (!prev_avg.empty()) {
                double num = 0.0, den = 0.0;
                for (int c = 0; c < nc; ++c)
                    for (int q = 0; q < 5; ++q) {
                        const double d = avg[c][q] - prev_avg[c][q];
                        num += d * d;
                        den += avg[c][q] * avg[c][q];
                    }
                out.residual = std::sqrt(num / std::max(den, 1e-300)) /
                               std::max(s.time - prev_avg_time, 1e-300);
                if (out.residual < rc.steady_tol) {
                    out.reached_steady = true;
                    prev_avg = avg;
                    break;
                }
            }
            prev_avg = avg;
            prev_avg_time = s.time;
        }
    }

    out.averaged.resize(nc);
    out.avg_particles.assign(nc, 0.0);
    if (nsamp > 0) {
        for (int c = 0; c < nc; ++c) {
            out.averaged[c] = MacroState::from_vec((1.0 / nsamp) * sumW[c]);
            out.avg_particles[c] = sumN[c] / nsamp;
        }
    } else {
        out.averaged = s.W;
        particle_counts(s, np, pm);
        for (int c = 0; c < nc; ++c) out.avg_particles[c] = static_cast<double>(np[c]);
    }
    return out;
}

void particle_counts(const SimState& s, std::vector<long>& n, std::vector<double>& mass) {
    n.assign(s.mesh.ncells(), 0);
    mass.assign(s.mesh.ncells(), 0.0);
    for (size_t k = 0; k < s.pool.size(); ++k) {
        if (s.pool.dead[k]) continue;
        ++n[s.pool.cell[k]];
        mass[s.pool.cell[k]] += s.pool.mass[k];
    }
}

}  // namespace ugkwp
