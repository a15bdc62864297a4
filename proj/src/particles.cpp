#include "ugkwp/particles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ugkwp {

void ParticlePool::push(double m, double px, double py, double vx_, double vy_,
                        double vz_, double e, int32_t c, ParticleTag t) {
    mass.push_back(m);
    x.push_back(px);
    y.push_back(py);
    vx.push_back(vx_);
    vy.push_back(vy_);
    vz.push_back(vz_);
    eint.push_back(e);
    tc.push_back(0.0);
    cell.push_back(c);
    tag.push_back(static_cast<uint8_t>(t));
    dead.push_back(0);
}

void ParticlePool::compact() {
    size_t w = 0;
    const size_t n = size();
    for (size_t k = 0; k < n; ++k) {
        if (dead[k]) continue;
        if (w != k) {
            mass[w] = mass[k];
            x[w] = x[k];
            y[w] = y[k];
            vx[w] = vx[k];
            vy[w] = vy[k];
            vz[w] = vz[k];
            eint[w] = eint[k];
            tc[w] = tc[k];
            cell[w] = cell[k];
            tag[w] = tag[k];
        }
        ++w;
    }
    mass.resize(w);
    x.resize(w);
    y.resize(w);
    vx.resize(w);
    vy.resize(w);
    vz.resize(w);
    eint.resize(w);
    tc.resize(w);
    cell.resize(w);
    tag.resize(w);
    dead.assign(w, 0);
}

void ParticlePool::clear() {
    mass.clear(); x.clear(); y.clear(); vx.clear(); vy.clear(); vz.clear();
    eint.clear(); tc.clear(); cell.clear(); tag.clear(); dead.clear();
}

double sample_tc(double tau, RngStream& rng) {
    if (!(tau > 0.0)) throw unphysical_error("sample_tc: tau must be positive");
    return -tau * std::log(rng.u01_open0());
}

ClassifyCounts classify(ParticlePool& pool, double dt,
                        const std::vector<double>& tau_cell,
                        std::vector<RngStream>& cell_rng) {
    ClassifyCounts n;
    const size_t np = pool.size();
    for (size_t k = 0; k < np; ++k) {
        if (pool.dead[k]) continue;
        const int c = pool.cell[k];
        const double t = sample_tc(tau_cell[c], cell_rng[c]);
        pool.tc[k] = t;
        if (t >= dt) {
            pool.tag[k] = static_cast<uint8_t>(ParticleTag::collisionless);
            ++n.collisionless;
        } else {
            pool.tag[k] = static_cast<uint8_t>(ParticleTag::collisional);
            ++n.collisional;
        }
    }
    return n;
}

bool consistent_transform(ParticlePool& pool, size_t first, size_t n,
                          const std::array<double, 3>& U, double E_specific) {
    if (n == 0) return true;
    // per-unit-mass form (uniform particle weights)
    double mv[3] = {0, 0, 0};
    double esum = 0.0;
    for (size_t k = first; k < first + n; ++k) {
        mv[0] += pool.vx[k];
        mv[1] += pool.vy[k];
        mv[2] += pool.vz[k];
        esum += pool.eint[k];
    }
    const double a[3] = {mv[0] / n - U[0], mv[1] / n - U[1], mv[2] / n - U[2]};

    double c1 = 0.0, c2 = 0.0;
    for (size_t k = first; k < first + n; ++k) {
        const double cx = pool.vx[k] - a[0] - U[0];
        const double cy = pool.vy[k] - a[1] - U[1];
        const double cz = pool.vz[k] - a[2] - U[2];
        c1 += 0.5 * (cx * cx + cy * cy + cz * cz);
        c2 += U[0] * pool.vx[k] + U[1] * pool.vy[k] + U[2] * pool.vz[k];
    }
    const double U2 = U[0] * U[0] + U[1] * U[1] + U[2] * U[2];
    c2 -= n * ((a[0] + U[0]) * U[0] + (a[1] + U[1]) * U[1] + (a[2] + U[2]) * U[2]);
    const double c3 = 0.5 * n * U2 + esum - n * E_specific;

    double b = 1.0;
    bool ok = true;
    if (c1 > 1e-300) {
        const double disc = c2 * c2 - 4.0 * c1 * c3;
        if (disc >= 0.0) {
            const double r1 = (-c2 + std::sqrt(disc)) / (2.0 * c1);
            const double r2 = (-c2 - std::sqrt(disc)) / (2.0 * c1);
            // positive root closest to 1
            b = r1;
            if (r2 > 0.0 && (r1 <= 0.0 || std::abs(r2 - 1.0) < std::abs(r1 - 1.0)))
                b = r2;
            if (!(b > 0.0)) {
                b = 1.0;
                ok = false;
            }
        } else {
            ok = false;
        }
    } else {
        // no thermal spread in the batch; only the shift is meaningful
        ok = std::abs(c3) < 1e-12 * (1.0 + n * E_specific);
    }
    for (size_t k = first; k < first + n; ++k) {
        pool.vx[k] = b * (pool.vx[k] - a[0] - U[0]) + U[0];
        pool.vy[k] = b * (pool.vy[k] - a[1] - U[1]) + U[1];
        pool.vz[k] = b * (pool.vz[k] - a[2] - U[2]) + U[2];
    }
    return ok;
}

double sample_maxwellian_batch(ParticlePool& pool, const SampleTarget& target,
                               double m_p, const CellBox& box, ParticleTag tag,
                               RngStream& rng, SamplingDiag* diag) {
    if (target.mass <= 0.0) return 0.0;
    const long N = std::lround(target.mass / m_p);
    if (N <= 0) return 0.0;
    if (!(target.lambda > 0.0))
        throw unphysical_error("sample_maxwellian_batch: invalid target");

    const double sigma = 1.0 / std::sqrt(2.0 * target.lambda);
    const double E_specific = 0.5 * (target.U[0] * target.U[0] +
                                     target.U[1] * target.U[1] +
                                     target.U[2] * target.U[2]) +
                              0.75 / target.lambda + target.eint;
    const size_t first = pool.size();
    for (long k = 0; k < N; ++k) {
        const double px = box.x0 + (box.x1 - box.x0) * rng.u01();
        const double py = box.dim == 2 ? box.y0 + (box.y1 - box.y0) * rng.u01() : 0.0;
        pool.push(m_p, px, py,
                  target.U[0] + sigma * rng.normal(),
                  target.U[1] + sigma * rng.normal(),
                  target.U[2] + sigma * rng.normal(),
                  target.eint, box.cell_id, tag);
    }
    bool ok = consistent_transform(pool, first, N, target.U, E_specific);
    if (!ok) {
        // one resample attempt before the shift-only fallback counts
        for (long k = 0; k < N; ++k) {
            const size_t idx = first + k;
            pool.vx[idx] = target.U[0] + sigma * rng.normal();
            pool.vy[idx] = target.U[1] + sigma * rng.normal();
            pool.vz[idx] = target.U[2] + sigma * rng.normal();
        }
        ok = consistent_transform(pool, first, N, target.U, E_specific);
        if (!ok && diag) ++diag->transform_fallbacks;
    }
    if (diag) ++diag->batches;
    return N * m_p;
}

double sample_inward_speed(double Un, double lambda, RngStream& rng) {
    const double s = Un * std::sqrt(lambda);
    const double zmax = std::max(s, 0.0) + 5.5;
    const double zpk = 0.5 * (s + std::sqrt(s * s + 2.0));
    const double fmax = zpk * std::exp(-(zpk - s) * (zpk - s));
    for (int it = 0; it < 100000; ++it) {
        const double z = zmax * rng.u01();
        const double f = z * std::exp(-(z - s) * (z - s));
        if (fmax * rng.u01() <= f) return z / std::sqrt(lambda);
    }
    return zpk / std::sqrt(lambda);  // unreachable in practice
}

namespace {

struct Tracer {
    const RectMesh& mesh;
    const Boundaries& bc;
    const GasModel& gas;
    std::vector<RngStream>& cell_rng;
    StreamLedger& ledger;

    // Streams one particle for `budget` time. Returns false when the particle
    // left the domain (content already tallied to the outflow ledger).
    bool run(double& x, double& y, double& vx, double& vy, double& vz,
             double& eint, double m, int& i, int& j, double budget) {
        double t_rem = budget;
        const double inf = std::numeric_limits<double>::infinity();
        for (long guard = 0;; ++guard) {
            if (guard > 100000000L)
                throw std::runtime_error("stream: particle stuck (mesh misconfiguration)");
            const double txf = vx > 0.0 ? (mesh.xs[i + 1] - x) / vx
                             : vx < 0.0 ? (mesh.xs[i] - x) / vx
                                        : inf;
            const double tyf = (mesh.dim == 2)
                                   ? (vy > 0.0   ? (mesh.ys[j + 1] - y) / vy
                                      : vy < 0.0 ? (mesh.ys[j] - y) / vy
                                                 : inf)
                                   : inf;
            double t_hit = std::min(txf, tyf);
            if (t_hit < 0.0) t_hit = 0.0;
            if (t_hit >= t_rem) {
                x += vx * t_rem;
                y += vy * t_rem;
                return true;
            }
            x += vx * t_hit;
            y += vy * t_hit;
            t_rem -= t_hit;
            const int axis = (txf <= tyf) ? 0 : 1;
            if (axis == 0) {
                const bool east = vx > 0.0;
                x = east ? mesh.xs[i + 1] : mesh.xs[i];  // snap to the face
                const int ni = east ? i + 1 : i - 1;
                if (ni >= 0 && ni < mesh.nx) {
                    if (mesh.is_solid(ni, j)) {
                        bounce_diffuse(bc.body, 0, east, x, y, vx, vy, vz, eint, m, i, j);
                        continue;
                    }
                    i = ni;
                    continue;
                }
                const Face f = east ? kEast : kWest;
                if (!handle_domain_face(f, 0, east, x, y, vx, vy, vz, eint, m, i, j))
                    return false;
            } else {
                const bool north = vy > 0.0;
                y = north ? mesh.ys[j + 1] : mesh.ys[j];
                const int nj = north ? j + 1 : j - 1;
                if (nj >= 0 && nj < mesh.ny) {
                    if (mesh.is_solid(i, nj)) {
                        bounce_diffuse(bc.body, 1, north, x, y, vx, vy, vz, eint, m, i, j);
                        continue;
                    }
                    j = nj;
                    continue;
                }
                const Face f = north ? kNorth : kSouth;
                if (!handle_domain_face(f, 1, north, x, y, vx, vy, vz, eint, m, i, j))
                    return false;
            }
        }
    }

    bool handle_domain_face(Face f, int axis, bool high, double& x, double& y,
                            double& vx, double& vy, double& vz, double& eint,
                            double m, int& i, int& j) {
        const BcSpec& spec = bc.face[f];
        switch (spec.type) {
            case BcType::periodic:
                if (axis == 0) {
                    x = high ? mesh.xs.front() : mesh.xs.back();
                    i = high ? 0 : mesh.nx - 1;
                } else {
                    y = high ? mesh.ys.front() : mesh.ys.back();
                    j = high ? 0 : mesh.ny - 1;
                }
                return true;
            case BcType::reservoir:
            case BcType::outflow: {
                const double e = 0.5 * (vx * vx + vy * vy + vz * vz) + eint;
                ledger.outflow += Vec5{m, m * vx, m * vy, m * vz, m * e};
                return false;
            }
            case BcType::diffuse_wall:
                bounce_diffuse(spec, axis, high, x, y, vx, vy, vz, eint, m, i, j);
                return true;
            case BcType::symmetry:
                if (axis == 0) vx = -vx; else vy = -vy;
                return true;
            case BcType::plate:
                if (x < spec.plate_x0) {
                    if (axis == 0) vx = -vx; else vy = -vy;
                } else {
                    bounce_diffuse(spec, axis, high, x, y, vx, vy, vz, eint, m, i, j);
                }
                return true;
        }
        throw std::runtime_error("stream: particle exited through an undefined boundary");
    }

    void bounce_diffuse(const BcSpec& spec, int axis, bool high, double& x, double& y,
                        double& vx, double& vy, double& vz, double& eint, double m,
                        int i, int j) {
        (void)x;
        (void)y;
        const double lam_w = 0.5 / spec.Tw;
        const double sigma = 1.0 / std::sqrt(2.0 * lam_w);
        RngStream& rng = cell_rng[mesh.id(i, j)];
        const double before = m * (0.5 * (vx * vx + vy * vy + vz * vz) + eint);
        const double bmx = m * vx, bmy = m * vy, bmz = m * vz;
        const double w = std::sqrt(-std::log(rng.u01_open0()) / lam_w);
        if (axis == 0) {
            vx = high ? -w : w;
            vy = spec.Uw[1] + sigma * rng.normal();
            vz = spec.Uw[2] + sigma * rng.normal();
        } else {
            vy = high ? -w : w;
            vx = spec.Uw[0] + sigma * rng.normal();
            vz = spec.Uw[2] + sigma * rng.normal();
        }
        eint = gas.K / (4.0 * lam_w);
        const double after = m * (0.5 * (vx * vx + vy * vy + vz * vz) + eint);
        ledger.wall_exchange += Vec5{0.0, m * vx - bmx, m * vy - bmy, m * vz - bmz,
                                     after - before};
        ++ledger.wall_hits;
    }
};

}  // namespace

StreamLedger stream_and_tally(ParticlePool& pool, double dt, const RectMesh& mesh,
                              const Boundaries& bc, const GasModel& gas,
                              std::vector<RngStream>& cell_rng,
                              std::vector<FaceInjector>& injectors, double m_p) {
    StreamLedger ledger;
    ledger.net_flux.assign(mesh.ncells(), Vec5{});
    std::vector<Vec5> before(mesh.ncells(), Vec5{});
    std::vector<Vec5> after(mesh.ncells(), Vec5{});

    Tracer tracer{mesh, bc, gas, cell_rng, ledger};

    const size_t np = pool.size();
    for (size_t k = 0; k < np; ++k) {
        if (pool.dead[k]) continue;
        before[pool.cell[k]] += pool.content(k);
        const bool collisional =
            pool.tag[k] == static_cast<uint8_t>(ParticleTag::collisional);
        const double budget = collisional ? pool.tc[k] : dt;
        int i = pool.cell[k] % mesh.nx;
        int j = pool.cell[k] / mesh.nx;
        const bool kept = tracer.run(pool.x[k], pool.y[k], pool.vx[k], pool.vy[k],
                                     pool.vz[k], pool.eint[k], pool.mass[k], i, j,
                                     budget);
        if (!kept) {
            pool.dead[k] = 1;
            continue;
        }
        pool.cell[k] = mesh.id(i, j);
        after[pool.cell[k]] += pool.content(k);
        if (collisional) {
            pool.dead[k] = 1;  // content absorbed by the stopping cell
            ++ledger.eliminated;
        }
    }

    // Reservoir injection. Particles only represent the pre-collision part of
    // the transport, so the injected mass carries the survival kernel
    // integral tau (1 - e^{-dt/tau}) rather than the full flux over dt, and
    // entry times follow the truncated exponential; the collided remainder of
    // the boundary exchange lives in the equilibrium wave flux.
    for (FaceInjector& inj : injectors) {
        const double decay = -std::expm1(-dt / inj.tau);  // 1 - e^{-dt/tau}
        double target = inj.rate * inj.tau * decay + inj.carry;
        long n_inj = static_cast<long>(std::floor(target / m_p));
        if (n_inj < 0) n_inj = 0;
        inj.carry = target - n_inj * m_p;
        if (n_inj == 0) continue;
        const double lam = inj.res.lambda;
        const double sigma = 1.0 / std::sqrt(2.0 * lam);
        const double e_res = gas.K / (4.0 * lam);
        for (long n = 0; n < n_inj; ++n) {
            int i = inj.i, j = inj.j;
            double x, y, vx, vy, vz;
            const double t_entry =
                -inj.tau * std::log1p(-inj.rng.u01() * decay);
            if (inj.face == kWest || inj.face == kEast) {
                const bool west = inj.face == kWest;
                x = west ? mesh.xs.front() : mesh.xs.back();
                y = mesh.dim == 2
                        ? mesh.ys[j] + mesh.dy(j) * inj.rng.u01()
                        : 0.0;
                const double w = sample_inward_speed(
                    west ? inj.res.U[0] : -inj.res.U[0], lam, inj.rng);
                vx = west ? w : -w;
                vy = inj.res.U[1] + sigma * inj.rng.normal();
                vz = inj.res.U[2] + sigma * inj.rng.normal();
            } else {
                const bool south = inj.face == kSouth;
                y = south ? mesh.ys.front() : mesh.ys.back();
                x = mesh.xs[i] + mesh.dx(i) * inj.rng.u01();
                const double w = sample_inward_speed(
                    south ? inj.res.U[1] : -inj.res.U[1], lam, inj.rng);
                vy = south ? w : -w;
                vx = inj.res.U[0] + sigma * inj.rng.normal();
                vz = inj.res.U[2] + sigma * inj.rng.normal();
            }
            double eint = e_res;
            const double e_tot = 0.5 * (vx * vx + vy * vy + vz * vz) + eint;
            ledger.inflow += Vec5{m_p, m_p * vx, m_p * vy, m_p * vz, m_p * e_tot};
            const double t_c = sample_tc(inj.tau, inj.rng);
            const double budget = std::min(t_c, dt - t_entry);
            const bool kept = tracer.run(x, y, vx, vy, vz, eint, m_p, i, j, budget);
            if (!kept) continue;
            const double e_fin = 0.5 * (vx * vx + vy * vy + vz * vz) + eint;
            after[mesh.id(i, j)] +=
                Vec5{m_p, m_p * vx, m_p * vy, m_p * vz, m_p * e_fin};
            if (t_c >= dt - t_entry) {
                pool.push(m_p, x, y, vx, vy, vz, eint, mesh.id(i, j),
                          ParticleTag::collisionless);
            } else {
                ++ledger.eliminated;  // collided inside: absorbed where it stopped
            }
        }
    }

    for (int c = 0; c < mesh.ncells(); ++c)
        ledger.net_flux[c] = after[c] - before[c];
    pool.compact();
    return ledger;
}

void particle_content_per_cell(const ParticlePool& pool, int ncells,
                               std::vector<Vec5>& out) {
    out.assign(ncells, Vec5{});
    const size_t np = pool.size();
    for (size_t k = 0; k < np; ++k) {
        if (pool.dead[k]) continue;
        out[pool.cell[k]] += pool.content(k);
    }
}

}  // namespace ugkwp
