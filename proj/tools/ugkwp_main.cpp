// Command-line driver: run benchmark cases (ugkwp/ugkp/gks or the dvm
// reference), compare profiles, and list presets.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "ugkwp/cases.hpp"
#include "ugkwp/reference_solvers.hpp"
#include "ugkwp/snapshot_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

int run_dvm(const ugkwp::CaseConfig& cfg, const std::string& outdir, int nv,
            double vmax) {
    using namespace ugkwp;
    if (cfg.dim != 1) {
        std::cerr << "dvm mode supports 1D cases only\n";
        return kExitConfig;
    }
    DvmConfig dc;
    dc.ncell = cfg.nx;
    dc.x0 = cfg.x0;
    dc.x1 = cfg.x1;
    dc.nv = nv;
    dc.vmax = vmax;
    dc.gas = cfg.gas_model();
    dc.periodic = cfg.bc[kWest].type == "periodic";
    dc.init = [&cfg](double x) {
        PrimQ q{1.0, 0.0, 1.0};
        for (const InitBlock& b : cfg.init)
            if (x >= b.x_from && x < b.x_to) q = {b.rho, b.u, b.p};
        return q;
    };
    DvmSolver solver(dc);
    solver.run_until(cfg.t_end);

    Snapshot snap;
    snap.seed = cfg.seed;
    snap.case_name = cfg.name + "_dvm";
    snap.config_hash = config_hash(cfg);
    snap.time = solver.time();
    snap.dim = 1;
    snap.nx = dc.ncell;
    snap.ny = 1;
    for (int i = 0; i < dc.ncell; ++i) {
        const PrimQ q = solver.moments(i);
        snap.x.push_back(solver.xc()[i]);
        snap.y.push_back(0.0);
        snap.rho.push_back(q.rho);
        snap.u.push_back(q.u);
        snap.v.push_back(0.0);
        snap.p.push_back(q.p);
        snap.T.push_back(q.p / q.rho);
        snap.npart.push_back(0.0);
        snap.hfrac.push_back(1.0);
    }
    write_snapshot(snap, outdir + "/" + snap.case_name + "_final.csv");
    std::cout << "wrote " << outdir << "/" << snap.case_name << "_final.csv\n";
    return kExitOk;
}

int cmd_run(const std::string& case_name, const std::string& config_path,
            const std::string& mode_override, long seed_override,
            const std::string& outdir, int threads, int dvm_nv, double dvm_vmax) {
    using namespace ugkwp;
    (void)threads;  // the core is deterministic single-threaded

    CaseConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config: " << config_path << "\n";
            return kExitIo;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = parse_config(ss.str());
    } else {
        cfg = preset(case_name);
    }
    if (seed_override >= 0) cfg.seed = static_cast<uint64_t>(seed_override);
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) {
        std::cerr << "cannot create output dir: " << outdir << "\n";
        return kExitIo;
    }

    if (mode_override == "dvm") return run_dvm(cfg, outdir, dvm_nv, dvm_vmax);
    if (!mode_override.empty()) cfg.mode = mode_override;

    SimState sim = make_sim(cfg);
    RunControl rc = run_control(cfg);
    const uint64_t hash = config_hash(cfg);

    double next_out = cfg.output_every > 0.0 ? cfg.output_every : -1.0;
    int out_index = 0;
    if (cfg.output_every > 0.0) {
        rc.on_step = [&](const SimState& s) {
            if (s.time >= next_out) {
                std::vector<long> np;
                std::vector<double> pm, npd;
                particle_counts(s, np, pm);
                npd.assign(np.begin(), np.end());
                Snapshot snap = make_snapshot(s, s.W, npd, cfg.name, hash);
                write_snapshot(snap, outdir + "/" + cfg.name + "_" +
                                         std::to_string(out_index++) + ".csv");
                next_out += cfg.output_every;
            }
        };
    }

    try {
        RunResult res = run(sim, rc);
        std::vector<long> np;
        std::vector<double> pm, npd;
        particle_counts(sim, np, pm);
        npd.assign(np.begin(), np.end());
        write_snapshot(make_snapshot(sim, sim.W, npd, cfg.name, hash),
                       outdir + "/" + cfg.name + "_final.csv");
        write_snapshot(make_snapshot(sim, res.averaged, res.avg_particles,
                                     cfg.name + "_avg", hash),
                       outdir + "/" + cfg.name + "_avg.csv");
        std::cout << "case " << cfg.name << ": " << res.steps << " steps to t="
                  << sim.time << ", live particles " << sim.diag.live_particles
                  << ", corrections " << sim.diag.correction_w_fires << "\n";
    } catch (const numerical_abort& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        std::vector<double> npd(sim.mesh.ncells(), 0.0);
        try {
            write_snapshot(make_snapshot(sim, sim.W, npd, cfg.name + "_aborted", hash),
                           outdir + "/" + cfg.name + "_aborted.csv");
        } catch (...) {
        }
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiscale wave-particle gas-kinetic flow solver"};
    app.require_subcommand(1);

    std::string case_name, config_path, mode, outdir = ".", pa, pb;
    long seed = -1;
    int threads = 1, dvm_nv = 201;
    double dvm_vmax = 0.0;

    CLI::App* runc = app.add_subcommand("run", "run a case");
    runc->add_option("--case", case_name, "preset name");
    runc->add_option("--config", config_path, "config file path");
    runc->add_option("--mode", mode, "ugkwp|ugkp|gks|dvm (override)");
    runc->add_option("--seed", seed, "RNG seed override");
    runc->add_option("--out", outdir, "output directory");
    runc->add_option("--threads", threads, "worker threads (reserved)");
    runc->add_option("--dvm-nv", dvm_nv, "dvm velocity points");
    runc->add_option("--dvm-vmax", dvm_vmax, "dvm velocity bound (0=auto)");

    CLI::App* cmp = app.add_subcommand("compare", "error norms of two profiles");
    cmp->add_option("result", pa, "result profile csv")->required();
    cmp->add_option("reference", pb, "reference profile csv")->required();

    app.add_subcommand("presets", "list case presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("run")) {
            if (case_name.empty() && config_path.empty()) {
                std::cerr << "run: need --case or --config\n";
                return kExitConfig;
            }
            return cmd_run(case_name, config_path, mode, seed, outdir, threads,
                           dvm_nv, dvm_vmax);
        }
        if (app.got_subcommand("compare")) {
            const ugkwp::Profile a = ugkwp::read_profile(pa);
            const ugkwp::Profile b = ugkwp::read_profile(pb);
            const ugkwp::Norms n = ugkwp::error_norms(a, b);
            std::cout << "L1 " << n.L1 << "\nL2 " << n.L2 << "\nLinf " << n.Linf
                      << "\n";
            return kExitOk;
        }
        for (const auto& name : ugkwp::preset_names()) std::cout << name << "\n";
        return kExitOk;
    } catch (const ugkwp::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ugkwp::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
