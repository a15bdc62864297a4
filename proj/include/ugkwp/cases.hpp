// Benchmark case presets, sectioned key=value configuration parsing, and
// construction of a ready-to-run simulation from a configuration.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ugkwp/stepper.hpp"

namespace ugkwp {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InitBlock {
    std::string name;
    double x_from = -1e300, x_to = 1e300;
    double y_from = -1e300, y_to = 1e300;
    double rho = 1.0, u = 0.0, v = 0.0, p = 1.0;
};

struct BcConfig {
    std::string type;  // periodic|reservoir|outflow|diffuse_wall|symmetry|plate
    double rho = 1.0, u = 0.0, v = 0.0, p = 1.0;  // reservoir state
    double Tw = 1.0, uw = 0.0, vw = 0.0;          // wall
    double plate_x0 = 0.0;
    bool set = false;
};

struct BodyConfig {
    bool present = false;
    double cx = 0.0, cy = 0.0, radius = 0.0, Tw = 1.0;
};

struct CaseConfig {
    std::string name = "case";
    // [mesh]
    int dim = 1;
    int nx = 100, ny = 1;
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    std::string xstretch = "uniform";  // uniform | edge
    double edge_x = 0.0, edge_dx = 0.0;
    std::string ystretch = "uniform";  // uniform | wall_low
    double wall_dy = 0.0;
    // [gas]
    int K = 0;
    double omega = 0.81;
    std::string mu_law = "vhs";  // vhs | constant
    double mu_ref = 0.0;         // direct reference viscosity, or
    double knudsen = 0.0;        // derived via the dimensionless VHS chain
    double T0 = 1.0;
    // [init.*]
    std::vector<InitBlock> init;
    // [bc.*]
    BcConfig bc[4];  // left, right, bottom, top
    BodyConfig body;
    // [run]
    std::string mode = "ugkwp";
    double cfl = 0.95;
    uint64_t seed = 12345;
    double t_end = 1.0;
    double avg_start = -1.0;
    double steady_tol = 0.0;
    double particles_per_cell = 0.0;  // m_p = rho_ref*mean cell volume / ppc
    double m_p = 0.0;                 // direct override
    double visc_jump = 1.0;
    // [output]
    double output_every = 0.0;  // 0: final snapshot only

    GasModel gas_model() const;
    Mode run_mode() const;
};

std::vector<std::string> preset_names();
CaseConfig preset(const std::string& name);

CaseConfig parse_config(const std::string& text);
std::string serialize(const CaseConfig& cfg);
uint64_t config_hash(const CaseConfig& cfg);

// Mesh, boundaries, initial field, and particle weight from a configuration.
SimState make_sim(const CaseConfig& cfg);
RunControl run_control(const CaseConfig& cfg);

}  // namespace ugkwp
