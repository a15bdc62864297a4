// CSV snapshot/profile output (schema v1), profile extraction including the
// boundary-layer similarity transform, and relative error norms.
#pragma once

#include <string>
#include <vector>

#include "ugkwp/cases.hpp"
#include "ugkwp/stepper.hpp"

namespace ugkwp {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Snapshot {
    int schema = 1;
    uint64_t seed = 0;
    std::string case_name;
    uint64_t config_hash = 0;
    double time = 0.0;
    int dim = 1;
    int nx = 0, ny = 1;
    std::vector<double> x, y;  // cell centers, per cell
    std::vector<double> rho, u, v, p, T;
    std::vector<double> npart, hfrac;  // live particles, hydro mass fraction
};

// Snapshot of the given conservative field (instantaneous or time-averaged).
Snapshot make_snapshot(const SimState& s, const std::vector<MacroState>& field,
                       const std::vector<double>& particles_per_cell,
                       const std::string& case_name, uint64_t cfg_hash);

void write_snapshot(const Snapshot& snap, const std::string& path);
Snapshot read_snapshot(const std::string& path);

struct Profile {
    std::vector<double> s;  // abscissa
    std::vector<double> v;  // value
};

// Column names: rho|u|v|p|T|npart|hfrac.
// line: "x=<value>" extracts along y at the nearest cell column;
//       "y=<value>" extracts along x at the nearest cell row.
Profile extract_profile(const Snapshot& snap, const std::string& line,
                        const std::string& column);

// Similarity transform of a u-velocity station profile: s -> eta, v -> u/U0.
Profile blasius_similarity(const Snapshot& snap, double x_station, double U0,
                           double nu);

void write_profile(const Profile& p, const std::string& path,
                   const std::string& header = "");
Profile read_profile(const std::string& path);

struct Norms {
    double L1 = 0.0, L2 = 0.0, Linf = 0.0;
};

// Relative norms of (result - reference), normalized by the reference dynamic
// range, with the result linearly interpolated onto the overlapping part of
// the reference abscissa (never extrapolated).
Norms error_norms(const Profile& result, const Profile& reference);

}  // namespace ugkwp
