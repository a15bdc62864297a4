#include "ugkwp/snapshot_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ugkwp {

Snapshot make_snapshot(const SimState& s, const std::vector<MacroState>& field,
                       const std::vector<double>& particles_per_cell,
                       const std::string& case_name, uint64_t cfg_hash) {
    Snapshot snap;
    snap.seed = s.seed;
    snap.case_name = case_name;
    snap.config_hash = cfg_hash;
    snap.time = s.time;
    snap.dim = s.mesh.dim;
    snap.nx = s.mesh.nx;
    snap.ny = s.mesh.ny;
    const int nc = s.mesh.ncells();
    snap.x.resize(nc);
    snap.y.resize(nc);
    snap.rho.assign(nc, 0.0);
    snap.u.assign(nc, 0.0);
    snap.v.assign(nc, 0.0);
    snap.p.assign(nc, 0.0);
    snap.T.assign(nc, 0.0);
    snap.npart.assign(nc, 0.0);
    snap.hfrac.assign(nc, 0.0);
    for (int j = 0; j < s.mesh.ny; ++j)
        for (int i = 0; i < s.mesh.nx; ++i) {
            const int c = s.mesh.id(i, j);
            snap.x[c] = s.mesh.xc(i);
            snap.y[c] = s.mesh.yc(j);
            if (s.mesh.is_solid(i, j)) continue;
            const Primitive prim = to_primitive(field[c], s.gas);
            snap.rho[c] = prim.rho;
            snap.u[c] = prim.U[0];
            snap.v[c] = prim.U[1];
            snap.p[c] = prim.p;
            snap.T[c] = temperature(prim);
            if (!particles_per_cell.empty()) snap.npart[c] = particles_per_cell[c];
            if (!s.Wwave.empty() && field[c].rho > 0.0)
                snap.hfrac[c] = s.Wwave[c].rho / field[c].rho;
        }
    return snap;
}

void write_snapshot(const Snapshot& snap, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out.precision(12);
    out << "# schema=" << snap.schema << ", seed=" << snap.seed
        << ", case=" << snap.case_name << ", time=" << snap.time
        << ", config=" << std::hex << snap.config_hash << std::dec
        << ", dim=" << snap.dim << ", nx=" << snap.nx << ", ny=" << snap.ny << "\n";
    out << "x,y,rho,u,v,p,T,npart,hfrac\n";
    for (size_t c = 0; c < snap.x.size(); ++c) {
        out << snap.x[c] << ',' << snap.y[c] << ',' << snap.rho[c] << ','
            << snap.u[c] << ',' << snap.v[c] << ',' << snap.p[c] << ','
            << snap.T[c] << ',' << snap.npart[c] << ',' << snap.hfrac[c] << "\n";
    }
    if (!out) throw io_error("write failed: " + path);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (const char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    Snapshot snap;
    std::string line;
    // header comment
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream h(line.substr(1));
            std::string tok;
            while (std::getline(h, tok, ',')) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                std::string key = tok.substr(0, eq);
                key.erase(0, key.find_first_not_of(' '));
                const std::string val = tok.substr(eq + 1);
                if (key == "time") snap.time = std::stod(val);
                else if (key == "seed") snap.seed = std::stoull(val);
                else if (key == "case") snap.case_name = val;
                else if (key == "dim") snap.dim = std::stoi(val);
                else if (key == "nx") snap.nx = std::stoi(val);
                else if (key == "ny") snap.ny = std::stoi(val);
                else if (key == "config") snap.config_hash = std::stoull(val, nullptr, 16);
            }
            continue;
        }
        break;  // column header line consumed
    }
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto f = split_csv(line);
        if (f.size() != 9) throw io_error("bad snapshot row in " + path);
        snap.x.push_back(std::stod(f[0]));
        snap.y.push_back(std::stod(f[1]));
        snap.rho.push_back(std::stod(f[2]));
        snap.u.push_back(std::stod(f[3]));
        snap.v.push_back(std::stod(f[4]));
        snap.p.push_back(std::stod(f[5]));
        snap.T.push_back(std::stod(f[6]));
        snap.npart.push_back(std::stod(f[7]));
        snap.hfrac.push_back(std::stod(f[8]));
    }
    return snap;
}

namespace {

const std::vector<double>& column(const Snapshot& snap, const std::string& name) {
    if (name == "rho") return snap.rho;
    if (name == "u") return snap.u;
    if (name == "v") return snap.v;
    if (name == "p") return snap.p;
    if (name == "T") return snap.T;
    if (name == "npart") return snap.npart;
    if (name == "hfrac") return snap.hfrac;
    throw io_error("unknown column '" + name + "'");
}

}  // namespace

Profile extract_profile(const Snapshot& snap, const std::string& line,
                        const std::string& col) {
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
        throw io_error("bad line spec '" + line + "' (use x=<v> or y=<v>)");
    const std::string axis = line.substr(0, eq);
    const double value = std::stod(line.substr(eq + 1));
    const std::vector<double>& data = column(snap, col);

    Profile p;
    if (axis == "x") {
        // nearest cell column, profile along y
        int best = 0;
        for (int i = 1; i < snap.nx; ++i)
            if (std::abs(snap.x[i] - value) < std::abs(snap.x[best] - value)) best = i;
        for (int j = 0; j < snap.ny; ++j) {
            p.s.push_back(snap.y[static_cast<size_t>(j) * snap.nx + best]);
            p.v.push_back(data[static_cast<size_t>(j) * snap.nx + best]);
        }
    } else if (axis == "y") {
        int best = 0;
        for (int j = 1; j < snap.ny; ++j)
            if (std::abs(snap.y[static_cast<size_t>(j) * snap.nx] - value) <
                std::abs(snap.y[static_cast<size_t>(best) * snap.nx] - value))
                best = j;
        for (int i = 0; i < snap.nx; ++i) {
            p.s.push_back(snap.x[static_cast<size_t>(best) * snap.nx + i]);
            p.v.push_back(data[static_cast<size_t>(best) * snap.nx + i]);
        }
    } else {
        throw io_error("bad line spec '" + line + "'");
    }
    return p;
}

Profile blasius_similarity(const Snapshot& snap, double x_station, double U0,
                           double nu) {
    Profile raw = extract_profile(snap, "x=" + std::to_string(x_station), "u");
    // the nearest column's actual x defines the transform
    int best = 0;
    for (int i = 1; i < snap.nx; ++i)
        if (std::abs(snap.x[i] - x_station) < std::abs(snap.x[best] - x_station))
            best = i;
    const double xs = snap.x[best];
    if (!(xs > 0.0)) throw io_error("blasius similarity: station not on the plate");
    const double scale = std::sqrt(U0 / (nu * xs));
    Profile out;
    for (size_t k = 0; k < raw.s.size(); ++k) {
        out.s.push_back(raw.s[k] * scale);
        out.v.push_back(raw.v[k] / U0);
    }
    return out;
}

void write_profile(const Profile& p, const std::string& path,
                   const std::string& header) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out.precision(12);
    if (!header.empty()) out << "# " << header << "\n";
    out << "s,value\n";
    for (size_t k = 0; k < p.s.size(); ++k)
        out << p.s[k] << ',' << p.v[k] << "\n";
    if (!out) throw io_error("write failed: " + path);
}

Profile read_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    Profile p;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("s,", 0) == 0) continue;
        const auto f = split_csv(line);
        if (f.size() < 2) throw io_error("bad profile row in " + path);
        p.s.push_back(std::stod(f[0]));
        p.v.push_back(std::stod(f[1]));
    }
    return p;
}

Norms error_norms(const Profile& result, const Profile& reference) {
    if (result.s.size() < 2 || reference.s.size() < 2)
        throw io_error("error_norms: need at least 2 points per profile");
    const double rlo = *std::min_element(result.s.begin(), result.s.end());
    const double rhi = *std::max_element(result.s.begin(), result.s.end());

    // interpolate the result onto reference abscissae inside [rlo, rhi]
    std::vector<size_t> order(result.s.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return result.s[a] < result.s[b]; });

    auto interp = [&](double s) {
        size_t lo = 0, hi = order.size() - 1;
        while (hi - lo > 1) {
            const size_t mid = (lo + hi) / 2;
            if (result.s[order[mid]] <= s) lo = mid;
            else hi = mid;
        }
        const double s0 = result.s[order[lo]], s1 = result.s[order[hi]];
        const double v0 = result.v[order[lo]], v1 = result.v[order[hi]];
        if (s1 == s0) return v0;
        const double w = (s - s0) / (s1 - s0);
        return v0 + w * (v1 - v0);
    };

    double vmin = 1e300, vmax = -1e300;
    double sum1 = 0.0, sum2 = 0.0, vinf = 0.0;
    long n = 0;
    for (size_t k = 0; k < reference.s.size(); ++k) {
        const double s = reference.s[k];
        if (s < rlo || s > rhi) continue;  // never extrapolate
        const double d = interp(s) - reference.v[k];
        sum1 += std::abs(d);
        sum2 += d * d;
        vinf = std::max(vinf, std::abs(d));
        vmin = std::min(vmin, reference.v[k]);
        vmax = std::max(vmax, reference.v[k]);
        ++n;
    }
    if (n == 0) throw io_error("error_norms: disjoint abscissae");
    double range = vmax - vmin;
    if (!(range > 0.0)) range = std::max(std::abs(vmax), 1e-300);
    Norms norms;
    norms.L1 = sum1 / n / range;
    norms.L2 = std::sqrt(sum2 / n) / range;
    norms.Linf = vinf / range;
    return norms;
}

}  // namespace ugkwp
