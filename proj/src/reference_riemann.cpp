#include <cmath>

#include "ugkwp/reference_solvers.hpp"

namespace ugkwp {

namespace {

// f_K(p) and derivative for the pressure iteration (Toro's notation)
void wave_function(double p, const PrimQ& s, double gamma, double& f, double& df) {
    const double a = std::sqrt(gamma * s.p / s.rho);
    if (p > s.p) {  // shock
        const double A = 2.0 / ((gamma + 1.0) * s.rho);
        const double B = (gamma - 1.0) / (gamma + 1.0) * s.p;
        const double q = std::sqrt(A / (p + B));
        f = (p - s.p) * q;
        df = q * (1.0 - 0.5 * (p - s.p) / (p + B));
    } else {  // rarefaction
        const double pr = p / s.p;
        f = 2.0 * a / (gamma - 1.0) * (std::pow(pr, (gamma - 1.0) / (2.0 * gamma)) - 1.0);
        df = std::pow(pr, -(gamma + 1.0) / (2.0 * gamma)) / (s.rho * a);
    }
}

}  // namespace

RiemannSolution exact_riemann(const PrimQ& left, const PrimQ& right, double gamma) {
    if (!(left.rho > 0.0) || !(right.rho > 0.0) || !(left.p > 0.0) || !(right.p > 0.0))
        throw unphysical_error("exact_riemann: non-positive input state");
    RiemannSolution sol;
    sol.gamma = gamma;
    sol.left = left;
    sol.right = right;

    const double al = std::sqrt(gamma * left.p / left.rho);
    const double ar = std::sqrt(gamma * right.p / right.rho);
    // vacuum generation criterion
    if (2.0 * al / (gamma - 1.0) + 2.0 * ar / (gamma - 1.0) <= right.u - left.u) {
        sol.vacuum = true;
        sol.p_star = 0.0;
        sol.rho_star_l = sol.rho_star_r = 0.0;
        sol.u_star = 0.0;
        return sol;
    }

    // Newton iteration with a positivity-preserving start
    double p = 0.5 * (left.p + right.p);
    {
        // two-rarefaction initial guess
        const double z = (gamma - 1.0) / (2.0 * gamma);
        const double num = al + ar - 0.5 * (gamma - 1.0) * (right.u - left.u);
        const double den = al / std::pow(left.p, z) + ar / std::pow(right.p, z);
        const double ptr = std::pow(num / den, 1.0 / z);
        if (ptr > 0.0) p = ptr;
    }
    for (int it = 0; it < 200; ++it) {
        double fl, dfl, fr, dfr;
        wave_function(p, left, gamma, fl, dfl);
        wave_function(p, right, gamma, fr, dfr);
        const double g = fl + fr + (right.u - left.u);
        const double dp = g / (dfl + dfr);
        double pn = p - dp;
        if (pn <= 0.0) pn = 0.5 * p;
        const double change = std::abs(pn - p) / (0.5 * (pn + p));
        p = pn;
        if (change < 1e-14) break;
    }
    sol.p_star = p;
    {
        double fl, dfl, fr, dfr;
        wave_function(p, left, gamma, fl, dfl);
        wave_function(p, right, gamma, fr, dfr);
        sol.u_star = 0.5 * (left.u + right.u) + 0.5 * (fr - fl);
    }
    const double gm = (gamma - 1.0) / (gamma + 1.0);
    sol.rho_star_l = p > left.p
                         ? left.rho * ((p / left.p + gm) / (gm * p / left.p + 1.0))
                         : left.rho * std::pow(p / left.p, 1.0 / gamma);
    sol.rho_star_r = p > right.p
                         ? right.rho * ((p / right.p + gm) / (gm * p / right.p + 1.0))
                         : right.rho * std::pow(p / right.p, 1.0 / gamma);
    return sol;
}

PrimQ RiemannSolution::sample(double xi) const {
    const double g = gamma;
    const double al = std::sqrt(g * left.p / left.rho);
    const double ar = std::sqrt(g * right.p / right.rho);
    if (vacuum) {
        // left fan, vacuum, right fan
        const double sl_head = left.u - al;
        const double sl_tail = left.u + 2.0 * al / (g - 1.0);
        const double sr_tail = right.u - 2.0 * ar / (g - 1.0);
        const double sr_head = right.u + ar;
        if (xi <= sl_head) return left;
        if (xi < sl_tail) {
            const double u = (2.0 / (g + 1.0)) * (al + 0.5 * (g - 1.0) * left.u + xi);
            const double a = al + 0.5 * (g - 1.0) * (left.u - u);
            const double rho = left.rho * std::pow(a / al, 2.0 / (g - 1.0));
            return {rho, u, left.p * std::pow(rho / left.rho, g)};
        }
        if (xi <= sr_tail) return {0.0, 0.0, 0.0};
        if (xi < sr_head) {
            const double u = (2.0 / (g + 1.0)) * (-ar + 0.5 * (g - 1.0) * right.u + xi);
            const double a = ar - 0.5 * (g - 1.0) * (right.u - u);
            const double rho = right.rho * std::pow(a / ar, 2.0 / (g - 1.0));
            return {rho, u, right.p * std::pow(rho / right.rho, g)};
        }
        return right;
    }

    if (xi <= u_star) {
        // left of the contact
        if (p_star > left.p) {  // left shock
            const double sl = left.u - al * std::sqrt((g + 1.0) / (2.0 * g) * p_star / left.p +
                                                      (g - 1.0) / (2.0 * g));
            return xi <= sl ? left : PrimQ{rho_star_l, u_star, p_star};
        }
        const double a_star = al * std::pow(p_star / left.p, (g - 1.0) / (2.0 * g));
        const double head = left.u - al;
        const double tail = u_star - a_star;
        if (xi <= head) return left;
        if (xi >= tail) return {rho_star_l, u_star, p_star};
        const double u = (2.0 / (g + 1.0)) * (al + 0.5 * (g - 1.0) * left.u + xi);
        const double a = al + 0.5 * (g - 1.0) * (left.u - u);
        const double rho = left.rho * std::pow(a / al, 2.0 / (g - 1.0));
        return {rho, u, left.p * std::pow(rho / left.rho, g)};
    }
    // right of the contact
    if (p_star > right.p) {  // right shock
        const double sr = right.u + ar * std::sqrt((g + 1.0) / (2.0 * g) * p_star / right.p +
                                                   (g - 1.0) / (2.0 * g));
        return xi >= sr ? right : PrimQ{rho_star_r, u_star, p_star};
    }
    const double a_star = ar * std::pow(p_star / right.p, (g - 1.0) / (2.0 * g));
    const double head = right.u + ar;
    const double tail = u_star + a_star;
    if (xi >= head) return right;
    if (xi <= tail) return {rho_star_r, u_star, p_star};
    const double u = (2.0 / (g + 1.0)) * (-ar + 0.5 * (g - 1.0) * right.u + xi);
    const double a = ar - 0.5 * (g - 1.0) * (right.u - u);
    const double rho = right.rho * std::pow(a / ar, 2.0 / (g - 1.0));
    return {rho, u, right.p * std::pow(rho / right.rho, g)};
}

ShockJump rankine_hugoniot(double mach, double gamma) {
    if (!(mach > 1.0)) throw unphysical_error("rankine_hugoniot: M must exceed 1");
    ShockJump j;
    const double m2 = mach * mach;
    j.rho_ratio = (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
    j.p_ratio = (2.0 * gamma * m2 - (gamma - 1.0)) / (gamma + 1.0);
    j.T_ratio = j.p_ratio / j.rho_ratio;
    j.u2_over_u1 = 1.0 / j.rho_ratio;
    return j;
}

}  // namespace ugkwp
