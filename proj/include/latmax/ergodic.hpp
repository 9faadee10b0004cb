#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "latmax/bodies.hpp"
#include "latmax/coord.hpp"
#include "latmax/errors.hpp"
#include "latmax/grid.hpp"
#include "latmax/operators.hpp"
#include "latmax/sparse.hpp"
#include "latmax/variation.hpp"

namespace latmax {

// Real-valued function on the product cyclic group (Z/mZ)^d with the
// commuting coordinate shifts x -> x - y e_j acting by composition.
// Counting measure throughout.
class CyclicSystem {
public:
    CyclicSystem(int dim, std::int64_t modulus, std::size_t max_points = GridFunction::kDefaultMaxPoints)
        : dim_(dim), modulus_(modulus) {
        if (dim < 1) throw std::invalid_argument("cyclic system needs dim >= 1");
        if (modulus < 2) throw std::invalid_argument("cyclic system needs modulus >= 2");
        std::size_t n = 1;
        for (int k = 0; k < dim; ++k) {
            if (n > max_points / static_cast<std::size_t>(modulus))
                throw capacity_error("cyclic system exceeds the point budget");
            n *= static_cast<std::size_t>(modulus);
        }
        state_.assign(n, 0.0);
    }

    int dim() const { return dim_; }
    std::int64_t modulus() const { return modulus_; }
    std::size_t size() const { return state_.size(); }

    double& operator[](std::size_t i) { return state_[i]; }
    const double& operator[](std::size_t i) const { return state_[i]; }

    std::size_t flat(const Coord& x) const {
        std::size_t idx = 0;
        for (int k = 0; k < dim_; ++k) {
            std::int64_t c = x[static_cast<std::size_t>(k)] % modulus_;
            if (c < 0) c += modulus_;
            idx = idx * static_cast<std::size_t>(modulus_) + static_cast<std::size_t>(c);
        }
        return idx;
    }

    // Canonical representatives in [0, m)^d.
    Coord coord_of(std::size_t i) const {
        Coord x(static_cast<std::size_t>(dim_), 0);
        for (int k = dim_ - 1; k >= 0; --k) {
            x[static_cast<std::size_t>(k)] =
                static_cast<std::int64_t>(i % static_cast<std::size_t>(modulus_));
            i /= static_cast<std::size_t>(modulus_);
        }
        return x;
    }

    double at(const Coord& x) const { return state_[flat(x)]; }

    double mean() const {
        double s = 0.0;
        for (double v : state_) s += v;
        return s / static_cast<double>(state_.size());
    }

    double lp_norm(double p) const {
        if (std::isinf(p)) {
            double m = 0.0;
            for (double v : state_) m = std::max(m, std::abs(v));
            return m;
        }
        double s = 0.0;
        for (double v : state_) s += std::pow(std::abs(v), p);
        return std::pow(s, 1.0 / p);
    }

private:
    int dim_;
    std::int64_t modulus_;
    std::vector<double> state_;
};

// f composed with the shift T_j^y, i.e. out(x) = f(x - y e_j).
inline CyclicSystem shift(const CyclicSystem& f, int axis, std::int64_t y) {
    if (axis < 0 || axis >= f.dim()) throw std::invalid_argument("shift axis out of range");
    CyclicSystem out(f.dim(), f.modulus());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Coord x = f.coord_of(i);
        x[static_cast<std::size_t>(axis)] -= y;
        out[i] = f.at(x);
    }
    return out;
}

// Ergodic averaging operator realized on the cyclic model:
// A_t f(x) = (1/|G_t cap Z^d|) sum_{y in G_t} f(x - y mod m).
inline CyclicSystem ergodic_average(const CyclicSystem& f, const Body& body, double t,
                                    std::size_t cap = kDefaultLatticeCap) {
    const std::vector<Coord> pts = lattice_points(body, t, f.dim(), cap);
    const double w = 1.0 / static_cast<double>(pts.size());
    CyclicSystem out(f.dim(), f.modulus());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Coord x = f.coord_of(i);
        double s = 0.0;
        for (const Coord& y : pts) s += f.at(sub(x, y));
        out[i] = w * s;
    }
    return out;
}

// Smallest integer c with G_t contained in the cube Q_{ct} for all t.
inline int cube_cover_constant(const Body& body) {
    return std::visit(
        [](const auto& b) -> int {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Cube>) {
                return 1;
            } else if constexpr (std::is_same_v<T, LqBall>) {
                return 1; // |y|_inf <= |y|_q for q >= 1
            } else {
                double m = b.lambda.empty() ? 1.0 : b.lambda.front();
                for (double a : b.lambda) m = std::min(m, a);
                return static_cast<int>(std::ceil(1.0 / m - 1e-12));
            }
        },
        body);
}

struct TransferenceReport {
    double identity_error = 0.0;   // max |A_t f(T^z x) - M_t phi_x(z)|
    double cyclic_ratio = 0.0;     // ||V_r(A_t f)||_p / ||f||_p on the cyclic group
    double lattice_constant = 0.0; // max_x ||V_r(M_t phi_x)||_p / ||phi_x||_p
    double window_factor = 1.0;    // ((2L+1)/(2Z+1))^{d/p}, the finite-window volume ratio
    double ratio_excess = 0.0;     // cyclic_ratio - lattice_constant * window_factor
    bool ratio_checked = false;
    bool pass(double identity_tol = 1e-14, double excess_tol = 1e-9) const {
        return identity_error <= identity_tol && (!ratio_checked || ratio_excess <= excess_tol);
    }
};

namespace detail {

// Localization of phi_x(y) = f(x - y mod m) to the box |y|_inf <= L.
inline SparseFunction localize(const CyclicSystem& f, const Coord& x, std::int64_t L) {
    SparseFunction phi(f.dim());
    Coord y(static_cast<std::size_t>(f.dim()), -L);
    while (true) {
        phi.set(y, f.at(sub(x, y)));
        int k = f.dim() - 1;
        while (k >= 0 && y[static_cast<std::size_t>(k)] == L) {
            y[static_cast<std::size_t>(k)] = -L;
            --k;
        }
        if (k < 0) break;
        ++y[static_cast<std::size_t>(k)];
    }
    return phi;
}

inline double v_r_lp_norm(const std::map<Coord, std::vector<cplx>>& paths,
                          const std::vector<double>& times, double r, double p) {
    double sum = 0.0;
    for (const auto& [z, values] : paths) {
        ScalarPath path{times, values};
        sum += std::pow(v_r(path, r).value, p);
    }
    return std::pow(sum, 1.0 / p);
}

} // namespace detail

// Two-sided check of the transference principle on a cyclic product system.
//
// (a) Identity: for z in the cube Q_Z and every scale t, the ergodic average
//     at the shifted base point equals the lattice average of the localized
//     function phi_x. Exact by construction once the localization window
//     L = Z + (kernel radius) fits in one period; otherwise wrap corrupts it
//     and the call refuses to run.
// (b) Inequality: summing the identity over all base points x gives, with
//     counting measure and W = (2L+1)^d / (2Z+1)^d,
//       ||V_r(A_t f)||_p <= max_x ( ||V_r(M_t phi_x)||_p / ||phi_x||_p ) * W^{1/p} * ||f||_p,
//     an exact finite-window form of the transference inequality (the window
//     factor tends to 1 as the z-cube grows). ratio_excess is roundoff only.
inline TransferenceReport transference_check(const CyclicSystem& f, const Body& body,
                                             const ScaleSet& scales, double r, double p,
                                             bool check_ratio = true,
                                             std::size_t cap = kDefaultLatticeCap) {
    validate(scales);
    if (!(p >= 1.0)) throw std::domain_error("transference check needs p >= 1");
    const int d = f.dim();
    const std::int64_t m = f.modulus();

    std::vector<std::vector<Coord>> pts;
    std::int64_t kernel_radius = 0;
    for (double t : scales.scales) {
        pts.push_back(lattice_points(body, t, d, cap));
        for (const Coord& y : pts.back()) kernel_radius = std::max(kernel_radius, linf_norm(y));
    }
    const std::int64_t z_rad = static_cast<std::int64_t>(cube_cover_constant(body)) *
                               static_cast<std::int64_t>(std::ceil(scales.scales.back()));
    const std::int64_t L = z_rad + kernel_radius;
    if (m <= 2 * L)
        throw padding_error("modulus " + std::to_string(m) +
                            " wraps the localization window; smallest admissible modulus is " +
                            std::to_string(2 * L + 1));

    // cyclic side: one averaged state per scale
    std::vector<CyclicSystem> averaged;
    averaged.reserve(scales.scales.size());
    for (double t : scales.scales) averaged.push_back(ergodic_average(f, body, t, cap));

    TransferenceReport rep;
    rep.ratio_checked = check_ratio;

    const std::size_t base_count = check_ratio ? f.size() : 1;
    for (std::size_t xi = 0; xi < base_count; ++xi) {
        const Coord x = f.coord_of(xi);
        const SparseFunction phi = detail::localize(f, x, L);

        std::map<Coord, std::vector<cplx>> paths;
        for (std::size_t s = 0; s < pts.size(); ++s) {
            const double w = 1.0 / static_cast<double>(pts[s].size());
            // M_t phi(z) over the support box |z|_inf <= L + kernel radius
            std::map<Coord, double> conv;
            for (const auto& [y, v] : phi)
                for (const Coord& k : pts[s]) conv[add(y, k)] += w * v;
            for (const auto& [z, v] : conv) {
                auto it = paths.emplace(z, std::vector<cplx>(pts.size(), cplx{})).first;
                it->second[s] = v;
            }
            // identity against the cyclic side on the z-cube
            Coord z(static_cast<std::size_t>(d), -z_rad);
            while (true) {
                const auto hit = conv.find(z);
                const double lattice_value = hit == conv.end() ? 0.0 : hit->second;
                const double cyclic_value = averaged[s].at(sub(x, z));
                rep.identity_error =
                    std::max(rep.identity_error, std::abs(lattice_value - cyclic_value));
                int k = d - 1;
                while (k >= 0 && z[static_cast<std::size_t>(k)] == z_rad) {
                    z[static_cast<std::size_t>(k)] = -z_rad;
                    --k;
                }
                if (k < 0) break;
                ++z[static_cast<std::size_t>(k)];
            }
        }
        if (!check_ratio) continue;
        const double vnorm = detail::v_r_lp_norm(paths, scales.scales, r, p);
        const double pnorm = phi.lp_norm(p);
        if (pnorm > 0.0) rep.lattice_constant = std::max(rep.lattice_constant, vnorm / pnorm);
    }

    if (check_ratio) {
        const double fnorm = f.lp_norm(p);
        std::map<Coord, std::vector<cplx>> cyclic_paths;
        for (std::size_t i = 0; i < f.size(); ++i) {
            std::vector<cplx> path(averaged.size());
            for (std::size_t s = 0; s < averaged.size(); ++s) path[s] = averaged[s][i];
            cyclic_paths.emplace(f.coord_of(i), std::move(path));
        }
        rep.cyclic_ratio =
            fnorm > 0.0 ? detail::v_r_lp_norm(cyclic_paths, scales.scales, r, p) / fnorm : 0.0;
        const double window = static_cast<double>(2 * L + 1) / static_cast<double>(2 * z_rad + 1);
        rep.window_factor = std::pow(window, static_cast<double>(d) / p);
        rep.ratio_excess = rep.cyclic_ratio - rep.lattice_constant * rep.window_factor;
    }
    return rep;
}

} // namespace latmax
