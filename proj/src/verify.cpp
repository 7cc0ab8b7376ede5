// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors

#include "z3ro/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "z3ro/precoder.hpp"

namespace z3ro {

namespace {

void check_gains(const std::vector<double>& r, int min_m) {
    if (static_cast<int>(r.size()) < min_m) {
        throw std::invalid_argument("verify: need at least " +
                                    std::to_string(min_m) + " antennas");
    }
    for (double v : r) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(
                "verify: channel gains must be finite and positive");
        }
    }
}

/// Reduced objective on x = (g_1..g_{M-1}): antenna 0 is eliminated through
/// the zero-residual constraint, g_0 = cbrt(-sum_m (r_m/r_0) x_m^3), and the
/// unit-power constraint drops out because the objective is scale-invariant.
class ReducedObjective {
  public:
    explicit ReducedObjective(const std::vector<double>& r) : r_(r) {}

    double g0(const std::vector<double>& x) const {
        double s = 0.0;
        for (std::size_t m = 0; m < x.size(); ++m) {
            s += (r_[m + 1] / r_[0]) * x[m] * x[m] * x[m];
        }
        return std::cbrt(-s);
    }

    double operator()(const std::vector<double>& x) const {
        const double g_0 = g0(x);
        double dot = r_[0] * g_0;
        double nsq = g_0 * g_0;
        for (std::size_t m = 0; m < x.size(); ++m) {
            dot += r_[m + 1] * x[m];
            nsq += x[m] * x[m];
        }
        if (nsq < 1e-12) return -std::numeric_limits<double>::infinity();
        return dot * dot / nsq;
    }

  private:
    const std::vector<double>& r_;
};

/// Greedy coordinate pattern search. Starts from x with the given step,
/// halves the step whenever a full sweep fails to improve, stops below
/// step_min. Deterministic: coordinates are visited in index order and the
/// positive direction is tried first.
double pattern_search(const ReducedObjective& f, std::vector<double>& x,
                      double step, double step_min) {
    double best = f(x);
    while (step >= step_min) {
        bool improved = false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double xi = x[i];
            for (double dir : {+1.0, -1.0}) {
                x[i] = xi + dir * step;
                const double v = f(x);
                if (v > best) {
                    best = v;
                    improved = true;
                    break;
                }
                x[i] = xi;
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

} // namespace

OracleResult brute_force_real(const std::vector<double>& r, int grid_n) {
    const int M = static_cast<int>(r.size());
    if (M < 3 || M > 5) {
        throw std::invalid_argument(
            "brute_force_real: exhaustive oracle supports 3 to 5 antennas");
    }
    if (grid_n < 64 || grid_n > 512) {
        throw std::invalid_argument(
            "brute_force_real: grid_n must lie in [64, 512]");
    }
    check_gains(r, 3);

    const ReducedObjective f(r);
    const int dims = M - 1;
    const double cell = 2.0 / (grid_n - 1);

    std::vector<int> idx(dims, 0);
    std::vector<double> x(dims, -1.0);
    std::vector<double> best_x(dims, 0.0);
    double best = -std::numeric_limits<double>::infinity();
    long long visited = 0;

    // Odometer over the full grid; ties keep the first point in scan order.
    for (;;) {
        ++visited;
        const double v = f(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
        int d = 0;
        while (d < dims && ++idx[d] == grid_n) {
            idx[d] = 0;
            x[d] = -1.0;
            ++d;
        }
        if (d == dims) break;
        x[d] = -1.0 + cell * idx[d];
    }

    best = pattern_search(f, best_x, cell, 1e-10);

    OracleResult out;
    out.grid_points_evaluated = visited;
    out.best_g.resize(M);
    out.best_g[0] = f.g0(best_x);
    for (int m = 1; m < M; ++m) out.best_g[m] = best_x[m - 1];

    double dot = 0.0, nsq = 0.0;
    for (int m = 0; m < M; ++m) {
        dot += r[m] * out.best_g[m];
        nsq += out.best_g[m] * out.best_g[m];
    }
    const double scale = (dot >= 0.0 ? 1.0 : -1.0) / std::sqrt(nsq);
    for (double& g : out.best_g) g *= scale;
    out.best_array_gain = dot * dot / nsq;
    return out;
}

HessianSummary hessian_check(const std::vector<double>& r,
                             const std::vector<double>& g, double fd_step) {
    const int M = static_cast<int>(r.size());
    if (M < 2) throw std::invalid_argument("hessian_check: need M >= 2");
    if (g.size() != r.size()) {
        throw std::invalid_argument("hessian_check: r and g sizes differ");
    }
    check_gains(r, 2);
    if (!(fd_step > 0.0)) {
        throw std::invalid_argument("hessian_check: fd_step must be positive");
    }

    double nsq = 0.0, res = 0.0, res_scale = 0.0;
    for (int m = 0; m < M; ++m) {
        nsq += g[m] * g[m];
        res += r[m] * g[m] * g[m] * g[m];
        res_scale += r[m] * std::abs(g[m]) * std::abs(g[m]) * std::abs(g[m]);
    }
    if (std::abs(nsq - 1.0) > 1e-8) {
        throw std::invalid_argument(
            "hessian_check: point is not unit power to 1e-8");
    }
    if (std::abs(res) > 1e-8 * std::max(res_scale, 1e-300)) {
        throw std::invalid_argument(
            "hessian_check: point does not satisfy the null constraint");
    }

    const ReducedObjective f(r);
    const int n = M - 1;
    std::vector<double> x(g.begin() + 1, g.end());
    std::vector<double> h(n);
    for (int i = 0; i < n; ++i) h[i] = fd_step * (std::abs(x[i]) + 1.0);

    // Central difference of the central-difference gradient. The two nested
    // steps make H_ij and H_ji independent estimates, so their spread is a
    // direct measure of finite-difference noise.
    const auto grad_j = [&](std::vector<double>& y, int j) {
        const double yj = y[j];
        y[j] = yj + h[j];
        const double fp = f(y);
        y[j] = yj - h[j];
        const double fm = f(y);
        y[j] = yj;
        return (fp - fm) / (2.0 * h[j]);
    };

    Eigen::MatrixXd H(n, n);
    std::vector<double> y = x;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double yi = y[i];
            y[i] = yi + h[i];
            const double gp = grad_j(y, j);
            y[i] = yi - h[i];
            const double gm = grad_j(y, j);
            y[i] = yi;
            H(i, j) = (gp - gm) / (2.0 * h[i]);
        }
    }

    HessianSummary out;
    out.max_asymmetry = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            out.max_asymmetry =
                std::max(out.max_asymmetry, std::abs(H(i, j) - H(j, i)));
        }
    }

    const Eigen::MatrixXd S = 0.5 * (H + H.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("hessian_check: eigensolver failed");
    }
    out.eigenvalues.assign(es.eigenvalues().data(),
                           es.eigenvalues().data() + n);
    out.min_eigenvalue = out.eigenvalues.front();
    out.max_eigenvalue = out.eigenvalues.back();
    return out;
}

namespace {

/// Gauss-Newton projection of complex gains onto the zero-residual manifold
/// c(g) = sum_m r_m g_m |g_m|^2 = 0 (two real equations), minimum-norm step.
/// Renormalizes each iteration; the constraint is scale-covariant (degree 3)
/// so normalization never leaves the manifold.
bool project_to_null(const std::vector<double>& r, ComplexVec& g) {
    const int M = static_cast<int>(g.size());
    for (int it = 0; it < 200; ++it) {
        cxd c{0.0, 0.0};
        double scale = 0.0;
        for (int m = 0; m < M; ++m) {
            const double a3 = std::abs(g[m]);
            c += r[m] * g[m] * (a3 * a3);
            scale += r[m] * a3 * a3 * a3;
        }
        if (std::abs(c) <= 1e-12 * std::max(scale, 1e-300)) return true;

        double j11 = 0.0, j12 = 0.0, j22 = 0.0;
        for (int m = 0; m < M; ++m) {
            const double a = g[m].real(), b = g[m].imag();
            const double ca_re = r[m] * (3.0 * a * a + b * b);
            const double ca_im = r[m] * (2.0 * a * b);
            const double cb_re = r[m] * (2.0 * a * b);
            const double cb_im = r[m] * (a * a + 3.0 * b * b);
            j11 += ca_re * ca_re + cb_re * cb_re;
            j12 += ca_re * ca_im + cb_re * cb_im;
            j22 += ca_im * ca_im + cb_im * cb_im;
        }
        const double det = j11 * j22 - j12 * j12;
        if (!(std::abs(det) > 1e-30)) return false;
        const double l1 = (-c.real() * j22 + c.imag() * j12) / det;
        const double l2 = (-c.imag() * j11 + c.real() * j12) / det;

        double nsq = 0.0;
        for (int m = 0; m < M; ++m) {
            const double a = g[m].real(), b = g[m].imag();
            const double da = r[m] * (3.0 * a * a + b * b) * l1 +
                              r[m] * (2.0 * a * b) * l2;
            const double db = r[m] * (2.0 * a * b) * l1 +
                              r[m] * (a * a + 3.0 * b * b) * l2;
            g[m] += cxd{da, db};
            nsq += std::norm(g[m]);
        }
        if (!(nsq > 1e-12)) return false;
        const double inv = 1.0 / std::sqrt(nsq);
        for (auto& w : g) w *= inv;
    }
    return false;
}

double complex_objective(const std::vector<double>& r, const ComplexVec& g) {
    cxd s{0.0, 0.0};
    for (std::size_t m = 0; m < g.size(); ++m) s += r[m] * g[m];
    return std::norm(s);
}

} // namespace

ConjectureProbe conjecture_probe(const std::vector<double>& r, int n_restarts,
                                 RngStream rng) {
    if (n_restarts < 0) {
        throw std::invalid_argument(
            "conjecture_probe: n_restarts must be non-negative");
    }
    check_gains(r, 2);
    const int M = static_cast<int>(r.size());

    ConjectureProbe out;
    out.n_restarts = n_restarts;

    ComplexVec hr(M);
    for (int m = 0; m < M; ++m) hr[m] = cxd{r[m], 0.0};
    const ChannelVector ch = explicit_channel(hr);
    try {
        const Precoder best = theorem1_global(ch);
        out.best_real_objective = array_gain(ch, best.w);
    } catch (const std::domain_error&) {
        const Precoder fallback =
            z3ro_heuristic(ch, default_saturated_set(ch, 1));
        out.best_real_objective = array_gain(ch, fallback.w);
    }

    for (int t = 0; t < n_restarts; ++t) {
        RngStream local = derive_substream(rng, static_cast<std::uint64_t>(t));
        ComplexVec g(M);
        double nsq = 0.0;
        for (int m = 0; m < M; ++m) {
            g[m] = local.next_cn(1.0);
            nsq += std::norm(g[m]);
        }
        if (!(nsq > 1e-12)) continue;
        const double inv = 1.0 / std::sqrt(nsq);
        for (auto& w : g) w *= inv;
        if (!project_to_null(r, g)) continue;

        double best = complex_objective(r, g);
        double step = 0.1;
        int sweeps = 0;
        while (step >= 1e-9 && sweeps < 2000) {
            ++sweeps;
            bool improved = false;
            for (int m = 0; m < M; ++m) {
                for (int part = 0; part < 2; ++part) {
                    for (double dir : {+1.0, -1.0}) {
                        ComplexVec trial = g;
                        const cxd delta = part == 0 ? cxd{dir * step, 0.0}
                                                    : cxd{0.0, dir * step};
                        trial[m] += delta;
                        if (!project_to_null(r, trial)) continue;
                        const double v = complex_objective(r, trial);
                        if (v > best) {
                            best = v;
                            g = std::move(trial);
                            improved = true;
                            break;
                        }
                    }
                    if (improved) break;
                }
                if (improved) break;
            }
            if (!improved) step *= 0.5;
        }
        out.best_complex_objective = std::max(out.best_complex_objective, best);
    }

    out.gap = out.best_complex_objective - out.best_real_objective;
    return out;
}

} // namespace z3ro
