#include "eoh/dynamics.hpp"

#include <cmath>
#include <fmt/format.h>

namespace eoh {

namespace {

using complexd = std::complex<double>;
constexpr complexd I{0.0, 1.0};

// Fixed-step RK4 for U' = -i/hbar H U with constant H.
template <typename Mat>
Mat propagate_constant(const Mat& h_matrix, double t, double step_override) {
    Mat u = Mat::Identity(h_matrix.rows(), h_matrix.cols());
    if (t == 0.0) return u;

    const double scale = h_matrix.cwiseAbs().maxCoeff();
    double h = step_override;
    if (h <= 0.0) {
        h = t / 1000.0;
        if (scale > 0.0) h = std::min(h, 0.01 * units::hbar / scale);
    }
    const long steps = std::max(1L, std::lround(std::ceil(t / h)));
    h = t / double(steps);

    const Mat a = -I / units::hbar * h_matrix;
    for (long s = 0; s < steps; ++s) {
        const Mat k1 = a * u;
        const Mat k2 = a * (u + 0.5 * h * k1);
        const Mat k3 = a * (u + 0.5 * h * k2);
        const Mat k4 = a * (u + h * k3);
        u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return u;
}

void check_normalized(const State& state) {
    if (std::abs(state.squaredNorm() - 1.0) > 1e-9)
        throw UsageError("state is not normalized");
}

} // namespace

int qubit_count(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index(1) << n) < dim) ++n;
    if ((Eigen::Index(1) << n) != dim || dim < 2)
        throw UsageError("state dimension is not a power of two");
    return n;
}

double rabi_frequency(const QubitParams& params, double e_rf) {
    return units::e_volt_per_nm * e_rf * params.z01 / units::hbar;
}

Eigen::Matrix2cd rabi_propagator(const QubitParams& params,
                                 const RabiPulse& pulse,
                                 double step_override) {
    if (pulse.duration < 0.0) throw UsageError("pulse duration must be >= 0");
    const double omega = rabi_frequency(params, pulse.e_rf);
    Eigen::Matrix2cd h;
    h << units::hbar * pulse.detuning / 2.0, units::hbar * omega / 2.0,
        units::hbar * omega / 2.0, -units::hbar * pulse.detuning / 2.0;
    return propagate_constant(h, pulse.duration, step_override);
}

State apply_one_qubit(const State& state, const Eigen::Matrix2cd& u, int k) {
    const int n = qubit_count(state.size());
    if (k < 0 || k >= n) throw UsageError("qubit index out of range");
    const Eigen::Index bit = Eigen::Index(1) << (n - 1 - k);
    State out(state.size());
    for (Eigen::Index j = 0; j < state.size(); ++j) {
        if (j & bit) continue;
        const complexd a0 = state(j), a1 = state(j | bit);
        out(j) = u(0, 0) * a0 + u(0, 1) * a1;
        out(j | bit) = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return out;
}

State apply_two_qubit(const State& state, const Eigen::Matrix4cd& u, int a,
                      int b) {
    const int n = qubit_count(state.size());
    if (a == b || a < 0 || b < 0 || a >= n || b >= n)
        throw UsageError("invalid qubit pair");
    const Eigen::Index bit_a = Eigen::Index(1) << (n - 1 - a);
    const Eigen::Index bit_b = Eigen::Index(1) << (n - 1 - b);
    State out(state.size());
    for (Eigen::Index j = 0; j < state.size(); ++j) {
        if ((j & bit_a) || (j & bit_b)) continue;
        Eigen::Vector4cd v{state(j), state(j | bit_b), state(j | bit_a),
                           state(j | bit_a | bit_b)};
        const Eigen::Vector4cd w = u * v;
        out(j) = w(0);
        out(j | bit_b) = w(1);
        out(j | bit_a) = w(2);
        out(j | bit_a | bit_b) = w(3);
    }
    return out;
}

State rabi_evolve(const State& state, const QubitParams& params,
                  const RabiPulse& pulse, int qubit_index,
                  double step_override) {
    check_normalized(state);
    return apply_one_qubit(state, rabi_propagator(params, pulse, step_override),
                           qubit_index);
}

Eigen::Matrix4cd swap_propagator(double g, double delta, double t,
                                 CouplingMode mode, double omega01,
                                 double step_override) {
    if (t < 0.0) throw UsageError("evolution time must be >= 0");
    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    // basis |00>, |01>, |10>, |11>; qubit b carries the detuning
    h(1, 2) = g;
    h(2, 1) = g;
    if (mode == CouplingMode::rwa) {
        h(1, 1) = units::hbar * delta;
        h(3, 3) = units::hbar * delta;
    } else {
        h(1, 1) = units::hbar * (omega01 + delta);
        h(2, 2) = units::hbar * omega01;
        h(3, 3) = units::hbar * (2.0 * omega01 + delta);
        h(0, 3) = g;
        h(3, 0) = g;
    }
    return propagate_constant(h, t, step_override);
}

State swap_evolve(const State& state, double g, double delta, double t,
                  CouplingMode mode, double omega01, double step_override) {
    if (state.size() != 4) throw UsageError("swap_evolve needs a two-qubit state");
    check_normalized(state);
    return swap_propagator(g, delta, t, mode, omega01, step_override) * state;
}

LzResult lz_sweep(const State& state, double g, double rate,
                  double window_over_g, double step_override) {
    if (state.size() != 4) throw UsageError("lz_sweep needs a two-qubit state");
    if (rate == 0.0) throw UsageError("sweep rate must be nonzero");
    if (window_over_g < 20.0)
        throw UsageError("sweep window must span at least 20 g");
    check_normalized(state);
    const double p_sub = std::norm(state(1)) + std::norm(state(2));
    if (p_sub < 1.0 - 1e-9)
        throw UsageError("state must be concentrated in {|01>,|10>}");

    const double r = std::abs(rate);
    const double delta_max = window_over_g * std::abs(g);
    const double t_end = delta_max / r;

    Eigen::Vector2cd c{state(1), state(2)};
    const int dominant = std::norm(c(0)) >= std::norm(c(1)) ? 0 : 1;

    double h = step_override;
    if (h <= 0.0) h = 0.01 * units::hbar / (0.5 * delta_max);
    const long steps = std::max(1000L, std::lround(std::ceil(2.0 * t_end / h)));
    h = 2.0 * t_end / double(steps);

    auto deriv = [&](double t, const Eigen::Vector2cd& v) -> Eigen::Vector2cd {
        const double d = r * t;
        return -I / units::hbar *
               Eigen::Vector2cd(-0.5 * d * v(0) + g * v(1),
                                g * v(0) + 0.5 * d * v(1));
    };
    // The diabatic populations carry an interference ripple ~ g/delta that
    // oscillates at the gap frequency; time-averaging them over the tail of
    // the sweep (many gap periods) removes it, leaving only the O((g/delta)^2)
    // residual of the finite window.
    const long tail_start = steps - std::max(1L, steps / 20);
    double tail_dom = 0.0, tail_other = 0.0;
    long tail_n = 0;

    double t = -t_end;
    for (long s = 0; s < steps; ++s) {
        const Eigen::Vector2cd k1 = deriv(t, c);
        const Eigen::Vector2cd k2 = deriv(t + 0.5 * h, c + 0.5 * h * k1);
        const Eigen::Vector2cd k3 = deriv(t + 0.5 * h, c + 0.5 * h * k2);
        const Eigen::Vector2cd k4 = deriv(t + h, c + h * k3);
        c += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        if (s >= tail_start) {
            const double norm = std::norm(c(0)) + std::norm(c(1));
            tail_dom += std::norm(c(dominant)) / norm;
            tail_other += std::norm(c(1 - dominant)) / norm;
            ++tail_n;
        }
    }

    LzResult res;
    res.state = state;
    res.state(1) = c(0);
    res.state(2) = c(1);
    res.p_stay_diabatic = tail_dom / double(tail_n);
    res.p_transfer = tail_other / double(tail_n);
    return res;
}

DensityMatrix lindblad_evolve(const DensityMatrix& rho,
                              const Eigen::MatrixXcd& hamiltonian,
                              double t1_us, double t2_ms, double t,
                              double step_override) {
    const Eigen::Index dim = rho.rows();
    if (rho.cols() != dim) throw UsageError("density matrix must be square");
    const int n = qubit_count(dim);
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw UsageError("density matrix is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-9)
        throw UsageError("density matrix trace is not 1");

    const double t1 = t1_us / units::ps_to_us;    // ps
    const double t2 = t2_ms * 1e9;                // ps
    const double gamma1 = 1.0 / t1;
    const double gamma_phi = 1.0 / t2 - 0.5 * gamma1;
    if (gamma_phi < -1e-18)
        throw ConfigError(fmt::format(
            "unphysical T2 > 2 T1: pure-dephasing rate {} < 0", gamma_phi));

    // per-qubit lowering and sigma_z operators
    std::vector<Eigen::MatrixXcd> lower(n), sz(n);
    for (int k = 0; k < n; ++k) {
        const Eigen::Index bit = Eigen::Index(1) << (n - 1 - k);
        lower[k] = Eigen::MatrixXcd::Zero(dim, dim);
        sz[k] = Eigen::MatrixXcd::Zero(dim, dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            sz[k](j, j) = (j & bit) ? -1.0 : 1.0;
            if (j & bit) lower[k](j & ~bit, j) = 1.0;
        }
    }

    auto rhs = [&](const DensityMatrix& p) -> DensityMatrix {
        DensityMatrix d = -I / units::hbar * (hamiltonian * p - p * hamiltonian);
        for (int k = 0; k < n; ++k) {
            const DensityMatrix lp = lower[k] * p;
            const DensityMatrix num = lower[k].adjoint() * lower[k];
            d += gamma1 * (lp * lower[k].adjoint() -
                           0.5 * (num * p + p * num));
            if (gamma_phi > 0.0)
                d += 0.5 * gamma_phi * (sz[k] * p * sz[k] - p);
        }
        return d;
    };

    if (t == 0.0) return rho;
    double h = step_override;
    if (h <= 0.0) {
        double rate = gamma1 + std::max(gamma_phi, 0.0);
        const double scale = hamiltonian.cwiseAbs().maxCoeff();
        if (scale > 0.0) rate = std::max(rate, scale / units::hbar);
        h = std::min(t / 100.0, 0.01 / rate);
    }
    const long steps = std::max(1L, std::lround(std::ceil(t / h)));
    h = t / double(steps);

    DensityMatrix p = rho;
    for (long s = 0; s < steps; ++s) {
        const DensityMatrix k1 = rhs(p);
        const DensityMatrix k2 = rhs(p + 0.5 * h * k1);
        const DensityMatrix k3 = rhs(p + 0.5 * h * k2);
        const DensityMatrix k4 = rhs(p + h * k3);
        p += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return p;
}

} // namespace eoh
