#pragma once

#include <map>
#include <string>

#include "eoh/stark_solver.hpp"

namespace eoh {

struct DeviceGeometry {
    double pitch = 500.0;          // nm, electron separation d
    double film_thickness = 500.0; // nm
    std::map<std::string, double> bias; // qubit id -> bias field, V/nm
};

// Two-level reduction of the surface-electron spectrum at a given bias.
struct QubitParams {
    std::string id;
    double omega01; // rad/ps
    double z00;     // <0|z|0>, nm
    double z01;     // <0|z|1>, nm
    double z11;     // <1|z|1>, nm
    double bias;    // V/nm
    // z^2 diagonal elements, kept for the dipolar self-shift; not part of
    // the serialized record.
    double zz00;
    double zz11;
};

std::string to_json(const QubitParams& q);
QubitParams qubit_from_json(const std::string& text);

// Runs the solver once at the given bias and packages the two-level data.
QubitParams build_qubit(const Material& material, double f_bias,
                        const Grid& grid = {}, std::string id = "q");

// |01> <-> |10> coupling matrix element from the cross term of the dipolar
// interaction: g = (e^2/4pi_eps0 d^3) z01_a z01_b, in meV.
double coupling_strength(const QubitParams& a, const QubitParams& b, double d);

// Static per-qubit frequency renormalization from the diagonal z^2 terms of
// the dipolar interaction, in rad/ps. Commutes with sigma_z; re-tunes the
// resonance but does not enter g.
double dipolar_shift(const QubitParams& q, double d);

// First-order magnitude estimate e^2 a_B^2/(4pi_eps0 d^3 h), in GHz.
// Kept distinct from the matrix-element form above.
double first_order_coupling_estimate(const Material& material, double d);

} // namespace eoh
