#pragma once

#include <array>
#include <string>

namespace starspin {

/// Demonstration tables for the CLI. Each returns complete TSV text with a
/// header row; output is deterministic for fixed arguments.

/// Precession of the first two generators under a z-axis level splitting
/// tuned so their coefficients rotate at `omega`. Samples steps+1 times over
/// one period and compares against the cosine/sine closed form.
std::string demo_precession(double omega, int steps);

/// Level projectors for the reference z-axis splitting: canonical forms plus
/// idempotence, annihilation, completeness, and eigenvalue residuals.
std::string demo_projectors();

/// Kinetic-energy star square for a charged particle in the constant field
/// `b` (symmetric gauge, unit hbar): per-axis frequencies and the constant
/// bivector coefficients of the level-splitting part against closed forms.
std::string demo_landau(const std::array<double, 3>& b, double charge,
                        double mass);

/// Convergence of the sliced propagator toward the closed-form star
/// exponential for a fixed splitting and interval, one row per slice count
/// from 1 to `slices`.
std::string demo_path_integral(int slices);

}  // namespace starspin
