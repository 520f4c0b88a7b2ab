#pragma once

// Thermality analysis of equilibrium families and the Bloch-sphere geometry of
// initial-state-dependent thermal states.
//
// A family of equilibria (a_i, b_i) is thermal with a fixed entanglement
// Hamiltonian iff b_i = kappa a_i for one complex kappa shared by every
// initial state. The family then lies on the diameter of the Bloch sphere
// along v = (Re kappa, -Im kappa, 1).

#include "qwtherm/qubit.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace qwtherm {

struct EnsemblePoint {
	double gamma = 0.0;
	double phi = 0.0;
	double a = 0.0;
	Complex b{0.0, 0.0};
};

struct KappaOptions {
	/// is_thermal requires residual < threshold.
	double threshold = 0.02;
	/// Points with |a| <= a_floor are excluded from the fit.
	double a_floor = 1e-3;
};

struct ThermalVerdict {
	Complex kappa_hat{0.0, 0.0};
	/// max_i |b_i - kappa_hat a_i| / max(|a_i|, a_floor) over retained points.
	double residual = 0.0;
	std::size_t n_used = 0;
	bool is_thermal = false;
	/// Indices (into the input) of the retained points, with their residuals.
	std::vector<std::size_t> used;
	std::vector<double> point_residuals;
};

/// Least-squares fit of b = kappa a with real regressor a:
/// kappa_hat = sum b_i a_i / sum a_i^2 over points with |a_i| > a_floor.
/// Throws InsufficientEnsemble unless at least 3 points are retained and
/// they cover at least 2 distinct (gamma, phi) pairs.
ThermalVerdict estimate_kappa(std::span<const EnsemblePoint> ensemble,
	const KappaOptions& options = {});

/// Cosine of the angle between the initial Bloch vector B0(gamma, phi) and v.
double cos_alpha(Complex kappa, double gamma, double phi);

/// Asymptotic coherence of the wide-Gaussian walk: 1/2 sin(theta) cos(alpha),
/// with cos(alpha) = sin(theta) sin(gamma) cos(phi) + cos(theta) cos(gamma).
double predicted_b_gaussian(double theta, double gamma, double phi);

/// Asymptotic coherence of the Hadamard walk started at the origin, in the
/// engine's convention b = sum d_n e_n^*:
/// 1/2 (1 - 1/sqrt2) [cos(gamma) + sin(gamma) (cos(phi) - i sqrt2 sin(phi))].
Complex predicted_b_localized_hadamard(double gamma, double phi);

/// Thermal state of the kappa family at angle alpha:
/// a = cos(alpha) / (2 sqrt(1 + |kappa|^2)), b = kappa a.
QubitDensity thermal_density_from_alpha(Complex kappa, double alpha);

/// Plane Re(k) x - Im(k) y + z = sqrt(1 + |k|^2) cos(alpha0).
struct IsothermPlane {
	std::array<double, 3> normal{0.0, 0.0, 1.0};
	double rhs = 0.0;

	/// True iff the plane meets the unit sphere.
	bool intersects_sphere() const;
};

IsothermPlane isotherm_plane(Complex kappa, double alpha0);

double plane_distance_origin(const IsothermPlane& plane);

struct HeatExchange {
	double delta_q = 0.0;
	double t_ds = 0.0;
};

/// Finite-difference heat/entropy balance along the kappa family between
/// alpha and alpha + d_alpha: delta_q = sum_j E_j (p_j(alpha + d_alpha) - p_j(alpha))
/// with E_j = -+epsilon the levels of the kappa-form Hamiltonian and p_j
/// their populations; t_ds = T_ent(alpha + d_alpha/2) * delta S_vN.
HeatExchange heat_entropy_check(Complex kappa, double epsilon, double alpha, double d_alpha);

} // namespace qwtherm
