#include "qwtherm/thermo.hpp"

#include "qwtherm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>

namespace qwtherm {

namespace {

// |k|^2 summed in the same order as the plane normal's squared length.
double modulus2(Complex k)
{
	return k.real() * k.real() + k.imag() * k.imag();
}

} // namespace

ThermalVerdict estimate_kappa(std::span<const EnsemblePoint> ensemble, const KappaOptions& options)
{
	ThermalVerdict verdict;
	std::set<std::pair<double, double>> distinct;
	double sum_aa = 0.0;
	Complex sum_ba{0.0, 0.0};
	for(std::size_t i = 0; i < ensemble.size(); ++i)
	{
		const EnsemblePoint& p = ensemble[i];
		if(!(std::abs(p.a) > options.a_floor))
		{
			continue;
		}
		verdict.used.push_back(i);
		distinct.emplace(p.gamma, p.phi);
		sum_aa += p.a * p.a;
		sum_ba += p.b * p.a;
	}
	verdict.n_used = verdict.used.size();
	if(verdict.n_used < 3 || distinct.size() < 2)
	{
		throw InsufficientEnsemble("need >= 3 points with |a| > " + std::to_string(options.a_floor)
			+ " spanning >= 2 initial states; got " + std::to_string(verdict.n_used)
			+ " points, " + std::to_string(distinct.size()) + " distinct");
	}

	verdict.kappa_hat = sum_ba / sum_aa;
	for(std::size_t i : verdict.used)
	{
		const EnsemblePoint& p = ensemble[i];
		const double r = std::abs(p.b - verdict.kappa_hat * p.a) / std::max(std::abs(p.a), options.a_floor);
		verdict.point_residuals.push_back(r);
		verdict.residual = std::max(verdict.residual, r);
	}
	verdict.is_thermal = verdict.residual < options.threshold && verdict.n_used >= 3;
	return verdict;
}

double cos_alpha(Complex kappa, double gamma, double phi)
{
	const double sg = std::sin(gamma);
	const double value = (kappa.real() * sg * std::cos(phi) - kappa.imag() * sg * std::sin(phi)
		+ std::cos(gamma)) / std::sqrt(1.0 + modulus2(kappa));
	return std::clamp(value, -1.0, 1.0);
}

double predicted_b_gaussian(double theta, double gamma, double phi)
{
	if(!(theta > 0.0 && theta < std::numbers::pi / 2))
	{
		throw InvalidArgument("theta must lie in (0, pi/2)");
	}
	const double ca = std::sin(theta) * std::sin(gamma) * std::cos(phi) + std::cos(theta) * std::cos(gamma);
	return 0.5 * std::sin(theta) * ca;
}

Complex predicted_b_localized_hadamard(double gamma, double phi)
{
	const double prefactor = 0.5 * (1.0 - 1.0 / std::numbers::sqrt2);
	const double sg = std::sin(gamma);
	return prefactor * Complex{std::cos(gamma) + sg * std::cos(phi), -std::numbers::sqrt2 * sg * std::sin(phi)};
}

QubitDensity thermal_density_from_alpha(Complex kappa, double alpha)
{
	const double a = std::cos(alpha) / (2.0 * std::sqrt(1.0 + modulus2(kappa)));
	return QubitDensity::from_ab(a, kappa * a);
}

bool IsothermPlane::intersects_sphere() const
{
	return plane_distance_origin(*this) <= 1.0;
}

IsothermPlane isotherm_plane(Complex kappa, double alpha0)
{
	IsothermPlane plane;
	plane.normal = {kappa.real(), -kappa.imag(), 1.0};
	plane.rhs = std::sqrt(1.0 + modulus2(kappa)) * std::cos(alpha0);
	return plane;
}

double plane_distance_origin(const IsothermPlane& plane)
{
	const auto& n = plane.normal;
	return std::abs(plane.rhs) / std::sqrt(n[2] * n[2] + (n[0] * n[0] + n[1] * n[1]));
}

HeatExchange heat_entropy_check(Complex kappa, double epsilon, double alpha, double d_alpha)
{
	const double end = alpha + d_alpha;
	if(d_alpha == 0.0 || !(alpha > 0.0 && alpha < std::numbers::pi) || !(end > 0.0 && end < std::numbers::pi))
	{
		throw InvalidArgument("heat check needs alpha, alpha + d_alpha in (0, pi) and d_alpha != 0");
	}

	const EntHamiltonian h = EntHamiltonian::from_kappa(epsilon, kappa);
	const BlochVector& n = h.field();
	// Population of the ground level (-epsilon), whose state points along n.
	auto ground_population = [&](const QubitDensity& rho) {
		const BlochVector bloch = bloch_from_density(rho);
		return 0.5 * (1.0 + bloch.x * n.x + bloch.y * n.y + bloch.z * n.z);
	};

	const QubitDensity before = thermal_density_from_alpha(kappa, alpha);
	const QubitDensity after = thermal_density_from_alpha(kappa, end);
	const QubitDensity mid = thermal_density_from_alpha(kappa, alpha + 0.5 * d_alpha);

	const double d_ground = ground_population(after) - ground_population(before);
	// The excited population changes by -d_ground.
	HeatExchange out;
	out.delta_q = -epsilon * d_ground + epsilon * (-d_ground);
	out.t_ds = ent_temperature(mid, epsilon) * (von_neumann_entropy(after) - von_neumann_entropy(before));
	return out;
}

} // namespace qwtherm
