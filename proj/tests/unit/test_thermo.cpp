#include "qwtherm/error.hpp"
#include "qwtherm/thermo.hpp"
#include "qwtherm/walk.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qwtherm;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<EnsemblePoint> linear_family(Complex kappa, const std::vector<double>& as)
{
	std::vector<EnsemblePoint> out;
	for(std::size_t i = 0; i < as.size(); ++i)
	{
		out.push_back({0.3 * static_cast<double>(i), 0.1, as[i], kappa * as[i]});
	}
	return out;
}

std::vector<EnsemblePoint> simulated_ensemble(const InitialSpec& base, double theta, std::int64_t t_burn, std::int64_t t_max)
{
	std::vector<EnsemblePoint> out;
	for(double gamma : {0.0, pi / 5, 2 * pi / 5, 3 * pi / 5, 4 * pi / 5, pi})
	{
		for(double phi : {0.0, pi / 2, pi, 3 * pi / 2})
		{
			InitialSpec spec = base;
			spec.gamma = gamma;
			spec.phi = phi;
			const EquilibriumSample s = evolve_and_average(spec, CoinSpec(theta), t_burn, t_max);
			out.push_back({gamma, phi, s.a_bar, s.b_bar});
		}
	}
	return out;
}

// B0 = (sin g cos p, sin g sin p, cos g) against v = (Re k, -Im k, 1).
double cos_alpha_oracle(Complex k, double g, double p)
{
	const double v[3] = {k.real(), -k.imag(), 1.0};
	const double b[3] = {std::sin(g) * std::cos(p), std::sin(g) * std::sin(p), std::cos(g)};
	const double dot = v[0] * b[0] + v[1] * b[1] + v[2] * b[2];
	return dot / std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

} // namespace

TEST(EstimateKappa, ExactLinearFamily)
{
	const auto ensemble = linear_family(2.0, {0.01, 0.05, -0.1, 0.2, -0.03});
	const ThermalVerdict v = estimate_kappa(ensemble);
	EXPECT_NEAR(std::abs(v.kappa_hat - Complex{2.0}), 0.0, 1e-15);
	EXPECT_NEAR(v.residual, 0.0, 1e-15);
	EXPECT_TRUE(v.is_thermal);
	EXPECT_EQ(v.n_used, 5u);
}

TEST(EstimateKappa, ComplexKappaAndFloor)
{
	const Complex kappa{0.4, -1.2};
	auto ensemble = linear_family(kappa, {0.05, -0.08, 0.12, 0.0005});
	// The near-equatorial point carries an unrelated b and must be excluded.
	ensemble.back().b = {0.3, 0.1};
	const ThermalVerdict v = estimate_kappa(ensemble);
	EXPECT_EQ(v.n_used, 3u);
	EXPECT_EQ(v.used, (std::vector<std::size_t>{0, 1, 2}));
	EXPECT_NEAR(std::abs(v.kappa_hat - kappa), 0.0, 1e-15);
	EXPECT_TRUE(v.is_thermal);
}

TEST(EstimateKappa, ResidualDefinition)
{
	auto ensemble = linear_family(1.0, {0.1, 0.2, 0.3});
	ensemble[0].b += Complex{0.0, 0.01};
	const ThermalVerdict v = estimate_kappa(ensemble);
	double worst = 0;
	for(std::size_t i = 0; i < ensemble.size(); ++i)
	{
		const double r = std::abs(ensemble[i].b - v.kappa_hat * ensemble[i].a) / std::abs(ensemble[i].a);
		EXPECT_DOUBLE_EQ(v.point_residuals[i], r);
		worst = std::max(worst, r);
	}
	EXPECT_DOUBLE_EQ(v.residual, worst);
	EXPECT_FALSE(estimate_kappa(ensemble, {1e-3, 1e-3}).is_thermal);
	EXPECT_TRUE(estimate_kappa(ensemble, {0.2, 1e-3}).is_thermal);
}

TEST(EstimateKappa, ScaleInvariant)
{
	std::mt19937_64 rng(21);
	std::normal_distribution<double> g(0.0, 0.1);
	std::vector<EnsemblePoint> ensemble;
	for(int i = 0; i < 12; ++i)
	{
		const double a = 0.05 + std::abs(g(rng));
		ensemble.push_back({0.1 * i, 0.2 * i, a, Complex{0.7, 0.2} * a + Complex{g(rng), g(rng)} * 0.01});
	}
	const ThermalVerdict base = estimate_kappa(ensemble);
	for(double scale : {0.5, 0.9})
	{
		auto scaled = ensemble;
		for(auto& p : scaled)
		{
			p.a *= scale;
			p.b *= scale;
		}
		const ThermalVerdict v = estimate_kappa(scaled);
		EXPECT_NEAR(std::abs(v.kappa_hat - base.kappa_hat), 0.0, 1e-14);
		EXPECT_EQ(v.is_thermal, base.is_thermal);
		EXPECT_NEAR(v.residual, base.residual, 1e-13);
	}
}

TEST(EstimateKappa, InsufficientEnsembles)
{
	EXPECT_THROW(estimate_kappa(linear_family(1.0, {0.1, 0.2})), InsufficientEnsemble);
	EXPECT_THROW(estimate_kappa(linear_family(1.0, {0.1, 0.2, 0.0, 1e-4})), InsufficientEnsemble);
	std::vector<EnsemblePoint> same_state(4, EnsemblePoint{0.3, 0.2, 0.1, 0.1});
	EXPECT_THROW(estimate_kappa(same_state), InsufficientEnsemble);
	EXPECT_THROW(estimate_kappa({}), InsufficientEnsemble);
}

TEST(EstimateKappa, GaussianWalkIsThermal)
{
	const auto ensemble = simulated_ensemble(InitialSpec::gaussian(10.0, 0, 0), pi / 4, 100, 400);
	const ThermalVerdict v = estimate_kappa(ensemble);
	EXPECT_NEAR(v.kappa_hat.real(), 1.0, 0.05);
	EXPECT_NEAR(v.kappa_hat.imag(), 0.0, 0.02);
	EXPECT_TRUE(v.is_thermal);
	EXPECT_GE(v.n_used, 12u);
}

TEST(EstimateKappa, LocalizedWalkIsNotThermal)
{
	const auto ensemble = simulated_ensemble(InitialSpec::localized(0, 0), pi / 4, 150, 600);
	const ThermalVerdict v = estimate_kappa(ensemble);
	EXPECT_GT(v.residual, 0.1);
	EXPECT_FALSE(v.is_thermal);
}

TEST(CosAlpha, Examples)
{
	EXPECT_NEAR(cos_alpha(1.0, pi / 4, 0.0), 1.0, 1e-15);
	EXPECT_NEAR(cos_alpha(std::tan(pi / 4), 3 * pi / 4, 0.0), 0.0, 1e-15);
	const double theta = 0.4;
	const double g = 1.3;
	const double p = 2.2;
	EXPECT_NEAR(cos_alpha(std::tan(theta), g, p),
		std::sin(theta) * std::sin(g) * std::cos(p) + std::cos(theta) * std::cos(g), 1e-15);
}

TEST(CosAlpha, OracleAntipodesAndRange)
{
	std::mt19937_64 rng(22);
	std::uniform_real_distribution<double> u(0.0, 1.0);
	for(int k = 0; k < 500; ++k)
	{
		const Complex kappa{8 * u(rng) - 4, 8 * u(rng) - 4};
		const double g = pi * u(rng);
		const double p = 2 * pi * u(rng);
		const double c = cos_alpha(kappa, g, p);
		EXPECT_NEAR(c, cos_alpha_oracle(kappa, g, p), 1e-14);
		EXPECT_NEAR(cos_alpha(kappa, pi - g, p + pi), -c, 1e-14);
		EXPECT_GE(c, -1.0);
		EXPECT_LE(c, 1.0);
	}
	// Exactly aligned inputs must not round outside [-1, 1].
	for(int k = 0; k < 200; ++k)
	{
		const double g = pi * u(rng);
		const double p = 2 * pi * u(rng);
		const Complex kappa = std::tan(g) * std::polar(1.0, -p);
		if(g < pi / 2)
		{
			const double c = cos_alpha(kappa, g, p);
			EXPECT_LE(c, 1.0);
			EXPECT_NEAR(c, 1.0, 1e-12);
		}
	}
}

TEST(PredictedB, Gaussian)
{
	EXPECT_NEAR(predicted_b_gaussian(pi / 4, 0.0, 0.0), 0.25, 1e-15);
	EXPECT_NEAR(predicted_b_gaussian(pi / 4, 3 * pi / 4, 0.0), 0.0, 1e-15);
	EXPECT_NEAR(predicted_b_gaussian(pi / 4, pi / 2, 0.0), 0.25, 1e-15);
	const double g = 0.8;
	const double p = 1.9;
	EXPECT_NEAR(predicted_b_gaussian(pi / 4, g, p), 0.25 * (std::cos(g) + std::sin(g) * std::cos(p)), 1e-15);
	EXPECT_THROW(predicted_b_gaussian(0.0, 0.0, 0.0), InvalidArgument);
	EXPECT_THROW(predicted_b_gaussian(pi / 2, 0.0, 0.0), InvalidArgument);
}

TEST(PredictedB, LocalizedHadamard)
{
	const double c = 0.5 * (1 - 1 / std::numbers::sqrt2);
	EXPECT_NEAR(std::abs(predicted_b_localized_hadamard(0.0, 0.0) - c), 0.0, 1e-15);
	EXPECT_NEAR(std::abs(predicted_b_localized_hadamard(pi / 2, 0.0) - c), 0.0, 1e-15);
	// b = sum d e^*: a +pi/2 phase on the lower chirality gives negative Im b.
	const Complex b = predicted_b_localized_hadamard(pi / 2, pi / 2);
	EXPECT_NEAR(std::abs(b), 0.207107, 1e-6);
	EXPECT_NEAR(b.imag(), -0.207107, 1e-6);
	EXPECT_NEAR(b.real(), 0.0, 1e-15);
}

TEST(PredictedB, LocalizedMatchesSimulation)
{
	const CoinSpec coin(pi / 4);
	for(const auto& [g, p] : {std::pair{pi / 2, pi / 2}, std::pair{1.0, 2.5}, std::pair{2.2, 4.0}})
	{
		const EquilibriumSample s = evolve_and_average(InitialSpec::localized(g, p), coin, 150, 600);
		EXPECT_NEAR(std::abs(s.b_bar - predicted_b_localized_hadamard(g, p)), 0.0, 0.02) << g << "," << p;
	}
}

TEST(ThermalDensity, Examples)
{
	const QubitDensity eq = thermal_density_from_alpha(Complex{0.3, 0.7}, pi / 2);
	EXPECT_NEAR(eq.a(), 0.0, 1e-16);
	EXPECT_NEAR(std::abs(eq.b()), 0.0, 1e-16);

	const QubitDensity pole = thermal_density_from_alpha(1.0, 0.0);
	EXPECT_NEAR(pole.a(), 1 / (2 * std::numbers::sqrt2), 1e-15);
	EXPECT_NEAR(bloch_from_density(pole).norm(), 1.0, 1e-15);

	const QubitDensity flat = thermal_density_from_alpha(0.0, pi / 3);
	EXPECT_NEAR(flat.a(), 0.25, 1e-15);
	EXPECT_EQ(flat.b(), Complex{0.0});
}

TEST(ThermalDensity, EigenvaluesFollowAlpha)
{
	const double theta = 0.6;
	for(int k = 0; k <= 20; ++k)
	{
		const double alpha = pi * k / 20;
		const SpectralDecomp s = eigendecompose(thermal_density_from_alpha(std::tan(theta), alpha));
		EXPECT_NEAR(s.lambda_plus, 0.5 * (1 + std::abs(std::cos(alpha))), 1e-12);
		EXPECT_NEAR(s.lambda_minus, 0.5 * (1 - std::abs(std::cos(alpha))), 1e-12);
	}
}

TEST(ThermalDensity, TemperatureFromAngle)
{
	for(double alpha : {0.1, pi / 3, 1.4, 1.8, 2.9})
	{
		const double t = ent_temperature(thermal_density_from_alpha(Complex{0.2, 0.5}, alpha));
		EXPECT_NEAR(t, -1 / std::log(std::tan(alpha / 2)), 1e-10 * std::max(1.0, std::abs(t)));
	}
	EXPECT_EQ(ent_temperature(thermal_density_from_alpha(1.0, pi / 2)), std::numeric_limits<double>::infinity());
}

TEST(IsothermPlane, Examples)
{
	const IsothermPlane eq = isotherm_plane(1.0, pi / 2);
	EXPECT_EQ(eq.normal, (std::array<double, 3>{1.0, 0.0, 1.0}));
	EXPECT_NEAR(eq.rhs, 0.0, 1e-15);
	EXPECT_NEAR(plane_distance_origin(eq), 0.0, 1e-15);

	const IsothermPlane tangent = isotherm_plane(1.0, 0.0);
	EXPECT_DOUBLE_EQ(tangent.rhs, std::numbers::sqrt2);
	EXPECT_DOUBLE_EQ(plane_distance_origin(tangent), 1.0);
	EXPECT_TRUE(tangent.intersects_sphere());

	const IsothermPlane imag = isotherm_plane(Complex{0.0, 1.0}, pi / 3);
	EXPECT_EQ(imag.normal, (std::array<double, 3>{0.0, -1.0, 1.0}));
	EXPECT_NEAR(imag.rhs, std::numbers::sqrt2 / 2, 1e-15);

	EXPECT_NEAR(isotherm_plane(std::tan(pi / 3), pi / 3).rhs, 1.0, 1e-15);
}

TEST(IsothermPlane, ContainsThermalStateAndIsNormalToIt)
{
	std::mt19937_64 rng(23);
	std::uniform_real_distribution<double> u(0.0, 1.0);
	for(int k = 0; k < 200; ++k)
	{
		const Complex kappa{6 * u(rng) - 3, 6 * u(rng) - 3};
		const double alpha = pi * u(rng);
		const IsothermPlane plane = isotherm_plane(kappa, alpha);
		const BlochVector b = bloch_from_density(thermal_density_from_alpha(kappa, alpha));
		const auto& n = plane.normal;
		EXPECT_NEAR(n[0] * b.x + n[1] * b.y + n[2] * b.z, plane.rhs, 1e-13);
		EXPECT_NEAR(plane_distance_origin(plane), b.norm(), 1e-13);
		EXPECT_NEAR(plane_distance_origin(plane), std::abs(std::cos(alpha)), 1e-13);
		EXPECT_TRUE(plane.intersects_sphere());
	}
}

TEST(HeatEntropy, BalanceHolds)
{
	for(double alpha : {pi / 3, 0.4, 1.2, 1.9, 2.5})
	{
		const HeatExchange h = heat_entropy_check(1.0, 1.0, alpha, 1e-3);
		EXPECT_LT(std::abs(h.delta_q - h.t_ds) / std::abs(h.delta_q), 1e-4) << alpha;
	}
	const HeatExchange scaled = heat_entropy_check(Complex{0.3, -0.9}, 2.5, 0.7, 1e-3);
	EXPECT_LT(std::abs(scaled.delta_q - scaled.t_ds) / std::abs(scaled.delta_q), 1e-4);
}

TEST(HeatEntropy, ReversingStepFlipsSigns)
{
	const HeatExchange fwd = heat_entropy_check(1.0, 1.0, pi / 3, 1e-3);
	const HeatExchange back = heat_entropy_check(1.0, 1.0, pi / 3, -1e-3);
	EXPECT_LT(fwd.delta_q * back.delta_q, 0.0);
	EXPECT_LT(fwd.t_ds * back.t_ds, 0.0);
	// Heading toward the equator absorbs heat.
	EXPECT_GT(fwd.delta_q, 0.0);
}

TEST(HeatEntropy, AcrossTheEquator)
{
	// The midpoint sits at alpha = pi/2 where T is infinite and dS vanishes to
	// first order; the balance must still hold in the limit.
	const HeatExchange h = heat_entropy_check(1.0, 1.0, pi / 2 - 5e-4, 1e-3);
	EXPECT_TRUE(std::isfinite(h.delta_q));
	const HeatExchange near = heat_entropy_check(1.0, 1.0, pi / 2, 1e-3);
	EXPECT_TRUE(std::isfinite(near.delta_q));
	EXPECT_TRUE(std::isfinite(near.t_ds));
	EXPECT_LT(std::abs(near.delta_q - near.t_ds) / std::abs(near.delta_q), 1e-4);
}

TEST(HeatEntropy, RejectsBadArguments)
{
	EXPECT_THROW(heat_entropy_check(1.0, 1.0, pi / 3, 0.0), InvalidArgument);
	EXPECT_THROW(heat_entropy_check(1.0, 1.0, 0.0, 1e-3), InvalidArgument);
	EXPECT_THROW(heat_entropy_check(1.0, 1.0, pi - 1e-4, 1e-3), InvalidArgument);
	EXPECT_THROW(heat_entropy_check(1.0, 0.0, pi / 3, 1e-3), InvalidArgument);
}
