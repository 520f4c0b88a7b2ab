#include "qwtherm/verify.hpp"

#include "qwtherm/error.hpp"
#include "qwtherm/format.hpp"
#include "qwtherm/qubit.hpp"
#include "qwtherm/sweep.hpp"
#include "qwtherm/thermo.hpp"
#include "qwtherm/walk.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <utility>

namespace qwtherm {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(double v)
{
	std::ostringstream s;
	s.precision(6);
	s << v;
	return s.str();
}

CheckResult make_result(int id, std::string name)
{
	CheckResult r;
	r.id = id;
	r.name = std::move(name);
	return r;
}

std::string fmt(Complex z)
{
	return fmt(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + fmt(std::abs(z.imag())) + "i";
}

std::string angle_label(double theta)
{
	for(int d : {6, 4, 3})
	{
		if(std::abs(theta - pi / d) < 1e-15)
		{
			return "pi/" + std::to_string(d);
		}
	}
	return format_real(theta);
}

// Sweep results shared by several checks; computed on first use.
class Runs {
public:
	explicit Runs(const SweepConfig& config)
		: config_(config)
	{ }

	const SweepResult& gaussian()
	{
		if(!gaussian_)
		{
			SweepConfig c = config_;
			c.init = InitKind::Gaussian;
			c.thetas = {pi / 6, pi / 4, pi / 3};
			gaussian_ = compute_sweep(c);
		}
		return *gaussian_;
	}

	const SweepResult& localized()
	{
		if(!localized_)
		{
			SweepConfig c = config_;
			c.init = InitKind::Localized;
			c.thetas = {pi / 4};
			c.t_max = config_.t_max * 3 / 2;
			c.t_burn.reset();
			localized_ = compute_sweep(c);
		}
		return *localized_;
	}

	const SweepConfig& config() const { return config_; }

private:
	SweepConfig config_;
	std::optional<SweepResult> gaussian_;
	std::optional<SweepResult> localized_;
};

void note_unconverged(CheckResult& r, const SweepResult& run, std::string_view label)
{
	const std::size_t n = run.unconverged();
	if(n > 0)
	{
		r.notes.push_back(std::string(label) + ": " + std::to_string(n) + " of "
			+ std::to_string(run.records.size()) + " samples unconverged");
	}
}

CheckResult gaussian_thermality(Runs& runs)
{
	CheckResult r = make_result(1, "Gaussian thermality, kappa = tan(theta)");
	r.tolerance = "|kappa_hat - tan| <= 0.05 tan, |Im kappa_hat| <= 0.02, is_thermal";
	const SweepResult& run = runs.gaussian();
	r.passed = true;
	std::ostringstream measured;
	for(const ThetaSummary& s : run.summaries)
	{
		const double tan_theta = std::tan(s.theta);
		measured << "theta=" << angle_label(s.theta) << ": ";
		if(!s.verdict)
		{
			measured << "no fit (" << s.error << "); ";
			r.passed = false;
			continue;
		}
		const ThermalVerdict& v = *s.verdict;
		const double rel = std::abs(v.kappa_hat - tan_theta) / tan_theta;
		const bool ok = rel <= 0.05 && std::abs(v.kappa_hat.imag()) <= 0.02 && v.is_thermal;
		measured << "kappa_hat=" << fmt(v.kappa_hat) << " rel_err=" << fmt(rel) << " residual=" << fmt(v.residual)
				 << " thermal=" << (v.is_thermal ? "yes" : "no") << "; ";
		if(!ok)
		{
			r.passed = false;
			// Name the point that dominates the residual.
			const auto worst = std::max_element(v.point_residuals.begin(), v.point_residuals.end());
			const std::size_t per_theta = run.records.size() / run.summaries.size();
			const std::size_t theta_index = static_cast<std::size_t>(&s - run.summaries.data());
			const SweepRecord& rec = run.records[theta_index * per_theta
				+ v.used[static_cast<std::size_t>(worst - v.point_residuals.begin())]];
			r.notes.push_back("theta=" + angle_label(s.theta) + " worst point gamma=" + fmt(rec.gamma)
				+ " phi=" + fmt(rec.phi) + " a=" + fmt(rec.a_bar) + " b=" + fmt(Complex{rec.b_re, rec.b_im})
				+ " residual=" + fmt(*worst));
		}
	}
	r.measured = measured.str();
	note_unconverged(r, run, "gaussian");
	return r;
}

CheckResult gaussian_prediction(Runs& runs)
{
	CheckResult r = make_result(2, "Gaussian coherence b = 1/2 sin(theta) cos(alpha)");
	r.tolerance = "per point |b - pred| < 0.02 and |Im b| < 0.02";
	const SweepResult& run = runs.gaussian();
	double worst = 0.0;
	double worst_im = 0.0;
	for(const SweepRecord& rec : run.records)
	{
		const double pred = predicted_b_gaussian(rec.theta, rec.gamma, rec.phi);
		worst = std::max(worst, std::abs(Complex{rec.b_re, rec.b_im} - pred));
		worst_im = std::max(worst_im, std::abs(rec.b_im));
	}
	r.passed = worst < 0.02 && worst_im < 0.02;
	r.measured = "max |b - pred|=" + fmt(worst) + " max |Im b|=" + fmt(worst_im) + " over "
		+ std::to_string(run.records.size()) + " points";
	note_unconverged(r, run, "gaussian");
	return r;
}

CheckResult localized_walk(Runs& runs)
{
	CheckResult r = make_result(3, "Localized Hadamard walk: coherence formula and non-thermality");
	r.tolerance = "per point |b - pred| < 0.02; is_thermal = false with residual > 0.1";
	const SweepResult& run = runs.localized();
	double worst = 0.0;
	for(const SweepRecord& rec : run.records)
	{
		worst = std::max(worst, std::abs(Complex{rec.b_re, rec.b_im} - predicted_b_localized_hadamard(rec.gamma, rec.phi)));
	}
	const ThetaSummary& s = run.summaries.front();
	std::ostringstream measured;
	measured << "max |b - pred|=" << fmt(worst) << " over " << run.records.size() << " points; ";
	bool verdict_ok = false;
	if(s.verdict)
	{
		measured << "residual=" << fmt(s.verdict->residual) << " thermal=" << (s.verdict->is_thermal ? "yes" : "no");
		verdict_ok = !s.verdict->is_thermal && s.verdict->residual > 0.1;
	}
	else
	{
		measured << "no fit (" << s.error << ")";
	}
	r.passed = worst < 0.02 && verdict_ok;
	r.measured = measured.str();
	note_unconverged(r, run, "localized");
	return r;
}

CheckResult population_coherence_relation(Runs& runs)
{
	CheckResult r = make_result(4, "a = Re(b) / tan(theta) for converged samples");
	r.tolerance = "|a - Re(b)/tan(theta)| < 0.02";
	double worst = 0.0;
	std::size_t checked = 0;
	for(const SweepResult* run : {&runs.gaussian(), &runs.localized()})
	{
		for(const SweepRecord& rec : run->records)
		{
			if(!rec.converged)
			{
				continue;
			}
			++checked;
			worst = std::max(worst, std::abs(rec.a_bar - rec.b_re / std::tan(rec.theta)));
		}
	}
	r.passed = worst < 0.02;
	r.measured = "max deviation=" + fmt(worst) + " over " + std::to_string(checked) + " converged samples";
	note_unconverged(r, runs.gaussian(), "gaussian");
	note_unconverged(r, runs.localized(), "localized");
	return r;
}

CheckResult zero_temperature_poles(Runs& runs)
{
	CheckResult r = make_result(5, "Coin eigenstates stay pure and thermalize at T = 0");
	r.tolerance = "S_vN(t) < 1e-3 for all t <= t_max; T_ent = 0";
	const SweepConfig& config = runs.config();
	const CoinSpec coin(pi / 4);
	r.passed = true;
	std::ostringstream measured;
	for(const auto& [gamma, phi, label] : {std::tuple{pi / 4, 0.0, "(pi/4, 0)"}, std::tuple{3 * pi / 4, pi, "(3pi/4, pi)"}})
	{
		const InitialSpec spec = InitialSpec::gaussian(config.xi, gamma, phi);
		double max_entropy = 0.0;
		std::int64_t argmax = 0;
		evolve(spec, coin, config.t_max, [&](const WalkState& state) {
			const double s = von_neumann_entropy(coin_rdo(state));
			if(s > max_entropy)
			{
				max_entropy = s;
				argmax = state.time();
			}
		});
		const EquilibriumSample avg = evolve_and_average(spec, coin, config.burn_in(), config.t_max,
			{config.convergence_tolerance});
		const double t_ent = ent_temperature(avg.density());
		measured << label << ": max S_vN=" << fmt(max_entropy) << " (t=" << argmax << ") T_ent="
				 << format_real(t_ent) << "; ";
		if(!(max_entropy < 1e-3 && t_ent == 0.0))
		{
			r.passed = false;
		}
	}
	r.measured = measured.str();
	return r;
}

CheckResult equatorial_infinite_temperature(Runs& runs)
{
	CheckResult r = make_result(6, "Equatorial initial state thermalizes at T = inf");
	r.tolerance = "a^2 + |b|^2 < 1e-3 and T_ent serialized as \"inf\"";
	const SweepConfig& config = runs.config();
	const EquilibriumSample avg = evolve_and_average(InitialSpec::gaussian(config.xi, 3 * pi / 4, 0.0),
		CoinSpec(pi / 4), config.burn_in(), config.t_max, {config.convergence_tolerance});
	const double purity_excess = avg.a_bar * avg.a_bar + std::norm(avg.b_bar);
	const std::string t_text = format_real(ent_temperature(avg.density()));
	r.passed = purity_excess < 1e-3 && t_text == "inf";
	r.measured = "a^2+|b|^2=" + fmt(purity_excess) + " T_ent=" + t_text;
	return r;
}

CheckResult temperature_identity()
{
	CheckResult r = make_result(7, "T_ent from eigenvalues equals -eps / log tan(alpha/2)");
	r.tolerance = "|difference| <= 1e-10 on 1000 alpha in (0, pi/2)";
	constexpr int n = 1000;
	double worst = 0.0;
	for(int k = 1; k <= n; ++k)
	{
		const double alpha = (pi / 2) * k / (n + 1);
		const double from_eigenvalues = ent_temperature(thermal_density_from_alpha(Complex{1.0, 0.0}, alpha));
		const double from_angle = -1.0 / std::log(std::tan(alpha / 2));
		worst = std::max(worst, std::abs(from_eigenvalues - from_angle));
	}
	r.passed = worst <= 1e-10;
	r.measured = "max |difference|=" + fmt(worst);
	return r;
}

CheckResult heat_relation()
{
	CheckResult r = make_result(8, "Heat exchanged equals T_ent dS_vN");
	r.tolerance = "|dQ - T dS| / |dQ| < 1e-4 at d_alpha = 1e-3";
	double worst = 0.0;
	for(double alpha : {pi / 6, pi / 3, 2 * pi / 5})
	{
		const HeatExchange h = heat_entropy_check(Complex{1.0, 0.0}, 1.0, alpha, 1e-3);
		worst = std::max(worst, std::abs(h.delta_q - h.t_ds) / std::abs(h.delta_q));
	}
	r.passed = worst < 1e-4;
	r.measured = "max relative mismatch=" + fmt(worst);
	return r;
}

std::vector<Complex> geometry_kappas()
{
	// 20 fixed values spanning moduli 0..3.8 and all four quadrants.
	std::vector<Complex> out;
	for(int k = 0; k < 20; ++k)
	{
		out.push_back(std::polar(0.2 * k, 0.9 * k));
	}
	return out;
}

CheckResult geometry_identities()
{
	CheckResult r = make_result(9, "|B| = |cos alpha0| = plane distance, B parallel to normal");
	r.tolerance = "1e-12";
	double worst_norm = 0.0;
	double worst_dist = 0.0;
	double worst_cross = 0.0;
	for(const Complex kappa : geometry_kappas())
	{
		for(int j = 0; j <= 6; ++j)
		{
			const double alpha0 = pi * j / 6;
			const BlochVector b = bloch_from_density(thermal_density_from_alpha(kappa, alpha0));
			const IsothermPlane plane = isotherm_plane(kappa, alpha0);
			const double expected = std::abs(std::cos(alpha0));
			const auto& n = plane.normal;
			const double cx = b.y * n[2] - b.z * n[1];
			const double cy = b.z * n[0] - b.x * n[2];
			const double cz = b.x * n[1] - b.y * n[0];
			worst_norm = std::max(worst_norm, std::abs(b.norm() - expected));
			worst_dist = std::max(worst_dist, std::abs(plane_distance_origin(plane) - expected));
			worst_cross = std::max(worst_cross, std::sqrt(cx * cx + cy * cy + cz * cz));
		}
	}
	r.passed = worst_norm < 1e-12 && worst_dist < 1e-12 && worst_cross < 1e-12;
	r.measured = "max ||B|-|cos||=" + fmt(worst_norm) + " max |d-|cos||=" + fmt(worst_dist)
		+ " max |B x n|=" + fmt(worst_cross) + " over 20 kappa x 7 alpha0";
	return r;
}

CheckResult gibbs_round_trip()
{
	CheckResult r = make_result(10, "Gibbs round trip extract -> T_ent -> Gibbs state");
	r.tolerance = "entrywise 1e-12 on 100 random states";
	std::mt19937_64 rng(20240611);
	std::uniform_real_distribution<double> unit(0.0, 1.0);
	double worst = 0.0;
	for(int k = 0; k < 100; ++k)
	{
		const double radius = 0.01 + 0.98 * unit(rng);
		const double cos_t = 2.0 * unit(rng) - 1.0;
		const double sin_t = std::sqrt(1.0 - cos_t * cos_t);
		const double az = 2.0 * pi * unit(rng);
		const QubitDensity rho = density_from_bloch({radius * sin_t * std::cos(az), radius * sin_t * std::sin(az), radius * cos_t});
		const QubitDensity back = gibbs_state(extract_ent_hamiltonian(rho), 1.0 / ent_temperature(rho));
		const Mat2 m0 = rho.matrix();
		const Mat2 m1 = back.matrix();
		for(int i = 0; i < 2; ++i)
		{
			for(int j = 0; j < 2; ++j)
			{
				worst = std::max(worst, std::abs(m0[i][j] - m1[i][j]));
			}
		}
	}
	r.passed = worst <= 1e-12;
	r.measured = "max entry error=" + fmt(worst);
	return r;
}

// Dense 2N x 2N walk unitary on N sites (index 2*slot + chirality), applied
// as a plain matrix-vector product.
std::vector<Complex> dense_walk_step(const std::vector<Complex>& psi, std::size_t sites, double theta)
{
	const std::size_t dim = 2 * sites;
	std::vector<Complex> coin(dim * dim);
	std::vector<Complex> shift(dim * dim);
	const double c = std::cos(theta);
	const double s = std::sin(theta);
	for(std::size_t n = 0; n < sites; ++n)
	{
		coin[(2 * n) * dim + 2 * n] = c;
		coin[(2 * n) * dim + 2 * n + 1] = s;
		coin[(2 * n + 1) * dim + 2 * n] = s;
		coin[(2 * n + 1) * dim + 2 * n + 1] = -c;
		if(n + 1 < sites)
		{
			shift[(2 * (n + 1)) * dim + 2 * n] = 1.0;
		}
		if(n > 0)
		{
			shift[(2 * (n - 1) + 1) * dim + 2 * n + 1] = 1.0;
		}
	}
	std::vector<Complex> u(dim * dim);
	for(std::size_t i = 0; i < dim; ++i)
	{
		for(std::size_t k = 0; k < dim; ++k)
		{
			for(std::size_t j = 0; j < dim; ++j)
			{
				u[i * dim + j] += shift[i * dim + k] * coin[k * dim + j];
			}
		}
	}
	std::vector<Complex> out(dim);
	for(std::size_t i = 0; i < dim; ++i)
	{
		for(std::size_t j = 0; j < dim; ++j)
		{
			out[i] += u[i * dim + j] * psi[j];
		}
	}
	return out;
}

CheckResult engine_correctness()
{
	CheckResult r = make_result(11, "Walk engine: dense-matrix equivalence, unitarity, Hadamard t=2");
	r.tolerance = "dense 1e-12; norm drift < 1e-10 over 1000 steps; distribution 1e-12";
	std::mt19937_64 rng(7);
	std::normal_distribution<double> normal;

	double worst_dense = 0.0;
	constexpr std::int64_t halfwidth = 4; // 9 sites
	constexpr std::size_t sites = 2 * halfwidth + 1;
	for(int trial = 0; trial < 12; ++trial)
	{
		const std::int64_t support = trial % 3; // initial support [-support, support]
		const std::int64_t steps = halfwidth - support;
		const double theta = 0.1 + 1.3 * (trial + 0.5) / 12.0;
		std::vector<Complex> d(sites);
		std::vector<Complex> e(sites);
		double norm2 = 0.0;
		for(std::int64_t n = -support; n <= support; ++n)
		{
			const auto slot = static_cast<std::size_t>(n + halfwidth);
			d[slot] = {normal(rng), normal(rng)};
			e[slot] = {normal(rng), normal(rng)};
			norm2 += std::norm(d[slot]) + std::norm(e[slot]);
		}
		std::vector<Complex> psi(2 * sites);
		for(std::size_t i = 0; i < sites; ++i)
		{
			d[i] /= std::sqrt(norm2);
			e[i] /= std::sqrt(norm2);
			psi[2 * i] = d[i];
			psi[2 * i + 1] = e[i];
		}
		WalkState state(-halfwidth, d, e);
		const CoinSpec coin(theta);
		for(std::int64_t t = 0; t < steps; ++t)
		{
			state.advance(coin);
			psi = dense_walk_step(psi, sites, theta);
			for(std::size_t i = 0; i < sites; ++i)
			{
				worst_dense = std::max({worst_dense, std::abs(state.d()[i] - psi[2 * i]), std::abs(state.e()[i] - psi[2 * i + 1])});
			}
		}
	}

	double worst_drift = 0.0;
	for(const auto& [spec, theta] : {std::pair{InitialSpec::localized(1.1, 0.4), 0.3},
			std::pair{InitialSpec::gaussian(3.0, 2.0, 5.0), pi / 4}, std::pair{InitialSpec::gaussian(1.5, 0.7, 1.9), 1.4}})
	{
		evolve(spec, CoinSpec(theta), 1000, [&](const WalkState& s) {
			worst_drift = std::max(worst_drift, std::abs(s.norm_squared() - 1.0));
		});
	}

	WalkState hadamard = init_state(InitialSpec::localized(0.0, 0.0), 3);
	hadamard.advance(CoinSpec(pi / 4));
	hadamard.advance(CoinSpec(pi / 4));
	const double dist_err = std::max({std::abs(hadamard.position_probability(-2) - 0.25),
		std::abs(hadamard.position_probability(0) - 0.5), std::abs(hadamard.position_probability(2) - 0.25)});

	r.passed = worst_dense <= 1e-12 && worst_drift < 1e-10 && dist_err <= 1e-12;
	r.measured = "dense max error=" + fmt(worst_dense) + " norm drift=" + fmt(worst_drift)
		+ " P(-2,0,2) error=" + fmt(dist_err);
	return r;
}

} // namespace

SweepConfig default_verify_config()
{
	SweepConfig config;
	config.init = InitKind::Gaussian;
	config.xi = 10.0;
	config.gamma_steps = 6;
	config.phi_steps = 8;
	config.t_burn.reset(); // t_max / 4 = 100, and tracks --t-max overrides
	config.t_max = 400;
	config.threshold = 0.02;
	config.a_floor = 1e-3;
	return config;
}

std::vector<CheckResult> run_checks(const SweepConfig& config, std::span<const int> only)
{
	Runs runs(config);
	const std::map<int, std::function<CheckResult()>> checks{
		{1, [&] { return gaussian_thermality(runs); }},
		{2, [&] { return gaussian_prediction(runs); }},
		{3, [&] { return localized_walk(runs); }},
		{4, [&] { return population_coherence_relation(runs); }},
		{5, [&] { return zero_temperature_poles(runs); }},
		{6, [&] { return equatorial_infinite_temperature(runs); }},
		{7, [] { return temperature_identity(); }},
		{8, [] { return heat_relation(); }},
		{9, [] { return geometry_identities(); }},
		{10, [] { return gibbs_round_trip(); }},
		{11, [] { return engine_correctness(); }},
	};

	std::vector<CheckResult> results;
	for(const auto& [id, check] : checks)
	{
		if(!only.empty() && std::find(only.begin(), only.end(), id) == only.end())
		{
			continue;
		}
		try
		{
			results.push_back(check());
		}
		catch(const Error& err)
		{
			CheckResult failed = make_result(id, "check " + std::to_string(id));
			failed.measured = std::string("error: ") + err.what();
			results.push_back(std::move(failed));
		}
	}
	return results;
}

bool all_passed(std::span<const CheckResult> results)
{
	return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

void print_report(std::ostream& out, std::span<const CheckResult> results)
{
	for(const CheckResult& r : results)
	{
		out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << "\n"
			<< "       measured:  " << r.measured << "\n"
			<< "       tolerance: " << r.tolerance << "\n";
		for(const std::string& note : r.notes)
		{
			out << "       note: " << note << "\n";
		}
	}
	const auto passed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
	out << passed << "/" << results.size() << " checks passed\n";
}

} // namespace qwtherm
