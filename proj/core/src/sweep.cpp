#include "qwtherm/sweep.hpp"

#include "qwtherm/error.hpp"
#include "qwtherm/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace qwtherm {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json json_real(double value)
{
	if(std::isfinite(value))
	{
		return value;
	}
	return format_real(value);
}

std::ofstream open_output(const std::filesystem::path& path)
{
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if(!out)
	{
		throw IoError("cannot open " + path.string() + " for writing");
	}
	return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path)
{
	out.flush();
	if(!out)
	{
		throw IoError("failed writing " + path.string());
	}
}

} // namespace

std::size_t SweepResult::unconverged() const
{
	return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
		[](const SweepRecord& r) { return !r.converged; }));
}

std::vector<GridPoint> sweep_grid(int gamma_steps, int phi_steps)
{
	std::vector<GridPoint> grid;
	grid.reserve(static_cast<std::size_t>(gamma_steps) * static_cast<std::size_t>(phi_steps));
	for(int i = 0; i < gamma_steps; ++i)
	{
		const double gamma = std::numbers::pi * i / (gamma_steps - 1);
		for(int j = 0; j < phi_steps; ++j)
		{
			grid.push_back({gamma, 2.0 * std::numbers::pi * j / phi_steps});
		}
	}
	return grid;
}

SweepRecord make_record(double theta, const GridPoint& point, const EquilibriumSample& sample)
{
	const QubitDensity rho = sample.density();
	SweepRecord rec;
	rec.theta = theta;
	rec.gamma = point.gamma;
	rec.phi = point.phi;
	rec.a_bar = sample.a_bar;
	rec.b_re = sample.b_bar.real();
	rec.b_im = sample.b_bar.imag();
	rec.cos_alpha_pred = cos_alpha(Complex{std::tan(theta), 0.0}, point.gamma, point.phi);
	rec.lambda_plus = eigendecompose(rho).lambda_plus;
	rec.s_vn = von_neumann_entropy(rho);
	rec.t_ent = ent_temperature(rho);
	rec.converged = sample.converged;
	rec.residual = sample.residual;
	return rec;
}

SweepResult compute_sweep(const SweepConfig& config)
{
	config.validate();
	const std::vector<GridPoint> grid = sweep_grid(config.gamma_steps, config.phi_steps);
	const std::size_t per_theta = grid.size();
	const std::size_t total = config.thetas.size() * per_theta;
	const AveragingOptions averaging{config.convergence_tolerance};

	std::vector<EquilibriumSample> samples(total);
	parallel_for(total, config.workers, [&](std::size_t k) {
		const double theta = config.thetas[k / per_theta];
		const GridPoint& point = grid[k % per_theta];
		const InitialSpec spec{config.init, config.xi, point.gamma, point.phi};
		try
		{
			samples[k] = evolve_and_average(spec, CoinSpec(theta), config.burn_in(), config.t_max, averaging);
		}
		catch(const Error& err)
		{
			std::ostringstream msg;
			msg << "grid point theta=" << format_real(theta) << " gamma=" << format_real(point.gamma)
				<< " phi=" << format_real(point.phi) << ": " << err.what();
			throw GridPointError(msg.str());
		}
	});

	SweepResult result;
	result.records.reserve(total);
	for(std::size_t t = 0; t < config.thetas.size(); ++t)
	{
		const double theta = config.thetas[t];
		std::vector<EnsemblePoint> ensemble;
		ensemble.reserve(per_theta);
		for(std::size_t g = 0; g < per_theta; ++g)
		{
			const EquilibriumSample& s = samples[t * per_theta + g];
			result.records.push_back(make_record(theta, grid[g], s));
			ensemble.push_back({grid[g].gamma, grid[g].phi, s.a_bar, s.b_bar});
		}

		ThetaSummary summary;
		summary.theta = theta;
		try
		{
			summary.verdict = estimate_kappa(ensemble, {config.threshold, config.a_floor});
		}
		catch(const InsufficientEnsemble& err)
		{
			summary.error = err.what();
		}
		result.summaries.push_back(std::move(summary));
	}
	return result;
}

std::filesystem::path summary_path_for(const std::filesystem::path& csv_path)
{
	std::filesystem::path out = csv_path;
	out.replace_extension(".json");
	if(out == csv_path)
	{
		out += ".summary.json";
	}
	return out;
}

SweepResult run_sweep(const SweepConfig& config)
{
	config.validate();
	if(config.output_path.empty())
	{
		throw ConfigError("sweep needs an output path");
	}
	const std::filesystem::path csv_path = config.output_path;
	const std::filesystem::path json_path = summary_path_for(csv_path);
	std::ofstream csv = open_output(csv_path);
	std::ofstream json = open_output(json_path);

	SweepResult result = compute_sweep(config);

	write_sweep_csv(csv, result.records);
	finish_output(csv, csv_path);
	write_sweep_summary(json, result.summaries);
	finish_output(json, json_path);
	return result;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records)
{
	for(std::size_t i = 0; i < kSweepColumns.size(); ++i)
	{
		out << (i ? "," : "") << kSweepColumns[i];
	}
	out << '\n';
	for(const SweepRecord& r : records)
	{
		out << format_real(r.theta) << ',' << format_real(r.gamma) << ',' << format_real(r.phi) << ','
			<< format_real(r.a_bar) << ',' << format_real(r.b_re) << ',' << format_real(r.b_im) << ','
			<< format_real(r.cos_alpha_pred) << ',' << format_real(r.lambda_plus) << ','
			<< format_real(r.s_vn) << ',' << format_real(r.t_ent) << ','
			<< (r.converged ? "true" : "false") << ',' << format_real(r.residual) << '\n';
	}
}

void write_sweep_summary(std::ostream& out, std::span<const ThetaSummary> summaries)
{
	ordered_json doc = ordered_json::object();
	for(const ThetaSummary& s : summaries)
	{
		ordered_json entry = ordered_json::object();
		if(s.verdict)
		{
			const ThermalVerdict& v = *s.verdict;
			entry["kappa_hat"] = {json_real(v.kappa_hat.real()), json_real(v.kappa_hat.imag())};
			entry["residual"] = json_real(v.residual);
			entry["is_thermal"] = v.is_thermal;
			entry["n_used"] = v.n_used;
		}
		else
		{
			entry["kappa_hat"] = nullptr;
			entry["residual"] = nullptr;
			entry["is_thermal"] = false;
			entry["n_used"] = 0;
			entry["error"] = s.error;
		}
		doc[format_real(s.theta)] = std::move(entry);
	}
	out << doc.dump(2) << '\n';
}

std::vector<IsothermRow> isotherm_table(Complex kappa, int alpha_steps, double epsilon)
{
	if(alpha_steps < 2)
	{
		throw InvalidArgument("alpha_steps must be >= 2");
	}
	std::vector<IsothermRow> rows;
	rows.reserve(static_cast<std::size_t>(alpha_steps));
	for(int i = 0; i < alpha_steps; ++i)
	{
		const double alpha = std::numbers::pi * i / (alpha_steps - 1);
		const IsothermPlane plane = isotherm_plane(kappa, alpha);
		rows.push_back({alpha, plane.rhs, plane_distance_origin(plane),
			ent_temperature(thermal_density_from_alpha(kappa, alpha), epsilon)});
	}
	return rows;
}

void write_isotherm_csv(std::ostream& out, std::span<const IsothermRow> rows)
{
	out << "alpha,rhs,distance,T_ent\n";
	for(const IsothermRow& r : rows)
	{
		out << format_real(r.alpha) << ',' << format_real(r.rhs) << ',' << format_real(r.distance) << ','
			<< format_real(r.t_ent) << '\n';
	}
}

std::vector<TrajectoryRow> simulate_trajectory(const InitialSpec& spec, const CoinSpec& coin,
	std::int64_t t_max)
{
	std::vector<TrajectoryRow> rows;
	rows.reserve(static_cast<std::size_t>(std::max<std::int64_t>(t_max, 0) + 1));
	evolve(spec, coin, t_max, [&](const WalkState& state) {
		const QubitDensity rho = coin_rdo(state);
		rows.push_back({state.time(), rho.a(), rho.b().real(), rho.b().imag(), von_neumann_entropy(rho)});
	});
	return rows;
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRow> rows)
{
	out << "t,a,b_re,b_im,S_vN\n";
	for(const TrajectoryRow& r : rows)
	{
		out << r.t << ',' << format_real(r.a) << ',' << format_real(r.b_re) << ','
			<< format_real(r.b_im) << ',' << format_real(r.s_vn) << '\n';
	}
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& task)
{
	if(workers == 0)
	{
		workers = std::max(1u, std::thread::hardware_concurrency());
	}
	const auto n_threads = static_cast<std::size_t>(std::min<std::size_t>(workers, n));
	if(n_threads <= 1)
	{
		for(std::size_t i = 0; i < n; ++i)
		{
			task(i);
		}
		return;
	}

	std::atomic<std::size_t> next{0};
	std::atomic<bool> failed{false};
	std::exception_ptr first_error;
	std::mutex error_mutex;
	{
		std::vector<std::jthread> pool;
		pool.reserve(n_threads);
		for(std::size_t w = 0; w < n_threads; ++w)
		{
			pool.emplace_back([&] {
				for(std::size_t i = next++; i < n && !failed; i = next++)
				{
					try
					{
						task(i);
					}
					catch(...)
					{
						std::lock_guard lock(error_mutex);
						if(!first_error)
						{
							first_error = std::current_exception();
						}
						failed = true;
					}
				}
			});
		}
	}
	if(first_error)
	{
		std::rethrow_exception(first_error);
	}
}

} // namespace qwtherm
