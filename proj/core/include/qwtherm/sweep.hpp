#pragma once

// Parameter sweeps over initial coin states and coin bias, plus the
// simulation-free isotherm tables. All output is deterministic.

#include "qwtherm/config.hpp"
#include "qwtherm/thermo.hpp"
#include "qwtherm/walk.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qwtherm {

struct SweepRecord {
	double theta = 0.0;
	double gamma = 0.0;
	double phi = 0.0;
	double a_bar = 0.0;
	double b_re = 0.0;
	double b_im = 0.0;
	double cos_alpha_pred = 0.0;
	double lambda_plus = 0.5;
	double s_vn = 0.0;
	double t_ent = 0.0;
	bool converged = false;
	double residual = 0.0;
};

inline constexpr std::array<std::string_view, 12> kSweepColumns{
	"theta", "gamma", "phi", "a_bar", "b_re", "b_im", "cos_alpha_pred",
	"lambda_plus", "S_vN", "T_ent", "converged", "residual"};

struct ThetaSummary {
	double theta = 0.0;
	/// Empty when the ensemble was insufficient; `error` says why.
	std::optional<ThermalVerdict> verdict;
	std::string error;
};

struct SweepResult {
	std::vector<SweepRecord> records;
	std::vector<ThetaSummary> summaries;

	std::size_t unconverged() const;
};

struct GridPoint {
	double gamma;
	double phi;
};

/// gamma uniform on [0, pi] inclusive, phi uniform on [0, 2 pi) half-open;
/// gamma-major order.
std::vector<GridPoint> sweep_grid(int gamma_steps, int phi_steps);

/// Analysis columns for one time-averaged sample.
SweepRecord make_record(double theta, const GridPoint& point, const EquilibriumSample& sample);

/// Simulates every (theta, gamma, phi) grid point and fits kappa per theta.
/// Records are ordered theta-major, then gamma, then phi.
SweepResult compute_sweep(const SweepConfig& config);

/// compute_sweep, then writes the CSV to config.output_path and the JSON
/// summary next to it (see summary_path_for). The output files are opened
/// before any simulation runs, so an unwritable path fails fast with IoError.
SweepResult run_sweep(const SweepConfig& config);

/// foo.csv -> foo.json; foo.json -> foo.json.summary.json.
std::filesystem::path summary_path_for(const std::filesystem::path& csv_path);

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records);

/// {theta: {kappa_hat: [re, im], residual, is_thermal, n_used}}, keyed by
/// format_real(theta) in sweep order.
void write_sweep_summary(std::ostream& out, std::span<const ThetaSummary> summaries);

struct IsothermRow {
	double alpha = 0.0;
	double rhs = 0.0;
	double distance = 0.0;
	double t_ent = 0.0;
};

/// alpha uniform on [0, pi] inclusive. Throws InvalidArgument if
/// alpha_steps < 2.
std::vector<IsothermRow> isotherm_table(Complex kappa, int alpha_steps, double epsilon = 1.0);

void write_isotherm_csv(std::ostream& out, std::span<const IsothermRow> rows);

struct TrajectoryRow {
	std::int64_t t = 0;
	double a = 0.0;
	double b_re = 0.0;
	double b_im = 0.0;
	double s_vn = 0.0;
};

std::vector<TrajectoryRow> simulate_trajectory(const InitialSpec& spec, const CoinSpec& coin,
	std::int64_t t_max);

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRow> rows);

/// Runs task(i) for i in [0, n) on at most `workers` threads (0 = hardware
/// concurrency). The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& task);

} // namespace qwtherm
