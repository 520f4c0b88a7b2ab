#pragma once

#include "qwtherm/walk.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qwtherm {

struct SweepConfig {
	std::vector<double> thetas;
	InitKind init = InitKind::Gaussian;
	double xi = 10.0;
	int gamma_steps = 6;
	int phi_steps = 8;
	/// Defaults to t_max / 4 when unset.
	std::optional<std::int64_t> t_burn;
	std::int64_t t_max = 400;
	double threshold = 0.02;
	double a_floor = 1e-3;
	double convergence_tolerance = 5e-3;
	std::string output_path;
	/// Worker threads; 0 means one per hardware thread.
	unsigned workers = 0;

	std::int64_t burn_in() const;

	/// Throws ConfigError on an empty theta list, theta outside (0, pi/2),
	/// t_burn >= t_max, or grids below 2 x 1.
	void validate() const;

	/// Sets one field from its text form. Keys are the config-file keys
	/// (theta, init, xi, gamma_steps, phi_steps, t_burn, t_max, threshold,
	/// a_floor, convergence_tol, out, workers); '-' and '_' are interchangeable.
	void set(std::string_view key, std::string_view value);
};

InitKind parse_init_kind(std::string_view text);
std::string_view to_string(InitKind kind);

/// Reads `key = value` lines into `config`. Blank lines and text after '#'
/// are ignored.
void read_config(std::istream& in, SweepConfig& config);
void read_config_file(const std::filesystem::path& path, SweepConfig& config);

} // namespace qwtherm
