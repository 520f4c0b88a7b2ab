#pragma once

// Executable acceptance checks. Each check reproduces one closed-form
// prediction or identity at a pinned tolerance and reports what it measured.

#include "qwtherm/config.hpp"

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace qwtherm {

struct CheckResult {
	int id = 0;
	std::string name;
	bool passed = false;
	std::string measured;
	std::string tolerance;
	std::vector<std::string> notes;
};

inline constexpr int kCheckCount = 11;

/// xi = 10, t_max = 400 with the default burn-in t_max / 4 = 100, 6 x 8
/// grid, threshold 0.02, a_floor 1e-3. The theta list is ignored; each check fixes its own.
SweepConfig default_verify_config();

/// Runs the checks listed in `only` (all of 1..kCheckCount when empty).
/// Simulation knobs (xi, grid, t_burn, t_max, threshold, a_floor,
/// convergence tolerance, workers) come from `config`; localized-walker
/// runs use 3/2 t_max with the default burn-in.
std::vector<CheckResult> run_checks(const SweepConfig& config, std::span<const int> only = {});

bool all_passed(std::span<const CheckResult> results);

/// One line per check plus indented notes.
void print_report(std::ostream& out, std::span<const CheckResult> results);

} // namespace qwtherm
