// qwtherm: command-line front end for walk simulation, thermality sweeps,
// isotherm tables and the acceptance checks.

#include "qwtherm/config.hpp"
#include "qwtherm/error.hpp"
#include "qwtherm/format.hpp"
#include "qwtherm/sweep.hpp"
#include "qwtherm/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace {

using namespace qwtherm;

// Flags shared by every simulating subcommand, kept as text so that the
// config file is applied first and explicit flags override it.
struct CommonFlags {
	std::string config_path;
	std::map<std::string, std::string> values;
	std::map<std::string, CLI::Option*> options;

	void add_to(CLI::App& app, std::initializer_list<const char*> keys)
	{
		app.add_option("--config", config_path, "key = value config file (flags override it)")
			->check(CLI::ExistingFile);
		static const std::map<std::string, std::string> help{
			{"theta", "coin bias in (0, pi/2); comma list for sweeps, e.g. pi/6,pi/4"},
			{"init", "initial walker: localized | gaussian"},
			{"xi", "Gaussian width (>= 1)"},
			{"gamma-steps", "gamma grid points on [0, pi]"},
			{"phi-steps", "phi grid points on [0, 2pi)"},
			{"t-burn", "first averaged step (default t_max/4)"},
			{"t-max", "last simulated step"},
			{"threshold", "thermality residual threshold"},
			{"a-floor", "points with |a| <= a_floor are left out of the kappa fit"},
			{"out", "output CSV path"},
			{"workers", "worker threads (0 = one per hardware thread)"},
		};
		for(const char* key : keys)
		{
			options[key] = app.add_option("--" + std::string(key), values[key], help.at(key));
		}
	}

	SweepConfig resolve(SweepConfig config) const
	{
		if(!config_path.empty())
		{
			read_config_file(config_path, config);
		}
		for(const auto& [key, option] : options)
		{
			if(option->count() > 0)
			{
				config.set(key, values.at(key));
			}
		}
		return config;
	}
};

SweepConfig base_config()
{
	SweepConfig config;
	config.thetas = {std::numbers::pi / 4};
	return config;
}

// Writes to `path`, or stdout when it is empty.
template <typename Writer>
void emit(const std::string& path, Writer&& write)
{
	if(path.empty())
	{
		write(std::cout);
		return;
	}
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if(!out)
	{
		throw IoError("cannot open " + path + " for writing");
	}
	write(out);
	out.flush();
	if(!out)
	{
		throw IoError("failed writing " + path);
	}
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Thermalization of a quantum-walk coin: simulation and analysis"};
	app.require_subcommand(1);

	CommonFlags sim_flags;
	std::string gamma_text = "0";
	std::string phi_text = "0";
	auto* simulate = app.add_subcommand("simulate", "Time series a(t), b(t), S_vN(t) for one initial state");
	sim_flags.add_to(*simulate, {"theta", "init", "xi", "t-max", "out"});
	simulate->add_option("--gamma", gamma_text, "initial coin polar angle in [0, pi]");
	simulate->add_option("--phi", phi_text, "initial coin relative phase");

	CommonFlags sweep_flags;
	auto* sweep = app.add_subcommand("sweep", "Time-averaged equilibria over a (gamma, phi) grid with kappa fits");
	sweep_flags.add_to(*sweep, {"theta", "init", "xi", "gamma-steps", "phi-steps", "t-burn", "t-max",
		"threshold", "a-floor", "out", "workers"});

	std::string kappa_re = "1";
	std::string kappa_im = "0";
	int alpha_steps = 181;
	std::string isotherm_out;
	auto* isotherms = app.add_subcommand("isotherms", "Isotherm planes and temperatures along a kappa family");
	isotherms->add_option("--kappa-re", kappa_re, "Re kappa");
	isotherms->add_option("--kappa-im", kappa_im, "Im kappa");
	isotherms->add_option("--alpha-steps", alpha_steps, "alpha grid points on [0, pi]");
	isotherms->add_option("--out", isotherm_out, "output CSV path (default stdout)");

	CommonFlags verify_flags;
	std::vector<int> criteria;
	auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
	verify_flags.add_to(*verify, {"xi", "gamma-steps", "phi-steps", "t-burn", "t-max", "threshold", "a-floor"});
	verify->add_option("--criterion", criteria, "run only these checks")
		->check(CLI::Range(1, kCheckCount));

	CLI11_PARSE(app, argc, argv);

	try
	{
		if(simulate->parsed())
		{
			SweepConfig defaults = base_config();
			defaults.init = InitKind::Localized;
			const SweepConfig config = sim_flags.resolve(defaults);
			if(config.thetas.size() != 1)
			{
				throw ConfigError("simulate takes a single theta");
			}
			const InitialSpec spec{config.init, config.xi, parse_real(gamma_text), parse_real(phi_text)};
			const auto rows = simulate_trajectory(spec, CoinSpec(config.thetas.front()), config.t_max);
			emit(config.output_path, [&](std::ostream& out) { write_trajectory_csv(out, rows); });
		}
		else if(sweep->parsed())
		{
			const SweepConfig config = sweep_flags.resolve(base_config());
			const SweepResult result = run_sweep(config);
			std::size_t negative = 0;
			for(const SweepRecord& r : result.records)
			{
				negative += r.t_ent < 0 ? 1 : 0;
			}
			std::cerr << "wrote " << config.output_path << " and " << summary_path_for(config.output_path).string()
					  << " (" << result.records.size() << " samples, " << result.unconverged() << " unconverged, "
					  << negative << " at negative temperature)\n";
			for(const ThetaSummary& s : result.summaries)
			{
				std::cerr << "theta=" << format_real(s.theta) << ": ";
				if(s.verdict)
				{
					std::cerr << "kappa_hat=" << format_real(s.verdict->kappa_hat.real()) << ","
							  << format_real(s.verdict->kappa_hat.imag()) << " residual=" << format_real(s.verdict->residual)
							  << (s.verdict->is_thermal ? " thermal" : " not thermal") << "\n";
				}
				else
				{
					std::cerr << s.error << "\n";
				}
			}
		}
		else if(isotherms->parsed())
		{
			const Complex kappa{parse_real(kappa_re), parse_real(kappa_im)};
			const auto rows = isotherm_table(kappa, alpha_steps);
			emit(isotherm_out, [&](std::ostream& out) { write_isotherm_csv(out, rows); });
			const auto negative = std::count_if(rows.begin(), rows.end(), [](const IsothermRow& r) { return r.t_ent < 0; });
			if(!isotherm_out.empty())
			{
				std::cerr << "wrote " << isotherm_out << " (" << rows.size() << " rows, " << negative
						  << " at negative temperature)\n";
			}
		}
		else if(verify->parsed())
		{
			const SweepConfig config = verify_flags.resolve(default_verify_config());
			const auto results = run_checks(config, criteria);
			print_report(std::cout, results);
			return all_passed(results) ? 0 : 1;
		}
	}
	catch(const Error& err)
	{
		std::cerr << "qwtherm: " << err.what() << "\n";
		return 2;
	}
	return 0;
}
