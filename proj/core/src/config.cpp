#include "qwtherm/config.hpp"

#include "qwtherm/error.hpp"
#include "qwtherm/format.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

namespace qwtherm {

namespace {

std::string normalize_key(std::string_view key)
{
	std::string out(key);
	for(char& c : out)
	{
		if(c == '-')
		{
			c = '_';
		}
	}
	return out;
}

std::int64_t parse_int(std::string_view key, std::string_view value)
{
	const double v = parse_real(value);
	if(!std::isfinite(v) || v != std::floor(v))
	{
		throw ConfigError(std::string(key) + " must be an integer, got '" + std::string(value) + "'");
	}
	return static_cast<std::int64_t>(v);
}

std::string_view trim(std::string_view s)
{
	const auto first = s.find_first_not_of(" \t\r\n");
	if(first == std::string_view::npos)
	{
		return {};
	}
	return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

} // namespace

std::int64_t SweepConfig::burn_in() const
{
	return t_burn.value_or(t_max / 4);
}

void SweepConfig::validate() const
{
	if(thetas.empty())
	{
		throw ConfigError("theta list is empty");
	}
	for(double theta : thetas)
	{
		if(!(theta > 0.0 && theta < std::numbers::pi / 2))
		{
			throw ConfigError("theta=" + format_real(theta) + " is outside (0, pi/2)");
		}
	}
	if(init == InitKind::Gaussian && !(xi >= 1.0 && std::isfinite(xi)))
	{
		throw ConfigError("xi must be finite and >= 1");
	}
	if(gamma_steps < 2)
	{
		throw ConfigError("gamma_steps must be >= 2");
	}
	if(phi_steps < 1)
	{
		throw ConfigError("phi_steps must be >= 1");
	}
	const std::int64_t burn = burn_in();
	if(!(burn >= 0 && burn < t_max))
	{
		throw ConfigError("need 0 <= t_burn < t_max (t_burn=" + std::to_string(burn)
			+ ", t_max=" + std::to_string(t_max) + ")");
	}
	if(!(threshold > 0.0))
	{
		throw ConfigError("threshold must be > 0");
	}
	if(!(a_floor >= 0.0))
	{
		throw ConfigError("a_floor must be >= 0");
	}
	if(!(convergence_tolerance > 0.0))
	{
		throw ConfigError("convergence_tol must be > 0");
	}
}

void SweepConfig::set(std::string_view raw_key, std::string_view value)
{
	const std::string key = normalize_key(trim(raw_key));
	value = trim(value);
	if(key == "theta")
	{
		thetas = parse_real_list(value);
	}
	else if(key == "init")
	{
		init = parse_init_kind(value);
	}
	else if(key == "xi")
	{
		xi = parse_real(value);
	}
	else if(key == "gamma_steps")
	{
		gamma_steps = static_cast<int>(parse_int(key, value));
	}
	else if(key == "phi_steps")
	{
		phi_steps = static_cast<int>(parse_int(key, value));
	}
	else if(key == "t_burn")
	{
		t_burn = parse_int(key, value);
	}
	else if(key == "t_max")
	{
		t_max = parse_int(key, value);
	}
	else if(key == "threshold")
	{
		threshold = parse_real(value);
	}
	else if(key == "a_floor")
	{
		a_floor = parse_real(value);
	}
	else if(key == "convergence_tol")
	{
		convergence_tolerance = parse_real(value);
	}
	else if(key == "out")
	{
		output_path = std::string(value);
	}
	else if(key == "workers")
	{
		const std::int64_t n = parse_int(key, value);
		if(n < 0)
		{
			throw ConfigError("workers must be >= 0");
		}
		workers = static_cast<unsigned>(n);
	}
	else
	{
		throw ConfigError("unknown config key '" + std::string(raw_key) + "'");
	}
}

InitKind parse_init_kind(std::string_view text)
{
	if(text == "localized")
	{
		return InitKind::Localized;
	}
	if(text == "gaussian")
	{
		return InitKind::Gaussian;
	}
	throw ConfigError("init must be 'localized' or 'gaussian', got '" + std::string(text) + "'");
}

std::string_view to_string(InitKind kind)
{
	return kind == InitKind::Localized ? "localized" : "gaussian";
}

void read_config(std::istream& in, SweepConfig& config)
{
	std::string line;
	int line_no = 0;
	while(std::getline(in, line))
	{
		++line_no;
		std::string_view view = line;
		view = trim(view.substr(0, view.find('#')));
		if(view.empty())
		{
			continue;
		}
		const auto eq = view.find('=');
		if(eq == std::string_view::npos)
		{
			throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
		}
		try
		{
			config.set(view.substr(0, eq), view.substr(eq + 1));
		}
		catch(const ConfigError& err)
		{
			throw ConfigError("config line " + std::to_string(line_no) + ": " + err.what());
		}
	}
}

void read_config_file(const std::filesystem::path& path, SweepConfig& config)
{
	std::ifstream in(path);
	if(!in)
	{
		throw IoError("cannot open config file " + path.string());
	}
	read_config(in, config);
}

} // namespace qwtherm
