#include "qwtherm/format.hpp"

#include "qwtherm/error.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <system_error>

namespace qwtherm {

namespace {

std::string_view trim(std::string_view s)
{
	const auto first = s.find_first_not_of(" \t\r\n");
	if(first == std::string_view::npos)
	{
		return {};
	}
	const auto last = s.find_last_not_of(" \t\r\n");
	return s.substr(first, last - first + 1);
}

double parse_plain(std::string_view s, std::string_view whole)
{
	double value = 0.0;
	const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
	if(ec != std::errc{} || ptr != s.data() + s.size())
	{
		throw ConfigError("cannot parse number '" + std::string(whole) + "'");
	}
	return value;
}

} // namespace

std::string format_real(double value)
{
	if(std::isnan(value))
	{
		return "nan";
	}
	if(std::isinf(value))
	{
		return value > 0 ? "inf" : "-inf";
	}
	if(value == 0.0)
	{
		return "0";
	}
	char buf[64];
	const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
	return std::string(buf, ptr);
}

double parse_real(std::string_view text)
{
	std::string_view s = trim(text);
	if(s.empty())
	{
		throw ConfigError("empty number");
	}
	if(s == "inf" || s == "+inf")
	{
		return std::numeric_limits<double>::infinity();
	}
	if(s == "-inf")
	{
		return -std::numeric_limits<double>::infinity();
	}

	const auto pi_pos = s.find("pi");
	if(pi_pos == std::string_view::npos)
	{
		return parse_plain(s, text);
	}

	// [sign][coef][*]pi[/denom]
	std::string_view coef = trim(s.substr(0, pi_pos));
	std::string_view rest = trim(s.substr(pi_pos + 2));
	if(!coef.empty() && coef.back() == '*')
	{
		coef = trim(coef.substr(0, coef.size() - 1));
	}
	double factor = 1.0;
	if(coef == "-")
	{
		factor = -1.0;
	}
	else if(!coef.empty() && coef != "+")
	{
		factor = parse_plain(coef, text);
	}
	double denom = 1.0;
	if(!rest.empty())
	{
		if(rest.front() != '/')
		{
			throw ConfigError("cannot parse angle '" + std::string(text) + "'");
		}
		denom = parse_plain(trim(rest.substr(1)), text);
	}
	return factor * std::numbers::pi / denom;
}

std::vector<double> parse_real_list(std::string_view text)
{
	std::vector<double> out;
	std::string_view rest = text;
	while(true)
	{
		const auto comma = rest.find(',');
		const std::string_view item = trim(rest.substr(0, comma));
		if(!item.empty())
		{
			out.push_back(parse_real(item));
		}
		if(comma == std::string_view::npos)
		{
			break;
		}
		rest = rest.substr(comma + 1);
	}
	return out;
}

} // namespace qwtherm
