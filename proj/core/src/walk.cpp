#include "qwtherm/walk.hpp"

#include "qwtherm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace qwtherm {

namespace {

// Partial traces of a pure global state stay within this of the Bloch ball.
constexpr double kSimulationTolerance = 1e-10;

// Windows beyond this many sites each side would need gigabytes.
constexpr std::int64_t kMaxHalfwidth = std::int64_t{1} << 26;

} // namespace

CoinSpec::CoinSpec(double theta)
	: theta_(theta)
	, cos_(std::cos(theta))
	, sin_(std::sin(theta))
{
	if(!(theta > 0.0 && theta < std::numbers::pi / 2))
	{
		std::ostringstream msg;
		msg << "coin bias theta=" << theta << " is outside (0, pi/2)";
		throw InvalidArgument(msg.str());
	}
}

InitialSpec InitialSpec::localized(double gamma, double phi)
{
	return {InitKind::Localized, 0.0, gamma, phi};
}

InitialSpec InitialSpec::gaussian(double xi, double gamma, double phi)
{
	return {InitKind::Gaussian, xi, gamma, phi};
}

std::int64_t InitialSpec::support_halfwidth() const
{
	if(kind == InitKind::Localized)
	{
		return 0;
	}
	const double cutoff = std::ceil(6.0 * xi);
	if(!(cutoff <= static_cast<double>(kMaxHalfwidth)))
	{
		throw InvalidArgument("Gaussian width xi is too large to simulate");
	}
	return static_cast<std::int64_t>(cutoff);
}

void InitialSpec::validate() const
{
	if(!(gamma >= 0.0 && gamma <= std::numbers::pi))
	{
		throw InvalidArgument("gamma must lie in [0, pi]");
	}
	if(!std::isfinite(phi))
	{
		throw InvalidArgument("phi must be finite");
	}
	if(kind == InitKind::Gaussian && !(xi >= 1.0 && std::isfinite(xi)))
	{
		throw InvalidArgument("Gaussian width xi must be finite and >= 1");
	}
}

WalkState::WalkState(std::int64_t offset, std::vector<Complex> d, std::vector<Complex> e)
	: offset_(offset)
	, d_(std::move(d))
	, e_(std::move(e))
{
	if(d_.size() != e_.size() || d_.empty())
	{
		throw InvalidArgument("chirality arrays must be nonempty and of equal length");
	}
	const Complex zero{0.0, 0.0};
	std::size_t first = d_.size();
	std::size_t last = 0;
	for(std::size_t i = 0; i < d_.size(); ++i)
	{
		if(d_[i] != zero || e_[i] != zero)
		{
			first = std::min(first, i);
			last = i;
		}
	}
	if(first == d_.size())
	{
		first = 0;
	}
	lo_ = first;
	hi_ = last;
}

Complex WalkState::d_at(std::int64_t site) const
{
	const std::int64_t slot = site - offset_;
	if(slot < 0 || slot >= static_cast<std::int64_t>(d_.size()))
	{
		return {0.0, 0.0};
	}
	return d_[static_cast<std::size_t>(slot)];
}

Complex WalkState::e_at(std::int64_t site) const
{
	const std::int64_t slot = site - offset_;
	if(slot < 0 || slot >= static_cast<std::int64_t>(e_.size()))
	{
		return {0.0, 0.0};
	}
	return e_[static_cast<std::size_t>(slot)];
}

double WalkState::norm_squared() const
{
	double sum = 0.0;
	for(std::size_t i = lo_; i <= hi_; ++i)
	{
		sum += std::norm(d_[i]) + std::norm(e_[i]);
	}
	return sum;
}

double WalkState::position_probability(std::int64_t site) const
{
	return std::norm(d_at(site)) + std::norm(e_at(site));
}

void WalkState::advance(const CoinSpec& coin)
{
	const double c = coin.cos_theta();
	const double s = coin.sin_theta();
	const Complex zero{0.0, 0.0};
	const std::size_t last = d_.size() - 1;

	// Chirality - at slot 0 moves to slot -1; chirality + at the last slot
	// moves past the end.
	if(lo_ == 0 && s * d_[0] - c * e_[0] != zero)
	{
		throw WindowOverflow("amplitude would leave the window below site "
			+ std::to_string(offset_));
	}
	if(hi_ == last && c * d_[last] + s * e_[last] != zero)
	{
		throw WindowOverflow("amplitude would leave the window above site "
			+ std::to_string(offset_ + static_cast<std::int64_t>(last)));
	}

	// d'[i+1] = c d[i] + s e[i],  e'[i-1] = s d[i] - c e[i].
	// The up cursor trails one slot behind the read position and the down
	// cursor one slot ahead of it, so a single ascending pass suffices.
	Complex carry_up = zero;
	for(std::size_t i = lo_; i <= hi_; ++i)
	{
		const Complex up = c * d_[i] + s * e_[i];
		const Complex down = s * d_[i] - c * e_[i];
		if(i > 0)
		{
			e_[i - 1] = down;
		}
		d_[i] = carry_up;
		carry_up = up;
	}
	e_[hi_] = zero;
	if(hi_ < last)
	{
		d_[hi_ + 1] = carry_up;
		++hi_;
	}
	if(lo_ > 0)
	{
		--lo_;
	}
	++time_;
}

WalkState init_state(const InitialSpec& spec, std::int64_t window_halfwidth)
{
	spec.validate();
	if(window_halfwidth < 0 || window_halfwidth > kMaxHalfwidth)
	{
		throw InvalidArgument("window halfwidth must lie in [0, " + std::to_string(kMaxHalfwidth) + "]");
	}
	const std::int64_t cutoff = spec.support_halfwidth();
	if(cutoff > window_halfwidth)
	{
		std::ostringstream msg;
		msg << "initial support halfwidth " << cutoff << " exceeds window halfwidth "
			<< window_halfwidth;
		throw WindowTooSmall(msg.str());
	}

	const auto n_slots = static_cast<std::size_t>(2 * window_halfwidth + 1);
	const auto center = static_cast<std::size_t>(window_halfwidth);
	std::vector<Complex> d(n_slots);
	std::vector<Complex> e(n_slots);

	const Complex up_amp{std::cos(spec.gamma / 2.0), 0.0};
	const Complex down_amp = std::polar(std::sin(spec.gamma / 2.0), spec.phi);

	if(spec.kind == InitKind::Localized)
	{
		d[center] = up_amp;
		e[center] = down_amp;
	}
	else
	{
		const double width = 4.0 * spec.xi * spec.xi;
		std::vector<double> envelope(static_cast<std::size_t>(2 * cutoff + 1));
		double norm2 = 0.0;
		for(std::int64_t n = -cutoff; n <= cutoff; ++n)
		{
			const double g = std::exp(-static_cast<double>(n * n) / width);
			envelope[static_cast<std::size_t>(n + cutoff)] = g;
			norm2 += g * g;
		}
		const double scale = 1.0 / std::sqrt(norm2);
		for(std::int64_t n = -cutoff; n <= cutoff; ++n)
		{
			const double g = envelope[static_cast<std::size_t>(n + cutoff)] * scale;
			const auto slot = static_cast<std::size_t>(static_cast<std::int64_t>(center) + n);
			d[slot] = g * up_amp;
			e[slot] = g * down_amp;
		}
	}
	return WalkState(-window_halfwidth, std::move(d), std::move(e));
}

WalkState step(WalkState state, const CoinSpec& coin)
{
	state.advance(coin);
	return state;
}

QubitDensity coin_rdo(const WalkState& state)
{
	double up = 0.0;
	Complex coherence{0.0, 0.0};
	const auto d = state.d();
	const auto e = state.e();
	for(std::size_t i = 0; i < d.size(); ++i)
	{
		up += std::norm(d[i]);
		coherence += d[i] * std::conj(e[i]);
	}
	return QubitDensity::from_ab(up - 0.5, coherence, kSimulationTolerance);
}

std::int64_t auto_window_halfwidth(const InitialSpec& spec, std::int64_t t_max)
{
	const std::int64_t halfwidth = spec.support_halfwidth() + std::clamp<std::int64_t>(t_max, 0, kMaxHalfwidth) + 1;
	if(halfwidth > kMaxHalfwidth)
	{
		throw InvalidArgument("window halfwidth " + std::to_string(halfwidth) + " exceeds the limit of "
			+ std::to_string(kMaxHalfwidth) + " sites");
	}
	return halfwidth;
}

void evolve(const InitialSpec& spec, const CoinSpec& coin, std::int64_t t_max,
	const std::function<void(const WalkState&)>& observer)
{
	if(t_max < 0)
	{
		throw InvalidArgument("t_max must be >= 0");
	}
	WalkState state = init_state(spec, auto_window_halfwidth(spec, t_max));
	observer(state);
	for(std::int64_t t = 1; t <= t_max; ++t)
	{
		state.advance(coin);
		observer(state);
	}
}

QubitDensity EquilibriumSample::density() const
{
	return QubitDensity::from_ab(a_bar, b_bar, kSimulationTolerance);
}

EquilibriumSample evolve_and_average(const InitialSpec& spec, const CoinSpec& coin,
	std::int64_t t_burn, std::int64_t t_max, const AveragingOptions& options)
{
	if(!(t_burn >= 0 && t_burn < t_max))
	{
		throw InvalidArgument("averaging window requires 0 <= t_burn < t_max");
	}

	const auto n_avg = static_cast<std::size_t>(t_max - t_burn + 1);
	const std::size_t tail = std::max<std::size_t>(2, (n_avg + 9) / 10);

	double sum_a = 0.0;
	Complex sum_b{0.0, 0.0};
	std::size_t count = 0;
	// Running means over the last `tail` averaged steps.
	std::vector<std::pair<double, Complex>> running;
	running.reserve(tail);

	evolve(spec, coin, t_max, [&](const WalkState& state) {
		if(state.time() < t_burn)
		{
			return;
		}
		const QubitDensity rho = coin_rdo(state);
		sum_a += rho.a();
		sum_b += rho.b();
		++count;
		if(count + tail > n_avg)
		{
			const double k = static_cast<double>(count);
			running.emplace_back(sum_a / k, sum_b / k);
		}
	});

	EquilibriumSample out;
	out.a_bar = running.back().first;
	out.b_bar = running.back().second;
	for(const auto& [a, b] : running)
	{
		out.residual = std::max({out.residual, std::abs(a - out.a_bar), std::abs(b - out.b_bar)});
	}
	out.converged = out.residual < options.tolerance;
	return out;
}

} // namespace qwtherm
