#pragma once

// Discrete-time quantum walk on the line with a two-level coin.
//
// One step applies the coin U_theta = [[cos t, sin t], [sin t, -cos t]] on
// every site, then the conditional shift that moves chirality + one site up
// and chirality - one site down.

#include "qwtherm/qubit.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qwtherm {

/// Coin bias theta in the open interval (0, pi/2).
class CoinSpec {
public:
	explicit CoinSpec(double theta);

	double theta() const { return theta_; }
	double cos_theta() const { return cos_; }
	double sin_theta() const { return sin_; }

private:
	double theta_;
	double cos_;
	double sin_;
};

enum class InitKind { Localized, Gaussian };

/// Product initial state: walker amplitudes times the coin state
/// cos(gamma/2)|+> + e^{i phi} sin(gamma/2)|->.
struct InitialSpec {
	InitKind kind = InitKind::Localized;
	double xi = 0.0; // Gaussian width; ignored for Localized
	double gamma = 0.0;
	double phi = 0.0;

	static InitialSpec localized(double gamma, double phi);
	static InitialSpec gaussian(double xi, double gamma, double phi);

	/// ceil(6 xi) for Gaussian, 0 for Localized. Throws InvalidArgument if
	/// that exceeds the largest supported window.
	std::int64_t support_halfwidth() const;

	void validate() const;
};

/// Amplitudes d_n (chirality +) and e_n (chirality -) on the sites
/// offset, offset + 1, ..., offset + size() - 1.
class WalkState {
public:
	WalkState(std::int64_t offset, std::vector<Complex> d, std::vector<Complex> e);

	std::int64_t offset() const { return offset_; }
	std::int64_t time() const { return time_; }
	std::size_t size() const { return d_.size(); }

	std::span<const Complex> d() const { return d_; }
	std::span<const Complex> e() const { return e_; }

	/// Amplitudes at lattice site n; zero outside the window.
	Complex d_at(std::int64_t site) const;
	Complex e_at(std::int64_t site) const;

	double norm_squared() const;

	/// Probability of finding the walker at site n.
	double position_probability(std::int64_t site) const;

	/// Applies one walk step in place. Throws WindowOverflow (leaving the
	/// state untouched) if nonzero amplitude would leave the window.
	void advance(const CoinSpec& coin);

private:
	std::int64_t offset_;
	std::int64_t time_ = 0;
	std::vector<Complex> d_;
	std::vector<Complex> e_;
	// Inclusive slot range outside which every amplitude is exactly zero.
	std::size_t lo_ = 0;
	std::size_t hi_ = 0;
};

/// Window spans sites [-halfwidth, halfwidth]. Gaussian amplitudes are
/// truncated at |n| <= ceil(6 xi) and renormalized.
WalkState init_state(const InitialSpec& spec, std::int64_t window_halfwidth);

WalkState step(WalkState state, const CoinSpec& coin);

/// a = sum |d_n|^2 - 1/2, b = sum d_n e_n^*.
QubitDensity coin_rdo(const WalkState& state);

/// Halfwidth that can hold t_max steps without overflow. Throws
/// InvalidArgument past 2^26 sites each side.
std::int64_t auto_window_halfwidth(const InitialSpec& spec, std::int64_t t_max);

/// Calls `observer(state)` for t = 0, 1, ..., t_max on an auto-sized window.
void evolve(const InitialSpec& spec, const CoinSpec& coin, std::int64_t t_max,
	const std::function<void(const WalkState&)>& observer);

struct AveragingOptions {
	/// Convergence threshold on the running-mean residual.
	double tolerance = 5e-3;
};

struct EquilibriumSample {
	double a_bar = 0.0;
	Complex b_bar{0.0, 0.0};
	bool converged = false;
	/// Max deviation of the running mean over the last 10% of averaged
	/// steps (at least two) from its final value.
	double residual = 0.0;

	QubitDensity density() const;
};

/// Arithmetic mean of the coin RDO over integer steps t in [t_burn, t_max].
EquilibriumSample evolve_and_average(const InitialSpec& spec, const CoinSpec& coin,
	std::int64_t t_burn, std::int64_t t_max, const AveragingOptions& options = {});

} // namespace qwtherm
