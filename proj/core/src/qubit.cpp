#include "qwtherm/qubit.hpp"

#include "qwtherm/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace qwtherm {

namespace {

double sign_of(double a)
{
	return a < 0.0 ? -1.0 : 1.0;
}

void require_positive_scale(double epsilon)
{
	if(!(epsilon > 0.0) || !std::isfinite(epsilon))
	{
		throw InvalidArgument("energy scale epsilon must be finite and > 0");
	}
}

} // namespace

double BlochVector::norm() const
{
	return std::sqrt(x * x + y * y + z * z);
}

QubitDensity QubitDensity::from_ab(double a, Complex b, double tolerance)
{
	if(!std::isfinite(a) || !std::isfinite(b.real()) || !std::isfinite(b.imag()))
	{
		throw InvalidArgument("density parameters must be finite");
	}
	const double excess = a * a + std::norm(b) - 0.25;
	if(excess > tolerance)
	{
		std::ostringstream msg;
		msg << "a^2 + |b|^2 exceeds 1/4 by " << excess << " (a=" << a << ", b=" << b << ")";
		throw PositivityViolation(msg.str());
	}
	return QubitDensity(a, b);
}

double QubitDensity::radius() const
{
	return std::min(0.5, std::hypot(a_, std::abs(b_)));
}

Mat2 QubitDensity::matrix() const
{
	return {{{Complex{0.5 + a_}, b_}, {std::conj(b_), Complex{0.5 - a_}}}};
}

EntHamiltonian EntHamiltonian::from_kappa(double epsilon, Complex kappa)
{
	require_positive_scale(epsilon);
	const double scale = std::sqrt(1.0 + std::norm(kappa));
	return EntHamiltonian(epsilon, {kappa.real() / scale, -kappa.imag() / scale, 1.0 / scale});
}

EntHamiltonian EntHamiltonian::from_field(double epsilon, const BlochVector& direction)
{
	require_positive_scale(epsilon);
	const double n = direction.norm();
	if(!(n > 0.0) || !std::isfinite(n))
	{
		throw InvalidArgument("field direction must be a finite nonzero vector");
	}
	return EntHamiltonian(epsilon, {direction.x / n, direction.y / n, direction.z / n});
}

std::optional<Complex> EntHamiltonian::kappa() const
{
	if(field_.z > 0.0)
	{
		return Complex{field_.x, -field_.y} / field_.z;
	}
	return std::nullopt;
}

Mat2 EntHamiltonian::matrix() const
{
	const double e = epsilon_;
	const Complex off{field_.x, -field_.y};
	return {{{Complex{-e * field_.z}, -e * off}, {-e * std::conj(off), Complex{e * field_.z}}}};
}

QubitDensity density_from_ab(double a, Complex b)
{
	return QubitDensity::from_ab(a, b);
}

BlochVector bloch_from_density(const QubitDensity& rho)
{
	return {2.0 * rho.b().real(), -2.0 * rho.b().imag(), 2.0 * rho.a()};
}

QubitDensity density_from_bloch(const BlochVector& bloch)
{
	return QubitDensity::from_ab(0.5 * bloch.z, Complex{0.5 * bloch.x, -0.5 * bloch.y});
}

QubitDensity density_from_matrix(const Mat2& m, double tolerance)
{
	const bool hermitian = std::abs(m[0][1] - std::conj(m[1][0])) <= tolerance
		&& std::abs(m[0][0].imag()) <= tolerance && std::abs(m[1][1].imag()) <= tolerance;
	if(!hermitian)
	{
		throw InvalidArgument("density matrix is not Hermitian");
	}
	if(std::abs(m[0][0].real() + m[1][1].real() - 1.0) > tolerance)
	{
		throw InvalidArgument("density matrix trace is not 1");
	}
	return QubitDensity::from_ab(0.5 * (m[0][0].real() - m[1][1].real()), m[0][1], tolerance);
}

SpectralDecomp eigendecompose(const QubitDensity& rho)
{
	const double a = rho.a();
	const Complex b = rho.b();
	const double r = rho.radius();

	SpectralDecomp out;
	out.lambda_plus = 0.5 + r;
	out.lambda_minus = 0.5 - r;

	if(b == Complex{0.0, 0.0})
	{
		if(a < 0.0)
		{
			std::swap(out.psi_plus, out.psi_minus);
		}
		return out;
	}

	const double mod_b = std::abs(b);
	const Complex phase = b / mod_b;
	// a +- r, evaluated without cancellation.
	double u_plus;
	double u_minus;
	if(a >= 0.0)
	{
		u_plus = a + r;
		u_minus = -(mod_b * mod_b) / (a + r);
	}
	else
	{
		u_minus = a - r;
		u_plus = (mod_b * mod_b) / (r - a);
	}

	auto eigvec = [&](double u) -> Vec2 {
		const double n = std::hypot(u, mod_b);
		return {phase * (u / n), Complex{mod_b / n}};
	};
	out.psi_plus = eigvec(u_plus);
	out.psi_minus = eigvec(u_minus);
	return out;
}

EntHamiltonian extract_ent_hamiltonian(const QubitDensity& rho, double epsilon)
{
	if(rho.radius() <= kDegeneracyTolerance)
	{
		throw DegenerateState("entanglement Hamiltonian is undefined for the maximally mixed state");
	}
	// sgn(a) * B is parallel to v = (Re k, -Im k, 1) with k = b / a.
	const BlochVector bloch = bloch_from_density(rho);
	const double s = sign_of(rho.a());
	return EntHamiltonian::from_field(epsilon, {s * bloch.x, s * bloch.y, s * bloch.z});
}

QubitDensity gibbs_state(const EntHamiltonian& h, double beta)
{
	const double polarization = std::tanh(beta * h.epsilon());
	const BlochVector& n = h.field();
	return density_from_bloch({polarization * n.x, polarization * n.y, polarization * n.z});
}

double ent_temperature(const QubitDensity& rho, double epsilon)
{
	const double r = rho.radius();
	if(r <= kDegeneracyTolerance)
	{
		return std::numeric_limits<double>::infinity();
	}
	const double lambda_minus = 0.5 - r;
	if(lambda_minus <= kDegeneracyTolerance)
	{
		return 0.0;
	}
	// log(lambda+ / lambda-) = log1p(2r / lambda-)
	const double log_ratio = std::log1p(2.0 * r / lambda_minus);
	return sign_of(rho.a()) * 2.0 * epsilon / log_ratio;
}

double von_neumann_entropy(const QubitDensity& rho)
{
	const SpectralDecomp spec = eigendecompose(rho);
	double s = 0.0;
	for(double lambda : {spec.lambda_plus, spec.lambda_minus})
	{
		if(lambda > 0.0)
		{
			s -= lambda * std::log(lambda);
		}
	}
	return s;
}

QubitDensity kraus_projector_asymptotic(const Vec2& psi_plus, const Vec2& psi_minus,
	const QubitDensity& rho0)
{
	constexpr double tol = 1e-10;
	auto inner = [](const Vec2& u, const Vec2& v) {
		return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
	};
	if(std::abs(inner(psi_plus, psi_plus).real() - 1.0) > tol
		|| std::abs(inner(psi_minus, psi_minus).real() - 1.0) > tol
		|| std::abs(inner(psi_plus, psi_minus)) > tol)
	{
		throw NonOrthogonal("projector vectors are not orthonormal");
	}

	const Mat2 m0 = rho0.matrix();
	Mat2 out{};
	for(const Vec2* psi : {&psi_plus, &psi_minus})
	{
		const Vec2& v = *psi;
		// <psi|rho0|psi>
		Complex pop{0.0};
		for(int i = 0; i < 2; ++i)
		{
			for(int j = 0; j < 2; ++j)
			{
				pop += std::conj(v[i]) * m0[i][j] * v[j];
			}
		}
		for(int i = 0; i < 2; ++i)
		{
			for(int j = 0; j < 2; ++j)
			{
				out[i][j] += pop.real() * v[i] * std::conj(v[j]);
			}
		}
	}
	return density_from_matrix(out, tol);
}

} // namespace qwtherm
