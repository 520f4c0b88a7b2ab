#pragma once

// Exact 2x2 density-matrix algebra for a single qubit.
//
// A density operator is stored in the (a, b) parametrization
//
//     rho = [[1/2 + a, b], [b*, 1/2 - a]]
//
// so trace and Hermiticity hold structurally; only positivity
// (a^2 + |b|^2 <= 1/4) has to be checked.

#include <array>
#include <complex>
#include <optional>

namespace qwtherm {

using Complex = std::complex<double>;
using Vec2 = std::array<Complex, 2>;
using Mat2 = std::array<std::array<Complex, 2>, 2>;

/// Absolute tolerance on a^2 + |b|^2 - 1/4.
inline constexpr double kPositivityTolerance = 1e-12;

/// Bloch radii (and lambda-) at or below this are treated as exactly zero.
inline constexpr double kDegeneracyTolerance = 1e-12;

struct BlochVector {
	double x = 0.0;
	double y = 0.0;
	double z = 0.0;

	double norm() const;
};

class QubitDensity {
public:
	/// Throws PositivityViolation if a^2 + |b|^2 > 1/4 + tolerance.
	static QubitDensity from_ab(double a, Complex b, double tolerance = kPositivityTolerance);

	/// The maximally mixed state.
	QubitDensity() = default;

	double a() const { return a_; }
	Complex b() const { return b_; }

	/// sqrt(a^2 + |b|^2), clamped to [0, 1/2].
	double radius() const;

	Mat2 matrix() const;

	friend bool operator==(const QubitDensity&, const QubitDensity&) = default;

private:
	QubitDensity(double a, Complex b)
		: a_(a)
		, b_(b)
	{ }

	double a_ = 0.0;
	Complex b_{0.0, 0.0};
};

struct SpectralDecomp {
	double lambda_plus = 0.5;
	double lambda_minus = 0.5;
	Vec2 psi_plus{Complex{1.0}, Complex{0.0}};
	Vec2 psi_minus{Complex{0.0}, Complex{1.0}};
};

/// Traceless qubit Hamiltonian H = -epsilon * (n . sigma) with |n| = 1.
///
/// The ground state (energy -epsilon) points along the field direction n.
/// In kappa form, n is parallel to v = (Re k, -Im k, 1) and
/// H = -epsilon / sqrt(1 + |k|^2) * [[1, k], [k*, -1]].
class EntHamiltonian {
public:
	static EntHamiltonian from_kappa(double epsilon, Complex kappa);

	/// `direction` need not be normalized but must be nonzero.
	static EntHamiltonian from_field(double epsilon, const BlochVector& direction);

	double epsilon() const { return epsilon_; }
	const BlochVector& field() const { return field_; }

	/// (n_x - i n_y) / n_z when the field has a positive z component.
	std::optional<Complex> kappa() const;

	Mat2 matrix() const;

private:
	EntHamiltonian(double epsilon, const BlochVector& field)
		: epsilon_(epsilon)
		, field_(field)
	{ }

	double epsilon_;
	BlochVector field_;
};

QubitDensity density_from_ab(double a, Complex b);

/// B = (2 Re b, -2 Im b, 2a).
BlochVector bloch_from_density(const QubitDensity& rho);
QubitDensity density_from_bloch(const BlochVector& bloch);

/// Builds (a, b) from the entries of a Hermitian unit-trace matrix. Throws
/// InvalidArgument if either property fails by more than `tolerance`.
QubitDensity density_from_matrix(const Mat2& m, double tolerance = kPositivityTolerance);

/// lambda+- = 1/2 +- sqrt(a^2 + |b|^2). For b != 0 the eigenvectors are
/// (e^{i arg b} u, |b|) / sqrt(u^2 + |b|^2) with u = a +- r. For b == 0 they are
/// the basis vectors, ordered so psi_plus carries lambda_plus.
SpectralDecomp eigendecompose(const QubitDensity& rho);

/// Kappa-form Hamiltonian with kappa = b / a. For a == 0 the field lies in the
/// equatorial plane along the Bloch vector. Throws DegenerateState for the
/// maximally mixed state.
EntHamiltonian extract_ent_hamiltonian(const QubitDensity& rho, double epsilon = 1.0);

/// exp(-beta H) / tr exp(-beta H). beta may be zero, negative or infinite.
QubitDensity gibbs_state(const EntHamiltonian& h, double beta);

/// Entanglement temperature in units of epsilon:
/// T = sgn(a) * 2 epsilon / log(lambda+ / lambda-).
/// +inf for the maximally mixed state, 0 for pure states; negative when the
/// Bloch vector lies in the southern hemisphere (a < 0).
double ent_temperature(const QubitDensity& rho, double epsilon = 1.0);

/// Natural-log entropy, 0 log 0 = 0.
double von_neumann_entropy(const QubitDensity& rho);

/// sum_j <psi_j|rho0|psi_j> |psi_j><psi_j|. Throws NonOrthogonal unless
/// {psi_plus, psi_minus} is orthonormal within 1e-10.
QubitDensity kraus_projector_asymptotic(const Vec2& psi_plus, const Vec2& psi_minus,
	const QubitDensity& rho0);

} // namespace qwtherm
