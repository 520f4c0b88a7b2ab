#pragma once

#include <stdexcept>
#include <string>

namespace qwtherm {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
	using Error::Error;
};

// a^2 + |b|^2 exceeds 1/4 beyond tolerance.
class PositivityViolation : public Error {
public:
	using Error::Error;
};

// Maximally mixed state: the entanglement Hamiltonian is undefined.
class DegenerateState : public Error {
public:
	using Error::Error;
};

class NonOrthogonal : public Error {
public:
	using Error::Error;
};

class WindowTooSmall : public Error {
public:
	using Error::Error;
};

class WindowOverflow : public Error {
public:
	using Error::Error;
};

class InsufficientEnsemble : public Error {
public:
	using Error::Error;
};

class ConfigError : public Error {
public:
	using Error::Error;
};

class IoError : public Error {
public:
	using Error::Error;
};

// An engine failure at one sweep grid point; what() names the point.
class GridPointError : public Error {
public:
	using Error::Error;
};

} // namespace qwtherm
