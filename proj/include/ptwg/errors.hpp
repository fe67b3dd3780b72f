#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptwg {

// Waveguide parameters fall on a degenerate configuration where the
// transverse mode family is incomplete.
struct RegimeError : std::runtime_error {
  explicit RegimeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Coordinate or index outside the region where a quantity is defined.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A spectral query that cannot be answered (e.g. resolvent evaluated at a
// point of the essential spectrum).
struct SpectrumError : std::runtime_error {
  explicit SpectrumError(const std::string& msg) : std::runtime_error(msg) {}
};

// Derivative of a profile requested where the profile is not differentiable.
struct NonSmoothProfile : std::runtime_error {
  explicit NonSmoothProfile(const std::string& msg) : std::runtime_error(msg) {}
};

// A series coefficient involves a quantity too close to a pole for the
// requested accuracy.
struct NumericalMargin : std::runtime_error {
  explicit NumericalMargin(const std::string& msg) : std::runtime_error(msg) {}
};

// Input violates a documented precondition of the routine.
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Discretization grid cannot represent the requested problem.
struct GridError : std::runtime_error {
  explicit GridError(const std::string& msg) : std::runtime_error(msg) {}
};

// Shifted matrix is numerically singular at the requested shift.
struct SingularShift : std::runtime_error {
  explicit SingularShift(const std::string& msg) : std::runtime_error(msg) {}
};

// Least-squares fit could not be carried out on the given window.
struct FitError : std::runtime_error {
  explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Configuration file is malformed or inconsistent.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative eigensolver exhausted its budget; carries the best iterate.
struct MaxIterations : std::runtime_error {
  std::complex<double> best_lambda;
  std::vector<std::complex<double>> best_vector;
  double best_residual;
  MaxIterations(const std::string& msg, std::complex<double> lam,
                std::vector<std::complex<double>> vec, double res)
      : std::runtime_error(msg),
        best_lambda(lam),
        best_vector(std::move(vec)),
        best_residual(res) {}
};

}  // namespace ptwg
