#ifndef LQID_ERROR_HPP
#define LQID_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lqid {

enum class errc {
  invalid_argument,
  dimension_mismatch,
  not_normalized,
  parse_error,
  io_error,
  budget_exceeded,
  unwrap_ambiguity,
  zero_found,
  inconclusive,
  numerical_fault,
  not_quasi,
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

/// Thrown when the characteristic function vanishes at a torus grid point;
/// carries the witness location and the grid it was found on.
class ZeroFoundError : public Error {
public:
  ZeroFoundError(std::vector<double> z, double modulus, int grid_size)
      : Error(errc::zero_found, "characteristic function vanishes on the torus"),
        z_(std::move(z)), modulus_(modulus), grid_size_(grid_size) {}
  const std::vector<double>& z() const noexcept { return z_; }
  double modulus() const noexcept { return modulus_; }
  int grid_size() const noexcept { return grid_size_; }

private:
  std::vector<double> z_;
  double modulus_;
  int grid_size_;
};

}  // namespace lqid

#endif
