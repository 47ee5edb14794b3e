#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "itlab/errors.hpp"

namespace itlab {

inline constexpr double kMassTol = 1e-12;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Probability vector over a finite alphabet. Immutable after construction.
class Simplex {
 public:
  explicit Simplex(std::vector<double> mass);
  static Simplex uniform(std::size_t k);
  static Simplex point_mass(std::size_t k, std::size_t at);

  std::size_t size() const { return mass_.size(); }
  double operator[](std::size_t i) const { return mass_[i]; }
  const std::vector<double>& mass() const { return mass_; }
  bool strictly_positive() const;

 private:
  std::vector<double> mass_;
};

// Row-stochastic conditional law: one Simplex per input symbol.
class Channel {
 public:
  Channel(std::size_t input_size, std::size_t output_size, std::vector<double> row_major);
  static Channel identity(std::size_t k);
  static Channel bsc(double crossover);

  std::size_t input_size() const { return in_; }
  std::size_t output_size() const { return out_; }
  double operator()(std::size_t x, std::size_t y) const { return rows_[x * out_ + y]; }
  Simplex row(std::size_t x) const;
  const std::vector<double>& row_major() const { return rows_; }

 private:
  std::size_t in_, out_;
  std::vector<double> rows_;
};

// Explicit joint distribution over a product alphabet, row-major.
class JointLaw {
 public:
  JointLaw(std::size_t nx, std::size_t ny, std::vector<double> mass);
  static JointLaw from_source_and_channel(const Simplex& px, const Channel& fwd);
  static JointLaw independent(const Simplex& px, const Simplex& py);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double operator()(std::size_t x, std::size_t y) const { return mass_[x * ny_ + y]; }
  const std::vector<double>& mass() const { return mass_; }

 private:
  std::size_t nx_, ny_;
  std::vector<double> mass_;
};

// Joint histogram of a sequence pair with exact k/n entries.
class EmpiricalType {
 public:
  EmpiricalType(std::size_t nx, std::size_t ny, std::uint64_t n,
                std::vector<std::uint64_t> counts);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::uint64_t n() const { return n_; }
  std::uint64_t count(std::size_t x, std::size_t y) const { return counts_[x * ny_ + y]; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  JointLaw to_joint() const;

 private:
  std::size_t nx_, ny_;
  std::uint64_t n_;
  std::vector<std::uint64_t> counts_;
};

// --- Functionals. All divergences in nats. ---

// Sum p log(p/q), 0 log 0 = 0; +inf sentinel on support violation.
double kl_divergence(const Simplex& p, const Simplex& q);
double kl_divergence(const JointLaw& p, const JointLaw& q);

// Half-L1; equals the sup-over-events definition.
double variational_distance(const Simplex& p, const Simplex& q);
double variational_distance(const JointLaw& p, const JointLaw& q);

double entropy(const Simplex& p);

// D(j || product of marginals).
double mutual_information(const JointLaw& j);

double nats_to_bits(double nats);

EmpiricalType empirical_type(const std::vector<std::uint8_t>& xseq,
                             const std::vector<std::uint8_t>& yseq, std::size_t nx,
                             std::size_t ny);

// n-fold product law over the block alphabet, lexicographic block order.
Simplex product_extension(const Simplex& p, int n,
                          std::uint64_t budget = std::uint64_t{1} << 24);

Simplex marginal_x(const JointLaw& j);
Simplex marginal_y(const JointLaw& j);

// Conditional rows of Y given X. Rows with zero marginal get defined=false
// and a flagged (uniform placeholder) row rather than an invented law.
struct ConditionedChannel {
  Channel rows;
  std::vector<bool> defined;
};
ConditionedChannel condition_y_given_x(const JointLaw& j);
ConditionedChannel condition_x_given_y(const JointLaw& j);

}  // namespace itlab
