#include "itlab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "itlab/blocks.hpp"

namespace itlab {

namespace {

void check_mass_vector(const std::vector<double>& mass, const char* what) {
  if (mass.empty()) throw std::invalid_argument(std::string(what) + ": empty mass vector");
  double total = 0.0;
  for (double m : mass) {
    if (!(m >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative mass");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(what) + ": mass does not sum to 1");
}

// Kahan-compensated accumulator.
struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

double kl_flat(const std::vector<double>& p, const std::vector<double>& q) {
  Kahan acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0) || !(q[i] >= 0.0)) throw std::invalid_argument("kl: negative mass");
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInfinity;
    acc.add(p[i] * std::log(p[i] / q[i]));
  }
  return std::max(0.0, acc.sum);
}

double tv_flat(const std::vector<double>& p, const std::vector<double>& q) {
  Kahan acc;
  for (std::size_t i = 0; i < p.size(); ++i) acc.add(std::abs(p[i] - q[i]));
  return 0.5 * acc.sum;
}

}  // namespace

Simplex::Simplex(std::vector<double> mass) : mass_(std::move(mass)) {
  check_mass_vector(mass_, "Simplex");
}

Simplex Simplex::uniform(std::size_t k) {
  return Simplex(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Simplex Simplex::point_mass(std::size_t k, std::size_t at) {
  std::vector<double> m(k, 0.0);
  m.at(at) = 1.0;
  return Simplex(std::move(m));
}

bool Simplex::strictly_positive() const {
  return std::all_of(mass_.begin(), mass_.end(), [](double m) { return m > 0.0; });
}

Channel::Channel(std::size_t input_size, std::size_t output_size, std::vector<double> row_major)
    : in_(input_size), out_(output_size), rows_(std::move(row_major)) {
  if (in_ == 0 || out_ == 0 || rows_.size() != in_ * out_)
    throw std::invalid_argument("Channel: bad shape");
  for (std::size_t x = 0; x < in_; ++x) {
    std::vector<double> row(rows_.begin() + static_cast<long>(x * out_),
                            rows_.begin() + static_cast<long>((x + 1) * out_));
    check_mass_vector(row, "Channel row");
  }
}

Channel Channel::identity(std::size_t k) {
  std::vector<double> rows(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) rows[i * k + i] = 1.0;
  return Channel(k, k, std::move(rows));
}

Channel Channel::bsc(double crossover) {
  return Channel(2, 2, {1.0 - crossover, crossover, crossover, 1.0 - crossover});
}

Simplex Channel::row(std::size_t x) const {
  return Simplex(std::vector<double>(rows_.begin() + static_cast<long>(x * out_),
                                     rows_.begin() + static_cast<long>((x + 1) * out_)));
}

JointLaw::JointLaw(std::size_t nx, std::size_t ny, std::vector<double> mass)
    : nx_(nx), ny_(ny), mass_(std::move(mass)) {
  if (nx_ == 0 || ny_ == 0 || mass_.size() != nx_ * ny_)
    throw std::invalid_argument("JointLaw: bad shape");
  check_mass_vector(mass_, "JointLaw");
}

JointLaw JointLaw::from_source_and_channel(const Simplex& px, const Channel& fwd) {
  if (px.size() != fwd.input_size()) throw std::invalid_argument("joint: shape mismatch");
  std::vector<double> m(px.size() * fwd.output_size());
  for (std::size_t x = 0; x < px.size(); ++x)
    for (std::size_t y = 0; y < fwd.output_size(); ++y) m[x * fwd.output_size() + y] = px[x] * fwd(x, y);
  return JointLaw(px.size(), fwd.output_size(), std::move(m));
}

JointLaw JointLaw::independent(const Simplex& px, const Simplex& py) {
  std::vector<double> m(px.size() * py.size());
  for (std::size_t x = 0; x < px.size(); ++x)
    for (std::size_t y = 0; y < py.size(); ++y) m[x * py.size() + y] = px[x] * py[y];
  return JointLaw(px.size(), py.size(), std::move(m));
}

EmpiricalType::EmpiricalType(std::size_t nx, std::size_t ny, std::uint64_t n,
                             std::vector<std::uint64_t> counts)
    : nx_(nx), ny_(ny), n_(n), counts_(std::move(counts)) {
  if (n_ == 0 || counts_.size() != nx_ * ny_) throw std::invalid_argument("EmpiricalType: bad shape");
  const std::uint64_t total = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
  if (total != n_) throw std::invalid_argument("EmpiricalType: counts do not sum to n");
}

JointLaw EmpiricalType::to_joint() const {
  std::vector<double> m(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i)
    m[i] = static_cast<double>(counts_[i]) / static_cast<double>(n_);
  return JointLaw(nx_, ny_, std::move(m));
}

double kl_divergence(const Simplex& p, const Simplex& q) {
  if (p.size() != q.size()) throw std::invalid_argument("kl: shape mismatch");
  return kl_flat(p.mass(), q.mass());
}

double kl_divergence(const JointLaw& p, const JointLaw& q) {
  if (p.nx() != q.nx() || p.ny() != q.ny()) throw std::invalid_argument("kl: shape mismatch");
  return kl_flat(p.mass(), q.mass());
}

double variational_distance(const Simplex& p, const Simplex& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv: shape mismatch");
  return tv_flat(p.mass(), q.mass());
}

double variational_distance(const JointLaw& p, const JointLaw& q) {
  if (p.nx() != q.nx() || p.ny() != q.ny()) throw std::invalid_argument("tv: shape mismatch");
  return tv_flat(p.mass(), q.mass());
}

double entropy(const Simplex& p) {
  Kahan acc;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) acc.add(-p[i] * std::log(p[i]));
  return std::max(0.0, acc.sum);
}

double mutual_information(const JointLaw& j) {
  const JointLaw prod = JointLaw::independent(marginal_x(j), marginal_y(j));
  return kl_divergence(j, prod);
}

double nats_to_bits(double nats) { return nats / std::log(2.0); }

EmpiricalType empirical_type(const std::vector<std::uint8_t>& xseq,
                             const std::vector<std::uint8_t>& yseq, std::size_t nx,
                             std::size_t ny) {
  if (xseq.size() != yseq.size()) throw std::invalid_argument("empirical_type: length mismatch");
  if (xseq.empty()) throw std::invalid_argument("empirical_type: empty sequences");
  std::vector<std::uint64_t> counts(nx * ny, 0);
  for (std::size_t i = 0; i < xseq.size(); ++i) {
    if (xseq[i] >= nx || yseq[i] >= ny)
      throw std::invalid_argument("empirical_type: symbol out of alphabet");
    ++counts[xseq[i] * ny + yseq[i]];
  }
  return EmpiricalType(nx, ny, xseq.size(), std::move(counts));
}

Simplex product_extension(const Simplex& p, int n, std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("product_extension: n must be >= 1");
  const std::uint64_t count = checked_block_count(p.size(), n, budget);
  // Log-space per letter, exponentiated per block.
  std::vector<double> logp(p.size());
  for (std::size_t s = 0; s < p.size(); ++s)
    logp[s] = p[s] > 0.0 ? std::log(p[s]) : -kInfinity;
  std::vector<double> mass(count);
  std::vector<std::uint8_t> block;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    block_from_index(idx, n, p.size(), block);
    double acc = 0.0;
    for (std::uint8_t s : block) acc += logp[s];
    mass[idx] = std::exp(acc);
  }
  return Simplex(std::move(mass));
}

Simplex marginal_x(const JointLaw& j) {
  std::vector<double> m(j.nx(), 0.0);
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y) m[x] += j(x, y);
  return Simplex(std::move(m));
}

Simplex marginal_y(const JointLaw& j) {
  std::vector<double> m(j.ny(), 0.0);
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y) m[y] += j(x, y);
  return Simplex(std::move(m));
}

ConditionedChannel condition_y_given_x(const JointLaw& j) {
  const Simplex px = marginal_x(j);
  std::vector<double> rows(j.nx() * j.ny());
  std::vector<bool> defined(j.nx(), true);
  for (std::size_t x = 0; x < j.nx(); ++x) {
    if (px[x] <= 0.0) {
      defined[x] = false;
      for (std::size_t y = 0; y < j.ny(); ++y) rows[x * j.ny() + y] = 1.0 / static_cast<double>(j.ny());
      continue;
    }
    for (std::size_t y = 0; y < j.ny(); ++y) rows[x * j.ny() + y] = j(x, y) / px[x];
  }
  return {Channel(j.nx(), j.ny(), std::move(rows)), std::move(defined)};
}

ConditionedChannel condition_x_given_y(const JointLaw& j) {
  const Simplex py = marginal_y(j);
  std::vector<double> rows(j.ny() * j.nx());
  std::vector<bool> defined(j.ny(), true);
  for (std::size_t y = 0; y < j.ny(); ++y) {
    if (py[y] <= 0.0) {
      defined[y] = false;
      for (std::size_t x = 0; x < j.nx(); ++x) rows[y * j.nx() + x] = 1.0 / static_cast<double>(j.nx());
      continue;
    }
    for (std::size_t x = 0; x < j.nx(); ++x) rows[y * j.nx() + x] = j(x, y) / py[y];
  }
  return {Channel(j.ny(), j.nx(), std::move(rows)), std::move(defined)};
}

}  // namespace itlab
