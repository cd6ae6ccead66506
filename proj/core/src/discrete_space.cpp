#include "soco/discrete_space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "soco/cost.hpp"
#include "soco/error.hpp"

namespace soco {

TableCost::TableCost(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ParameterError("TableCost needs at least one value");
  for (double v : values_) {
    if (std::isnan(v) || v < 0) throw ParameterError("hitting costs must be non-negative");
  }
  argmin_ = static_cast<std::size_t>(std::min_element(values_.begin(), values_.end()) - values_.begin());
}

DiscreteSpace DiscreteSpace::from_matrix(std::size_t n, std::vector<double> distances) {
  if (n == 0) throw ParameterError("empty decision space");
  if (distances.size() != n * n) throw ParameterError("distance matrix must be n*n");
  for (std::size_t i = 0; i < n; ++i) {
    if (distances[i * n + i] != 0.0) throw ParameterError("d(x,x) must be 0");
    for (std::size_t j = i + 1; j < n; ++j) {
      double a = distances[i * n + j];
      double b = distances[j * n + i];
      if (a != b) throw ParameterError("distance matrix is not symmetric");
      if (!(a > 0) || !std::isfinite(a)) {
        throw ParameterError("distinct points need a finite positive distance");
      }
    }
  }
  DiscreteSpace s;
  s.form_ = Form::matrix;
  s.size_ = n;
  s.dist_ = std::move(distances);
  return s;
}

DiscreteSpace DiscreteSpace::on_line(std::vector<double> coordinates) {
  const std::size_t n = coordinates.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::fabs(coordinates[i] - coordinates[j]);
  DiscreteSpace s = from_matrix(n, std::move(d));
  s.coords_ = std::move(coordinates);
  return s;
}

DiscreteSpace DiscreteSpace::binary_cube(int bits, double scale) {
  if (bits < 1 || bits > 20) throw ParameterError("binary cube needs 1..20 bits");
  if (!(scale > 0) || !std::isfinite(scale)) throw ParameterError("cube metric scale must be positive");
  DiscreteSpace s;
  s.form_ = Form::cube;
  s.size_ = std::size_t{1} << bits;
  s.bits_ = bits;
  s.scale_ = scale;
  return s;
}

double DiscreteSpace::distance(std::size_t a, std::size_t b) const {
  if (form_ == Form::cube) {
    return scale_ * static_cast<double>(std::popcount(static_cast<std::uint64_t>(a ^ b)));
  }
  return dist_[a * size_ + b];
}

std::size_t DiscreteSpace::ftp_argmin(const TableCost& f, std::size_t prev, std::size_t advice) const {
  if (f.size() != size_) throw ParameterError("cost table does not match the space");
  std::size_t best = size_;
  double best_val = kInfinity;
  for (std::size_t p = 0; p < size_; ++p) {
    double fp = f(p);
    if (is_infinite(fp)) continue;
    double val = fp + distance(p, prev) + distance(p, advice);
    if (best == size_ || val < best_val) {
      best = p;
      best_val = val;
    }
  }
  if (best == size_) throw InfeasibleRound("no finite-cost point for the filtering step");
  return best;
}

DiscreteSpace DiscreteSpace::scaled(double lambda) const {
  if (!(lambda > 0)) throw ParameterError("metric scale factor must be positive");
  DiscreteSpace s = *this;
  if (form_ == Form::cube) {
    s.scale_ *= lambda;
  } else {
    for (double& d : s.dist_) d *= lambda;
    for (double& c : s.coords_) c *= lambda;
  }
  return s;
}

}  // namespace soco
