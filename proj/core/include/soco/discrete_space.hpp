#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace soco {

/// Hitting cost on an indexed space, stored as one value per point.
/// Entries may be +inf (forbidden points).
class TableCost {
 public:
  TableCost() = default;
  explicit TableCost(std::vector<double> values);

  double operator()(std::size_t x) const { return values_[x]; }
  /// First index attaining the minimum value.
  std::size_t minimizer() const { return argmin_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
  std::size_t argmin_ = 0;
};

/// Finite metric space with points addressed by index. Two storage forms:
/// an explicit n×n distance matrix, or the binary cube {0,1}^bits whose
/// points are bit masks and whose metric is scale·‖u − u′‖₁.
class DiscreteSpace {
 public:
  using point_type = std::size_t;
  using cost_type = TableCost;

  enum class Form { matrix, cube };

  /// Row-major n×n matrix; validated for symmetry, zero diagonal and
  /// positivity off the diagonal (the triangle inequality is checked by
  /// check_metric_axioms, not here).
  static DiscreteSpace from_matrix(std::size_t n, std::vector<double> distances);
  /// Points on the real line with the absolute-value metric. Coordinates
  /// must be pairwise distinct.
  static DiscreteSpace on_line(std::vector<double> coordinates);
  static DiscreteSpace binary_cube(int bits, double scale);

  Form form() const { return form_; }
  std::size_t size() const { return size_; }
  bool contains(std::size_t x) const { return x < size_; }
  double distance(std::size_t a, std::size_t b) const;

  /// First index p minimizing f(p) + d(p, prev) + d(p, advice).
  /// Throws InfeasibleRound when every point has infinite cost.
  std::size_t ftp_argmin(const TableCost& f, std::size_t prev, std::size_t advice) const;

  /// Same space with every distance multiplied by lambda > 0.
  DiscreteSpace scaled(double lambda) const;

  int bits() const { return bits_; }
  double scale() const { return scale_; }
  /// Real coordinates when built with on_line, empty otherwise.
  const std::vector<double>& coordinates() const { return coords_; }
  const std::vector<double>& matrix() const { return dist_; }

 private:
  Form form_ = Form::matrix;
  std::size_t size_ = 0;
  std::vector<double> dist_;
  std::vector<double> coords_;
  int bits_ = 0;
  double scale_ = 1.0;
};

}  // namespace soco
