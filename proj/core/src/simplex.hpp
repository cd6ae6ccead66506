#pragma once

// Dense two-phase tableau simplex with Bland's rule, generic over the
// scalar type. Used with exact rationals for small LPs and with double
// otherwise. Internal to the library.

#include <cstddef>
#include <type_traits>
#include <vector>

namespace soco::lp {

enum class Sense { le, ge, eq };
enum class Status { optimal, infeasible, unbounded };

template <class T>
struct Problem {
  std::vector<T> c;               ///< minimize c·x over x ≥ 0
  std::vector<std::vector<T>> a;  ///< one row per constraint
  std::vector<T> b;
  std::vector<Sense> sense;

  void add(std::vector<T> row, Sense s, T rhs) {
    a.push_back(std::move(row));
    sense.push_back(s);
    b.push_back(std::move(rhs));
  }
};

template <class T>
struct Solution {
  Status status = Status::infeasible;
  T objective{};
  std::vector<T> x;
};

template <class T>
T pivot_eps() {
  if constexpr (std::is_floating_point_v<T>) return T(1e-11);
  else return T(0);
}

template <class T>
class Tableau {
 public:
  explicit Tableau(const Problem<T>& p) : n_(p.c.size()), m_(p.b.size()) {
    // Columns: originals, then one slack/surplus per inequality, then one
    // artificial per ≥/= row. The last column holds the right-hand side.
    std::size_t slacks = 0, arts = 0;
    std::vector<bool> flip(m_);
    std::vector<Sense> sense(p.sense);
    for (std::size_t i = 0; i < m_; ++i) {
      flip[i] = p.b[i] < T(0);
      if (flip[i] && sense[i] != Sense::eq) sense[i] = sense[i] == Sense::le ? Sense::ge : Sense::le;
      if (sense[i] != Sense::eq) ++slacks;
      if (sense[i] != Sense::le) ++arts;
    }
    art_begin_ = n_ + slacks;
    cols_ = art_begin_ + arts;
    rows_.assign(m_ + 1, std::vector<T>(cols_ + 1, T(0)));
    basis_.assign(m_, 0);
    std::size_t s = n_, r = art_begin_;
    for (std::size_t i = 0; i < m_; ++i) {
      T sign = flip[i] ? T(-1) : T(1);
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = sign * p.a[i][j];
      rows_[i][cols_] = sign * p.b[i];
      if (sense[i] == Sense::le) {
        rows_[i][s] = T(1);
        basis_[i] = s++;
      } else {
        if (sense[i] == Sense::ge) rows_[i][s++] = T(-1);
        rows_[i][r] = T(1);
        basis_[i] = r++;
      }
    }
  }

  Solution<T> solve(const std::vector<T>& c) {
    Solution<T> out;
    // Phase 1: minimize the sum of artificials.
    if (cols_ > art_begin_) {
      std::vector<T> phase1(cols_, T(0));
      for (std::size_t j = art_begin_; j < cols_; ++j) phase1[j] = T(1);
      set_objective(phase1);
      if (!iterate(cols_)) return out;  // cannot be unbounded below 0
      if (-rows_[m_][cols_] > feas_eps()) return out;
      drive_out_artificials();
    }
    std::vector<T> phase2(cols_, T(0));
    for (std::size_t j = 0; j < n_; ++j) phase2[j] = c[j];
    set_objective(phase2);
    if (!iterate(art_begin_)) {
      out.status = Status::unbounded;
      return out;
    }
    out.status = Status::optimal;
    out.objective = -rows_[m_][cols_];
    out.x.assign(n_, T(0));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < n_) out.x[basis_[i]] = rows_[i][cols_];
    return out;
  }

 private:
  static T feas_eps() {
    if constexpr (std::is_floating_point_v<T>) return T(1e-9);
    else return T(0);
  }

  void set_objective(const std::vector<T>& c) {
    auto& z = rows_[m_];
    for (std::size_t j = 0; j <= cols_; ++j) z[j] = j < cols_ ? c[j] : T(0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      T cb = c[basis_[i]];
      if (cb == T(0)) continue;
      for (std::size_t j = 0; j <= cols_; ++j) z[j] -= cb * rows_[i][j];
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    T piv = rows_[row][col];
    for (auto& v : rows_[row]) v /= piv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == row) continue;
      T factor = rows_[i][col];
      if (factor == T(0)) continue;
      for (std::size_t j = 0; j <= cols_; ++j) rows_[i][j] -= factor * rows_[row][j];
    }
    basis_[row] = col;
  }

  // Bland's rule over columns [0, limit). Returns false when unbounded.
  bool iterate(std::size_t limit) {
    const T eps = pivot_eps<T>();
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (rows_[m_][j] < -eps) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = basis_.size();
      T best{};
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (!(rows_[i][enter] > eps)) continue;
        T ratio = rows_[i][cols_] / rows_[i][enter];
        if (leave == basis_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == basis_.size()) return false;
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    const T eps = pivot_eps<T>();
    for (std::size_t i = 0; i < basis_.size();) {
      if (basis_[i] < art_begin_) {
        ++i;
        continue;
      }
      std::size_t col = art_begin_;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (rows_[i][j] > eps || rows_[i][j] < -eps) {
          col = j;
          break;
        }
      }
      if (col < art_begin_) {
        pivot(i, col);
        ++i;
      } else {  // redundant row
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        --m_;
      }
    }
  }

  std::size_t n_, m_;
  std::size_t art_begin_ = 0, cols_ = 0;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> basis_;
};

template <class T>
Solution<T> solve(const Problem<T>& p) {
  Tableau<T> tab(p);
  return tab.solve(p.c);
}

}  // namespace soco::lp
