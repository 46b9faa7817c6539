#pragma once

// Dense two-phase primal simplex over equality-standard form:
//
//     min / max  c.x   subject to   A x = b,  x >= 0.
//
// Bland's smallest-index rule for both entering and leaving choices, which
// terminates without cycling; exact over rationals, 1e-9 pivot tolerance over
// doubles. Inequalities are expected to arrive with caller-added slacks;
// slack columns that form an identity are picked up as the starting basis so
// phase 1 only has to cover the genuine equality rows with artificials.

#include <stdexcept>
#include <vector>

#include "ivb/scalar.hpp"

namespace ivb {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <typename T>
struct LinearProgram {
  int num_vars = 0;
  std::vector<std::vector<T>> a;  // m rows of length num_vars
  std::vector<T> b;               // length m
  std::vector<T> c;               // length num_vars
  bool maximize = false;
};

template <typename T>
struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  T value{};
  std::vector<T> x;  // attaining vertex when optimal
};

template <typename T>
class SimplexTableau {
 public:
  explicit SimplexTableau(const LinearProgram<T>& lp) : n_struct_(lp.num_vars) {
    const int m = static_cast<int>(lp.a.size());
    if (static_cast<int>(lp.b.size()) != m ||
        static_cast<int>(lp.c.size()) != lp.num_vars)
      throw std::invalid_argument("dimension mismatch");
    for (const auto& row : lp.a)
      if (static_cast<int>(row.size()) != lp.num_vars)
        throw std::invalid_argument("dimension mismatch");

    tab_.resize(m);
    basis_.assign(m, -1);
    for (int i = 0; i < m; ++i) {
      tab_[i].resize(n_struct_ + 1);
      bool flip = lp.b[i] < T(0);
      for (int j = 0; j < n_struct_; ++j) tab_[i][j] = flip ? T(-lp.a[i][j]) : lp.a[i][j];
      tab_[i][n_struct_] = flip ? T(-lp.b[i]) : lp.b[i];
    }
    n_total_ = n_struct_;
  }

  // Finds a feasible basis. kOptimal means feasible; artificials are pivoted
  // out and removed, redundant rows dropped.
  LpStatus phase1() {
    const int m = rows();
    // Crash: adopt exact identity columns (slacks) where available.
    std::vector<bool> used(n_struct_, false);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n_struct_; ++j) {
        if (used[j] || !(tab_[i][j] == T(1))) continue;
        bool identity = true;
        for (int r = 0; r < m; ++r)
          if (r != i && !(tab_[r][j] == T(0))) {
            identity = false;
            break;
          }
        if (identity) {
          basis_[i] = j;
          used[j] = true;
          break;
        }
      }
    }
    // Artificials for uncovered rows.
    int n_art = 0;
    for (int i = 0; i < m; ++i)
      if (basis_[i] < 0) {
        for (int r = 0; r < m; ++r) tab_[r].insert(tab_[r].end() - 1, T(r == i ? 1 : 0));
        basis_[i] = n_total_ + n_art;
        ++n_art;
      }
    n_total_ += n_art;
    if (n_art > 0) {
      std::vector<T> art_cost(n_total_, T(0));
      for (int j = n_struct_; j < n_total_; ++j) art_cost[j] = T(1);
      price(art_cost);
      LpStatus st = run();
      if (st != LpStatus::kOptimal) return st;  // phase-1 LP is never unbounded
      T infeas(0);
      for (int i = 0; i < rows(); ++i)
        if (basis_[i] >= n_struct_) infeas += rhs(i);
      if (infeas > feas_tol()) return LpStatus::kInfeasible;
      drive_out_artificials();
    }
    // Strip artificial columns.
    for (auto& row : tab_) row.erase(row.begin() + n_struct_, row.end() - 1);
    n_total_ = n_struct_;
    feasible_ = true;
    return LpStatus::kOptimal;
  }

  // Optimizes over the current feasible basis; callable repeatedly with
  // different objectives.
  LpStatus phase2(const std::vector<T>& cost, bool maximize) {
    if (!feasible_) throw std::logic_error("phase2 before a successful phase1");
    if (static_cast<int>(cost.size()) != n_struct_)
      throw std::invalid_argument("dimension mismatch");
    std::vector<T> c(cost);
    if (maximize)
      for (T& v : c) v = -v;
    price(c);
    return run();
  }

  std::vector<T> extract() const {
    std::vector<T> x(n_struct_, T(0));
    for (int i = 0; i < rows(); ++i)
      if (basis_[i] < n_struct_) x[basis_[i]] = rhs(i);
    return x;
  }

 private:
  int rows() const { return static_cast<int>(tab_.size()); }
  const T& rhs(int i) const { return tab_[i][n_total_]; }

  static T tol() { return scalar_traits<T>::tol(); }
  static T feas_tol() { return scalar_traits<T>::tol(); }

  void price(const std::vector<T>& full_cost) {
    cost_.assign(n_total_, T(0));
    for (int j = 0; j < static_cast<int>(full_cost.size()); ++j) cost_[j] = full_cost[j];
    for (int i = 0; i < rows(); ++i) {
      const T cb = basis_[i] < static_cast<int>(full_cost.size()) ? full_cost[basis_[i]] : T(0);
      if (cb == T(0)) continue;
      for (int j = 0; j < n_total_; ++j)
        if (!(tab_[i][j] == T(0))) cost_[j] -= cb * tab_[i][j];
    }
  }

  LpStatus run() {
    const T zero(0);
    for (long iter = 0; iter < kMaxIterations; ++iter) {
      int enter = -1;
      for (int j = 0; j < n_total_; ++j)
        if (cost_[j] < zero - tol()) {
          enter = j;
          break;
        }
      if (enter < 0) return LpStatus::kOptimal;

      int leave = -1;
      T best{};
      for (int i = 0; i < rows(); ++i) {
        const T& a = tab_[i][enter];
        if (!(a > tol())) continue;
        T ratio = rhs(i) / a;
        if (leave < 0 || ratio < best || (!(ratio > best) && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit");
  }

  void pivot(int r, int c) {
    const int width = n_total_ + 1;
    T piv = tab_[r][c];
    if (!(piv == T(1)))
      for (int j = 0; j < width; ++j) tab_[r][j] /= piv;
    tab_[r][c] = T(1);
    T scratch{};
    for (int i = 0; i < rows(); ++i) {
      if (i == r) continue;
      T f = tab_[i][c];
      if (f == T(0)) continue;
      for (int j = 0; j < width; ++j) {
        if (tab_[r][j] == T(0)) continue;
        scratch = f * tab_[r][j];
        tab_[i][j] -= scratch;
      }
      tab_[i][c] = T(0);
    }
    T fc = cost_[c];
    if (!(fc == T(0))) {
      for (int j = 0; j < n_total_; ++j) {
        if (tab_[r][j] == T(0)) continue;
        cost_[j] -= fc * tab_[r][j];
      }
      cost_[c] = T(0);
    }
    basis_[r] = c;
  }

  // Basic artificials sit at value zero after a feasible phase 1; swap each
  // for a structural column, or drop the row as redundant.
  void drive_out_artificials() {
    for (int i = 0; i < rows();) {
      if (basis_[i] < n_struct_) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < n_struct_; ++j)
        if (abs_val<T>(tab_[i][j]) > pivot_floor()) {
          col = j;
          break;
        }
      if (col >= 0) {
        pivot(i, col);
        ++i;
      } else {
        tab_.erase(tab_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
  }

  static T pivot_floor() {
    if constexpr (scalar_traits<T>::exact)
      return T(0);
    else
      return T(1e-7);
  }

  static constexpr long kMaxIterations = 200000;

  int n_struct_ = 0;
  int n_total_ = 0;
  bool feasible_ = false;
  std::vector<std::vector<T>> tab_;
  std::vector<int> basis_;
  std::vector<T> cost_;
};

template <typename T>
LpResult<T> simplex_solve(const LinearProgram<T>& lp) {
  SimplexTableau<T> tableau(lp);
  LpResult<T> res;
  if (tableau.phase1() == LpStatus::kInfeasible) {
    res.status = LpStatus::kInfeasible;
    return res;
  }
  LpStatus st = tableau.phase2(lp.c, lp.maximize);
  res.status = st;
  if (st != LpStatus::kOptimal) return res;
  res.x = tableau.extract();
  res.value = T(0);
  for (int j = 0; j < lp.num_vars; ++j) res.value += lp.c[j] * res.x[j];
  return res;
}

}  // namespace ivb
