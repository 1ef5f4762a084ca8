#pragma once

#include "blinfty/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace blinfty {

/// Exact sparse Gaussian elimination over Q with deterministic pivoting
/// (lowest row index first). Solves sum_j x_j col_j = rhs; free unknowns are
/// fixed to zero, so the returned solution is deterministic.
class ExactLinearSystem {
  public:
    explicit ExactLinearSystem(int num_columns) : num_cols_(num_columns) {}

    void add_entry(int row, int col, const Rational& value);
    void add_rhs(int row, const Rational& value);
    int num_rows() const { return num_rows_; }

    std::optional<std::vector<Rational>> solve() const;

  private:
    int num_cols_;
    int num_rows_ = 0;
    std::map<std::pair<int, int>, Rational> entries_;
    std::map<int, Rational> rhs_;
};

} // namespace blinfty
