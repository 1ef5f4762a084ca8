#include "blinfty/solver.hpp"

#include <algorithm>

namespace blinfty {

void ExactLinearSystem::add_entry(int row, int col, const Rational& value) {
    if (col < 0 || col >= num_cols_) throw argument_error("column out of range");
    if (row < 0) throw argument_error("row out of range");
    num_rows_ = std::max(num_rows_, row + 1);
    if (value.is_zero()) return;
    auto key = std::make_pair(row, col);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        entries_.emplace(key, value);
    } else {
        it->second += value;
        if (it->second.is_zero()) entries_.erase(it);
    }
}

void ExactLinearSystem::add_rhs(int row, const Rational& value) {
    if (row < 0) throw argument_error("row out of range");
    num_rows_ = std::max(num_rows_, row + 1);
    if (value.is_zero()) return;
    auto it = rhs_.find(row);
    if (it == rhs_.end()) {
        rhs_.emplace(row, value);
    } else {
        it->second += value;
        if (it->second.is_zero()) rhs_.erase(it);
    }
}

std::optional<std::vector<Rational>> ExactLinearSystem::solve() const {
    // Row-major working copy; rhs rides as the extra column num_cols_.
    std::vector<std::map<int, Rational>> rows(num_rows_);
    for (const auto& [key, v] : entries_) rows[key.first][key.second] = v;
    for (const auto& [r, v] : rhs_) rows[r][num_cols_] = v;

    std::vector<int> pivot_row_of_col(num_cols_, -1);
    std::vector<bool> row_used(num_rows_, false);

    for (int col = 0; col < num_cols_; ++col) {
        int pivot = -1;
        for (int r = 0; r < num_rows_; ++r) {
            if (row_used[r]) continue;
            auto it = rows[r].find(col);
            if (it != rows[r].end() && !it->second.is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue; // free unknown
        row_used[pivot] = true;
        pivot_row_of_col[col] = pivot;
        Rational inv = rows[pivot][col].inverse();
        for (auto& [c, v] : rows[pivot]) v *= inv;
        for (int r = 0; r < num_rows_; ++r) {
            if (r == pivot) continue;
            auto it = rows[r].find(col);
            if (it == rows[r].end() || it->second.is_zero()) continue;
            Rational factor = it->second;
            for (const auto& [c, v] : rows[pivot]) {
                auto jt = rows[r].find(c);
                if (jt == rows[r].end()) {
                    Rational nv = v * factor;
                    if (!nv.is_zero()) rows[r][c] = -nv;
                } else {
                    jt->second -= v * factor;
                    if (jt->second.is_zero()) rows[r].erase(jt);
                }
            }
        }
    }

    for (int r = 0; r < num_rows_; ++r) {
        if (row_used[r]) continue;
        bool zero_coeffs = true;
        Rational b(0);
        for (const auto& [c, v] : rows[r]) {
            if (c == num_cols_) {
                b = v;
            } else if (!v.is_zero()) {
                zero_coeffs = false;
            }
        }
        if (zero_coeffs && !b.is_zero()) return std::nullopt; // inconsistent
    }

    std::vector<Rational> x(num_cols_, Rational(0));
    for (int col = 0; col < num_cols_; ++col) {
        int r = pivot_row_of_col[col];
        if (r < 0) continue;
        auto it = rows[r].find(num_cols_);
        if (it != rows[r].end()) x[col] = it->second;
    }
    return x;
}

} // namespace blinfty
