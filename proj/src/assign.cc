// Copyright 2026 The invskill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "invskill/assign.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "invskill/errors.h"

namespace invskill {

CostMatrix::CostMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw Error(ErrorCode::kSizeMismatch,
                "cost matrix must be square and nonempty, got " +
                    std::to_string(entries_.rows()) + "x" +
                    std::to_string(entries_.cols()));
  }
  for (Eigen::Index i = 0; i < entries_.size(); ++i) {
    const double c = entries_.data()[i];
    if (!std::isfinite(c) || c < 0.0) {
      throw Error(ErrorCode::kInvalidCost,
                  "cost entries must be finite and nonnegative");
    }
  }
}

std::string CostMatrix::ToCsv() const {
  std::string out;
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      if (j > 0) out += ',';
      out += FormatDouble(entries_(i, j));
    }
    out += '\n';
  }
  return out;
}

double AssignmentCost(const Eigen::MatrixXd& cost, std::span<const int> perm) {
  double total = 0.0;
  for (size_t i = 0; i < perm.size(); ++i) {
    total += cost(static_cast<Eigen::Index>(i), perm[i]);
  }
  return total;
}

CostMatrix BuildCostMatrix(std::span<const Demonstration> forwards,
                           std::span<const Demonstration> inverses,
                           StateMetric metric) {
  if (forwards.size() != inverses.size()) {
    throw Error(ErrorCode::kSizeMismatch,
                std::to_string(forwards.size()) + " forward vs " +
                    std::to_string(inverses.size()) +
                    " inverse demonstrations");
  }
  if (forwards.empty()) {
    throw Error(ErrorCode::kSizeMismatch, "no demonstrations to pair");
  }
  const Eigen::Index d_s = forwards[0].s_final.size();
  for (size_t i = 0; i < forwards.size(); ++i) {
    if (forwards[i].role != Role::kForward) {
      throw Error(ErrorCode::kRoleError,
                  "demonstration " + std::to_string(i) +
                      " in the forward set is not a forward demonstration");
    }
    if (inverses[i].role != Role::kInverse) {
      throw Error(ErrorCode::kRoleError,
                  "demonstration " + std::to_string(i) +
                      " in the inverse set is not an inverse demonstration");
    }
    if (forwards[i].s_final.size() != d_s || inverses[i].s_init.size() != d_s) {
      throw Error(ErrorCode::kDimMismatch,
                  "environment state widths differ at index " +
                      std::to_string(i));
    }
  }
  const auto n = static_cast<Eigen::Index>(forwards.size());
  Eigen::MatrixXd c(n, n);
  switch (metric) {
    case StateMetric::kEuclidean:
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          c(i, j) = (forwards[i].s_final - inverses[j].s_init).norm();
        }
      }
      break;
  }
  return CostMatrix(std::move(c));
}

namespace {

struct DualSolution {
  std::vector<int> row_to_col;
  std::vector<double> u;  // row potentials
  std::vector<double> v;  // column potentials
};

// Shortest augmenting path Hungarian method (Jonker-Volgenant style), with
// 1-based sentinel column 0.
DualSolution Hungarian(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> col_owner(n + 1, 0), way(n + 1, 0);
  std::vector<double> min_slack(n + 1);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    col_owner[0] = i;
    int j0 = 0;
    std::fill(min_slack.begin(), min_slack.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = col_owner[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[col_owner[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (col_owner[j0] != 0);
    do {
      const int j1 = way[j0];
      col_owner[j0] = col_owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  DualSolution sol;
  sol.row_to_col.assign(n, -1);
  for (int j = 1; j <= n; ++j) sol.row_to_col[col_owner[j] - 1] = j - 1;
  sol.u.assign(u.begin() + 1, u.end());
  sol.v.assign(v.begin() + 1, v.end());
  return sol;
}

// Every optimal assignment uses only edges that are tight under an optimal
// dual, so the lexicographically smallest optimal perm is the smallest
// perfect matching of the tight subgraph. Rows are fixed in order; each row
// tries its tight columns ascending and keeps the first one that still admits
// a perfect matching of the remaining rows.
class LexMinMatcher {
 public:
  LexMinMatcher(const std::vector<std::vector<char>>& tight,
                std::vector<int> row_to_col)
      : tight_(tight), n_(static_cast<int>(row_to_col.size())),
        row_to_col_(std::move(row_to_col)), col_to_row_(n_), locked_col_(n_) {
    for (int i = 0; i < n_; ++i) col_to_row_[row_to_col_[i]] = i;
  }

  std::vector<int> Run() {
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (!tight_[i][j] || locked_col_[j]) continue;
        if (row_to_col_[i] == j || Reassign(i, j)) {
          locked_col_[j] = 1;
          break;
        }
      }
    }
    return row_to_col_;
  }

 private:
  // Moves row i onto column j and repairs the displaced row along an
  // alternating path over unlocked rows (> i) and columns.
  bool Reassign(int i, int j) {
    const int displaced = col_to_row_[j];
    const int freed = row_to_col_[i];
    std::vector<int> saved_r2c = row_to_col_, saved_c2r = col_to_row_;
    row_to_col_[i] = j;
    col_to_row_[j] = i;
    row_to_col_[displaced] = -1;
    col_to_row_[freed] = -1;
    visited_.assign(n_, 0);
    visited_[j] = 1;
    if (Augment(displaced, i)) return true;
    row_to_col_ = std::move(saved_r2c);
    col_to_row_ = std::move(saved_c2r);
    return false;
  }

  bool Augment(int row, int fixed_upto) {
    for (int c = 0; c < n_; ++c) {
      if (!tight_[row][c] || locked_col_[c] || visited_[c]) continue;
      visited_[c] = 1;
      const int owner = col_to_row_[c];
      if (owner < 0 || (owner > fixed_upto && Augment(owner, fixed_upto))) {
        row_to_col_[row] = c;
        col_to_row_[c] = row;
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<char>>& tight_;
  int n_;
  std::vector<int> row_to_col_;
  std::vector<int> col_to_row_;
  std::vector<char> locked_col_;
  std::vector<char> visited_;
};

}  // namespace

Assignment SolveAssignment(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols()) {
    throw Error(ErrorCode::kSizeMismatch, "cost matrix must be square");
  }
  if (!cost.allFinite()) {
    throw Error(ErrorCode::kInvalidCost, "cost matrix has non-finite entries");
  }
  const int n = static_cast<int>(cost.rows());
  Assignment result;
  if (n == 0) return result;

  const DualSolution dual = Hungarian(cost);
  const double tol =
      1e-12 * n * (1.0 + cost.cwiseAbs().maxCoeff());
  std::vector<std::vector<char>> tight(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      tight[i][j] = std::abs(cost(i, j) - dual.u[i] - dual.v[j]) <= tol;
    }
    tight[i][dual.row_to_col[i]] = 1;
  }
  std::vector<int> lex = LexMinMatcher(tight, dual.row_to_col).Run();

  const double hungarian_cost = AssignmentCost(cost, dual.row_to_col);
  const double lex_cost = AssignmentCost(cost, lex);
  if (lex_cost <= hungarian_cost) {
    result.perm = std::move(lex);
    result.total_cost = lex_cost;
  } else {
    result.perm = dual.row_to_col;
    result.total_cost = hungarian_cost;
  }
  return result;
}

Assignment SolveAssignment(const CostMatrix& cost) {
  return SolveAssignment(cost.entries());
}

PairedDataset MakePairedDataset(std::span<const Demonstration> forwards,
                                std::span<const Demonstration> inverses,
                                std::span<const int> perm, StateMetric metric) {
  const CostMatrix cost = BuildCostMatrix(forwards, inverses, metric);
  const int n = cost.size();
  if (static_cast<int>(perm.size()) != n) {
    throw Error(ErrorCode::kSizeMismatch, "permutation size mismatch");
  }
  std::vector<char> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) {
      throw Error(ErrorCode::kSizeMismatch, "not a permutation");
    }
    seen[p] = 1;
  }
  PairedDataset paired;
  paired.pairs.reserve(n);
  for (int i = 0; i < n; ++i) {
    paired.pairs.push_back({forwards[i], inverses[perm[i]], cost(i, perm[i])});
  }
  paired.pairing_cost = AssignmentCost(cost.entries(), perm);
  return paired;
}

PairedDataset PairDemonstrations(std::span<const Demonstration> forwards,
                                 std::span<const Demonstration> inverses,
                                 StateMetric metric) {
  // Inverses are solved in a canonical content-based order.
  const int n = static_cast<int>(inverses.size());
  std::vector<std::string> keys;
  keys.reserve(n);
  for (const Demonstration& d : inverses) keys.push_back(DemoRecordJson(d));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const Eigen::VectorXd& sa = inverses[a].s_init;
    const Eigen::VectorXd& sb = inverses[b].s_init;
    if (std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end())) {
      return true;
    }
    if (std::lexicographical_compare(sb.begin(), sb.end(), sa.begin(), sa.end())) {
      return false;
    }
    return keys[a] < keys[b];
  });
  std::vector<Demonstration> sorted;
  sorted.reserve(n);
  for (int j : order) sorted.push_back(inverses[j]);
  const Assignment assignment =
      SolveAssignment(BuildCostMatrix(forwards, sorted, metric));
  std::vector<int> perm(assignment.perm.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = order[assignment.perm[i]];
  return MakePairedDataset(forwards, inverses, perm, metric);
}

}  // namespace invskill
