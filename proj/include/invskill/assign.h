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

#ifndef INVSKILL_ASSIGN_H_
#define INVSKILL_ASSIGN_H_

// Pairing of forward and inverse demonstrations as a linear sum assignment:
// entry (i, j) of the cost matrix is the dissimilarity between the final
// environment state of forward i and the initial state of inverse j.

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "invskill/core.h"

namespace invskill {

enum class StateMetric { kEuclidean };

// Square matrix of finite, nonnegative dissimilarities.
class CostMatrix {
 public:
  // Throws kSizeMismatch if not square or empty, kInvalidCost if any entry is
  // negative or non-finite.
  explicit CostMatrix(Eigen::MatrixXd entries);

  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }

  // Comma-separated rows, 17 significant digits.
  std::string ToCsv() const;

 private:
  Eigen::MatrixXd entries_;
};

struct Assignment {
  std::vector<int> perm;  // forward i -> inverse perm[i]
  double total_cost = 0.0;
};

// Sum of cost(i, perm[i]) accumulated in ascending i.
double AssignmentCost(const Eigen::MatrixXd& cost, std::span<const int> perm);

CostMatrix BuildCostMatrix(std::span<const Demonstration> forwards,
                           std::span<const Demonstration> inverses,
                           StateMetric metric = StateMetric::kEuclidean);

// Minimum-cost bijection in O(N^3). Among several optimal assignments the
// lexicographically smallest perm is returned (forward 0 takes the lowest
// possible inverse index, then forward 1, ...). Throws kInvalidCost when an
// entry is not finite.
Assignment SolveAssignment(const Eigen::MatrixXd& cost);
Assignment SolveAssignment(const CostMatrix& cost);

// pairs[i] = (forwards[i], inverses[perm[i]]). Throws kSizeMismatch if perm is
// not a permutation of the right size.
PairedDataset MakePairedDataset(std::span<const Demonstration> forwards,
                                std::span<const Demonstration> inverses,
                                std::span<const int> perm,
                                StateMetric metric = StateMetric::kEuclidean);

// Builds the cost matrix, solves the assignment and applies it. Auxiliary
// demonstrations must not be passed here.
PairedDataset PairDemonstrations(std::span<const Demonstration> forwards,
                                 std::span<const Demonstration> inverses,
                                 StateMetric metric = StateMetric::kEuclidean);

}  // namespace invskill

#endif  // INVSKILL_ASSIGN_H_
