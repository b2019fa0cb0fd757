// Copyright 2026 The swipt-capacity Authors.
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

#pragma once

// Dense revised simplex for linear programs with a handful of rows and many
// columns: maximize c.v subject to row constraints and v >= 0.

#include <vector>

namespace swipt::lp {

enum class RowType { kLe, kEq, kGe };

struct Row {
  std::vector<double> coef;
  RowType type = RowType::kEq;
  double rhs = 0.0;
};

struct Problem {
  std::vector<double> c;
  std::vector<Row> rows;
};

struct Solution {
  bool feasible = false;
  std::vector<double> x;
  /// One dual value per row: at optimum c_j <= sum_i duals[i] * rows[i].coef[j],
  /// with equality on basic columns.
  std::vector<double> duals;
  double objective = 0.0;
  /// Phase-one residual: total constraint violation left when infeasible.
  double infeasibility = 0.0;
};

/// Throws ContractError for malformed input or more than 8 rows.
Solution maximize(const Problem& problem);

}  // namespace swipt::lp
