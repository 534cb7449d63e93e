// Copyright 2026 The tempex Authors.
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

#ifndef TEMPEX_LBFGS_H_
#define TEMPEX_LBFGS_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace tempex {

struct LbfgsOptions {
  int history = 5;
  int max_iterations = 300;
  // Stop once |f_prev - f| / max(|f|, 1) drops below this.
  double relative_tolerance = 1e-4;
  int max_line_search = 40;
  // Sufficient-decrease constant of the Armijo condition.
  double armijo = 1e-4;
};

struct LbfgsResult {
  int iterations = 0;
  double value = 0.0;
  bool converged = false;
  std::string status;
  std::vector<double> trace;  // objective after each accepted step
};

// Evaluates f(x) and writes its gradient; returns f(x).
using ObjectiveFunction =
    std::function<double(std::span<const double> x, std::span<double> grad)>;

// Limited-memory BFGS with a backtracking Armijo line search. Minimizes
// `f` starting from `x`, which holds the solution on return. Every accepted
// step strictly lowers f. Throws Error if f is not finite at the start.
LbfgsResult MinimizeLbfgs(const ObjectiveFunction& f, std::vector<double>& x,
                          const LbfgsOptions& options);

}  // namespace tempex

#endif  // TEMPEX_LBFGS_H_
