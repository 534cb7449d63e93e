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

#include "tempex/lbfgs.h"

#include <cmath>
#include <deque>
#include <numeric>

#include "tempex/error.h"

namespace tempex {

namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

struct Correction {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

// Two-loop recursion: direction = -H * grad.
std::vector<double> SearchDirection(const std::deque<Correction>& history,
                                    std::span<const double> grad) {
  std::vector<double> q(grad.begin(), grad.end());
  std::vector<double> alpha(history.size());
  for (size_t k = history.size(); k-- > 0;) {
    const Correction& c = history[k];
    alpha[k] = c.rho * Dot(c.s, q);
    for (size_t i = 0; i < q.size(); ++i) q[i] -= alpha[k] * c.y[i];
  }
  if (!history.empty()) {
    const Correction& last = history.back();
    const double gamma = Dot(last.s, last.y) / Dot(last.y, last.y);
    for (double& v : q) v *= gamma;
  }
  for (size_t k = 0; k < history.size(); ++k) {
    const Correction& c = history[k];
    const double beta = c.rho * Dot(c.y, q);
    for (size_t i = 0; i < q.size(); ++i) q[i] += c.s[i] * (alpha[k] - beta);
  }
  for (double& v : q) v = -v;
  return q;
}

}  // namespace

LbfgsResult MinimizeLbfgs(const ObjectiveFunction& f, std::vector<double>& x,
                          const LbfgsOptions& options) {
  const size_t n = x.size();
  std::vector<double> grad(n), next_x(n), next_grad(n);
  double value = f(x, grad);
  if (!std::isfinite(value)) {
    throw Error("objective is not finite at the starting point");
  }

  LbfgsResult result;
  result.value = value;
  std::deque<Correction> history;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double grad_norm = std::sqrt(Dot(grad, grad));
    if (grad_norm == 0.0) {
      result.converged = true;
      result.status = "zero gradient";
      break;
    }
    std::vector<double> direction = SearchDirection(history, grad);
    double slope = Dot(grad, direction);
    if (!(slope < 0.0)) {
      history.clear();
      direction.assign(grad.begin(), grad.end());
      for (double& v : direction) v = -v;
      slope = -grad_norm * grad_norm;
    }
    double step = history.empty() ? 1.0 / std::sqrt(Dot(direction, direction))
                                  : 1.0;

    bool accepted = false;
    bool saw_non_finite = false;
    double next_value = value;
    for (int ls = 0; ls < options.max_line_search; ++ls) {
      for (size_t i = 0; i < n; ++i) next_x[i] = x[i] + step * direction[i];
      next_value = f(next_x, next_grad);
      if (!std::isfinite(next_value)) {
        saw_non_finite = true;
      } else if (next_value <= value + options.armijo * step * slope &&
                 next_value < value) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (saw_non_finite && result.iterations == 0) {
        throw Error("objective became non-finite during the line search");
      }
      result.status = "line search could not decrease the objective";
      result.converged = true;
      break;
    }

    Correction c{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (size_t i = 0; i < n; ++i) {
      c.s[i] = next_x[i] - x[i];
      c.y[i] = next_grad[i] - grad[i];
    }
    const double sy = Dot(c.s, c.y);
    if (sy > 1e-12) {
      c.rho = 1.0 / sy;
      history.push_back(std::move(c));
      if (static_cast<int>(history.size()) > options.history) {
        history.pop_front();
      }
    }

    const double change =
        std::abs(value - next_value) / std::max(std::abs(next_value), 1.0);
    x.swap(next_x);
    grad.swap(next_grad);
    value = next_value;
    ++result.iterations;
    result.trace.push_back(value);
    result.value = value;
    if (change < options.relative_tolerance) {
      result.converged = true;
      result.status = "relative objective change below tolerance";
      break;
    }
  }
  if (result.status.empty()) result.status = "iteration limit reached";
  result.value = value;
  return result;
}

}  // namespace tempex
