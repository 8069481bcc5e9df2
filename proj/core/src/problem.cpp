// Copyright 2026 The sot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sot/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace sot {

Problem::Problem(std::string name, Vector lower, Vector upper,
                 Objective objective, std::vector<int> int_indices,
                 std::optional<KnownOptimum> optimum)
    : name_(std::move(name)),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      objective_(std::move(objective)),
      int_indices_(std::move(int_indices)),
      optimum_(std::move(optimum)) {
  if (lower_.size() == 0) throw ConfigError("problem dimension must be positive");
  if (lower_.size() != upper_.size())
    throw ConfigError("lower and upper bounds differ in length");
  if (!objective_) throw ConfigError("problem has no objective");
  for (int i = 0; i < dim(); ++i) {
    if (!(lower_[i] < upper_[i]))
      throw ConfigError("empty or degenerate bound in coordinate " + std::to_string(i));
  }
  is_int_.assign(static_cast<std::size_t>(dim()), false);
  std::sort(int_indices_.begin(), int_indices_.end());
  int_indices_.erase(std::unique(int_indices_.begin(), int_indices_.end()),
                     int_indices_.end());
  for (int i : int_indices_) {
    if (i < 0 || i >= dim())
      throw ConfigError("integer index " + std::to_string(i) + " out of range");
    if (lower_[i] != std::round(lower_[i]) || upper_[i] != std::round(upper_[i]))
      throw ConfigError("integer coordinate " + std::to_string(i) +
                        " needs integer bounds");
    is_int_[static_cast<std::size_t>(i)] = true;
  }
  if (optimum_ && optimum_->location.size() != dim())
    throw ConfigError("optimum location has the wrong dimension");
}

bool Problem::contains(const Vector& x) const {
  if (x.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
    if (is_int_[static_cast<std::size_t>(i)] && x[i] != std::round(x[i])) return false;
  }
  return true;
}

double Problem::evaluate(const Vector& x) const {
  if (!contains(x)) {
    std::ostringstream os;
    os << "point outside the domain of '" << name_ << "'";
    throw DomainError(os.str());
  }
  return objective_(x);
}

namespace {

constexpr double kPi = std::numbers::pi;

double sphere(const Vector& z) { return z.squaredNorm(); }

double ackley(const Vector& z) {
  const double d = static_cast<double>(z.size());
  const double s1 = z.squaredNorm() / d;
  const double s2 = (2.0 * kPi * z.array()).cos().sum() / d;
  return -20.0 * std::exp(-0.2 * std::sqrt(s1)) - std::exp(s2) + 20.0 + std::numbers::e;
}

double rastrigin(const Vector& z) {
  double s = 10.0 * static_cast<double>(z.size());
  for (double v : z) s += v * v - 10.0 * std::cos(2.0 * kPi * v);
  return s;
}

double griewank(const Vector& z) {
  double sum = 0.0;
  double prod = 1.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    sum += z[i] * z[i] / 4000.0;
    prod *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum - prod + 1.0;
}

// Levy with its minimizer moved from (1, ..., 1) to the origin.
double levy(const Vector& z) {
  const Eigen::Index d = z.size();
  auto w = [&](Eigen::Index i) { return 1.0 + z[i] / 4.0; };
  const double s0 = std::sin(kPi * w(0));
  double f = s0 * s0;
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    const double wi = w(i);
    const double s = std::sin(kPi * wi + 1.0);
    f += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * s * s);
  }
  const double wd = w(d - 1);
  const double sd = std::sin(2.0 * kPi * wd);
  f += (wd - 1.0) * (wd - 1.0) * (1.0 + sd * sd);
  return f;
}

// Generalized Schaffer F7. A one-dimensional instance uses s = |z_0|.
double schaffer(const Vector& z) {
  const Eigen::Index d = z.size();
  auto term = [](double s) {
    const double r = std::sqrt(s);
    const double t = std::sin(50.0 * std::pow(s, 0.2));
    return r + r * t * t;
  };
  if (d == 1) {
    const double v = term(std::abs(z[0]));
    return v * v;
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i + 1 < d; ++i)
    acc += term(std::sqrt(z[i] * z[i] + z[i + 1] * z[i + 1]));
  acc /= static_cast<double>(d - 1);
  return acc * acc;
}

using BaseFn = double (*)(const Vector&);

struct CatalogEntry {
  const char* name;
  BaseFn fn;
};

constexpr CatalogEntry kCatalog[] = {
    {"sphere", &sphere},       {"ackley", &ackley}, {"rastrigin", &rastrigin},
    {"griewank", &griewank},   {"levy", &levy},     {"schaffer", &schaffer},
};

}  // namespace

std::vector<std::string> problem_names() {
  std::vector<std::string> names;
  for (const auto& e : kCatalog) names.emplace_back(e.name);
  return names;
}

Problem make_problem(std::string_view name, int dim, int instance, int num_int) {
  const auto* it = std::find_if(std::begin(kCatalog), std::end(kCatalog),
                                [&](const CatalogEntry& e) { return name == e.name; });
  if (it == std::end(kCatalog))
    throw NotFoundError("unknown problem '" + std::string(name) + "'");
  if (dim < 1) throw ConfigError("dimension must be positive");
  if (instance < 0) throw ConfigError("instance must be non-negative");
  if (num_int < 0 || num_int > dim) throw ConfigError("integer variable count out of range");

  Vector shift = Vector::Zero(dim);
  if (instance > 0) {
    Rng rng(derive_seed(0x5107a11ce5ULL, static_cast<std::uint64_t>(instance)));
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < dim; ++i) shift[i] = u(rng);
  }
  std::vector<int> ints;
  for (int i = 0; i < num_int; ++i) {
    ints.push_back(i);
    shift[i] = std::round(shift[i]);
  }

  BaseFn fn = it->fn;
  Problem::Objective objective;
  if (instance == 0) {
    objective = [fn](const Vector& x) { return fn(x); };
  } else {
    objective = [fn, shift](const Vector& x) { return fn(x - shift); };
  }
  std::string full_name = it->name;
  if (instance > 0) full_name += "-i" + std::to_string(instance);
  return Problem(full_name, Vector::Constant(dim, -5.0), Vector::Constant(dim, 5.0),
                 std::move(objective), std::move(ints), KnownOptimum{0.0, shift});
}

std::vector<Problem> problem_catalog(int dim) {
  std::vector<Problem> out;
  for (const auto& e : kCatalog) out.push_back(make_problem(e.name, dim));
  return out;
}

}  // namespace sot
