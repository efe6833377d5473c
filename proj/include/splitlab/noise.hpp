// Copyright 2026 The splitlab Authors
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

#include <string>
#include <variant>
#include <vector>

namespace splitlab {

// Distribution p(lambda) of the random strength in the perturbation lambda * V.
class NoiseDistribution {
 public:
  struct Gaussian {
    double mean = 0.0;
    double std = 1.0;
  };
  struct Uniform {
    double a = 0.0;
    double b = 1.0;
  };
  struct Discrete {
    std::vector<double> values;
    std::vector<double> probs;
  };
  struct Delta {
    double value = 0.0;
  };
  using Kind = std::variant<Gaussian, Uniform, Discrete, Delta>;

  static NoiseDistribution gaussian(double mean, double std);
  static NoiseDistribution uniform(double a, double b);
  static NoiseDistribution discrete(std::vector<double> values, std::vector<double> probs);
  static NoiseDistribution delta(double value);

  const Kind& kind() const { return kind_; }
  std::string name() const;

  double mean() const;
  double variance() const;
  double second_moment() const { return variance() + mean() * mean(); }

 private:
  explicit NoiseDistribution(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

}  // namespace splitlab
