// Copyright 2026 The mcvqa Authors
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

#ifndef MCVQA_TESTS_ORACLES_HPP_
#define MCVQA_TESTS_ORACLES_HPP_

#include <complex>
#include <cstdint>
#include <vector>

#include "mcvqa/graph.hpp"
#include "mcvqa/qsim.hpp"

namespace mcvqa::testing {

// Reference circuit simulation that shares nothing with the production path:
// every gate is materialized as a full 2^n x 2^n matrix via Kronecker
// products and applied by dense matrix-vector multiplication.  Only sensible
// for small n.
std::vector<std::complex<double>> dense_prepare_state(const Ansatz& a,
                                                      const ParameterVector& theta);

// Exact loss gradient from the parameter-shift rule at shift pi/2, valid for
// rotation-generated losses.
std::vector<double> parameter_shift_gradient(const WeightedGraph& g,
                                             const Ansatz& a,
                                             const ParameterVector& theta);

// Exhaustive Ising extrema, coded independently of the production routine
// (explicit spin vectors and sign multiplication instead of bit tricks).
GroundTruth enumerate_extrema(const WeightedGraph& g);

// Closed form of the one-layer landscape: CZ gates commute with every Z_a Z_b
// term, so the loss of the single-layer ansatz is
// sum_i w_i cos(theta_a) cos(theta_b).
double cosine_landscape(const WeightedGraph& g, const ParameterVector& theta);

// Exact loss through the production simulator (convenience wrapper).
double exact_loss(const WeightedGraph& g, const Ansatz& a,
                  const ParameterVector& theta);

WeightedGraph random_graph(int n, int m, std::uint64_t seed);
ParameterVector random_theta(int count, std::uint64_t seed);

}  // namespace mcvqa::testing

#endif  // MCVQA_TESTS_ORACLES_HPP_
