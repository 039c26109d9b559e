// Copyright 2026 The punctkit Authors.
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

// Independent generators and oracles used by the test suites. Nothing here
// calls into the library code it is used to check, except for plain data
// types.

#ifndef PUNCTKIT_TESTS_SUPPORT_GENERATORS_H_
#define PUNCTKIT_TESTS_SUPPORT_GENERATORS_H_

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace punctkit::testing {

// Draws n values from the discrete Weibull law by inverting its CMF:
// k = ceil((log(1-U) / log(1-p))^(1/beta)).
std::vector<int64_t> SampleDiscreteWeibull(double p, double beta, std::size_t n,
                                           std::mt19937_64& rng);

// Draws n geometric waiting times (trials up to and including the first
// success) by simulating Bernoulli(p) trials one at a time.
std::vector<int64_t> SampleGeometricByTrials(double p, std::size_t n, std::mt19937_64& rng);

std::vector<double> GaussianNoise(std::size_t n, std::mt19937_64& rng);

// Fractional Gaussian noise with Hurst exponent `hurst` by exact circulant
// embedding of its autocovariance (Davies-Harte), using FFTW.
std::vector<double> FractionalGaussianNoise(double hurst, std::size_t n, std::mt19937_64& rng);

// Deterministic binomial multiplicative cascade of 2^levels points with
// weight a: x_k = a^(n_1(k)) (1-a)^(levels - n_1(k)), n_1 = number of one bits.
std::vector<double> BinomialCascade(double a, int levels);

// Analytic generalized Hurst exponent of the cascade:
// h(q) = 1/q - log2(a^q + (1-a)^q) / q  (q != 0).
double CascadeHurst(double a, double q);

// Analytic singularity strength alpha(q) = d tau / dq of the cascade, where
// tau(q) = -log2(a^q + (1-a)^q).
double CascadeAlpha(double a, double q);

// Token counts of a multinomial sample of `tokens` draws from a Zipf law
// P(R) ∝ R^-gamma over `types` types. Types never drawn are omitted.
// Token names are "t<rank>".
std::vector<std::pair<std::string, int64_t>> ZipfMultinomialCounts(double gamma, int types,
                                                                   int64_t tokens,
                                                                   std::mt19937_64& rng);

// Integer counts proportional to `probabilities` (rank order), scaled so the
// first count is `top` and rounded; token names are "t<rank>".
std::vector<std::pair<std::string, int64_t>> PowerLawCounts(
    const std::vector<double>& probabilities, double top);

}  // namespace punctkit::testing

#endif  // PUNCTKIT_TESTS_SUPPORT_GENERATORS_H_
