// Copyright 2026 The chargecirc Authors
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
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "chargecirc/entanglement.hpp"
#include "chargecirc/proof.hpp"
#include "dense_oracle.hpp"

using namespace chargecirc;

namespace {

EntanglementSpectrum random_spectrum(std::mt19937_64 &rng, int size) {
    std::exponential_distribution<double> w(1.0);
    std::vector<double> p(static_cast<std::size_t>(size));
    for (auto &x : p) {
        x = w(rng);
    }
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    std::vector<double> c;
    for (double x : p) {
        c.push_back(std::sqrt(x / total));
    }
    return make_spectrum(c);
}

} // namespace

TEST_CASE("schmidt_spectrum") {
    SUBCASE("product state has a single unit coefficient") {
        const std::vector<SiteSign> signs{SiteSign::plus, SiteSign::minus, SiteSign::minus, SiteSign::plus};
        const auto s = schmidt_spectrum(init_product_x(signs), 2);
        REQUIRE(s.rank() == 1);
        CHECK(s.largest() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(renyi_entropy(s, 2.0) < 1e-14);
        CHECK(von_neumann_entropy(s) < 1e-14);
    }
    SUBCASE("Bell pair") {
        std::vector<cplx> a(4);
        a[0] = a[3] = cplx{1.0 / std::sqrt(2.0), 0.0};
        const auto s = schmidt_spectrum(Statevector(2, a), 1);
        REQUIRE(s.rank() == 2);
        CHECK(s.coefficients[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(s.coefficients[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(von_neumann_entropy(s) == doctest::Approx(std::log(2.0)));
        CHECK(renyi_entropy(s, 2.0) == doctest::Approx(std::log(2.0)));
        CHECK(min_entropy(s) == doctest::Approx(std::log(2.0)));
    }
    SUBCASE("random states against reduced density matrices") {
        for (int N : {4, 6, 8}) {
            for (int cut = 1; cut < N; ++cut) {
                const auto v = oracle::random_state(N, static_cast<std::uint64_t>(N * 10 + cut));
                const auto s = schmidt_spectrum(oracle::from_vec(N, v), cut);
                auto ev = oracle::reduced_density_eigenvalues(v, N, cut);
                // the larger reduced matrix carries exact zeros beyond the Schmidt rank
                ev.resize(std::min<std::size_t>(ev.size(), std::size_t{1} << (N - cut)));
                const std::size_t k = std::min<std::size_t>(s.rank(), ev.size());
                REQUIRE(s.rank() == std::min(std::size_t{1} << cut, std::size_t{1} << (N - cut)));
                for (std::size_t i = 0; i < k; ++i) {
                    CHECK(s.coefficients[i] * s.coefficients[i] == doctest::Approx(ev[i]).epsilon(1e-10));
                }
                for (double alpha : {2.0, 3.0, 0.5}) {
                    CHECK(renyi_entropy(s, alpha) == doctest::Approx(oracle::renyi_from_eigs(ev, alpha)).epsilon(1e-10));
                }
                CHECK(von_neumann_entropy(s) == doctest::Approx(oracle::vn_from_eigs(ev)).epsilon(1e-10));
                CHECK(min_entropy(s) == doctest::Approx(-std::log(ev[0])).epsilon(1e-10));
                CHECK(renyi_entropy(s, kAlphaInfinity) == min_entropy(s));
            }
        }
    }
    SUBCASE("cut out of range") {
        Statevector psi(4);
        CHECK_THROWS_AS(schmidt_spectrum(psi, 0), std::invalid_argument);
        CHECK_THROWS_AS(schmidt_spectrum(psi, 4), std::invalid_argument);
    }
}

TEST_CASE("renyi_entropy") {
    SUBCASE("two coefficients") {
        const auto s = make_spectrum({std::sqrt(0.9), std::sqrt(0.1)});
        CHECK(renyi_entropy(s, 2.0) == doctest::Approx(-std::log(0.82)).epsilon(1e-12));
        CHECK(min_entropy(s) == doctest::Approx(-std::log(0.9)).epsilon(1e-12));
    }
    SUBCASE("flat spectrum gives log D for every alpha") {
        for (int D : {2, 16, 1024}) {
            const auto s = make_spectrum(std::vector<double>(static_cast<std::size_t>(D), 1.0 / std::sqrt(D)));
            for (double alpha : {1.5, 2.0, 3.0, 10.0, kAlphaInfinity}) {
                CHECK(renyi_entropy(s, alpha) == doctest::Approx(std::log(D)).epsilon(1e-12));
            }
            CHECK(von_neumann_entropy(s) == doctest::Approx(std::log(D)).epsilon(1e-12));
        }
    }
    SUBCASE("large alpha does not overflow") {
        const auto s = make_spectrum({std::sqrt(0.6), std::sqrt(0.4)});
        CHECK(std::isfinite(renyi_entropy(s, 1e6)));
        CHECK(renyi_entropy(s, 1e6) == doctest::Approx(min_entropy(s)).epsilon(1e-4));
    }
    SUBCASE("invalid alpha") {
        const auto s = make_spectrum({1.0});
        CHECK_THROWS_AS(renyi_entropy(s, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(renyi_entropy(s, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(renyi_entropy(s, -2.0), std::invalid_argument);
    }
}

TEST_CASE("Renyi ordering properties on random spectra") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const auto s = random_spectrum(rng, 1 + static_cast<int>(rng() % 64));
        const double rinf = min_entropy(s);
        const double vn = von_neumann_entropy(s);
        double previous = vn;
        for (double alpha : {1.5, 2.0, 3.0, 5.0, 20.0}) {
            const double r = renyi_entropy(s, alpha);
            // min-entropy sandwich
            CHECK(rinf <= r + 1e-12);
            CHECK(r <= sandwich_factor(alpha) * rinf + 1e-12);
            // non-increasing in alpha
            CHECK(r <= previous + 1e-12);
            previous = r;
        }
        CHECK(rinf <= previous + 1e-12);
        CHECK(vn <= std::log(static_cast<double>(s.rank())) + 1e-12);
    }
}

TEST_CASE("best_rank_D_overlap") {
    SUBCASE("sum of the leading D squared coefficients") {
        const auto s = make_spectrum({std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)});
        CHECK(best_rank_D_overlap(s, 1) == doctest::Approx(std::sqrt(0.5)));
        CHECK(best_rank_D_overlap(s, 2) == doctest::Approx(std::sqrt(0.8)));
        CHECK(best_rank_D_overlap(s, 3) == doctest::Approx(1.0));
        CHECK(best_rank_D_overlap(s, 7) == doctest::Approx(1.0));
        CHECK_THROWS_AS(best_rank_D_overlap(s, 0), std::invalid_argument);
    }
    SUBCASE("no explicit rank-D state beats it") {
        const int N = 6, cut = 3, dim = 8;
        const auto v = oracle::random_state(N, 5);
        const auto s = schmidt_spectrum(oracle::from_vec(N, v), cut);
        // psi as the dim x dim matrix with row index = left half (low bits)
        oracle::Mat M(dim, dim);
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) {
                M(r, c) = v(r + dim * c);
            }
        }
        for (int D = 1; D <= 3; ++D) {
            const double bound = best_rank_D_overlap(s, D);
            for (std::uint64_t k = 0; k < 50; ++k) {
                oracle::Mat phi = oracle::Mat::Zero(dim, dim);
                for (int j = 0; j < D; ++j) {
                    const auto a = oracle::random_state(cut, 1000 * k + static_cast<std::uint64_t>(j));
                    const auto b = oracle::random_state(cut, 5000 * k + static_cast<std::uint64_t>(j));
                    phi += a * b.transpose();
                }
                phi /= phi.norm();
                const double overlap = std::abs((phi.adjoint() * M).trace());
                CHECK(overlap <= bound + 1e-12);
            }
            // and the truncated SVD attains it
            Eigen::JacobiSVD<oracle::Mat> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
            oracle::Mat best = svd.matrixU().leftCols(D) * svd.singularValues().head(D).asDiagonal() *
                               svd.matrixV().leftCols(D).adjoint();
            best /= best.norm();
            CHECK(std::abs((best.adjoint() * M).trace()) == doctest::Approx(bound).epsilon(1e-12));
        }
    }
}

TEST_CASE("make_spectrum sorts, prunes and records the truncated weight") {
    const auto s = make_spectrum({0.1, std::sqrt(0.99 - 1e-26), 1e-13});
    REQUIRE(s.rank() == 2);
    CHECK(s.coefficients[0] > s.coefficients[1]);
    CHECK(s.truncated_weight == doctest::Approx(1e-26).epsilon(1e-6));
}
