#include <gtest/gtest.h>

#include <random>

#include "polariton/engines/green.hpp"
#include "polariton/kernels/sweeps.hpp"
#include "polariton/run/presets.hpp"
#include "support.hpp"

using namespace polariton;
using namespace polariton::kernels;
using namespace testing_support;

namespace {

ScalarChain random_chain(std::mt19937_64& rng, std::size_t nodes) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ScalarChain c;
    for (std::size_t i = 0; i < nodes; ++i) {
        c.energy.push_back(9.0 + 3.0 * u(rng));
        c.half_width.push_back(0.01 + 0.1 * u(rng));
        if (i + 1 < nodes) c.coupling_sq.push_back(0.5 * u(rng));
    }
    return c;
}

// Dense tridiagonal reference.
cplx dense_chain_green(const ScalarChain& c, double omega) {
    const auto n = static_cast<Eigen::Index>(c.nodes());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = cplx(omega - c.energy[i], c.half_width[i]);
        if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = -std::sqrt(c.coupling_sq[i]);
    }
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
    e(0) = 1.0;
    return m.partialPivLu().solve(e)(0);
}

}  // namespace

TEST(Isa, ScalarAlwaysSupported) {
    EXPECT_TRUE(isa_supported(Isa::Scalar));
    EXPECT_STREQ(isa_name(Isa::Scalar), "scalar");
    EXPECT_STREQ(isa_name(Isa::Avx2), "avx2");
}

TEST(ChainGreen, ScalarMatchesDenseTridiagonal) {
    std::mt19937_64 rng(5);
    for (std::size_t nodes : {1u, 2u, 5u, 17u}) {
        const auto c = random_chain(rng, nodes);
        const auto omegas = linspace(8.5, 12.5, 37);
        std::vector<cplx> out(omegas.size());
        chain_green(c, omegas, out, Isa::Scalar);
        for (std::size_t i = 0; i < omegas.size(); ++i) {
            const cplx ref = dense_chain_green(c, omegas[i]);
            EXPECT_LT(std::abs(out[i] - ref), 1e-12 * std::abs(ref)) << nodes << " " << omegas[i];
        }
    }
}

TEST(ChainGreen, Avx2MatchesScalar) {
    if (!isa_supported(Isa::Avx2)) GTEST_SKIP() << "AVX2 not available";
    std::mt19937_64 rng(9);
    for (std::size_t nodes : {1u, 3u, 64u, 501u}) {
        const auto c = random_chain(rng, nodes);
        for (int count : {1, 3, 4, 7, 129}) {
            const auto omegas = linspace(8.0, 13.0, std::max(count, 2));
            std::vector<cplx> a(omegas.size()), b(omegas.size());
            chain_green(c, omegas, a, Isa::Scalar);
            chain_green(c, omegas, b, Isa::Avx2);
            for (std::size_t i = 0; i < a.size(); ++i) {
                EXPECT_LE(std::abs(a[i] - b[i]), 1e-14 * std::abs(a[i])) << nodes << " " << i;
            }
        }
    }
}

TEST(CavityResponse, Avx2MatchesScalar) {
    if (!isa_supported(Isa::Avx2)) GTEST_SKIP() << "AVX2 not available";
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g(0.0, 3.0);
    for (std::size_t n : {1u, 4u, 6u, 1001u}) {
        std::vector<cplx> d(n);
        for (auto& z : d) z = cplx(g(rng), -std::abs(g(rng)));
        std::vector<double> a1(n), t1(n), r1(n), a2(n), t2(n), r2(n);
        cavity_response(d, 0.1, a1, t1, r1, Isa::Scalar);
        cavity_response(d, 0.1, a2, t2, r2, Isa::Avx2);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_LE(std::abs(a1[i] - a2[i]), 1e-15 * (1.0 + std::abs(a1[i])));
            EXPECT_LE(std::abs(t1[i] - t2[i]), 1e-15 * (1.0 + std::abs(t1[i])));
            EXPECT_LE(std::abs(r1[i] - r2[i]), 1e-15 * (1.0 + std::abs(r1[i])));
        }
    }
}

TEST(CavityResponse, ClosedFormValues) {
    const double kappa = 0.1;
    const std::vector<cplx> d{cplx(0.0, -2.0 / kappa), cplx(1.5, -0.25)};
    std::vector<double> a(2), t(2), r(2);
    cavity_response(d, kappa, a, t, r, best_isa());
    EXPECT_NEAR(t[0], 1.0, 1e-15);
    EXPECT_NEAR(r[0], 0.0, 1e-15);
    EXPECT_NEAR(a[0], 0.0, 1e-15);
    EXPECT_NEAR(t[1], kappa * kappa / 4 * std::norm(d[1]), 1e-16);
    EXPECT_NEAR(a[1] + t[1] + r[1], 1.0, 1e-15);
}

TEST(ChainGreen, RejectsInconsistentInput) {
    ScalarChain c;
    c.energy = {1.0, 2.0};
    c.half_width = {0.1, 0.1};
    const std::vector<double> w{1.0};
    std::vector<cplx> out(1);
    EXPECT_THROW(chain_green(c, w, out, Isa::Scalar), std::invalid_argument);
    c.coupling_sq = {0.1};
    std::vector<cplx> wrong(2);
    EXPECT_THROW(chain_green(c, w, wrong, Isa::Scalar), std::invalid_argument);
}

// The O(N) coefficients must be the 1x1 blocks of the general construction.
TEST(ScalarChainExtraction, MatchesBlockChain) {
    for (int n : {1, 2, 7}) {
        auto spec = fig2a_ensemble(n);
        spec.gamma = 0.037;
        spec.species[0].fc_overlaps(0, 1) = cplx(0.12, 0.1);
        const BlockChain blocks(spec);
        const auto chain = scalar_chain(spec);
        ASSERT_TRUE(chain.has_value());
        ASSERT_EQ(chain->nodes(), std::size_t(2 * n + 1));
        for (int d = 0; d <= n; ++d) {
            const auto& b = blocks.at(d);
            EXPECT_DOUBLE_EQ(chain->energy[2 * d], b.h_ph(0));
            EXPECT_DOUBLE_EQ(chain->half_width[2 * d], spec.cavity.kappa / 2);
            if (d < n) {
                EXPECT_DOUBLE_EQ(chain->energy[2 * d + 1], b.h_e(0));
                EXPECT_DOUBLE_EQ(chain->half_width[2 * d + 1], spec.gamma / 2);
                EXPECT_NEAR(chain->coupling_sq[2 * d], std::norm(b.V(0, 0)), 1e-15);
                EXPECT_NEAR(chain->coupling_sq[2 * d + 1], std::norm(b.v(0, 0)), 1e-15);
            }
        }
        if (n >= 2) {
            const auto cut = scalar_chain(spec, 1);
            ASSERT_TRUE(cut.has_value());
            EXPECT_EQ(cut->nodes(), 4u);
        }
    }
}

TEST(ScalarChainExtraction, OnlyForOneDimensionalBlocks) {
    EXPECT_FALSE(scalar_chain(fig2b_ensemble(2)).has_value());
    auto spec = fig2a_ensemble(3);
    spec.species[0].ground_levels = {0.0, 1.0, 2.0};
    spec.species[0].fc_overlaps.resize(1, 3);
    spec.species[0].fc_overlaps << 0.9, 0.3, 0.1;
    EXPECT_FALSE(scalar_chain(spec).has_value());
    const auto two = single_species(two_level(4, 10.0), 10.0, 0.1, 0.1, 0.1);
    const auto chain = scalar_chain(two);
    ASSERT_TRUE(chain.has_value());
    EXPECT_EQ(chain->nodes(), 2u);
    EXPECT_NEAR(chain->coupling_sq[0], 4 * 0.01, 1e-16);
}
