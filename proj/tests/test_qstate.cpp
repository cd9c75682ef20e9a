#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "qba/qstate.hpp"
#include "qba/util/rng.hpp"

using namespace qba;
using namespace qba::qstate;

namespace {

RegisterLayout one_qubit() {
    RegisterLayout l;
    l.add_register("q", 1, 2);
    return l;
}

SparseState bell_pair() {
    RegisterLayout l;
    l.add_register("a", 1, 2);
    l.add_register("b", 1, 2);
    SparseState s(l);
    s = prepare_distribution(s, "a", ClassicalDistribution::uniform(2));
    auto cx = BasisBijection::accumulate({0}, {2}, {1}, {2},
                                         [](const std::vector<uint8_t>& v) { return v; });
    return apply_permutation(s, cx);
}

}  // namespace

TEST(Layout, InvariantsEnforced) {
    RegisterLayout l;
    l.add_register("a", 2, 3);
    EXPECT_THROW(l.add_register("a", 1, 2), Error);   // duplicate name
    EXPECT_THROW(l.add_register("b", 1, 1), Error);   // dim < 2
    EXPECT_THROW(l.add_register("c", 0, 2), Error);   // no sites
    l.add_register("d", {2, 5});
    EXPECT_EQ(l.total_sites(), 4);
    EXPECT_EQ(l.dim_at(3), 5);
    EXPECT_EQ(l.sites_of("d"), (std::vector<Site>{2, 3}));
}

TEST(PrepareDistribution, UniformBit) {
    SparseState s(one_qubit());
    s = prepare_distribution(s, "q", ClassicalDistribution::uniform(2));
    ASSERT_EQ(s.support_size(), 2u);
    for (const auto& [c, a] : s.amplitudes())
        EXPECT_NEAR(std::abs(a), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(PrepareDistribution, BiasedCoinN4) {
    // sqrt(1/4)|0> + sqrt(3/4)|1>
    SparseState s(one_qubit());
    ClassicalDistribution d;
    d.add({0}, 0.25);
    d.add({1}, 0.75);
    s = prepare_distribution(s, "q", d);
    auto p0 = project(s, {0}, {0});
    auto p1 = project(s, {0}, {1});
    EXPECT_NEAR(p0.probability, 0.25, 1e-12);
    EXPECT_NEAR(p1.probability, 0.75, 1e-12);
}

TEST(PrepareDistribution, PointMassQudit) {
    RegisterLayout l;
    l.add_register("q", 1, 8);
    SparseState s(l);
    s = prepare_distribution(s, "q", ClassicalDistribution::point({5}));
    ASSERT_EQ(s.support_size(), 1u);
    EXPECT_EQ(s.amplitudes().begin()->first[0], 5);
    EXPECT_NEAR(std::abs(s.amplitudes().begin()->second), 1.0, 1e-12);
}

TEST(PrepareDistribution, Errors) {
    SparseState s(one_qubit());
    s = prepare_distribution(s, "q", ClassicalDistribution::point({1}));
    // not all-zero anymore
    EXPECT_THROW(prepare_distribution(s, "q", ClassicalDistribution::uniform(2)), Error);
    // support exceeds capacity
    SparseState t(one_qubit());
    EXPECT_THROW(prepare_distribution(t, "q", ClassicalDistribution::uniform(3)), Error);
}

TEST(Permutation, IdentityLeavesStateUnchanged) {
    SparseState s = bell_pair();
    auto id = BasisBijection::identity({0, 1}, {2, 2});
    SparseState t = apply_permutation(s, id);
    EXPECT_TRUE(approx_equal(s, t));
}

TEST(Permutation, CxCopyMakesBell) {
    SparseState s = bell_pair();
    ASSERT_EQ(s.support_size(), 2u);
    auto b = measurement_branches(s, {0, 1});
    ASSERT_EQ(b.size(), 2u);
    EXPECT_EQ(b[0].outcome, (std::vector<uint8_t>{0, 0}));
    EXPECT_EQ(b[1].outcome, (std::vector<uint8_t>{1, 1}));
    EXPECT_NEAR(b[0].probability, 0.5, 1e-12);
}

TEST(Permutation, ReversibleParityAgainstDenseOracle) {
    // U_f |v>|y> -> |v>|y + f(v)> for f = parity of 2 bits, checked against
    // an explicit 8x8 permutation matrix.
    RegisterLayout l;
    l.add_register("v", 2, 2);
    l.add_register("y", 1, 2);
    SparseState s(l);
    ClassicalDistribution d;
    d.add({0, 0}, 0.1);
    d.add({1, 0}, 0.2);
    d.add({0, 1}, 0.3);
    d.add({1, 1}, 0.4);
    s = prepare_distribution(s, "v", d);
    auto parity = BasisBijection::accumulate(
        {0, 1}, {2, 2}, {2}, {2},
        [](const std::vector<uint8_t>& v) -> std::vector<uint8_t> {
            return {static_cast<uint8_t>((v[0] + v[1]) % 2)};
        });
    SparseState got = apply_permutation(s, parity);

    // oracle: 8x8 permutation matrix built from the same truth table
    testing::DenseVec dv = testing::DenseVec::from_sparse(s);
    DenseUnitary u;
    u.target_sites = {0, 1, 2};
    u.dims = {2, 2, 2};
    u.matrix.assign(8, std::vector<cplx>(8, 0.0));
    for (int in = 0; in < 8; ++in) {
        int v0 = in & 1, v1 = (in >> 1) & 1, y = (in >> 2) & 1;
        int out = v0 | (v1 << 1) | (((y + ((v0 + v1) % 2)) % 2) << 2);
        u.matrix[out][in] = 1.0;
    }
    dv.apply_dense(u);
    EXPECT_LT(dv.max_deviation(got), 1e-9);
    // |11>|0> -> |11>|0 xor 0>: parity of 11 is 0
    auto p = project(got, {0, 1}, {1, 1});
    ASSERT_FALSE(p.zero);
    EXPECT_EQ(p.state.read_classical("y").value(), (std::vector<uint8_t>{0}));
}

TEST(Permutation, NonInjectiveRawRejected) {
    EXPECT_THROW(BasisBijection::raw({0}, {2},
                                     [](const std::vector<uint8_t>&) {
                                         return std::vector<uint8_t>{0};
                                     }),
                 Error);
}

TEST(DenseUnitary, IdentityAndHadamard) {
    SparseState s(one_qubit());
    SparseState t = apply_dense_unitary(s, DenseUnitary::identity({0}, {2}));
    EXPECT_TRUE(approx_equal(s, t));
    SparseState h = apply_dense_unitary(s, DenseUnitary::hadamard(0));
    auto b = measurement_branches(h, {0});
    ASSERT_EQ(b.size(), 2u);
    EXPECT_NEAR(b[0].probability, 0.5, 1e-12);
    EXPECT_NEAR(b[1].probability, 0.5, 1e-12);
}

TEST(DenseUnitary, RandomTwoQubitAgainstOracle) {
    std::mt19937_64 rng = make_rng(7);
    // random 4x4 unitary via Gram-Schmidt on a random complex matrix
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<cplx>> m(4, std::vector<cplx>(4));
    for (auto& row : m)
        for (auto& x : row) x = cplx(gauss(rng), gauss(rng));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < i; ++j) {
            cplx dot = 0.0;
            for (int k = 0; k < 4; ++k) dot += std::conj(m[j][k]) * m[i][k];
            for (int k = 0; k < 4; ++k) m[i][k] -= dot * m[j][k];
        }
        double norm = 0.0;
        for (int k = 0; k < 4; ++k) norm += std::norm(m[i][k]);
        for (int k = 0; k < 4; ++k) m[i][k] /= std::sqrt(norm);
    }
    DenseUnitary u;
    u.target_sites = {1, 2};
    u.dims = {2, 2};
    u.matrix = m;
    u.validate();

    RegisterLayout l;
    l.add_register("q", 4, 2);
    SparseState s(l);
    s = prepare_distribution(s, "q", [] {
        ClassicalDistribution d;
        d.add({0, 0, 0, 0}, 0.25);
        d.add({1, 1, 0, 1}, 0.25);
        d.add({0, 1, 1, 0}, 0.5);
        return d;
    }());
    testing::DenseVec dv = testing::DenseVec::from_sparse(s);
    SparseState got = apply_dense_unitary(s, u);
    dv.apply_dense(u);
    EXPECT_LT(dv.max_deviation(got), 1e-9);
}

TEST(DenseUnitary, Errors) {
    RegisterLayout l;
    l.add_register("q", 10, 2);
    SparseState s(l);
    DenseUnitary u = DenseUnitary::identity({0, 1, 2, 3, 4, 5, 6, 7, 8}, std::vector<int>(9, 2));
    EXPECT_THROW(apply_dense_unitary(s, u), Error);  // 2^9 > 256 cap
    DenseUnitary bad;
    bad.target_sites = {0};
    bad.dims = {2};
    bad.matrix = {{1.0, 1.0}, {0.0, 1.0}};
    EXPECT_THROW(apply_dense_unitary(s, bad), Error);  // not unitary
}

TEST(Measurement, BellMarginal) {
    SparseState s = bell_pair();
    auto b = measurement_branches(s, {0});
    ASSERT_EQ(b.size(), 2u);
    EXPECT_NEAR(b[0].probability, 0.5, 1e-12);
    EXPECT_EQ(b[0].state.read_classical("b").value(), (std::vector<uint8_t>{0}));
    EXPECT_EQ(b[1].state.read_classical("b").value(), (std::vector<uint8_t>{1}));
}

TEST(Measurement, TwoIndependentCoinsProductProbabilities) {
    RegisterLayout l;
    l.add_register("c1", 1, 2);
    l.add_register("c2", 1, 2);
    SparseState s(l);
    s = prepare_distribution(s, "c1", ClassicalDistribution::bernoulli(0.75));
    s = prepare_distribution(s, "c2", ClassicalDistribution::bernoulli(2.0 / 3.0));
    auto b = measurement_branches(s, {0, 1});
    ASSERT_EQ(b.size(), 4u);
    double total = 0.0;
    for (const auto& br : b) {
        double pc1 = br.outcome[0] ? 0.75 : 0.25;
        double pc2 = br.outcome[1] ? 2.0 / 3.0 : 1.0 / 3.0;
        EXPECT_NEAR(br.probability, pc1 * pc2, 1e-12);
        total += br.probability;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Measurement, SampledDeterministicGivenSeed) {
    SparseState s = bell_pair();
    auto r1 = make_rng(42);
    auto r2 = make_rng(42);
    auto [o1, s1] = measure(s, {0, 1}, r1);
    auto [o2, s2] = measure(s, {0, 1}, r2);
    EXPECT_EQ(o1, o2);
    EXPECT_TRUE(approx_equal(s1, s2));
}

TEST(Project, BellAndOutsideSupport) {
    SparseState s = bell_pair();
    auto p = project(s, {0}, {0});
    EXPECT_NEAR(p.probability, 0.5, 1e-12);
    EXPECT_FALSE(p.zero);
    EXPECT_EQ(p.state.read_classical("b").value(), (std::vector<uint8_t>{0}));

    RegisterLayout l;
    l.add_register("q", 1, 3);
    SparseState t(l);
    t = prepare_distribution(t, "q", ClassicalDistribution::point({1}));
    auto z = project(t, {0}, {2});
    EXPECT_TRUE(z.zero);
    EXPECT_NEAR(z.probability, 0.0, 1e-12);
}

TEST(Project, CoinAncillaMatchesEnumerationOracle) {
    // Three biased coins, C^3X into an ancilla; P[ancilla=1] must equal the
    // product of per-coin 1-probabilities.
    RegisterLayout l;
    l.add_register("coins", 3, 2);
    l.add_register("anc", 1, 2);
    SparseState s(l);
    ClassicalDistribution per = ClassicalDistribution::bernoulli(2.0 / 3.0);
    s = prepare_distribution(s, "coins", per.product(per).product(per));
    auto cnx = BasisBijection::accumulate(
        {0, 1, 2}, {2, 2, 2}, {3}, {2},
        [](const std::vector<uint8_t>& v) -> std::vector<uint8_t> {
            return {static_cast<uint8_t>(v[0] & v[1] & v[2])};
        });
    s = apply_permutation(s, cnx);
    auto p = project(s, {3}, {1});
    EXPECT_NEAR(p.probability, std::pow(2.0 / 3.0, 3), 1e-12);
}

TEST(Schmidt, ProductAndBell) {
    RegisterLayout l;
    l.add_register("a", 1, 2);
    l.add_register("b", 1, 2);
    SparseState s(l);
    s = prepare_distribution(s, "a", ClassicalDistribution::uniform(2));
    s = prepare_distribution(s, "b", ClassicalDistribution::uniform(2));
    EXPECT_EQ(schmidt_rank(s, {0}, {1}), 1);
    EXPECT_EQ(schmidt_rank(bell_pair(), {0}, {1}), 2);
}

TEST(State, ExtendAppendsZeroRegisters) {
    SparseState s = bell_pair();
    SparseState e = s.extend({{"c", {3}}});
    EXPECT_EQ(e.layout().total_sites(), 3);
    EXPECT_EQ(e.support_size(), s.support_size());
    EXPECT_TRUE(e.register_is_zero("c"));
    EXPECT_NEAR(e.norm_sq(), 1.0, 1e-12);
}

TEST(State, NormalizationMaintained) {
    std::mt19937_64 rng = make_rng(3);
    RegisterLayout l;
    l.add_register("a", 2, 3);
    l.add_register("b", 1, 5);
    SparseState s(l);
    ClassicalDistribution d;
    d.add({0, 0}, 0.5);
    d.add({1, 2}, 0.3);
    d.add({2, 1}, 0.2);
    s = prepare_distribution(s, "a", d);
    s = prepare_distribution(s, "b", ClassicalDistribution::uniform(5));
    EXPECT_NEAR(s.norm_sq(), 1.0, 1e-9);
    auto [o, t] = measure(s, {0}, rng);
    EXPECT_NEAR(t.norm_sq(), 1.0, 1e-9);
}
