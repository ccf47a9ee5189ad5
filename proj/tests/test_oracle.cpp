#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "spinfetch/errors.hpp"
#include "spinfetch/oracle.hpp"
#include "test_util.hpp"

using namespace spinfetch;
using testutil::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

SpinSystem fixture_alanine() {
    return SpinSystem::with_ancilla_couplings(2, {35.1, 54.2}, 1.0);
}

// The pulse-programmed query for marked = {10,11}: controlled ancilla flip
// via the J01 coupling, with the spectator J02 refocused by a mid-delay echo.
std::vector<PulseEvent> query_sequence(double j01_hz) {
    const double tau = 1.0 / (2.0 * j01_hz);
    return {
        Rotation{Axis::MinusY, kPi / 2, {0}},
        Rotation{Axis::MinusZ, kPi / 2, {0, 1}},
        Delay{tau / 2, true},
        Rotation{Axis::X, kPi, {2}},
        Delay{tau / 2, true},
        Rotation{Axis::X, kPi, {2}},
        Rotation{Axis::Y, kPi / 2, {0}},
    };
}

}  // namespace

TEST_CASE("marked-set parsing") {
    const MarkedSet set = MarkedSet::parse(" 10, 11 ", 2);
    CHECK(set.items == std::vector<std::uint32_t>{0b10, 0b11});
    CHECK(set.contains(0b10));
    CHECK_FALSE(set.contains(0b01));
    CHECK(set.to_string() == "10,11");

    CHECK(MarkedSet::parse("", 2).empty());
    CHECK(MarkedSet::parse("11,11", 2).size() == 1);
    CHECK_THROWS_AS(MarkedSet::parse("101", 2), Error);
    CHECK_THROWS_AS(MarkedSet::parse("1x", 2), Error);
}

TEST_CASE("compiled query matrix for two marked items") {
    const SpinSystem sys = fixture_alanine();
    const OracleUnitary oracle = compile_oracle(sys, MarkedSet::parse("10,11", 2));

    // Block-diagonal permutation: identity on rows 1,2,5,6 and the swaps
    // (3<->7), (4<->8) in 1-based order.
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(8, 8);
    expected(0, 0) = 1;
    expected(1, 1) = 1;
    expected(2, 6) = 1;
    expected(3, 7) = 1;
    expected(4, 4) = 1;
    expected(5, 5) = 1;
    expected(6, 2) = 1;
    expected(7, 3) = 1;
    CHECK(max_abs_diff(oracle.matrix, expected) == 0.0);

    SUBCASE("empty set compiles to the identity") {
        const OracleUnitary empty = compile_oracle(sys, MarkedSet::parse("", 2));
        CHECK(max_abs_diff(empty.matrix, Eigen::MatrixXcd::Identity(8, 8)) == 0.0);
    }
    SUBCASE("hand-built item lists are canonicalized") {
        MarkedSet unsorted;
        unsorted.n_register = 2;
        unsorted.items = {0b11, 0b10, 0b11};
        const OracleUnitary canonical = compile_oracle(sys, unsorted);
        CHECK(max_abs_diff(canonical.matrix, oracle.matrix) == 0.0);
        CHECK(canonical.marked.to_string() == "10,11");
        CHECK(canonical.marked.contains(0b10));
    }
}

TEST_CASE("single marked item flips only its own ancilla pair") {
    SpinSystem sys = SpinSystem::with_ancilla_couplings(3, {20.0, 40.0, 80.0});
    const OracleUnitary oracle = compile_oracle(sys, MarkedSet::parse("101", 3));
    for (std::uint32_t b = 0; b < 16; ++b) {
        Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(16);
        basis(b) = 1.0;
        const Eigen::VectorXcd image = oracle.matrix * basis;
        const std::uint32_t reg = b & 0b111u;
        const std::uint32_t expected_index = reg == 0b101u ? (b ^ 0b1000u) : b;
        for (std::uint32_t r = 0; r < 16; ++r)
            CHECK(image(r) == Complex{r == expected_index ? 1.0 : 0.0, 0.0});
    }
}

TEST_CASE("every compiled oracle is a self-inverse permutation fixing the register") {
    std::mt19937 rng(101);
    for (int n = 1; n <= 5; ++n) {
        const auto dim = static_cast<Eigen::Index>(1) << (n + 1);
        for (int trial = 0; trial < 20; ++trial) {
            SpinSystem sys = testutil::random_system(rng, n);
            const MarkedSet marked = testutil::random_marked(rng, n);
            const OracleUnitary oracle = compile_oracle(sys, marked);

            // 0/1 entries, one per row and column.
            for (Eigen::Index r = 0; r < dim; ++r) {
                int row_ones = 0;
                for (Eigen::Index c = 0; c < dim; ++c) {
                    const Complex v = oracle.matrix(r, c);
                    CHECK((v == Complex{0.0, 0.0} || v == Complex{1.0, 0.0}));
                    if (v == Complex{1.0, 0.0}) ++row_ones;
                }
                CHECK(row_ones == 1);
            }
            CHECK(max_abs_diff(oracle.matrix * oracle.matrix,
                               Eigen::MatrixXcd::Identity(dim, dim)) == 0.0);

            // The xor rule on every basis vector: register untouched,
            // ancilla flipped exactly on marked values.
            for (Eigen::Index b = 0; b < dim; ++b) {
                const auto reg = static_cast<std::uint32_t>(b) & ((1u << n) - 1);
                const auto expected =
                    marked.contains(reg) ? (static_cast<std::uint32_t>(b) ^ (1u << n)) : b;
                CHECK(oracle.matrix(static_cast<Eigen::Index>(expected), b) == Complex{1.0, 0.0});
            }
        }
    }
}

TEST_CASE("applying the query permutes populations") {
    const SpinSystem sys = fixture_alanine();
    const DeviationDensity prepared = prepare_I0alpha(sys);

    SUBCASE("empty oracle leaves the state alone") {
        const auto oracle = compile_oracle(sys, MarkedSet::parse("", 2));
        CHECK(max_abs_diff(apply_query(prepared, oracle).matrix, prepared.matrix) == 0.0);
    }
    SUBCASE("marked pairs swap their ancilla populations") {
        const auto oracle = compile_oracle(sys, MarkedSet::parse("10,11", 2));
        const DeviationDensity queried = apply_query(prepared, oracle);
        Eigen::VectorXd expected(8);
        expected << 0.5, 0.5, -0.5, -0.5, -0.5, -0.5, 0.5, 0.5;
        for (Eigen::Index b = 0; b < 8; ++b)
            CHECK(queried.matrix(b, b).real() == doctest::Approx(expected(b)).epsilon(1e-14));
        CHECK(queried.identity_offset == prepared.identity_offset);

        SUBCASE("the oracle is its own inverse on states") {
            const DeviationDensity twice = apply_query(queried, oracle);
            CHECK(max_abs_diff(twice.matrix, prepared.matrix) == 0.0);
        }
    }
    SUBCASE("dimension mismatch is rejected") {
        const auto oracle = compile_oracle(SpinSystem::with_ancilla_couplings(1, {20.0}),
                                           MarkedSet::parse("1", 1));
        CHECK_THROWS_AS(apply_query(prepared, oracle), Error);
    }
}

TEST_CASE("query conjugation preserves the eigenvalue multiset") {
    std::mt19937 rng(131);
    const SpinSystem sys = testutil::random_system(rng, 2);
    const DeviationDensity rho{testutil::random_hermitian(rng, 8), 0.0};
    const auto oracle = compile_oracle(sys, testutil::random_marked(rng, 2));
    const DeviationDensity queried = apply_query(rho, oracle);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> before(rho.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> after(queried.matrix);
    for (Eigen::Index i = 0; i < 8; ++i)
        CHECK(before.eigenvalues()(i) == doctest::Approx(after.eigenvalues()(i)).epsilon(1e-10));
}

TEST_CASE("query functional on pure and mixed inputs") {
    const SpinSystem sys = fixture_alanine();
    const auto oracle = compile_oracle(sys, MarkedSet::parse("10,11", 2));

    auto pure_item = [](std::uint32_t x) {
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
        rho(x, x) = 1.0;
        return rho;
    };

    SUBCASE("pure items score +/- 1/2") {
        CHECK(query_value(pure_item(0b00), oracle) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(query_value(pure_item(0b01), oracle) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(query_value(pure_item(0b10), oracle) == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(query_value(pure_item(0b11), oracle) == doctest::Approx(-0.5).epsilon(1e-12));
    }
    SUBCASE("normalized uniform mixture averages the items") {
        const auto one_marked = compile_oracle(sys, MarkedSet::parse("11", 2));
        const Eigen::MatrixXcd uniform = 0.25 * Eigen::MatrixXcd::Identity(4, 4);
        CHECK(query_value(uniform, one_marked) == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("prepared state and its sub-ensembles agree") {
        const DeviationDensity prepared = prepare_I0alpha(sys);
        const double direct = query_value(prepared, oracle);
        const double summed = ensemble_query(sub_ensembles(prepared, sys), oracle);
        CHECK(direct == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(std::abs(direct - summed) < 1e-10);
    }
    SUBCASE("ensemble query cases") {
        std::vector<SubEnsemble> subs;
        CHECK(ensemble_query(subs, oracle) == 0.0);
        subs.push_back({1.0, BasisState{0, 0b00, 2}});
        CHECK(ensemble_query(subs, oracle) == doctest::Approx(0.5));
        subs.push_back({1.0, BasisState{0, 0b01, 2}});
        subs.push_back({1.0, BasisState{0, 0b10, 2}});
        subs.push_back({1.0, BasisState{0, 0b11, 2}});
        CHECK(ensemble_query(subs, oracle) == doctest::Approx(0.0));
    }
}

TEST_CASE("query functional equals the population-weighted sign count") {
    std::mt19937 rng(151);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    for (int n = 1; n <= 4; ++n) {
        const SpinSystem sys = testutil::random_system(rng, n);
        const MarkedSet marked = testutil::random_marked(rng, n);
        const auto oracle = compile_oracle(sys, marked);
        const auto count = std::size_t{1} << n;

        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(count, count);
        double expected = 0.0;
        for (std::uint32_t x = 0; x < count; ++x) {
            const double w = weight(rng);
            rho(x, x) = w;
            expected += 0.5 * w * (marked.contains(x) ? -1.0 : 1.0);
        }
        CHECK(query_value(rho, oracle) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("pulse-built unitaries") {
    const SpinSystem sys = fixture_alanine();

    SUBCASE("a bare delay of zero is the identity") {
        const Operator u = pulse_unitary({Delay{0.0, true}}, sys);
        CHECK(max_abs_diff(u, Eigen::MatrixXcd::Identity(8, 8)) < 1e-15);
    }
    SUBCASE("opposite rotations cancel") {
        const Operator u = pulse_unitary(
            {Rotation{Axis::Y, kPi / 2, {1}}, Rotation{Axis::MinusY, kPi / 2, {1}}}, sys);
        CHECK(max_abs_diff(u, Eigen::MatrixXcd::Identity(8, 8)) < 1e-14);
    }
    SUBCASE("gradients cannot be expressed as a unitary") {
        CHECK_THROWS_AS(pulse_unitary({Gradient{}}, sys), Error);
    }
    SUBCASE("the programmed query equals the compiled matrix up to a global phase") {
        const Operator sequence = pulse_unitary(query_sequence(35.1), sys);
        const OracleUnitary compiled = compile_oracle(sys, MarkedSet::parse("10,11", 2));
        const Operator product = sequence * compiled.matrix.adjoint();
        const Complex phase = product(0, 0);
        CHECK(std::abs(phase) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(max_abs_diff(product, phase * Eigen::MatrixXcd::Identity(8, 8)) < 1e-10);
    }
    SUBCASE("the programmed query transforms the prepared state identically") {
        const Operator sequence = pulse_unitary(query_sequence(35.1), sys);
        const DeviationDensity prepared = prepare_I0alpha(sys);
        const DeviationDensity via_matrix =
            apply_query(prepared, compile_oracle(sys, MarkedSet::parse("10,11", 2)));
        const Eigen::MatrixXcd via_sequence =
            sequence * prepared.matrix * sequence.adjoint();
        CHECK(max_abs_diff(via_sequence, via_matrix.matrix) < 1e-10);
    }
}
