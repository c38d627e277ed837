#include <doctest.h>

#include <set>
#include <vector>

#include "bswpt/rng.hpp"
#include "bswpt/training.hpp"

using namespace bswpt;

TEST_SUITE("training") {

TEST_CASE("pn chips are symmetric and reproducible") {
    RngStream rng(42, 0, StreamLabel::chips);
    long sum = 0;
    const long trials = 250;
    for (long t = 0; t < trials; ++t) {
        const TrainingSequence seq = gen_pn(400, rng);
        for (int c : seq.chips) {
            CHECK((c == 1 || c == -1));
            sum += c;
        }
    }
    const double mean = static_cast<double>(sum) / (400.0 * trials);
    CHECK(std::abs(mean) < 0.02);

    RngStream a(7, 3, StreamLabel::chips), b(7, 3, StreamLabel::chips);
    CHECK(gen_pn(64, a).chips == gen_pn(64, b).chips);
}

TEST_CASE("pn draws are balanced only by chance") {
    // For nc=4, ns=1 exactly C(4,2)=6 of the 16 equiprobable sequences are
    // balanced; enumerate to fix the oracle, then sample.
    int balanced_patterns = 0;
    for (int bits = 0; bits < 16; ++bits) {
        int sum = 0;
        for (int k = 0; k < 4; ++k) sum += (bits >> k & 1) ? 1 : -1;
        if (sum == 0) ++balanced_patterns;
    }
    CHECK(balanced_patterns == 6);

    RngStream rng(3, 0, StreamLabel::chips);
    long hits = 0;
    const long trials = 100000;
    for (long t = 0; t < trials; ++t)
        if (is_balanced(gen_pn(4, rng), 1)) ++hits;
    CHECK(static_cast<double>(hits) / trials == doctest::Approx(6.0 / 16.0).epsilon(0.05));
}

TEST_CASE("balanced generator produces the canonical half/half pattern") {
    CHECK(gen_balanced(1, 2).chips == std::vector<int>{1, -1});
    CHECK(gen_balanced(2, 2).chips == std::vector<int>{1, -1, 1, -1});
    CHECK(gen_balanced(1, 4).chips == std::vector<int>{1, 1, -1, -1});
    CHECK_THROWS_WITH_AS(gen_balanced(2, 3), doctest::Contains("even"),
                         invalid_parameter_error);
}

TEST_CASE("alternating generator flips every chip") {
    CHECK(gen_alternating(1, 2).chips == std::vector<int>{1, -1});
    CHECK(gen_alternating(1, 4).chips == std::vector<int>{1, -1, 1, -1});
    CHECK(gen_alternating(2, 4).chips == std::vector<int>{1, -1, 1, -1, 1, -1, 1, -1});
    CHECK_THROWS_AS(gen_alternating(1, 5), invalid_parameter_error);
}

TEST_CASE("hadamard rows follow the sylvester construction") {
    CHECK(walsh_hadamard_row(2, 1).chips == std::vector<int>{1, -1});
    const TrainingSequence all_ones = walsh_hadamard_row(4, 0);
    CHECK(all_ones.chips == std::vector<int>{1, 1, 1, 1});
    CHECK_FALSE(is_balanced(all_ones, 1));
    CHECK(walsh_hadamard_row(4, 2).chips == std::vector<int>{1, 1, -1, -1});
    CHECK(is_balanced(walsh_hadamard_row(4, 2), 1));

    CHECK_THROWS_AS(walsh_hadamard_row(6, 0), invalid_parameter_error);
    CHECK_THROWS_AS(walsh_hadamard_row(4, 4), invalid_parameter_error);
}

TEST_CASE("distinct hadamard rows are orthogonal up to order 64") {
    for (long order = 2; order <= 64; order *= 2) {
        for (long a = 0; a < order; ++a) {
            for (long b = a + 1; b < order; ++b) {
                const auto ra = walsh_hadamard_row(order, a).chips;
                const auto rb = walsh_hadamard_row(order, b).chips;
                long dot = 0;
                for (long c = 0; c < order; ++c) dot += ra[c] * rb[c];
                CHECK(dot == 0);
            }
        }
        // Every nonzero row has a global zero sum.
        for (long r = 1; r < order; ++r) {
            long sum = 0;
            for (int c : walsh_hadamard_row(order, r).chips) sum += c;
            CHECK(sum == 0);
        }
    }
}

TEST_CASE("is_balanced checks every per-symbol window") {
    TrainingSequence seq;
    seq.chips = {1, -1, 1, -1};
    CHECK(is_balanced(seq, 2));
    seq.chips = {1, 1, -1, -1};
    CHECK_FALSE(is_balanced(seq, 2));
    CHECK(is_balanced(seq, 1));
    CHECK_THROWS_WITH_AS(is_balanced(seq, 3), doctest::Contains("divide"),
                         invalid_parameter_error);
}

TEST_CASE("generated balanced sequences satisfy their own criterion") {
    RngStream rng(11, 0, StreamLabel::chips);
    for (int rep = 0; rep < 100; ++rep) {
        const long ns = 1 + static_cast<long>(rng.next_u64() % 20);
        const long k = 2 * (1 + static_cast<long>(rng.next_u64() % 20));
        CHECK(is_balanced(gen_balanced(ns, k), ns));
        CHECK(is_balanced(gen_alternating(ns, k), ns));
    }
}

TEST_CASE("lfsr emits a maximal-length bipolar sequence") {
    for (int degree : {3, 5, 8, 10}) {
        const TrainingSequence seq = gen_lfsr(degree);
        const long len = (1L << degree) - 1;
        REQUIRE(static_cast<long>(seq.chips.size()) == len);
        long sum = 0;
        for (int c : seq.chips) {
            CHECK((c == 1 || c == -1));
            sum += c;
        }
        // m-sequences carry one extra -1 chip.
        CHECK(sum == -1);
        // Maximal length: every degree-wide window of states is distinct.
        std::set<std::vector<int>> windows;
        for (long i = 0; i < len; ++i) {
            std::vector<int> w(degree);
            for (int j = 0; j < degree; ++j) w[j] = seq.chips[(i + j) % len];
            windows.insert(w);
        }
        CHECK(static_cast<long>(windows.size()) == len);
    }
    CHECK_THROWS_AS(gen_lfsr(1), invalid_parameter_error);
    CHECK_THROWS_AS(gen_lfsr(17), invalid_parameter_error);
}

}  // TEST_SUITE
