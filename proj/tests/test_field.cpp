#include <catch2/catch_amalgamated.hpp>
#include <atomic>
#include <thread>

#include "helpers.hpp"
#include "oracle.hpp"

using namespace th;

TEST_CASE("eval_sign matches the interval-refinement oracle on Q(sqrt2)") {
    auto f = sqrt2_field();
    const oracle::QVec minp{-2, 0, 1};

    auto a = FieldElem::alpha(f);
    // alpha - 1
    CHECK(eval_sign(a - fe(f, 1)) == oracle::sign_at_root(minp, 1, 2, {-1, 1}));
    CHECK(eval_sign(a - fe(f, 1)) == 1);
    // 3 - 2 alpha
    CHECK(eval_sign(fe(f, 3) - (a + a)) == oracle::sign_at_root(minp, 1, 2, {3, -2}));
    CHECK(eval_sign(fe(f, 3) - (a + a)) == 1);
    CHECK(eval_sign(FieldElem::zero(f)) == 0);
    CHECK(eval_sign(fe(f, 1) - a) == -1);
}

TEST_CASE("to_float hits the oracle enclosure") {
    auto f = sqrt2_field();
    auto a = FieldElem::alpha(f);
    const double root2 = oracle::approx_at_root({-2, 0, 1}, 1, 2, {0, 1}, oracle::QQ(1, 1'000'000'000'000'000LL))
                             .convert_to<double>();
    CHECK(to_float(a) == Catch::Approx(root2).margin(1e-15));
    CHECK(to_float(a) == Catch::Approx(1.4142135623730951).margin(3e-16));
    CHECK(to_float(fe(f, "1/2")) == 0.5);
    CHECK(to_float(-a) == Catch::Approx(-1.4142135623730951).margin(3e-16));
}

TEST_CASE("field axioms hold exactly on random elements") {
    auto f = Field::make({Int(-1), Int(-1), Int(0), Int(1)}, Rat(1), Rat(2)); // x^3 - x - 1
    TestRng rng(42);
    auto rand_elem = [&] {
        std::vector<Rat> c;
        for (int i = 0; i < 3; ++i) c.push_back(rng.rat(6, 4));
        return FieldElem::from_coords(f, c);
    };
    for (int it = 0; it < 50; ++it) {
        const auto a = rand_elem(), b = rand_elem(), c = rand_elem();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK(a * a.inverse() == FieldElem::one(f));
        // sign is multiplicative
        CHECK(eval_sign(a * b) == eval_sign(a) * eval_sign(b));
    }
}

TEST_CASE("to_float respects exact order") {
    auto f = sqrt2_field();
    TestRng rng(7);
    for (int it = 0; it < 40; ++it) {
        const auto a = FieldElem::from_coords(f, {rng.rat(8, 5), rng.rat(8, 5)});
        const auto b = FieldElem::from_coords(f, {rng.rat(8, 5), rng.rat(8, 5)});
        if (eval_sign(a - b) == 1) CHECK(to_float(a, 60) >= to_float(b, 60));
    }
}

TEST_CASE("degree-1 fields degenerate to plain rationals") {
    auto f = rat_field();
    CHECK(f->degree() == 1);
    const auto h = fe(f, "3/7");
    CHECK(h.is_rational());
    CHECK((h * fe(f, "7/3")) == FieldElem::one(f));
    CHECK(to_float(h) == 3.0 / 7.0);
    CHECK(eval_sign(h) == 1);
    CHECK(FieldElem::alpha(f).is_zero()); // alpha = 0 for the stock field
}

TEST_CASE("floor and mod1 are exact") {
    auto f = sqrt2_field();
    auto a = FieldElem::alpha(f);
    CHECK(a.floor() == 1);
    CHECK((-a).floor() == -2);
    CHECK((a + a).floor() == 2);
    CHECK(a.mod1() == a - fe(f, 1));
    CHECK(fe(f, "-7/2").floor() == -4);
    CHECK(fe(f, "-7/2").mod1() == fe(f, "1/2"));
    CHECK(fe(f, 5).mod1().is_zero());
}

TEST_CASE("field spec validation rejects bad input") {
    CHECK_THROWS_AS(Field::make({Int(-2), Int(0), Int(1)}, Rat(1), Rat(1)), InvalidField);
    // two roots in the interval
    CHECK_THROWS_AS(Field::make({Int(-2), Int(0), Int(1)}, Rat(-2), Rat(2)), InvalidField);
    // no root
    CHECK_THROWS_AS(Field::make({Int(-2), Int(0), Int(1)}, Rat(2), Rat(3)), InvalidField);
    // not squarefree: (x-1)^2
    CHECK_THROWS_AS(Field::make({Int(1), Int(-2), Int(1)}, Rat(0), Rat(2)), InvalidField);
    // endpoint is a root
    CHECK_THROWS_AS(Field::make({Int(0), Int(1)}, Rat(0), Rat(1)), InvalidField);
}

TEST_CASE("mixing fields is rejected") {
    auto f = sqrt2_field();
    auto g = rat_field();
    CHECK_THROWS_AS(fe(f, 1) + fe(g, 1), FieldMismatch);
}

TEST_CASE("sign queries are safe from concurrent threads") {
    auto f = Field::make({Int(-3), Int(0), Int(0), Int(1)}, Rat(1), Rat(2)); // cbrt(3)
    auto a = FieldElem::alpha(f);
    std::vector<std::thread> workers;
    std::atomic<int> bad{0};
    for (int w = 0; w < 4; ++w)
        workers.emplace_back([&, w] {
            for (int i = 1; i <= 50; ++i) {
                // a^3 = 3, so i*a - 2i > 0 iff a > 2 (never) and small perturbations stay exact
                const auto e = fe(f, i) * a - fe(f, i);
                if (eval_sign(e) != 1) ++bad;
                const auto tiny = a - fe(f, std::string("1442249570/1000000000"));
                if (eval_sign(tiny) * eval_sign(-tiny) != -1) ++bad;
                (void)w;
            }
        });
    for (auto& t : workers) t.join();
    CHECK(bad.load() == 0);
}

TEST_CASE("degree-4 field: power-basis reduction is exact") {
    // alpha = sqrt2 + sqrt3, minimal polynomial x^4 - 10x^2 + 1, root in (3, 4)... 
    // alpha ~ 3.146 lies in (3, 4); (alpha^2 - 5)^2 = 24 exactly.
    auto f = Field::make({Int(1), Int(0), Int(-10), Int(0), Int(1)}, Rat(3), Rat(4));
    auto a = FieldElem::alpha(f);
    const auto lhs = (a * a - fe(f, 5)) * (a * a - fe(f, 5));
    CHECK(lhs == fe(f, 24));
    CHECK(to_float(a) == Catch::Approx(std::sqrt(2.0) + std::sqrt(3.0)).margin(1e-14));
    // inverse: alpha * alpha^-1 = 1 and sign of alpha^-1 - 1/4 (alpha^-1 ~ 0.318)
    const auto inv = a.inverse();
    CHECK(a * inv == FieldElem::one(f));
    CHECK(eval_sign(inv - fe(f, "1/4")) == 1);
    CHECK(eval_sign(inv - fe(f, "1/3")) == -1);
}

TEST_CASE("floor stays exact at large magnitudes") {
    auto f = sqrt2_field();
    auto a = FieldElem::alpha(f);
    // 10^12 * alpha: floor is floor(1414213562373.095...)
    const auto big = fe(f, "1000000000000") * a;
    CHECK(big.floor() == Int("1414213562373"));
    CHECK((-big).floor() == Int("-1414213562374"));
    const auto frac = big.mod1();
    CHECK(eval_sign(frac) >= 0);
    CHECK(eval_sign(frac - fe(f, 1)) < 0);
}
