#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "oracle.hpp"

using namespace th;

TEST_CASE("solve: identity, homogeneous, strip a-coefficients") {
    auto f = sqrt2_field();
    auto a = FieldElem::alpha(f);
    const FMat id = FMat::identity(2, f);
    const auto x = solve(id, FVec{a, fe(f, 1)});
    REQUIRE(x);
    CHECK(vec_eq(*x, FVec{a, fe(f, 1)}));

    // X3 = a1 X1 + a2 X2 for X1=(1,0), X2=(0,1), X3=(0,-1)
    const FMat b = FMat::from_columns({fv(f, {1L, 0L}), fv(f, {0L, 1L})}, 2, f);
    const auto coeffs = solve(b, fv(f, {0L, -1L}));
    REQUIRE(coeffs);
    CHECK(vec_eq(*coeffs, fv(f, {0L, -1L})));

    // inconsistent system
    const FMat m = FMat::from_rows({fv(f, {1L, 0L}), fv(f, {1L, 0L})}, 2, f);
    CHECK_FALSE(solve(m, fv(f, {0L, 1L})));
}

TEST_CASE("nullspace: strip kernel, invertible, zero matrix") {
    auto f = rat_field();
    const FMat pi = FMat::from_columns({fv(f, {1L, 0L}), fv(f, {0L, 1L}), fv(f, {0L, -1L})}, 2, f);
    const auto ker = nullspace(pi);
    REQUIRE(ker.size() == 1);
    CHECK(vec_eq(ker[0], fv(f, {0L, 1L, 1L})));

    CHECK(nullspace(FMat::identity(3, f)).empty());

    const FMat zero(2, 3, f);
    CHECK(nullspace(zero).size() == 3);
}

TEST_CASE("rank-nullity and kernel exactness on random matrices") {
    auto f = sqrt2_field();
    TestRng rng(11);
    for (int it = 0; it < 30; ++it) {
        const int r = static_cast<int>(rng.range(1, 4)), c = static_cast<int>(rng.range(1, 4));
        FMat m(r, c, f);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                m.at(i, j) = FieldElem::from_coords(f, {rng.rat(4, 3), rng.rat(2, 2)});
        const auto ker = nullspace(m);
        CHECK(static_cast<int>(ker.size()) + rank(m) == c);
        for (const auto& v : ker) CHECK(is_zero_vec(mat_vec(m, v)));
    }
}

TEST_CASE("hnf golden cases") {
    auto check_hnf = [](const IMat& m) {
        const auto [h, u] = hnf(m);
        // H = M U exactly
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) {
                Int s = 0;
                for (int k = 0; k < m.cols; ++k) s += m.at(i, k) * u.at(k, j);
                REQUIRE(s == h.at(i, j));
            }
        const Int du = int_det(u);
        REQUIRE((du == 1 || du == -1));
        return h;
    };

    IMat d2(2, 2);
    d2.at(0, 0) = 2;
    d2.at(1, 1) = 3;
    auto h = check_hnf(d2);
    CHECK(h.at(0, 0) == 2);
    CHECK(h.at(1, 1) == 3);
    CHECK(h.at(0, 1) == 0);
    CHECK(h.at(1, 0) == 0);

    IMat tri(2, 2); // [[1,1],[0,1]] -> identity up to convention
    tri.at(0, 0) = 1;
    tri.at(0, 1) = 1;
    tri.at(1, 1) = 1;
    h = check_hnf(tri);
    CHECK(h.at(0, 0) == 1);
    CHECK(h.at(0, 1) == 0);
    CHECK(h.at(1, 1) == 1);

    IMat row(1, 2); // [[4, 6]] -> [[2, 0]]
    row.at(0, 0) = 4;
    row.at(0, 1) = 6;
    h = check_hnf(row);
    CHECK(h.at(0, 0) == 2);
    CHECK(h.at(0, 1) == 0);
}

TEST_CASE("hnf preserves the column lattice on random matrices") {
    TestRng rng(23);
    for (int it = 0; it < 40; ++it) {
        const int r = static_cast<int>(rng.range(1, 3)), c = static_cast<int>(rng.range(1, 4));
        IMat m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = rng.range(-6, 6);
        const auto [h, u] = hnf(m);
        const Int du = int_det(u);
        CHECK((du == 1 || du == -1));
        // mutual membership of columns decides lattice equality
        for (int j = 0; j < c; ++j) {
            CHECK(integer_solve(m, h.col(j)).has_value());
            CHECK(integer_solve(h, m.col(j)).has_value());
        }
    }
}

TEST_CASE("integer_solve golden cases") {
    IMat a(1, 1);
    a.at(0, 0) = 2;
    const auto s1 = integer_solve(a, {Int(4)});
    REQUIRE(s1);
    CHECK((*s1)[0] == 2);
    CHECK_FALSE(integer_solve(a, {Int(3)}));
}

TEST_CASE("integer_solve agrees with bounded brute force on random 3x4 systems") {
    TestRng rng(31);
    for (int it = 0; it < 60; ++it) {
        IMat a(3, 4);
        std::vector<std::vector<oracle::ZZ>> rows(3, std::vector<oracle::ZZ>(4));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j) {
                const long v = rng.range(-5, 5);
                a.at(i, j) = v;
                rows[i][j] = v;
            }
        // right-hand sides from a known bounded solution half the time
        IVec b(3, Int(0));
        std::vector<oracle::ZZ> bo(3);
        if (it % 2 == 0) {
            std::vector<long> c{rng.range(-2, 2), rng.range(-2, 2), rng.range(-2, 2), rng.range(-2, 2)};
            for (int i = 0; i < 3; ++i) {
                Int s = 0;
                for (int j = 0; j < 4; ++j) s += a.at(i, j) * c[j];
                b[i] = s;
                bo[i] = oracle::ZZ(s.str());
            }
        } else {
            for (int i = 0; i < 3; ++i) {
                const long v = rng.range(-4, 4);
                b[i] = v;
                bo[i] = v;
            }
        }
        const auto mine = integer_solve(a, b);
        if (mine) {
            // verify the returned solution exactly
            for (int i = 0; i < 3; ++i) {
                Int s = 0;
                for (int j = 0; j < 4; ++j) s += a.at(i, j) * (*mine)[j];
                CHECK(s == b[i]);
            }
        } else {
            // brute force box must be empty too (box bound chosen vs. data scale)
            CHECK_FALSE(oracle::bounded_integer_solve(rows, bo, 3).has_value());
        }
    }
}

TEST_CASE("field determinant and inverse") {
    auto f = sqrt2_field();
    auto a = FieldElem::alpha(f);
    FMat m(2, 2, f);
    m.at(0, 0) = a;
    m.at(1, 1) = a;
    CHECK(det(m) == fe(f, 2));
    const auto inv = inverse(m);
    REQUIRE(inv);
    CHECK(mat_mul(*inv, m).at(0, 0) == FieldElem::one(f));
    FMat sing(2, 2, f);
    sing.at(0, 0) = a;
    sing.at(0, 1) = a;
    sing.at(1, 0) = a;
    sing.at(1, 1) = a;
    CHECK(det(sing).is_zero());
    CHECK_FALSE(inverse(sing));
}

TEST_CASE("integer_kernel is saturated and exact") {
    TestRng rng(77);
    for (int it = 0; it < 30; ++it) {
        const int r = static_cast<int>(rng.range(1, 3)), c = static_cast<int>(rng.range(2, 5));
        IMat m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = rng.range(-4, 4);
        const auto basis = integer_kernel(m);
        for (const auto& v : basis)
            for (int i = 0; i < r; ++i) {
                Int s = 0;
                for (int j = 0; j < c; ++j) s += m.at(i, j) * v[j];
                REQUIRE(s == 0);
            }
        if (basis.empty()) continue;
        // saturation: every small kernel vector is an integer combination
        IMat bmat(c, static_cast<int>(basis.size()));
        for (std::size_t k = 0; k < basis.size(); ++k)
            for (int j = 0; j < c; ++j) bmat.at(j, static_cast<int>(k)) = basis[k][j];
        std::vector<long> cand(c, -2);
        while (true) {
            bool in_kernel = true;
            for (int i = 0; i < r && in_kernel; ++i) {
                Int s = 0;
                for (int j = 0; j < c; ++j) s += m.at(i, j) * cand[j];
                in_kernel = (s == 0);
            }
            if (in_kernel) {
                IVec target(c);
                for (int j = 0; j < c; ++j) target[j] = cand[j];
                CHECK(integer_solve(bmat, target).has_value());
            }
            int j = 0;
            for (; j < c; ++j) {
                if (cand[j] < 2) {
                    ++cand[j];
                    break;
                }
                cand[j] = -2;
            }
            if (j == c) break;
        }
    }
}
