#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace th;

TEST_CASE("validate: strip triple is valid and smooth") {
    auto f = sqrt2_field();
    const auto vr = validate(strip_triple(f));
    CHECK(vr.valid);
    REQUIRE(vr.smooth.has_value());
    CHECK(*vr.smooth);
}

TEST_CASE("validate: tampered quasilattice fails membership") {
    auto f = sqrt2_field();
    auto t = strip_triple(f);
    t.quasilattice.generators = {fv(f, {1L, 0L}), fv(f, {0L, 2L})}; // Z x 2Z
    const auto vr = validate(t);
    CHECK_FALSE(vr.valid);
    bool membership_failed = false;
    for (const auto& item : vr.items)
        if (item.name == "quasirational" && !item.passed) membership_failed = true;
    CHECK(membership_failed);
}

TEST_CASE("validate: non-simple pyramid is diagnosed") {
    auto f = rat_field();
    DelzantTriple t;
    t.polyhedron = poly(3, {{fv(f, {0L, 0L, 1L}), fe(f, 0)},
                            {fv(f, {1L, 0L, -1L}), fe(f, -1)},
                            {fv(f, {-1L, 0L, -1L}), fe(f, -1)},
                            {fv(f, {0L, 1L, -1L}), fe(f, -1)},
                            {fv(f, {0L, -1L, -1L}), fe(f, -1)}});
    t.quasilattice = standard_lattice(3, f);
    const auto vr = validate(t);
    CHECK_FALSE(vr.valid);
    bool simple_failed = false;
    for (const auto& item : vr.items)
        if (item.name == "simple" && !item.passed) simple_failed = true;
    CHECK(simple_failed);
}

TEST_CASE("construction data: strip, box corner, CP2 simplex") {
    auto f = sqrt2_field();
    auto cons = construction(strip_triple(f));
    REQUIRE(cons.ker_basis.size() == 1);
    CHECK(vec_eq(cons.ker_basis[0], fv(f, {0L, 1L, 1L})));
    CHECK(vec_eq(cons.lambda, fv(f, {-1L, 0L, -1L})));
    CHECK(rank(cons.pi) == 2);

    // d = n: positive quadrant, pi invertible, empty kernel
    auto g = rat_field();
    DelzantTriple quad;
    quad.polyhedron = poly(2, {{fv(g, {1L, 0L}), fe(g, 0)}, {fv(g, {0L, 1L}), fe(g, 0)}});
    quad.quasilattice = standard_lattice(2, g);
    cons = construction(quad);
    CHECK(cons.ker_basis.empty());

    cons = construction(cp2_triple(g));
    REQUIRE(cons.ker_basis.size() == 1);
    CHECK(vec_eq(cons.ker_basis[0], fv(g, {1L, 1L, 1L})));
}

TEST_CASE("atlas: strip charts with trivial groups") {
    auto f = sqrt2_field();
    const auto charts = atlas(strip_triple(f));
    REQUIRE(charts.size() == 2);

    // vertex (-1, 0): tight {0, 1}, a-row for halfspace 2 is (0, -1)
    const auto& ch = charts[0];
    CHECK(vec_eq(ch.vertex, fv(f, {-1L, 0L})));
    CHECK(ch.tight == std::vector<int>{0, 1});
    CHECK(ch.nontight == std::vector<int>{2});
    CHECK(ch.a_coeffs.at(0, 0).is_zero());
    CHECK(ch.a_coeffs.at(0, 1) == fe(f, -1));
    // chart inequality: -|z_2|^2 + 1 > 0
    REQUIRE(ch.inequalities.size() == 1);
    CHECK(ch.inequalities[0].j == 2);
    CHECK(ch.inequalities[0].constant == fe(f, 1));
    CHECK(ch.gamma.is_trivial);
    CHECK(ch.gamma.is_finite);
    REQUIRE(ch.gamma.order.has_value());
    CHECK(*ch.gamma.order == 1);
    CHECK(charts[1].gamma.is_trivial);
}

TEST_CASE("atlas: quasisphere charts carry the irrational wrap group") {
    auto f = sqrt2_field();
    const auto a = FieldElem::alpha(f);
    const auto charts = atlas(quasisphere_triple(f));
    REQUIRE(charts.size() == 2);

    // vertex 0: B = (1), generators {1, a} mod Z reduce to {a - 1}
    const auto& c0 = charts[0];
    CHECK(c0.vertex[0].is_zero());
    REQUIRE(c0.gamma.generators.size() == 1);
    CHECK(c0.gamma.generators[0][0] == a - fe(f, 1));
    CHECK_FALSE(c0.gamma.is_trivial);
    CHECK_FALSE(c0.gamma.is_finite);
    CHECK_FALSE(c0.gamma.order.has_value());

    // vertex 1: B = (-1), generator class of -a
    const auto& c1 = charts[1];
    CHECK(c1.vertex[0] == fe(f, 1));
    REQUIRE(c1.gamma.generators.size() == 1);
    CHECK(c1.gamma.generators[0][0] == fe(f, 2) - a);

    // both generate Z + aZ mod Z: check mutual membership in R^1 modules
    Quasilattice za;
    za.ambient_dim = 1;
    za.generators = {FVec{fe(f, 1)}, FVec{a}};
    for (const auto& ch : charts)
        for (const auto& g : ch.gamma.generators) CHECK(contains(za, g));
}

TEST_CASE("atlas: square has four trivial charts") {
    auto f = rat_field();
    const auto charts = atlas(square_triple(f));
    REQUIRE(charts.size() == 4);
    for (const auto& ch : charts) {
        CHECK(ch.gamma.is_trivial);
        CHECK(ch.tight.size() == 2);
        CHECK(ch.nontight.size() == 2);
    }
}

TEST_CASE("gamma_group golden cases") {
    auto f = rat_field();
    // B = I, Q = Z^n: trivial
    auto g = gamma_group(FMat::identity(2, f), standard_lattice(2, f));
    CHECK(g.is_trivial);
    REQUIRE(g.order.has_value());
    CHECK(*g.order == 1);

    // B = (2), Q = Z: order-2 orbifold group with generator 1/2
    FMat b(1, 1, f);
    b.at(0, 0) = fe(f, 2);
    g = gamma_group(b, standard_lattice(1, f));
    CHECK_FALSE(g.is_trivial);
    CHECK(g.is_finite);
    REQUIRE(g.generators.size() == 1);
    CHECK(g.generators[0][0] == fe(f, "1/2"));
    REQUIRE(g.order.has_value());
    CHECK(*g.order == 2);

    // singular tight set
    FMat sing(2, 2, f);
    sing.at(0, 0) = fe(f, 1);
    sing.at(0, 1) = fe(f, 1);
    sing.at(1, 0) = fe(f, 1);
    sing.at(1, 1) = fe(f, 1);
    CHECK_THROWS_AS(gamma_group(sing, standard_lattice(2, f)), SingularTightSet);

    // B = (1), Q = Z + alpha Z: infinite
    auto fs = sqrt2_field();
    FMat one(1, 1, fs);
    one.at(0, 0) = FieldElem::one(fs);
    Quasilattice za;
    za.ambient_dim = 1;
    za.generators = {FVec{FieldElem::one(fs)}, FVec{FieldElem::alpha(fs)}};
    g = gamma_group(one, za);
    CHECK_FALSE(g.is_finite);
    CHECK_FALSE(g.order.has_value());
}

TEST_CASE("atlas invariants: a-rows reproduce the normals exactly") {
    auto f = sqrt2_field();
    for (const auto& t : {strip_triple(f), quasisphere_triple(f)}) {
        const auto charts = atlas(t);
        const int n = t.polyhedron.dim_ambient;
        for (const auto& ch : charts) {
            for (std::size_t r = 0; r < ch.nontight.size(); ++r) {
                FVec sum = zero_vec(n, f);
                for (int h = 0; h < n; ++h)
                    for (int i = 0; i < n; ++i)
                        sum[i] += ch.a_coeffs.at(static_cast<int>(r), h) *
                                  t.polyhedron.halfspaces[ch.tight[h]].normal[i];
                CHECK(vec_eq(sum, t.polyhedron.halfspaces[ch.nontight[r]].normal));
            }
            // tight sets have full rank
            std::vector<FVec> rows;
            for (int j : ch.tight) rows.push_back(t.polyhedron.halfspaces[j].normal);
            CHECK(rank(FMat::from_rows(rows, n, f)) == n);
        }
        // every vertex appears exactly once
        const auto fr = enumerate(t.polyhedron);
        REQUIRE(charts.size() == fr.vertices.size());
    }
}

TEST_CASE("chart inequalities hold strictly at interior points") {
    auto f = sqrt2_field();
    const auto t = strip_triple(f);
    const auto charts = atlas(t);
    // interior sample of Delta: (0, 1/2)
    const FVec mu = fvs(f, {"0", "1/2"});
    for (const auto& ch : charts)
        for (const auto& iq : ch.inequalities) {
            // sum_h a_jh <mu, X_h> - lambda_j equals <mu, X_j> - lambda_j > 0
            FieldElem val = -t.polyhedron.halfspaces[iq.j].offset;
            for (int h = 0; h < 2; ++h)
                val += iq.coeffs[h] * dot(mu, t.polyhedron.halfspaces[ch.tight[h]].normal);
            CHECK(eval_sign(val) == 1);
        }
}
