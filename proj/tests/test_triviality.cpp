#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sullivan/triviality.hpp"

using namespace sullivan;

namespace {

CdgaPresentation s3() {
    TablePtr t = make_table({{"y", 3}});
    return make_presentation(t, {Poly::zero(t)});
}
CdgaPresentation p_even(int deg = 2) {
    TablePtr t = make_table({{"x", deg}});
    return make_presentation(t, {Poly::zero(t)});
}
CdgaPresentation s2() {
    TablePtr t = make_table({{"x", 2}, {"y", 3}});
    return make_presentation(t, {Poly::zero(t), Poly::generator(t, 0).pow(2)});
}
CdgaPresentation q_alg() {
    TablePtr t = make_table({{"x", 2}, {"y1", 3}, {"y2", 3}});
    return make_presentation(
        t, {Poly::zero(t), Poly::generator(t, 0).pow(2), Poly::zero(t)});
}
CdgaPresentation r_alg() {
    TablePtr t = make_table({{"y1", 3}, {"y2", 3}, {"y3", 5}});
    return make_presentation(t, {Poly::zero(t), Poly::zero(t),
                                 Poly::generator(t, 0) * Poly::generator(t, 1)});
}

}  // namespace

TEST_CASE("part 3 certifies the odd-dominated corpus") {
    for (const CdgaPresentation& A : {s3(), q_alg(), r_alg()}) {
        DlcopOptions opt;
        opt.max_degree = 12;
        TrivialityCertificate c = analyze_dlcop(A, opt);
        CHECK(c.certified);
        CHECK(c.route == "part3");
        CHECK(!c.used_semipure_replacement);
    }
}

TEST_CASE("even sphere is not certified and surfaces the Euler witness") {
    DlcopOptions opt;
    opt.max_degree = 12;
    TrivialityCertificate c = analyze_dlcop(s2(), opt);
    CHECK(!c.certified);
    CHECK(c.route == "none");
    bool found = false;
    for (const CertWitness& w : c.witnesses)
        if (w.label.find("evidence") != std::string::npos && w.value == "2*x") found = true;
    CHECK(found);
    // the certificate never claims the operation is nonzero
    CHECK(c.reason.find("nontrivial") == std::string::npos);
}

TEST_CASE("part 1 certifies a decomposition over an odd cocycle generator") {
    TablePtr t = make_table({{"y", 3}, {"z", 5}});
    CdgaPresentation A = make_presentation(t, {Poly::zero(t), Poly::zero(t)});
    DlcopOptions opt;
    opt.max_degree = 12;
    opt.route = "part1";
    opt.part1_generator = "y";
    TrivialityCertificate c = analyze_dlcop(A, opt);
    CHECK(c.certified);
    CHECK(c.route == "part1");
    bool containment = false;
    for (const CertWitness& w : c.witnesses)
        if (w.label == "image containment" && w.value.find("y'' - y'") != std::string::npos)
            containment = true;
    CHECK(containment);
}

TEST_CASE("part 1 with an even generator along the chain") {
    // (y:3, x:2): semi-pure, relative over the odd y; p = q = 1 so part 3
    // does not apply, part 1 does
    TablePtr t = make_table({{"y", 3}, {"x", 2}});
    CdgaPresentation A = make_presentation(t, {Poly::zero(t), Poly::zero(t)});
    DlcopOptions opt;
    opt.max_degree = 10;
    opt.route = "part1";
    TrivialityCertificate c = analyze_dlcop(A, opt);
    CHECK(c.certified);
    CHECK(c.route == "part1");
}

TEST_CASE("part 1 auto-detection picks the latest odd cocycle generator") {
    TablePtr t = make_table({{"y", 3}, {"z", 5}});
    CdgaPresentation A = make_presentation(t, {Poly::zero(t), Poly::zero(t)});
    DlcopOptions opt;
    opt.max_degree = 10;
    opt.route = "part1";
    TrivialityCertificate c = analyze_dlcop(A, opt);
    CHECK(c.certified);
    bool picked_z = false;
    for (const CertWitness& w : c.witnesses)
        if (w.label == "odd cocycle generator" && w.value == "z") picked_z = true;
    CHECK(picked_z);
}

TEST_CASE("part 1 refuses when no odd cocycle generator exists") {
    DlcopOptions opt;
    opt.max_degree = 8;
    opt.route = "part1";
    TrivialityCertificate c = analyze_dlcop(s2(), opt);
    CHECK(!c.certified);
    CHECK(c.reason.find("part1") != std::string::npos);
}

TEST_CASE("part 2 certifies the even generators") {
    for (int deg : {2, 4}) {
        DlpOptions opt;
        opt.max_degree = 12;
        TrivialityCertificate c = analyze_dlp(p_even(deg), opt);
        CHECK(c.certified);
        CHECK(c.route == "part2");
    }
}

TEST_CASE("part 2 on a two-generator algebra with an even top generator") {
    // (y:3, x:4): x is a top even generator, everything semi-pure
    TablePtr t = make_table({{"y", 3}, {"x", 4}});
    CdgaPresentation A = make_presentation(t, {Poly::zero(t), Poly::zero(t)});
    DlpOptions opt;
    opt.max_degree = 10;
    TrivialityCertificate c = analyze_dlp(A, opt);
    CHECK(c.certified);
    CHECK(c.route == "part2");
}

TEST_CASE("part 2 refuses odd-only algebras") {
    DlpOptions opt;
    opt.max_degree = 8;
    TrivialityCertificate c = analyze_dlp(s3(), opt);
    CHECK(!c.certified);
    CHECK(c.reason.find("no even generator") != std::string::npos);
}

TEST_CASE("part 2 refuses when the even generator is not at the top") {
    // d y = x^2 references x, so x cannot be split off
    DlpOptions opt;
    opt.max_degree = 8;
    TrivialityCertificate c = analyze_dlp(s2(), opt);
    CHECK(!c.certified);
    CHECK(c.reason.find("not a top generator") != std::string::npos);
}

TEST_CASE("section psi: base case with one even generator") {
    CdgaPresentation A = p_even();
    NiceModel nm = build_nice_model(A, 8);
    LoopTensorSquare L = build_loop_tensor_square(nm.model);
    SectionPsi S = build_section_psi(L);
    // with dx = 0 the correction vanishes and psi is the plain inclusion
    CHECK(S.corrections[0].is_zero());
    CHECK(S.psi.image(L.tgt_loop2(0)) == Poly::generator(L.big.table, L.big_loop2(0)));
    // eps . psi = id on every generator
    for (int g = 0; g < L.target.table->size(); ++g)
        CHECK(L.eps(S.psi.image(g)) == Poly::generator(L.target.table, g));
}

TEST_CASE("section psi on the even sphere needs a correction") {
    CdgaPresentation A = s2();
    NiceModel nm = build_nice_model(A, 8);
    LoopTensorSquare L = build_loop_tensor_square(nm.model);
    SectionPsi S = build_section_psi(L);
    CHECK(!S.corrections[1].is_zero());  // the odd generator's loop bar needs one
    for (int g = 0; g < L.target.table->size(); ++g)
        CHECK(L.eps(S.psi.image(g)) == Poly::generator(L.target.table, g));
    CHECK(L.eps(S.corrections[1]).is_zero());
    CHECK(is_cochain_map(S.psi, L.target.d, L.big.d));
}

TEST_CASE("delta tensor id kills psi images for the part-2 witness") {
    CdgaPresentation A = p_even();
    NiceModel nm = build_nice_model(A, 8);
    DualCochain delta = build_shriek_cocycle(nm.model);
    LoopTensorSquare L = build_loop_tensor_square(nm.model);
    SectionPsi S = build_section_psi(L);
    for (int n = 0; n <= 10; ++n)
        for (const Monomial& w : basis(*L.target.table, n)) {
            Poly z = S.psi(Poly::term(L.target.table, w, Q(1)));
            CHECK(delta_tensor_id(L, delta, z).is_zero());
        }
    // but delta tensor id is not identically zero on the big algebra
    Poly probe = Poly::generator(L.big.table, L.big_bar(0));
    CHECK(!delta_tensor_id(L, delta, probe).is_zero());
}

TEST_CASE("semipure_reduce: identity on semi-pure input") {
    CdgaPresentation A = s2();
    SemipureReduction r = semipure_reduce(A);
    CHECK(!r.changed);
    CHECK(r.reduced.table == A.table);
}

TEST_CASE("semipure_reduce rejects non-quadratic input") {
    // d x = y1 y2 y3 is cubic
    TablePtr t = make_table({{"y1", 3}, {"y2", 3}, {"y3", 3}, {"x", 8}});
    CdgaPresentation A = make_presentation(
        t, {Poly::zero(t), Poly::zero(t), Poly::zero(t),
            Poly::generator(t, 0) * Poly::generator(t, 1) * Poly::generator(t, 2)});
    CHECK(!is_semipure(A));
    CHECK_THROWS(semipure_reduce(A));
}

TEST_CASE("semipure_reduce kills a linear even-to-odd pair") {
    // (y:3, x:2; dx = y): not semi-pure, contractible
    TablePtr t = make_table({{"y", 3}, {"x", 2}});
    CdgaPresentation A =
        make_presentation(t, {Poly::zero(t), Poly::generator(t, 0)});
    CHECK(!is_semipure(A));
    SemipureReduction r = semipure_reduce(A);
    CHECK(r.changed);
    CHECK(r.reduced.table->size() == 0);
    CHECK(is_semipure(r.reduced));
    // cohomology agrees up to 12
    InducedMapReport ir =
        induced_map(ComplexView::of(A), ComplexView::of(r.reduced),
                    [&r](const Poly& p) { return r.projection(p); }, 12);
    CHECK(ir.all_iso(12));
}

TEST_CASE("semipure_reduce keeps the surviving generator") {
    // (y:3, x:2, z:3; dx = y): removing (x, y) leaves (z, d = 0)
    TablePtr t = make_table({{"y", 3}, {"x", 2}, {"z", 3}});
    CdgaPresentation A = make_presentation(
        t, {Poly::zero(t), Poly::generator(t, 0), Poly::zero(t)});
    CHECK(!is_semipure(A));
    SemipureReduction r = semipure_reduce(A);
    CHECK(r.changed);
    REQUIRE(r.reduced.table->size() == 1);
    CHECK((*r.reduced.table)[0].name == "z");
    CHECK(r.reduced.d.image(0).is_zero());
    CHECK(is_semipure(r.reduced));
    InducedMapReport ir =
        induced_map(ComplexView::of(A), ComplexView::of(r.reduced),
                    [&r](const Poly& p) { return r.projection(p); }, 12);
    CHECK(ir.all_iso(12));
    // the odd-even difference is preserved
    CHECK(A.odd_count() - A.even_count() ==
          r.reduced.odd_count() - r.reduced.even_count());
}

TEST_CASE("semipure_reduce rewrites surviving differentials through the quotient") {
    // (y:3, x1:2, x2:2, z:3; dx1 = dx2 = y, dz = (x2 - x1)^2): the kernel of
    // the linear part is spanned by x2 - x1 and the quotient is an
    // even-sphere-like algebra
    TablePtr t = make_table({{"y", 3}, {"x1", 2}, {"x2", 2}, {"z", 3}});
    Poly diff = (Poly::generator(t, 2) - Poly::generator(t, 1)).pow(2);
    CdgaPresentation A = make_presentation(
        t, {Poly::zero(t), Poly::generator(t, 0), Poly::generator(t, 0), diff});
    CHECK(!is_semipure(A));
    CHECK(is_quadratic(A));
    SemipureReduction r = semipure_reduce(A);
    CHECK(r.changed);
    REQUIRE(r.reduced.table->size() == 2);
    // one surviving even combination (anchored at x2) and z
    int xi = r.reduced.table->index_of("x2");
    int zi = r.reduced.table->index_of("z");
    REQUIRE(xi >= 0);
    REQUIRE(zi >= 0);
    CHECK(r.reduced.d.image(zi) == Poly::generator(r.reduced.table, xi).pow(2));
    CHECK(is_semipure(r.reduced));
    InducedMapReport ir =
        induced_map(ComplexView::of(A), ComplexView::of(r.reduced),
                    [&r](const Poly& p) { return r.projection(p); }, 12);
    CHECK(ir.all_iso(12));
}

TEST_CASE("part 3 runs through the semi-pure replacement") {
    // (y:3, x:2, z:3, w:3; dx = y): reduces to (z, w), p = 0 < q = 2
    TablePtr t = make_table({{"y", 3}, {"x", 2}, {"z", 3}, {"w", 3}});
    CdgaPresentation A = make_presentation(
        t, {Poly::zero(t), Poly::generator(t, 0), Poly::zero(t),
            Poly::zero(t)});
    CHECK(!is_semipure(A));
    DlcopOptions opt;
    opt.max_degree = 10;
    TrivialityCertificate c = analyze_dlcop(A, opt);
    CHECK(c.certified);
    CHECK(c.route == "part3");
    CHECK(c.used_semipure_replacement);
}

TEST_CASE("pure_decompose leaves minimal pure algebras untouched") {
    CdgaPresentation algs[] = {s3(), p_even(), s2(), q_alg()};
    for (const CdgaPresentation& A : algs) {
        PureDecomposition d = pure_decompose(A);
        CHECK(d.core.table->size() == A.table->size());
        CHECK(d.contractible.table->size() == 0);
        for (int g = 0; g < A.table->size(); ++g) {
            CHECK(d.merge(d.split.image(g)) == Poly::generator(A.table, g));
            CHECK(d.split(d.merge.image(g)) == Poly::generator(d.combined.table, g));
        }
    }
}

TEST_CASE("pure_decompose splits a linear pair") {
    // (x:4, y:3; dy = x): core empty, contractible the whole thing
    TablePtr t = make_table({{"x", 4}, {"y", 3}});
    CdgaPresentation A = make_presentation(t, {Poly::zero(t), Poly::generator(t, 0)});
    REQUIRE(is_pure(A));
    PureDecomposition d = pure_decompose(A);
    CHECK(d.core.table->size() == 0);
    CHECK(d.contractible.table->size() == 2);
    // H^+ of the contractible factor vanishes
    CohomologyReport H = cohomology_dims(ComplexView::of(d.contractible), 12);
    CHECK(H.dims[0] == 1);
    for (int n = 1; n <= 12; ++n) CHECK(H.dims[n] == 0);
    for (int g = 0; g < A.table->size(); ++g)
        CHECK(d.merge(d.split.image(g)) == Poly::generator(A.table, g));
}

TEST_CASE("pure_decompose handles the shifted root and the division") {
    // (x1:2, x2:4, y:3, y2:3; dy = x2 - x1^2, dy2 = x2):
    // core (x1, y2 with d y2 = x1^2), contractible (x2-coordinate, y)
    TablePtr t = make_table({{"x1", 2}, {"x2", 4}, {"y", 3}, {"y2", 3}});
    CdgaPresentation A = make_presentation(
        t, {Poly::zero(t), Poly::zero(t),
            Poly::generator(t, 1) - Poly::generator(t, 0).pow(2),
            Poly::generator(t, 1)});
    REQUIRE(is_pure(A));
    PureDecomposition d = pure_decompose(A);
    REQUIRE(d.core.table->size() == 2);
    int x1i = d.core.table->index_of("x1");
    int y2i = d.core.table->index_of("y2");
    REQUIRE(x1i >= 0);
    REQUIRE(y2i >= 0);
    // eta(d y2) = eta(x2) = a = x1^2
    CHECK(d.core.d.image(y2i) == Poly::generator(d.core.table, x1i).pow(2));
    CHECK(d.contractible.table->size() == 2);
    CohomologyReport H = cohomology_dims(ComplexView::of(d.contractible), 12);
    for (int n = 1; n <= 12; ++n) CHECK(H.dims[n] == 0);
    for (int g = 0; g < A.table->size(); ++g)
        CHECK(d.merge(d.split.image(g)) == Poly::generator(A.table, g));
    for (int g = 0; g < d.combined.table->size(); ++g)
        CHECK(d.split(d.merge.image(g)) == Poly::generator(d.combined.table, g));
    CHECK(is_cochain_map(d.split, A.d, d.combined.d));
    CHECK(is_cochain_map(d.merge, d.combined.d, A.d));
}

TEST_CASE("pure_decompose handles a pivot coefficient via the generator change") {
    // (x:4, y:3; dy = 2x): the pivot coefficient is 2, forcing the
    // generator change x -> d(y)
    TablePtr t = make_table({{"x", 4}, {"y", 3}});
    CdgaPresentation A = make_presentation(
        t, {Poly::zero(t), Poly::generator(t, 0).scaled(Q(2))});
    REQUIRE(is_pure(A));
    PureDecomposition d = pure_decompose(A);
    CHECK(d.core.table->size() == 0);
    CohomologyReport H = cohomology_dims(ComplexView::of(d.contractible), 10);
    for (int n = 1; n <= 10; ++n) CHECK(H.dims[n] == 0);
    for (int g = 0; g < A.table->size(); ++g)
        CHECK(d.merge(d.split.image(g)) == Poly::generator(A.table, g));
}

TEST_CASE("pure_decompose rejects impure input") {
    CHECK_THROWS(pure_decompose(r_alg()));
}

TEST_CASE("default degree bound follows the generator degrees") {
    CHECK(default_degree_bound(s2()) == 10);      // 2 * (2 + 3)
    CHECK(default_degree_bound(r_alg()) == 22);   // 2 * (3 + 3 + 5)
    TablePtr t = make_table({{"x", 8}, {"y", 9}});
    CdgaPresentation big = make_presentation(t, {Poly::zero(t), Poly::zero(t)});
    CHECK(default_degree_bound(big) == 24);       // capped
}

TEST_CASE("invert_iso round-trips a shear") {
    TablePtr t = make_table({{"a", 2}, {"b", 2}});
    // a -> a + b, b -> b
    AlgebraMap f(t, t,
                 {Poly::generator(t, 0) + Poly::generator(t, 1), Poly::generator(t, 1)});
    AlgebraMap g = invert_iso(f);
    CHECK(g.image(0) == Poly::generator(t, 0) - Poly::generator(t, 1));
    CHECK(g.image(1) == Poly::generator(t, 1));
    // non-invertible maps are rejected
    AlgebraMap bad(t, t, {Poly::generator(t, 1), Poly::generator(t, 1)});
    CHECK_THROWS(invert_iso(bad));
}
