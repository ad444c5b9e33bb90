#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sullivan/derivation.hpp"

using namespace sullivan;

namespace {

/* hand-built doubled table for one even generator x (degree 2):
 * x' (0), x'' (1), x~ (2) */
struct DoubledX {
    TablePtr t = make_table({{"x'", 2}, {"x''", 2}, {"x~", 1}});
    Derivation s{t, -1, {Poly::generator(t, 2), Poly::generator(t, 2), Poly::zero(t)}};
    Derivation d{t, +1,
                 {Poly::zero(t), Poly::zero(t),
                  Poly::generator(t, 1) - Poly::generator(t, 0)}};
};

Poly random_homogeneous(std::mt19937_64& rng, const TablePtr& t, int degree, int terms) {
    std::vector<Monomial> b = basis(*t, degree);
    Poly p(t);
    if (b.empty()) return p;
    std::uniform_int_distribution<int> pick(0, (int)b.size() - 1);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int i = 0; i < terms; ++i) p.add_term(b[pick(rng)], Q(coef(rng)));
    return p;
}

}  // namespace

TEST_CASE("contraction on a square: s(x'^2) = 2 x' x~") {
    DoubledX D;
    Poly xp = Poly::generator(D.t, 0);
    Poly expect = (xp * Poly::generator(D.t, 2)).scaled(Q(2));
    CHECK(D.s.apply(xp.pow(2)) == expect);
}

TEST_CASE("derivations kill constants, Leibniz sign on odd factors") {
    TablePtr t = make_table({{"y1", 3}, {"y2", 3}, {"x", 4}});
    // d y1 = 0, d y2 = 0, d x = y1*y2? degree 4+1=5... no: use d of odd gens
    Derivation d(t, +1,
                 {Poly::generator(t, 2), Poly::zero(t), Poly::zero(t)});  // d y1 = x
    CHECK(d.apply(Poly::unit(t)).is_zero());
    // d(y1 y2) = (d y1) y2 - y1 (d y2) = x*y2
    Poly y1y2 = Poly::generator(t, 0) * Poly::generator(t, 1);
    CHECK(d.apply(y1y2) == Poly::generator(t, 2) * Poly::generator(t, 1));

    Derivation d2(t, +1,
                  {Poly::zero(t), Poly::generator(t, 2), Poly::zero(t)});  // d y2 = x
    // d2(y1 y2) = -y1*(d y2) = -x*y1
    CHECK(d2.apply(y1y2) == -(Poly::generator(t, 2) * Poly::generator(t, 0)));
}

TEST_CASE("homogeneity of images is enforced") {
    TablePtr t = make_table({{"x", 2}, {"y", 3}});
    CHECK_THROWS(Derivation(t, +1, {Poly::zero(t), Poly::generator(t, 1)}));  // deg 3 != 4
}

TEST_CASE("bracket on the odd-sphere doubled model") {
    // y' (0), y'' (1), y~ (2) with d y~ = y'' - y', s(y') = s(y'') = y~
    TablePtr t = make_table({{"y'", 3}, {"y''", 3}, {"y~", 2}});
    Derivation s(t, -1, {Poly::generator(t, 2), Poly::generator(t, 2), Poly::zero(t)});
    Derivation d(t, +1,
                 {Poly::zero(t), Poly::zero(t), Poly::generator(t, 1) - Poly::generator(t, 0)});
    Derivation theta = bracket(d, s);  // ds + sd
    CHECK(theta.degree() == 0);
    // oracle: apply both compositions by hand
    Poly yp = Poly::generator(t, 0);
    Poly expect = d.apply(s.apply(yp)) + s.apply(d.apply(yp));
    CHECK(theta.apply(yp) == expect);
    CHECK(theta.image(0) == Poly::generator(t, 1) - Poly::generator(t, 0));

    Derivation zero = Derivation::zero(t, -1);
    Derivation bz = bracket(d, zero);
    for (const Poly& im : bz.images()) CHECK(im.is_zero());
}

TEST_CASE("is_differential") {
    TablePtr t = make_table({{"x", 2}, {"y", 3}});
    CHECK(Derivation::zero(t, +1).is_differential());
    Derivation d(t, +1, {Poly::zero(t), Poly::generator(t, 0).pow(2)});
    CHECK(d.is_differential());
    CHECK(!Derivation::zero(t, -1).is_differential());  // wrong degree
}

TEST_CASE("exp of the zero derivation is the identity") {
    TablePtr t = make_table({{"x", 2}, {"y", 3}});
    std::mt19937_64 rng(3);
    Derivation z = Derivation::zero(t, 0);
    for (int i = 0; i < 20; ++i) {
        Poly p = random_homogeneous(rng, t, 6, 3);
        CHECK(exp_apply(z, p) == p);
    }
}

TEST_CASE("exp is an algebra homomorphism and exp(theta) exp(-theta) = id") {
    // locally nilpotent degree-0 derivation on two even generators: a -> b, b -> 0
    TablePtr t = make_table({{"a", 2}, {"b", 2}});
    Derivation theta(t, 0, {Poly::generator(t, 1), Poly::zero(t)});
    Derivation minus(t, 0, {-Poly::generator(t, 1), Poly::zero(t)});
    std::mt19937_64 rng(17);
    int done = 0;
    while (done < 500) {
        std::uniform_int_distribution<int> deg(0, 8);
        Poly p = random_homogeneous(rng, t, 2 * (deg(rng) / 2), 3);
        Poly q = random_homogeneous(rng, t, 2 * (deg(rng) / 2), 3);
        if (p.is_zero() || q.is_zero()) continue;
        ++done;
        CHECK(exp_apply(theta, p * q) == exp_apply(theta, p) * exp_apply(theta, q));
        CHECK(exp_apply(minus, exp_apply(theta, p)) == p);
    }
}

TEST_CASE("exp of commuting derivations composes") {
    TablePtr t = make_table({{"a", 2}, {"b", 2}, {"c", 4}, {"e", 4}});
    Derivation th(t, 0,
                  {Poly::generator(t, 1), Poly::zero(t), Poly::zero(t), Poly::zero(t)});
    Derivation rho(t, 0,
                   {Poly::zero(t), Poly::zero(t), Poly::generator(t, 3), Poly::zero(t)});
    // commuting: disjoint generator blocks
    Derivation sum(t, 0,
                   {Poly::generator(t, 1), Poly::zero(t), Poly::generator(t, 3), Poly::zero(t)});
    CHECK(bracket(th, rho).images() == Derivation::zero(t, 0).images());
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        Poly p = random_homogeneous(rng, t, 8, 4);
        CHECK(exp_apply(sum, p) == exp_apply(th, exp_apply(rho, p)));
        CHECK(exp_apply(sum, p) == exp_apply(rho, exp_apply(th, p)));
    }
}

TEST_CASE("exp reports non-nilpotency instead of looping") {
    TablePtr t = make_table({{"a", 2}});
    Derivation theta(t, 0, {Poly::generator(t, 0)});  // a -> a, never nilpotent
    CHECK_THROWS_WITH_AS(exp_apply(theta, Poly::generator(t, 0)),
                         doctest::Contains("iteration cap"), std::runtime_error);
}

TEST_CASE("nilpotent partial sum: trivial cases") {
    DoubledX D;
    // d(x') = 0 so the sum is empty
    CHECK(nilpotent_partial_sum(D.s, D.d, Poly::generator(D.t, 0)).is_zero());
}

TEST_CASE("nilpotent partial sum reproduces the sphere correction term") {
    // doubled model of (x:2, y:3; dy = x^2) without the bar of y:
    // x'(0), x''(1), x~(2), y'(3), y''(4)
    TablePtr t = make_table({{"x'", 2}, {"x''", 2}, {"x~", 1}, {"y'", 3}, {"y''", 3}});
    Poly xp = Poly::generator(t, 0), xpp = Poly::generator(t, 1), xb = Poly::generator(t, 2);
    Derivation s(t, -1, {xb, xb, Poly::zero(t), Poly::zero(t), Poly::zero(t)});
    Derivation d(t, +1, {Poly::zero(t), Poly::zero(t), xpp - xp, xp.pow(2), xpp.pow(2)});

    // oracle: direct iteration
    Poly q1 = s.apply(d.apply(Poly::generator(t, 3)));
    CHECK(q1 == (xp * xb).scaled(Q(2)));
    Poly q2 = s.apply(d.apply(q1));
    CHECK(q2 == ((xpp - xp) * xb).scaled(Q(2)));
    Poly q3 = s.apply(d.apply(q2));
    CHECK(q3.is_zero());
    Poly expect = q1 + q2.scaled(Q(1, 2));
    CHECK(expect == (xpp + xp) * xb);

    CHECK(nilpotent_partial_sum(s, d, Poly::generator(t, 3)) == (xpp + xp) * xb);
}

TEST_CASE("Leibniz rule holds on random pairs for stored derivations") {
    std::mt19937_64 rng(77);
    TablePtr t = make_table({{"x", 2}, {"y", 3}, {"z", 5}});
    Derivation d(t, +1,
                 {Poly::zero(t), Poly::generator(t, 0).pow(2),
                  Poly::generator(t, 0).pow(3)});
    Derivation s(t, -1,
                 {Poly::zero(t), Poly::generator(t, 0), Poly::generator(t, 0).pow(2)});
    int done = 0;
    while (done < 500) {
        std::uniform_int_distribution<int> deg(0, 10);
        Poly a = random_homogeneous(rng, t, deg(rng), 3);
        Poly b = random_homogeneous(rng, t, deg(rng), 3);
        if (a.is_zero() || b.is_zero()) continue;
        ++done;
        for (const Derivation* D : {&d, &s}) {
            int sign = (D->degree() % 2 != 0 && a.degree() % 2 != 0) ? -1 : 1;
            CHECK(D->apply(a * b) == D->apply(a) * b + (a * D->apply(b)).scaled(Q(sign)));
        }
    }
}

TEST_CASE("bracket of a differential with itself vanishes") {
    TablePtr t = make_table({{"x", 2}, {"y", 3}});
    Derivation d(t, +1, {Poly::zero(t), Poly::generator(t, 0).pow(2)});
    Derivation b = bracket(d, d);  // = 2 d^2
    for (const Poly& im : b.images()) CHECK(im.is_zero());
}
