#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sullivan/cohomology.hpp"
#include "sullivan/models.hpp"

using namespace sullivan;

namespace {

CdgaPresentation sphere_odd() {  // S^3: one odd generator, zero differential
    TablePtr t = make_table({{"y", 3}});
    return make_presentation(t, {Poly::zero(t)});
}

CdgaPresentation sphere_even() {  // S^2: (x:2, y:3; dy = x^2)
    TablePtr t = make_table({{"x", 2}, {"y", 3}});
    return make_presentation(t, {Poly::zero(t), Poly::generator(t, 0).pow(2)});
}

/* independent dense-elimination rank oracle over Q */
int dense_rank(std::vector<std::vector<Q>> M) {
    int rank = 0;
    std::size_t rows = M.size();
    if (rows == 0) return 0;
    std::size_t cols = M[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && M[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            Q f = M[i][c] / M[r][c];
            for (std::size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
        }
        ++r;
        ++rank;
    }
    return rank;
}

/* cohomology dims recomputed with the dense oracle */
std::map<int, int> oracle_dims(const ComplexView& C, int N) {
    std::map<int, int> out;
    std::map<int, int> ranks;
    std::map<int, int> sizes;
    for (int n = 0; n <= N; ++n) {
        auto b = C.slice_basis(n);
        auto next = C.slice_basis(n + 1);
        sizes[n] = (int)b.size();
        std::map<Monomial, int, MonomialOrder> index;
        for (int i = 0; i < (int)next.size(); ++i) index.emplace(next[i], i);
        std::vector<std::vector<Q>> M(next.size(), std::vector<Q>(b.size(), Q(0)));
        for (int j = 0; j < (int)b.size(); ++j) {
            Poly dm = C.differential(Poly::term(C.table, b[j], Q(1)));
            for (const auto& [m, c] : dm.terms()) M[index.at(m)][j] = c;
        }
        ranks[n] = dense_rank(std::move(M));
    }
    for (int n = 0; n <= N; ++n)
        out[n] = sizes[n] - ranks[n] - (n > 0 ? ranks[n - 1] : 0);
    return out;
}

}  // namespace

TEST_CASE("dims of an odd sphere") {
    CdgaPresentation A = sphere_odd();
    CohomologyReport H = cohomology_dims(ComplexView::of(A), 8);
    std::vector<int> expect{1, 0, 0, 1, 0, 0, 0, 0, 0};
    for (int n = 0; n <= 8; ++n) CHECK(H.dims[n] == expect[n]);
}

TEST_CASE("dims of the even sphere kill the top powers") {
    CdgaPresentation A = sphere_even();
    CohomologyReport H = cohomology_dims(ComplexView::of(A), 10, true);
    std::vector<int> expect{1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0};
    for (int n = 0; n <= 10; ++n) CHECK(H.dims[n] == expect[n]);
    // representative in degree 2 is the even generator itself
    REQUIRE(H.representatives[2].size() == 1);
    CHECK(H.representatives[2][0] == Poly::generator(A.table, 0));
}

TEST_CASE("loop model of the odd sphere has the counting dims") {
    CdgaPresentation A = sphere_odd();
    LoopModel L = build_loop_model(A);
    CohomologyReport H = cohomology_dims(ComplexView::of(L.algebra), 12);
    // oracle: #{(a,b) : a in {0,1}, b >= 0, 3a + 2b = n}
    for (int n = 0; n <= 12; ++n) {
        int count = 0;
        for (int a = 0; a <= 1; ++a)
            for (int b = 0; 3 * a + 2 * b <= n; ++b)
                if (3 * a + 2 * b == n) ++count;
        CHECK(H.dims[n] == count);
    }
}

TEST_CASE("dims agree with the dense oracle on the sphere models") {
    for (const CdgaPresentation& A : {sphere_odd(), sphere_even()}) {
        ModelPtr M = build_multiplication_model(A);
        ComplexView C = ComplexView::of(M->algebra);
        CohomologyReport H = cohomology_dims(C, 9);
        std::map<int, int> oracle = oracle_dims(C, 9);
        for (int n = 0; n <= 9; ++n) CHECK(H.dims[n] == oracle[n]);
    }
}

TEST_CASE("mod-p consistency mode accepts the slice ranks") {
    CdgaPresentation A = sphere_even();
    CHECK_NOTHROW(cohomology_dims(ComplexView::of(A), 10, false, true));
}

TEST_CASE("induced map: identity is an isomorphism") {
    CdgaPresentation A = sphere_even();
    ComplexView C = ComplexView::of(A);
    InducedMapReport r = induced_map(C, C, [](const Poly& p) { return p; }, 8);
    CHECK(r.all_iso(8));
}

TEST_CASE("induced map: augmentation of the odd-sphere model is iso up to 10") {
    CdgaPresentation A = sphere_odd();
    ModelPtr M = build_multiplication_model(A);
    InducedMapReport r = check_model_quasi_iso(*M, 10);
    CHECK(r.all_iso(10));
    // oracle: dims agree on both sides
    CohomologyReport hm = cohomology_dims(ComplexView::of(M->algebra), 10);
    CohomologyReport hb = cohomology_dims(ComplexView::of(M->base), 10);
    for (int n = 0; n <= 10; ++n) CHECK(hm.dims[n] == hb.dims[n]);
}

TEST_CASE("induced map: zero map on a complex with H^0 = Q is not iso at 0") {
    CdgaPresentation A = sphere_odd();
    ComplexView C = ComplexView::of(A);
    InducedMapReport r =
        induced_map(C, C, [&A](const Poly& p) { return Poly::zero(A.table); }, 3);
    CHECK(!r.degrees[0].iso);
    CHECK(!r.degrees[0].injective);
}

TEST_CASE("inclusion of the base into the loop model is injective, not surjective at 2") {
    CdgaPresentation A = sphere_odd();
    LoopModel L = build_loop_model(A);
    InducedMapReport r = induced_map(
        ComplexView::of(A), ComplexView::of(L.algebra),
        [&L](const Poly& p) { return L.from_base(p); }, 6);
    CHECK(r.degrees[0].iso);
    CHECK(r.degrees[3].injective);
    CHECK(!r.degrees[2].surjective);
    for (int n = 0; n <= 6; ++n) CHECK(r.degrees[n].injective);
}

TEST_CASE("dims independent of generator display order") {
    // same algebra, two presentations with permuted even generators
    TablePtr t1 = make_table({{"a", 2}, {"b", 2}, {"y", 3}});
    TablePtr t2 = make_table({{"b", 2}, {"a", 2}, {"y", 3}});
    CdgaPresentation A1 =
        make_presentation(t1, {Poly::zero(t1), Poly::zero(t1),
                               Poly::generator(t1, 0) * Poly::generator(t1, 1)});
    CdgaPresentation A2 =
        make_presentation(t2, {Poly::zero(t2), Poly::zero(t2),
                               Poly::generator(t2, 0) * Poly::generator(t2, 1)});
    CohomologyReport H1 = cohomology_dims(ComplexView::of(A1), 10);
    CohomologyReport H2 = cohomology_dims(ComplexView::of(A2), 10);
    for (int n = 0; n <= 10; ++n) CHECK(H1.dims[n] == H2.dims[n]);
}

TEST_CASE("d matrices compose to zero") {
    CdgaPresentation A = sphere_even();
    ModelPtr M = build_multiplication_model(A);
    ComplexView C = ComplexView::of(M->algebra);
    for (int n = 0; n <= 8; ++n) {
        DegreeSlice s0 = make_slice(C, n);
        DegreeSlice s1 = make_slice(C, n + 1);
        // multiply: rows of s1.d_matrix by columns of s0.d_matrix
        for (int j = 0; j < s0.d_matrix.cols; ++j) {
            // column j of s0 as dense
            std::vector<Q> col(s0.d_matrix.rows, Q(0));
            for (int r = 0; r < s0.d_matrix.rows; ++r) col[r] = s0.d_matrix.row[r].at(j);
            for (int r = 0; r < s1.d_matrix.rows; ++r) {
                Q dot(0);
                for (const auto& [c, v] : s1.d_matrix.row[r].e) dot += v * col[c];
                CHECK(dot == 0);
            }
        }
    }
}

TEST_CASE("Euler characteristic consistency on a window with zero edge maps") {
    // the even-sphere algebra: d vanishes on the degree-10 slice
    CdgaPresentation A = sphere_even();
    ComplexView C = ComplexView::of(A);
    DegreeSlice edge = make_slice(C, 10);
    REQUIRE(exact_rank(edge.d_matrix) == 0);
    CohomologyReport H = cohomology_dims(C, 10);
    long lhs = 0, rhs = 0;
    for (int n = 0; n <= 10; ++n) {
        long sz = (long)C.slice_basis(n).size();
        lhs += (n % 2 == 0 ? sz : -sz);
        rhs += (n % 2 == 0 ? H.dims[n] : -H.dims[n]);
    }
    CHECK(lhs == rhs);
}
