#ifndef SULLIVAN_COHOMOLOGY_HPP
#define SULLIVAN_COHOMOLOGY_HPP

#include <functional>
#include <map>

#include "sullivan/linalg.hpp"
#include "sullivan/presentation.hpp"

namespace sullivan {

/* A degreewise view of a complex carved out of a presented algebra:
 * optionally restricted to a generator prefix/mask and to monomials
 * selected by `keep` (a monomial-ideal subcomplex or its quotient).
 * For quotient complexes the differential is applied and then projected
 * onto the kept monomials. */
struct ComplexView {
    TablePtr table;
    const Derivation* d = nullptr;
    std::vector<char> allowed;                       // generator mask; empty = all
    std::function<bool(const Monomial&)> keep;       // monomial filter; null = all
    bool subcomplex = false;  // when true, d must preserve `keep` (checked)

    static ComplexView of(const CdgaPresentation& A);

    std::vector<Monomial> slice_basis(int n) const;
    Poly project(const Poly& p) const;  // drop monomials outside `keep`
    Poly differential(const Poly& p) const;
};

struct DegreeSlice {
    int degree = 0;
    std::vector<Monomial> basis;
    QMatrix d_matrix;  // rows: basis of degree+1, cols: basis
};

DegreeSlice make_slice(const ComplexView& C, int n);

QVec poly_to_coords(const std::vector<Monomial>& basis, const Poly& p);
Poly coords_to_poly(const TablePtr& table, const std::vector<Monomial>& basis, const QVec& v);

struct CohomologyReport {
    std::map<int, int> dims;
    std::map<int, std::vector<Poly>> representatives;  // cocycles, independent mod coboundaries
};

/* Exact dimensions of H^n for n <= N; slices are processed independently
 * (fanned out across threads when available). */
CohomologyReport cohomology_dims(const ComplexView& C, int N, bool with_representatives = false,
                                 bool modp_check = false);

struct InducedDegree {
    int dim_src = 0;
    int dim_dst = 0;
    std::vector<std::vector<Q>> matrix;  // dim_dst x dim_src on chosen representatives
    bool injective = false;
    bool surjective = false;
    bool iso = false;
    bool cochain_surjective = false;  // f surjective on the cochain slice itself
};

struct InducedMapReport {
    std::map<int, InducedDegree> degrees;
    bool all_iso(int N) const;
};

/* The induced map on cohomology in degrees <= N. `f` must be a cochain
 * map between the two complexes (checked degreewise on slice bases). */
InducedMapReport induced_map(const ComplexView& src, const ComplexView& dst,
                             const std::function<Poly(const Poly&)>& f, int N);

InducedMapReport check_quasi_iso(const ComplexView& src, const ComplexView& dst,
                                 const AlgebraMap& f, int N);

}  // namespace sullivan

#endif
