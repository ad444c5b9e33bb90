#ifndef SULLIVAN_PRESENTATION_HPP
#define SULLIVAN_PRESENTATION_HPP

#include "sullivan/algebra.hpp"
#include "sullivan/derivation.hpp"

namespace sullivan {

/* A presented Sullivan algebra: generator table plus a degree +1
 * differential. The table order is a Sullivan filtration order, so
 * d(generator k) may only reference generators of index < k. */
struct CdgaPresentation {
    TablePtr table;
    Derivation d;

    const Poly& d_of(int gen_index) const { return d.image(gen_index); }
    int even_count() const;
    int odd_count() const;
};

struct PresentationOptions {
    bool require_degree_two = false;  // V^1 = 0 for user input algebras
};

/* Validates and wraps: homogeneity is enforced by the Derivation
 * constructor; this adds the filtration check and d^2 = 0. */
CdgaPresentation make_presentation(TablePtr table, std::vector<Poly> d_images,
                                   PresentationOptions opts = {});

/* d(V^even) = 0 and d(V^odd) inside the even subalgebra. */
bool is_pure(const CdgaPresentation& A);

/* The ideal generated by even generators is a differential ideal,
 * equivalently d(V^even) lies in that ideal. */
bool is_semipure(const CdgaPresentation& A);

/* d(V) has no linear part. */
bool is_minimal(const CdgaPresentation& A);

/* every monomial of p contains at least one generator from the set */
bool in_ideal(const Poly& p, const std::vector<char>& ideal_gens);

/* f(d_src g) == d_dst(f g) on every generator */
bool is_cochain_map(const AlgebraMap& f, const Derivation& d_src, const Derivation& d_dst);

/* Re-orders the generators by `perm` (perm[i] = old index of new generator
 * i) and transports the differential. Fails if the new order is not a
 * Sullivan filtration order. */
CdgaPresentation reorder_presentation(const CdgaPresentation& A, const std::vector<int>& perm);

}  // namespace sullivan

#endif
