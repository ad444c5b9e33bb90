#ifndef SULLIVAN_MODELS_HPP
#define SULLIVAN_MODELS_HPP

#include <memory>

#include "sullivan/cohomology.hpp"
#include "sullivan/presentation.hpp"

namespace sullivan {

/* Relative Sullivan model of the multiplication map of (∧V, d):
 * an algebra on three generators v', v'', v~ per base generator v
 * (the two tensor copies and the bar generator of degree |v| - 1), with
 *   d v~ = v'' - v' - correction(v),
 * and the augmentation  aug : v', v'' -> v, v~ -> 0,  a surjective
 * quasi-isomorphism onto the base.
 *
 * Model generator layout: base generator j -> indices 3j, 3j+1, 3j+2. */
struct MultiplicationModel {
    CdgaPresentation base;
    CdgaPresentation algebra;
    AlgebraMap aug;          // algebra -> base
    AlgebraMap first_copy;   // base -> algebra, v -> v'
    AlgebraMap second_copy;  // base -> algebra, v -> v''
    Derivation contraction;  // s: v', v'' -> v~, v~ -> 0 (degree -1)
    std::vector<Poly> correction;  // per base generator
    bool built_nice = false;       // even corrections constrained to the even ideal

    int first_of(int j) const { return 3 * j; }
    int second_of(int j) const { return 3 * j + 1; }
    int bar_of(int j) const { return 3 * j + 2; }
    int base_gen_of(int model_index) const { return model_index / 3; }
    /* 0 = first copy, 1 = second copy, 2 = bar */
    int kind_of(int model_index) const { return model_index % 3; }
    bool is_bar(int model_index) const { return model_index % 3 == 2; }

    /* mask of the ideal generated by primed/doubled/barred even generators */
    std::vector<char> even_ideal_mask() const;
    /* same with bar(i) removed */
    std::vector<char> even_ideal_mask_without(int base_gen) const;
};

using ModelPtr = std::shared_ptr<const MultiplicationModel>;

ModelPtr build_multiplication_model(const CdgaPresentation& A);

/* The free-loop-space model (∧V ⊗ ∧V~, d~) with d~ v = dv and
 * d~ v~ = -s~(dv). Generator layout: base generator j -> 2j, 2j+1. */
struct LoopModel {
    CdgaPresentation base;
    CdgaPresentation algebra;
    Derivation sbar;             // v -> v~, v~ -> 0 (degree -1)
    AlgebraMap from_base;        // v -> v
    AlgebraMap collapse;         // multiplication model -> loop model (v', v'' -> v)

    int gen_of(int j) const { return 2 * j; }
    int bar_of(int j) const { return 2 * j + 1; }
};

LoopModel build_loop_model(const MultiplicationModel& M);
LoopModel build_loop_model(const CdgaPresentation& A);

/* A cochain map between two complex views, given as a polynomial map.
 * Used by the constructive coboundary solver. */
struct ComplexMap {
    ComplexView src;
    ComplexView dst;
    std::function<Poly(const Poly&)> f;
};

/* Given dc = 0 and f(c) = 0 with f a surjective quasi-isomorphism in the
 * relevant degrees, produces c' with d c' = c and f(c') = 0. Deterministic:
 * the reduced-row-echelon minimal-pivot solution over the degreewise
 * monomial basis. Throws when no solution exists in the degree window. */
Poly solve_coboundary_in_kernel(const ComplexMap& F, const Poly& c, int n);

struct NicenessReport {
    bool ideal_is_differential = false;         // (a)
    std::string violation_a;
    bool bars_avoid_own_bar = false;            // (b)
    std::string violation_b;
    std::map<int, bool> ideal_map_iso;          // (c): induced map on the even ideals
    std::map<int, bool> quotient_map_iso;       // (c): induced map on the quotients
    std::map<int, bool> ideal_map_surjective;   // per-degree cochain surjectivity
    int checked_up_to = -1;

    bool all_good() const;
};

struct NiceModel {
    ModelPtr model;
    NicenessReport report;
};

/* Nice relative Sullivan model for a semi-pure algebra: corrections of
 * even generators are kept inside the even ideal, falling back to a
 * constrained coboundary solve when the exponential formula leaves it
 * (it never does for the models built here; the solver path is the
 * guarded fallback). Conditions (a), (b) are checked syntactically;
 * (c) degreewise up to `N` (default 2 * top degree + 4). */
NiceModel build_nice_model(const CdgaPresentation& A, int N = -1);

NicenessReport check_niceness(const MultiplicationModel& M, int N);

/* quasi-isomorphism check of the augmentation up to degree N */
InducedMapReport check_model_quasi_iso(const MultiplicationModel& M, int N);

}  // namespace sullivan

#endif
