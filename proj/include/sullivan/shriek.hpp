#ifndef SULLIVAN_SHRIEK_HPP
#define SULLIVAN_SHRIEK_HPP

#include "sullivan/models.hpp"

namespace sullivan {

/* A module map from the multiplication model into the doubled algebra,
 * linear over the doubled algebra: determined by its values on bar
 * monomials. Extension to arbitrary elements follows the left-module
 * convention f(c w) = (-1)^{deg f * deg c} c f(w). Values live in the
 * model table but never contain bar generators. */
struct DualCochain {
    ModelPtr model;
    int degree = 0;
    int active = 0;  // number of leading base generators covered
    std::map<Monomial, Poly, MonomialOrder> values;

    Poly value(const Monomial& bar_monomial) const;
    Poly evaluate(const Poly& p) const;

    std::vector<char> active_bars_mask() const;
    std::vector<Monomial> bar_basis(int n) const;
};

/* The unit cochain over the empty prefix: 1 -> 1, degree 0. */
DualCochain identity_cochain(ModelPtr model);

/* (df)(w) = d(f(w)) - (-1)^{deg f} f(dw), materialized on bar monomials of
 * degree <= max_key_degree. */
DualCochain cochain_differential(const DualCochain& f, int max_key_degree);

struct CocycleCheck {
    bool ok = true;
    Monomial witness;
    Poly residue;
};
CocycleCheck is_cocycle(const DualCochain& f, int N);

/* One induction step: extends f over the next base generator x using the
 * model's correction term. Odd x:
 *   (Phi f)(u) = (x'' - x') f(u) - (-1)^{deg f} f(correction(x) u),
 *   (Phi f)(u xbar^k) = 0 for k >= 1;
 * even x:
 *   (Phi f)(u xbar) = (-1)^{deg f + deg u} f(u), (Phi f)(u) = 0. */
DualCochain phi(const DualCochain& f);

/* Iterates phi over all base generators in filtration order. */
DualCochain build_shriek_cocycle(const ModelPtr& model);
std::vector<DualCochain> shriek_cocycle_stages(const ModelPtr& model);

/* Goodness: (a) the value on the product of all even bars equals
 * +-prod_j(y_j'' - y_j') up to the ideal generated by the products
 * y_j' y_j''; (b) the cochain kills every bar monomial containing the bar
 * of an odd generator. */
struct GoodnessReport {
    bool condition_a = false;
    int sign = 0;            // sign of the leading product when (a) holds
    Poly ideal_part;         // the witness u
    bool condition_b = false;
    Monomial violation_b;    // first offending key when (b) fails

    bool good() const { return condition_a && condition_b; }
};
GoodnessReport check_goodness(const DualCochain& f);

/* Evaluates the cocycle against the canonical Tor class: applies
 * (v' -> 0, v'' -> v) and then kills even generators; a good cocycle lands
 * on +-(product of odd generators), which certifies that its class
 * generates Ext. Requires a semi-pure base and a nice model. */
struct NontrivialityCertificate {
    bool ok = false;
    int sign = 0;
    Poly evaluated;
    std::string reason;
};
NontrivialityCertificate verify_nontriviality(const DualCochain& f);

/* aug . f on every n-fold product of distinct even bars for
 * n > max(p - q, 0); all values are expected to vanish. */
struct PqVanishingEntry {
    Monomial argument;
    Poly value;  // aug(f(argument)) in the base algebra
};
struct PqVanishingReport {
    int p = 0, q = 0;
    std::vector<PqVanishingEntry> entries;
    bool all_zero = true;
};
PqVanishingReport check_pq_vanishing(const DualCochain& f);

/* aug . f on all bar monomials of degree <= N. */
struct MuDeltaReport {
    bool all_zero = true;
    std::vector<PqVanishingEntry> nonzero;  // witnesses
    int checked_monomials = 0;
};
MuDeltaReport mu_delta_on_bars(const DualCochain& f, int N);

}  // namespace sullivan

#endif
