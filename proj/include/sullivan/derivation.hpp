#ifndef SULLIVAN_DERIVATION_HPP
#define SULLIVAN_DERIVATION_HPP

#include "sullivan/algebra.hpp"

namespace sullivan {

/* A graded derivation of a free graded-commutative algebra, stored by its
 * values on generators and extended by the graded Leibniz rule
 *   D(ab) = D(a) b + (-1)^{deg D * deg a} a D(b).
 * Images must be zero or homogeneous of degree (generator degree + deg D). */
class Derivation {
public:
    Derivation() = default;
    Derivation(TablePtr table, int degree, std::vector<Poly> images);

    static Derivation zero(TablePtr table, int degree);

    const TablePtr& table() const { return table_; }
    int degree() const { return degree_; }
    const Poly& image(int gen_index) const { return images_.at(gen_index); }
    const std::vector<Poly>& images() const { return images_; }

    Poly apply(const Poly& p) const;
    Poly operator()(const Poly& p) const { return apply(p); }

    /* true iff degree is +1 and D(D(g)) = 0 for every generator
     * (sufficient for D^2 = 0 by the Leibniz rule). */
    bool is_differential() const;

private:
    TablePtr table_;
    int degree_ = 0;
    std::vector<Poly> images_;
};

/* Graded commutator a b - (-1)^{deg a deg b} b a, materialized on
 * generators. */
Derivation bracket(const Derivation& a, const Derivation& b);

/* e^theta p = sum_{n>=0} theta^n p / n! for a locally nilpotent derivation
 * of degree 0. `cap` bounds the iteration (0 selects 10 * max degree of p);
 * exceeding it raises an error naming the surviving term. */
Poly exp_apply(const Derivation& theta, const Poly& p, int cap = 0);

/* sum_{n>=1} (s d)^n p / n!, the correction-term series of the
 * multiplication model. Same iteration cap policy as exp_apply. */
Poly nilpotent_partial_sum(const Derivation& s, const Derivation& d, const Poly& p, int cap = 0);

}  // namespace sullivan

#endif
