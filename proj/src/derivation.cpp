#include "sullivan/derivation.hpp"

#include <stdexcept>

namespace sullivan {

Derivation::Derivation(TablePtr table, int degree, std::vector<Poly> images)
    : table_(std::move(table)), degree_(degree), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != table_->size())
        throw std::runtime_error("derivation: one image per generator required");
    for (int i = 0; i < table_->size(); ++i) {
        const Poly& im = images_[i];
        if (im.table() != table_) throw std::runtime_error("derivation: image over wrong table");
        if (im.is_zero()) continue;
        int want = (*table_)[i].degree + degree_;
        if (!im.is_homogeneous() || im.degree() != want)
            throw std::runtime_error("derivation: image of " + (*table_)[i].name +
                                     " is not homogeneous of degree " + std::to_string(want));
    }
}

Derivation Derivation::zero(TablePtr table, int degree) {
    std::vector<Poly> images(table->size(), Poly::zero(table));
    return Derivation(std::move(table), degree, std::move(images));
}

Poly Derivation::apply(const Poly& p) const {
    if (p.table() != table_) throw std::runtime_error("derivation applied to foreign polynomial");
    Poly out(table_);
    const bool odd_deriv = (degree_ % 2) != 0;
    for (const auto& [m, c] : p.terms()) {
        int prefix_deg = 0;
        for (std::size_t j = 0; j < m.factors.size(); ++j) {
            auto [g, e] = m.factors[j];
            const Poly& img = images_[g];
            if (!img.is_zero()) {
                // prefix * (e * g^{e-1} * D(g)) * suffix
                Monomial pre, suf;
                pre.factors.assign(m.factors.begin(), m.factors.begin() + j);
                suf.factors.assign(m.factors.begin() + j + 1, m.factors.end());
                Poly mid = img.scaled(Q(e));
                if (e > 1) mid = Poly::term(table_, Monomial::gen(g, e - 1), Q(1)) * mid;
                Poly piece = Poly::term(table_, pre, Q(1)) * mid * Poly::term(table_, suf, Q(1));
                int sign = (odd_deriv && prefix_deg % 2 != 0) ? -1 : 1;
                out += piece.scaled(c * sign);
            }
            prefix_deg += e * (*table_)[g].degree;
        }
    }
    return out;
}

bool Derivation::is_differential() const {
    if (degree_ != 1) return false;
    for (const Poly& im : images_)
        if (!apply(im).is_zero()) return false;
    return true;
}

Derivation bracket(const Derivation& a, const Derivation& b) {
    if (a.table() != b.table()) throw std::runtime_error("bracket: derivations over different tables");
    const TablePtr& T = a.table();
    int sign = (a.degree() % 2 != 0 && b.degree() % 2 != 0) ? -1 : 1;
    std::vector<Poly> images;
    images.reserve(T->size());
    for (int g = 0; g < T->size(); ++g) {
        Poly im = a.apply(b.image(g)) - b.apply(a.image(g)).scaled(Q(sign));
        images.push_back(std::move(im));
    }
    return Derivation(T, a.degree() + b.degree(), std::move(images));
}

static int default_cap(const Poly& p, int cap) {
    if (cap > 0) return cap;
    return 10 * std::max(1, p.max_degree());
}

Poly exp_apply(const Derivation& theta, const Poly& p, int cap) {
    if (theta.degree() != 0) throw std::runtime_error("exp: derivation degree must be 0");
    cap = default_cap(p, cap);
    Poly total = p;
    Poly q = p;
    Q fact(1);
    for (int n = 1; !q.is_zero(); ++n) {
        if (n > cap)
            throw std::runtime_error("exp: iteration cap exceeded, surviving term " + q.to_string());
        q = theta.apply(q);
        fact *= n;
        if (!q.is_zero()) total += q.scaled(1 / fact);
    }
    return total;
}

Poly nilpotent_partial_sum(const Derivation& s, const Derivation& d, const Poly& p, int cap) {
    if (s.table() != d.table() || p.table() != s.table())
        throw std::runtime_error("nilpotent_partial_sum: table mismatch");
    cap = default_cap(p, cap);
    Poly total(p.table());
    Poly q = p;
    Q fact(1);
    for (int n = 1;; ++n) {
        if (n > cap)
            throw std::runtime_error("nilpotent_partial_sum: iteration cap exceeded, surviving term " +
                                     q.to_string());
        q = s.apply(d.apply(q));
        if (q.is_zero()) break;
        fact *= n;
        total += q.scaled(1 / fact);
    }
    return total;
}

}  // namespace sullivan
