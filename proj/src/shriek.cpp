#include "sullivan/shriek.hpp"

#include <set>
#include <stdexcept>

namespace sullivan {

namespace {

bool is_bar_index(const MultiplicationModel& M, int idx) { return M.is_bar(idx); }

/* u with w * u = k (exponentwise), if it exists */
std::optional<Monomial> bar_divide(const Monomial& k, const Monomial& w) {
    Monomial u;
    std::size_t i = 0;
    for (const auto& [g, e] : k.factors) {
        int need = 0;
        while (i < w.factors.size() && w.factors[i].first < g) return std::nullopt;
        if (i < w.factors.size() && w.factors[i].first == g) {
            need = w.factors[i].second;
            ++i;
        }
        if (need > e) return std::nullopt;
        if (e - need > 0) u.factors.emplace_back(g, e - need);
    }
    if (i != w.factors.size()) return std::nullopt;
    return u;
}

}  // namespace

Poly DualCochain::value(const Monomial& bar_monomial) const {
    auto it = values.find(bar_monomial);
    return it == values.end() ? Poly::zero(model->algebra.table) : it->second;
}

std::vector<char> DualCochain::active_bars_mask() const {
    std::vector<char> mask(model->algebra.table->size(), 0);
    for (int j = 0; j < active; ++j) mask[model->bar_of(j)] = 1;
    return mask;
}

std::vector<Monomial> DualCochain::bar_basis(int n) const {
    return basis(*model->algebra.table, n, active_bars_mask());
}

Poly DualCochain::evaluate(const Poly& p) const {
    const TablePtr& mt = model->algebra.table;
    if (p.table() != mt) throw std::runtime_error("cochain evaluated on foreign polynomial");
    const bool odd_deg = degree % 2 != 0;
    Poly out(mt);
    for (const auto& [m, c] : p.terms()) {
        MonomialSplit sp =
            mono_split(*mt, m, [this](int g) { return is_bar_index(*model, g); });
        auto it = values.find(sp.inside);
        if (it == values.end()) continue;
        int sign = sp.sign;
        if (odd_deg && sp.outside.degree(*mt) % 2 != 0) sign = -sign;
        out += (Poly::term(mt, sp.outside, Q(1)) * it->second).scaled(c * sign);
    }
    return out;
}

DualCochain identity_cochain(ModelPtr model) {
    DualCochain f;
    f.model = std::move(model);
    f.degree = 0;
    f.active = 0;
    f.values.emplace(Monomial::one(), Poly::unit(f.model->algebra.table));
    return f;
}

DualCochain cochain_differential(const DualCochain& f, int max_key_degree) {
    DualCochain df;
    df.model = f.model;
    df.degree = f.degree + 1;
    df.active = f.active;
    const TablePtr& mt = f.model->algebra.table;
    int sign = f.degree % 2 == 0 ? 1 : -1;
    for (int n = 0; n <= max_key_degree; ++n) {
        for (const Monomial& w : f.bar_basis(n)) {
            Poly dw = f.model->algebra.d.apply(Poly::term(mt, w, Q(1)));
            Poly val = f.model->algebra.d.apply(f.value(w)) - f.evaluate(dw).scaled(sign);
            if (!val.is_zero()) df.values.emplace(w, std::move(val));
        }
    }
    return df;
}

CocycleCheck is_cocycle(const DualCochain& f, int N) {
    DualCochain df = cochain_differential(f, N);
    CocycleCheck out;
    if (!df.values.empty()) {
        out.ok = false;
        out.witness = df.values.begin()->first;
        out.residue = df.values.begin()->second;
    }
    return out;
}

DualCochain phi(const DualCochain& f) {
    const MultiplicationModel& M = *f.model;
    int j = f.active;
    if (j >= M.base.table->size()) throw std::runtime_error("phi: no generator left to add");
    const TablePtr& mt = M.algebra.table;
    const Generator& x = (*M.base.table)[j];
    const Poly& corr = M.correction[j];

    DualCochain g;
    g.model = f.model;
    g.active = j + 1;

    if (x.odd()) {
        g.degree = f.degree + x.degree;
        int msign = f.degree % 2 == 0 ? 1 : -1;
        Poly copies = Poly::generator(mt, M.second_of(j)) - Poly::generator(mt, M.first_of(j));
        // candidate arguments: supp(f) plus quotients of supp(f) by the bar
        // parts of the correction term
        std::set<Monomial, MonomialOrder> candidates;
        for (const auto& [k, v] : f.values) candidates.insert(k);
        for (const auto& [m, c] : corr.terms()) {
            MonomialSplit sp = mono_split(*mt, m, [&M](int gi) { return M.is_bar(gi); });
            if (sp.inside.is_one()) continue;
            for (const auto& [k, v] : f.values) {
                auto u = bar_divide(k, sp.inside);
                if (u) candidates.insert(*u);
            }
        }
        for (const Monomial& u : candidates) {
            Poly val = copies * f.value(u);
            Poly xu = corr * Poly::term(mt, u, Q(1));
            val -= f.evaluate(xu).scaled(msign);
            if (!val.is_zero()) g.values.emplace(u, std::move(val));
        }
    } else {
        g.degree = f.degree + 1 - x.degree;
        int bar = M.bar_of(j);
        for (const auto& [u, v] : f.values) {
            int s = (f.degree + u.degree(*mt)) % 2 == 0 ? 1 : -1;
            Monomial key = u;
            key.factors.emplace_back(bar, 1);  // bar index exceeds all active bars
            g.values.emplace(std::move(key), v.scaled(Q(s)));
        }
    }
    return g;
}

DualCochain build_shriek_cocycle(const ModelPtr& model) {
    DualCochain f = identity_cochain(model);
    for (int j = 0; j < model->base.table->size(); ++j) f = phi(f);
    return f;
}

std::vector<DualCochain> shriek_cocycle_stages(const ModelPtr& model) {
    std::vector<DualCochain> stages;
    stages.push_back(identity_cochain(model));
    for (int j = 0; j < model->base.table->size(); ++j) stages.push_back(phi(stages.back()));
    return stages;
}

namespace {

/* every monomial contains both copies of some odd generator */
bool in_odd_pair_ideal(const MultiplicationModel& M, int active, const Poly& p) {
    for (const auto& [m, c] : p.terms()) {
        bool hit = false;
        for (int j = 0; j < active && !hit; ++j) {
            if (!(*M.base.table)[j].odd()) continue;
            if (m.contains(M.first_of(j)) && m.contains(M.second_of(j))) hit = true;
        }
        if (!hit) return false;
    }
    return true;
}

}  // namespace

GoodnessReport check_goodness(const DualCochain& f) {
    const MultiplicationModel& M = *f.model;
    const TablePtr& mt = M.algebra.table;
    GoodnessReport rep;

    Monomial all_even_bars;
    for (int j = 0; j < f.active; ++j)
        if (!(*M.base.table)[j].odd()) all_even_bars.factors.emplace_back(M.bar_of(j), 1);
    Poly g = f.value(all_even_bars);
    Poly prod = Poly::unit(mt);
    for (int j = 0; j < f.active; ++j) {
        if (!(*M.base.table)[j].odd()) continue;
        prod = prod * (Poly::generator(mt, M.second_of(j)) - Poly::generator(mt, M.first_of(j)));
    }
    if (in_odd_pair_ideal(M, f.active, g - prod)) {
        rep.condition_a = true;
        rep.sign = 1;
        rep.ideal_part = g - prod;
    } else if (in_odd_pair_ideal(M, f.active, g + prod)) {
        rep.condition_a = true;
        rep.sign = -1;
        rep.ideal_part = g + prod;
    }

    rep.condition_b = true;
    for (const auto& [k, v] : f.values) {
        bool has_odd_bar = false;
        for (const auto& [gi, e] : k.factors)
            if (M.is_bar(gi) && (*M.base.table)[M.base_gen_of(gi)].odd()) has_odd_bar = true;
        if (has_odd_bar) {
            rep.condition_b = false;
            rep.violation_b = k;
            break;
        }
    }
    return rep;
}

NontrivialityCertificate verify_nontriviality(const DualCochain& f) {
    const MultiplicationModel& M = *f.model;
    NontrivialityCertificate cert;
    if (!is_semipure(M.base)) {
        cert.reason = "base algebra is not semi-pure";
        return cert;
    }
    GoodnessReport good = check_goodness(f);
    if (!good.condition_a) {
        cert.reason = "cocycle does not satisfy goodness condition (a)";
        return cert;
    }

    const TablePtr& bt = M.base.table;
    // v' -> 0, v'' -> v, bars -> 0
    std::vector<Poly> ev_images;
    for (int i = 0; i < M.algebra.table->size(); ++i) {
        if (M.kind_of(i) == 1)
            ev_images.push_back(Poly::generator(bt, M.base_gen_of(i)));
        else
            ev_images.push_back(Poly::zero(bt));
    }
    AlgebraMap second_only(M.algebra.table, bt, std::move(ev_images));
    // kill even generators
    std::vector<Poly> pr_images;
    for (int j = 0; j < bt->size(); ++j)
        pr_images.push_back((*bt)[j].odd() ? Poly::generator(bt, j) : Poly::zero(bt));
    AlgebraMap pr(bt, bt, std::move(pr_images));

    Monomial all_even_bars;
    for (int j = 0; j < f.active; ++j)
        if (!(*bt)[j].odd()) all_even_bars.factors.emplace_back(M.bar_of(j), 1);
    cert.evaluated = pr(second_only(f.value(all_even_bars)));

    Poly odd_product = Poly::unit(bt);
    for (int j = 0; j < f.active; ++j)
        if ((*bt)[j].odd()) odd_product = odd_product * Poly::generator(bt, j);
    if (cert.evaluated == odd_product) {
        cert.ok = true;
        cert.sign = 1;
    } else if (cert.evaluated == -odd_product) {
        cert.ok = true;
        cert.sign = -1;
    } else {
        cert.reason = "evaluation missed the product of odd generators";
    }
    return cert;
}

PqVanishingReport check_pq_vanishing(const DualCochain& f) {
    const MultiplicationModel& M = *f.model;
    PqVanishingReport rep;
    rep.p = rep.q = 0;
    for (int j = 0; j < f.active; ++j) ((*M.base.table)[j].odd() ? rep.q : rep.p) += 1;
    std::vector<int> even_bars;
    for (int j = 0; j < f.active; ++j)
        if (!(*M.base.table)[j].odd()) even_bars.push_back(M.bar_of(j));

    int lo = std::max(rep.p - rep.q + 1, 0);
    for (int n = lo; n <= rep.p; ++n) {
        std::vector<int> pick(n);
        // all n-subsets of the even bars, lexicographic
        std::function<void(int, int)> rec = [&](int start, int depth) {
            if (depth == n) {
                Monomial w;
                for (int idx : pick) w.factors.emplace_back(idx, 1);
                Poly val = M.aug(f.value(w));
                if (!val.is_zero()) rep.all_zero = false;
                rep.entries.push_back({std::move(w), std::move(val)});
                return;
            }
            for (int i = start; i < (int)even_bars.size(); ++i) {
                pick[depth] = even_bars[i];
                rec(i + 1, depth + 1);
            }
        };
        rec(0, 0);
    }
    return rep;
}

MuDeltaReport mu_delta_on_bars(const DualCochain& f, int N) {
    const MultiplicationModel& M = *f.model;
    MuDeltaReport rep;
    for (int n = 0; n <= N; ++n) {
        for (const Monomial& w : f.bar_basis(n)) {
            ++rep.checked_monomials;
            Poly val = M.aug(f.value(w));
            if (!val.is_zero()) {
                rep.all_zero = false;
                rep.nonzero.push_back({w, std::move(val)});
            }
        }
    }
    return rep;
}

}  // namespace sullivan
