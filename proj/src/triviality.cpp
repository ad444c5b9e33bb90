#include "sullivan/triviality.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sullivan {

int default_degree_bound(const CdgaPresentation& A) {
    int sum = 0;
    for (const Generator& g : A.table->generators()) sum += g.degree;
    return std::min(2 * sum, 24);
}

AlgebraMap invert_iso(const AlgebraMap& f) {
    const TablePtr& S = f.src();
    const TablePtr& T = f.dst();
    std::vector<Poly> images;
    images.reserve(T->size());
    for (int g = 0; g < T->size(); ++g) {
        int m = (*T)[g].degree;
        std::vector<Monomial> bs = basis(*S, m);
        std::vector<Monomial> bt = basis(*T, m);
        QMatrix A((int)bt.size(), (int)bs.size());
        for (int j = 0; j < (int)bs.size(); ++j) {
            QVec col = poly_to_coords(bt, f.apply_monomial(bs[j]));
            for (const auto& [r, v] : col.e) A.set(r, j, v);
        }
        std::vector<Q> rhs(bt.size(), Q(0));
        QVec target = poly_to_coords(bt, Poly::generator(T, g));
        for (const auto& [r, v] : target.e) rhs[r] = v;
        auto sol = solve_minimal(A, rhs);
        if (!sol) throw std::runtime_error("invert_iso: " + (*T)[g].name + " has no preimage");
        Poly img(S);
        for (int j = 0; j < (int)bs.size(); ++j)
            if ((*sol)[j] != 0) img.add_term(bs[j], (*sol)[j]);
        images.push_back(std::move(img));
    }
    AlgebraMap inv(T, S, std::move(images));
    for (int g = 0; g < T->size(); ++g)
        if (f(inv.image(g)) != Poly::generator(T, g))
            throw std::runtime_error("invert_iso: right inverse check failed");
    for (int g = 0; g < S->size(); ++g)
        if (inv(f.image(g)) != Poly::generator(S, g))
            throw std::runtime_error("invert_iso: map is not an isomorphism");
    return inv;
}

namespace {

CdgaPresentation prefix_presentation(const CdgaPresentation& A, int k) {
    std::vector<Generator> gens(A.table->generators().begin(),
                                A.table->generators().begin() + k);
    TablePtr t = make_table(std::move(gens));
    std::vector<Poly> images;
    images.reserve(k);
    for (int i = 0; i < k; ++i) {
        Poly p(t);
        for (const auto& [m, c] : A.d.image(i).terms()) p.add_term(m, c);
        images.push_back(std::move(p));
    }
    return make_presentation(t, std::move(images));
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

void push_cochain_witnesses(TrivialityCertificate& cert, const DualCochain& f,
                            const std::string& prefix) {
    const TablePtr& mt = f.model->algebra.table;
    for (const auto& [k, v] : f.values)
        cert.witnesses.push_back({prefix + "(" + mono_to_string(*mt, k) + ")", v.to_string()});
}

}  // namespace

/* ------------------------------------------------------------------ */
/* Loop tensor square and the section psi                              */
/* ------------------------------------------------------------------ */

LoopTensorSquare build_loop_tensor_square(ModelPtr model) {
    const MultiplicationModel& M = *model;
    const GeneratorTable& T = *M.base.table;
    LoopModel L = build_loop_model(M);

    std::vector<Generator> big_gens, tgt_gens;
    for (int j = 0; j < T.size(); ++j) {
        const Generator& g = T[j];
        big_gens.push_back({g.name + "@1", g.degree});
        big_gens.push_back({g.name + "@2", g.degree});
        big_gens.push_back({g.name + "~", g.degree - 1});
        big_gens.push_back({g.name + "~@1", g.degree - 1});
        big_gens.push_back({g.name + "~@2", g.degree - 1});
        tgt_gens.push_back({g.name, g.degree});
        tgt_gens.push_back({g.name + "~@1", g.degree - 1});
        tgt_gens.push_back({g.name + "~@2", g.degree - 1});
    }
    TablePtr bt = make_table(std::move(big_gens));
    TablePtr tt = make_table(std::move(tgt_gens));

    auto map_model = [&](auto pick) {
        std::vector<Poly> im;
        for (int i = 0; i < M.algebra.table->size(); ++i) im.push_back(pick(i));
        return AlgebraMap(M.algebra.table, bt, std::move(im));
    };
    AlgebraMap model_to_big = map_model([&](int i) {
        int j = i / 3, k = i % 3;
        return Poly::generator(bt, 5 * j + k);
    });
    auto map_loop = [&](const TablePtr& dst, int base_off, int bar_off, int stride) {
        std::vector<Poly> im;
        for (int i = 0; i < L.algebra.table->size(); ++i) {
            int j = i / 2;
            im.push_back(Poly::generator(dst, stride * j + (i % 2 == 0 ? base_off : bar_off)));
        }
        return AlgebraMap(L.algebra.table, dst, std::move(im));
    };
    AlgebraMap loop_to_big1 = map_loop(bt, 0, 3, 5);
    AlgebraMap loop_to_big2 = map_loop(bt, 1, 4, 5);
    AlgebraMap loop_to_tgt1 = map_loop(tt, 0, 1, 3);
    AlgebraMap loop_to_tgt2 = map_loop(tt, 0, 2, 3);

    std::vector<Poly> big_d(5 * T.size(), Poly::zero(bt));
    std::vector<Poly> tgt_d(3 * T.size(), Poly::zero(tt));
    std::vector<Poly> tgt_from_base_images;
    for (int j = 0; j < T.size(); ++j) tgt_from_base_images.push_back(Poly::generator(tt, 3 * j));
    AlgebraMap base_to_tgt(M.base.table, tt, std::move(tgt_from_base_images));
    for (int j = 0; j < T.size(); ++j) {
        big_d[5 * j + 0] = model_to_big(M.algebra.d.image(3 * j));
        big_d[5 * j + 1] = model_to_big(M.algebra.d.image(3 * j + 1));
        big_d[5 * j + 2] = model_to_big(M.algebra.d.image(3 * j + 2));
        big_d[5 * j + 3] = loop_to_big1(L.algebra.d.image(2 * j + 1));
        big_d[5 * j + 4] = loop_to_big2(L.algebra.d.image(2 * j + 1));
        tgt_d[3 * j + 0] = base_to_tgt(M.base.d.image(j));
        tgt_d[3 * j + 1] = loop_to_tgt1(L.algebra.d.image(2 * j + 1));
        tgt_d[3 * j + 2] = loop_to_tgt2(L.algebra.d.image(2 * j + 1));
    }

    LoopTensorSquare out;
    out.model = std::move(model);
    out.big = make_presentation(bt, std::move(big_d));
    out.target = make_presentation(tt, std::move(tgt_d));

    std::vector<Poly> eps_images;
    for (int i = 0; i < bt->size(); ++i) {
        int j = i / 5, k = i % 5;
        switch (k) {
            case 0:
            case 1: eps_images.push_back(Poly::generator(tt, 3 * j)); break;
            case 2: eps_images.push_back(Poly::zero(tt)); break;
            case 3: eps_images.push_back(Poly::generator(tt, 3 * j + 1)); break;
            default: eps_images.push_back(Poly::generator(tt, 3 * j + 2)); break;
        }
    }
    out.eps = AlgebraMap(bt, tt, std::move(eps_images));
    if (!is_cochain_map(out.eps, out.big.d, out.target.d))
        throw std::runtime_error("loop tensor square: eps is not a cochain map");
    out.double_into = std::move(model_to_big);
    return out;
}

SectionPsi build_section_psi(const LoopTensorSquare& L) {
    const GeneratorTable& T = *L.model->base.table;
    const TablePtr& bt = L.big.table;
    const TablePtr& tt = L.target.table;
    std::vector<Poly> psi_images(tt->size(), Poly::zero(bt));
    std::vector<Poly> corrections;
    corrections.reserve(T.size());

    for (int j = 0; j < T.size(); ++j) {
        psi_images[3 * j] = Poly::generator(bt, 5 * j);
        psi_images[3 * j + 1] = Poly::generator(bt, 5 * j + 3);

        // correction for the second-factor bar
        Poly dtgt = L.target.d.image(3 * j + 2);
        for (const auto& [m, c] : dtgt.terms())
            for (const auto& [g, e] : m.factors)
                if (g >= 3 * j) throw std::runtime_error("section: unexpected forward reference");
        AlgebraMap psi_partial(tt, bt, psi_images);
        Poly alpha = psi_partial(dtgt) - L.big.d.image(5 * j + 4);
        Poly y = Poly::zero(bt);
        if (!alpha.is_zero()) {
            std::vector<char> big_prefix(bt->size(), 0);
            for (int i = 0; i < 5 * j; ++i) big_prefix[i] = 1;
            std::vector<char> tgt_prefix(tt->size(), 0);
            for (int i = 0; i < 3 * j; ++i) tgt_prefix[i] = 1;
            ComplexMap F;
            F.src = ComplexView{bt, &L.big.d, big_prefix, nullptr, false};
            F.dst = ComplexView{tt, &L.target.d, tgt_prefix, nullptr, false};
            F.f = [&L](const Poly& p) { return L.eps(p); };
            y = solve_coboundary_in_kernel(F, alpha, T[j].degree);
        }
        corrections.push_back(y);
        psi_images[3 * j + 2] = Poly::generator(bt, 5 * j + 4) + y;
    }

    SectionPsi out;
    out.psi = AlgebraMap(tt, bt, std::move(psi_images));
    out.corrections = std::move(corrections);
    if (!is_cochain_map(out.psi, L.target.d, L.big.d))
        throw std::runtime_error("section: psi is not a cochain map");
    for (int g = 0; g < tt->size(); ++g)
        if (L.eps(out.psi.image(g)) != Poly::generator(tt, g))
            throw std::runtime_error("section: eps . psi != id at " + (*tt)[g].name);
    return out;
}

namespace {

struct TriSplit {
    Monomial part[3];
    int sign = 1;
};

/* splits into ordered classes 0 < 1 < 2 with the Koszul unshuffle sign */
template <typename ClassFn>
TriSplit tri_split(const GeneratorTable& T, const Monomial& m, ClassFn cls) {
    TriSplit out;
    int odd_seen[3] = {0, 0, 0};
    int parity = 0;
    for (const auto& [g, e] : m.factors) {
        int k = cls(g);
        out.part[k].factors.emplace_back(g, e);
        if (T[g].odd()) {
            for (int later = k + 1; later < 3; ++later) parity ^= (odd_seen[later] & 1);
            odd_seen[k] += 1;
        }
    }
    out.sign = parity ? -1 : 1;
    return out;
}

}  // namespace

Poly delta_tensor_id(const LoopTensorSquare& L, const DualCochain& delta, const Poly& z) {
    const TablePtr& bt = L.big.table;
    if (z.table() != bt) throw std::runtime_error("delta_tensor_id: foreign polynomial");
    const bool odd_deg = delta.degree % 2 != 0;
    Poly out(bt);
    for (const auto& [m, c] : z.terms()) {
        TriSplit sp = tri_split(*bt, m, [](int g) {
            int k = g % 5;
            return k <= 1 ? 0 : (k == 2 ? 1 : 2);
        });
        // translate the model-bar part into the multiplication model table
        Monomial bar;
        for (const auto& [g, e] : sp.part[1].factors) bar.factors.emplace_back(3 * (g / 5) + 2, e);
        Poly val = delta.value(bar);
        if (val.is_zero()) continue;
        int sign = sp.sign;
        if (odd_deg && sp.part[0].degree(*bt) % 2 != 0) sign = -sign;
        Poly piece = Poly::term(bt, sp.part[0], Q(1)) * L.double_into(val) *
                     Poly::term(bt, sp.part[2], Q(1));
        out += piece.scaled(c * sign);
    }
    return out;
}

/* ------------------------------------------------------------------ */
/* Dlcop                                                               */
/* ------------------------------------------------------------------ */

namespace {

/* values all lie in the ideal generated by (x'' - x') for base generator 0 */
bool stage_in_principal_ideal(const DualCochain& f) {
    const MultiplicationModel& M = *f.model;
    const TablePtr& mt = M.algebra.table;
    std::vector<Poly> sub;
    for (int i = 0; i < mt->size(); ++i)
        sub.push_back(i == M.second_of(0) ? Poly::generator(mt, M.first_of(0))
                                          : Poly::generator(mt, i));
    AlgebraMap collapse(mt, mt, std::move(sub));
    for (const auto& [k, v] : f.values)
        if (!collapse(v).is_zero()) return false;
    return true;
}

TrivialityCertificate dlcop_part3(const CdgaPresentation& B, int N, bool replaced,
                                  std::vector<std::string>& reasons) {
    TrivialityCertificate cert;
    cert.target = "Dlcop";
    int p = B.even_count(), q = B.odd_count();
    if (p >= q) {
        reasons.push_back("part3: requires dim V^even < dim V^odd, got p=" + std::to_string(p) +
                          ", q=" + std::to_string(q));
        return cert;
    }
    NiceModel nm = build_nice_model(B, N);
    if (!nm.report.all_good()) throw std::runtime_error("part3: model failed the niceness checks");
    DualCochain delta = build_shriek_cocycle(nm.model);
    GoodnessReport good = check_goodness(delta);
    NontrivialityCertificate nt = verify_nontriviality(delta);
    MuDeltaReport mu = mu_delta_on_bars(delta, N);
    if (!good.good() || !nt.ok || !mu.all_zero)
        throw std::runtime_error("part3: internal verification failed on a p<q semi-pure algebra");
    cert.certified = true;
    cert.route = "part3";
    cert.used_semipure_replacement = replaced;
    cert.witnesses.push_back({"p (even generators)", std::to_string(p)});
    cert.witnesses.push_back({"q (odd generators)", std::to_string(q)});
    cert.witnesses.push_back({"shriek class sign", nt.sign > 0 ? "+1" : "-1"});
    cert.witnesses.push_back(
        {"mu.delta on bar basis", "0 on all " + std::to_string(mu.checked_monomials) +
                                      " monomials of degree <= " + std::to_string(N)});
    push_cochain_witnesses(cert, delta, "delta");
    return cert;
}

TrivialityCertificate dlcop_part1(const CdgaPresentation& A, int N, const std::string& gen_name,
                                  bool replaced, std::vector<std::string>& reasons) {
    TrivialityCertificate cert;
    cert.target = "Dlcop";
    int pick = -1;
    if (!gen_name.empty()) {
        pick = A.table->index_of(gen_name);
        if (pick < 0) {
            reasons.push_back("part1: unknown generator " + gen_name);
            return cert;
        }
        if (!(*A.table)[pick].odd() || !A.d.image(pick).is_zero()) {
            reasons.push_back("part1: " + gen_name + " is not an odd cocycle generator");
            return cert;
        }
    } else {
        for (int j = A.table->size() - 1; j >= 0; --j)
            if ((*A.table)[j].odd() && A.d.image(j).is_zero()) {
                pick = j;
                break;
            }
        if (pick < 0) {
            reasons.push_back("part1: no odd generator with zero differential");
            return cert;
        }
    }
    std::vector<int> perm{pick};
    for (int j = 0; j < A.table->size(); ++j)
        if (j != pick) perm.push_back(j);
    CdgaPresentation Aord = reorder_presentation(A, perm);

    NiceModel nm = build_nice_model(Aord, N);
    std::vector<DualCochain> stages = shriek_cocycle_stages(nm.model);
    for (std::size_t i = 1; i < stages.size(); ++i)
        if (!stage_in_principal_ideal(stages[i]))
            throw std::runtime_error("part1: stage " + std::to_string(i) +
                                     " leaves the ideal (x'' - x')");
    const DualCochain& delta = stages.back();
    NontrivialityCertificate nt = verify_nontriviality(delta);
    MuDeltaReport mu = mu_delta_on_bars(delta, N);
    if (!nt.ok || !mu.all_zero)
        throw std::runtime_error("part1: internal verification failed");
    cert.certified = true;
    cert.route = "part1";
    cert.used_semipure_replacement = replaced;
    cert.witnesses.push_back({"odd cocycle generator", (*A.table)[pick].name});
    cert.witnesses.push_back({"image containment",
                              "every stage value lies in <" + (*A.table)[pick].name + "'' - " +
                                  (*A.table)[pick].name + "'>, " +
                                  std::to_string(stages.size() - 1) + " stages"});
    cert.witnesses.push_back({"shriek class sign", nt.sign > 0 ? "+1" : "-1"});
    cert.witnesses.push_back(
        {"mu.delta on bar basis", "0 on all " + std::to_string(mu.checked_monomials) +
                                      " monomials of degree <= " + std::to_string(N)});
    push_cochain_witnesses(cert, delta, "delta");
    return cert;
}

}  // namespace

TrivialityCertificate analyze_dlcop(const CdgaPresentation& A, const DlcopOptions& opt) {
    int N = opt.max_degree < 0 ? default_degree_bound(A) : opt.max_degree;
    std::vector<std::string> reasons;
    const bool try3 = opt.route == "auto" || opt.route == "part3";
    const bool try1 = opt.route == "auto" || opt.route == "part1";
    if (!try1 && !try3 && opt.route != "part2")
        throw std::runtime_error("unknown route " + opt.route);

    if (try3) {
        if (is_semipure(A)) {
            TrivialityCertificate c = dlcop_part3(A, N, false, reasons);
            if (c.certified) return c;
        } else if (is_quadratic(A)) {
            SemipureReduction red = semipure_reduce(A);
            TrivialityCertificate c = dlcop_part3(red.reduced, N, true, reasons);
            if (c.certified) return c;
        } else {
            reasons.push_back(
                "part3: input is neither semi-pure nor quadratic; no semi-pure replacement");
        }
    }
    if (try1) {
        const CdgaPresentation* B = &A;
        CdgaPresentation reduced_store;
        bool replaced = false;
        if (!is_semipure(A)) {
            if (opt.reduce_semipure && is_quadratic(A)) {
                reduced_store = semipure_reduce(A).reduced;
                B = &reduced_store;
                replaced = true;
            } else {
                reasons.push_back("part1: input is not semi-pure");
                B = nullptr;
            }
        }
        if (B) {
            TrivialityCertificate c =
                dlcop_part1(*B, N, replaced ? std::string() : opt.part1_generator, replaced,
                            reasons);
            if (c.certified) return c;
        }
    }

    TrivialityCertificate cert;
    cert.target = "Dlcop";
    cert.route = "none";
    cert.reason = join(reasons, "; ");
    // surface evidence without claiming anything about non-triviality
    if (is_semipure(A)) {
        NiceModel nm = build_nice_model(A, N);
        DualCochain delta = build_shriek_cocycle(nm.model);
        MuDeltaReport mu = mu_delta_on_bars(delta, N);
        for (const auto& e : mu.nonzero)
            cert.witnesses.push_back(
                {"evidence: mu.delta(" + mono_to_string(*nm.model->algebra.table, e.argument) + ")",
                 e.value.to_string()});
    }
    return cert;
}

/* ------------------------------------------------------------------ */
/* Dlp                                                                 */
/* ------------------------------------------------------------------ */

TrivialityCertificate analyze_dlp(const CdgaPresentation& A, const DlpOptions& opt) {
    int N = opt.max_degree < 0 ? default_degree_bound(A) : opt.max_degree;
    TrivialityCertificate cert;
    cert.target = "Dlp";
    cert.route = "none";
    if (!is_semipure(A)) {
        cert.reason = "part2: input is not semi-pure";
        return cert;
    }
    int pick = -1;
    if (!opt.part2_generator.empty()) {
        pick = A.table->index_of(opt.part2_generator);
        if (pick < 0 || (*A.table)[pick].odd()) {
            cert.reason = "part2: " + opt.part2_generator + " is not an even generator";
            return cert;
        }
    } else {
        for (int j = A.table->size() - 1; j >= 0 && pick < 0; --j) {
            if ((*A.table)[j].odd()) continue;
            pick = j;
        }
        if (pick < 0) {
            cert.reason = "part2: no even generator to split off";
            return cert;
        }
    }
    for (int i = 0; i < A.table->size(); ++i) {
        if (i == pick) continue;
        for (const auto& [m, c] : A.d.image(i).terms())
            if (m.contains(pick)) {
                cert.reason = "part2: " + (*A.table)[pick].name + " appears in d(" +
                              (*A.table)[i].name + "), not a top generator";
                return cert;
            }
    }
    std::vector<int> perm;
    for (int j = 0; j < A.table->size(); ++j)
        if (j != pick) perm.push_back(j);
    perm.push_back(pick);
    CdgaPresentation Aord = reorder_presentation(A, perm);
    const int n = Aord.table->size();

    NiceModel nm = build_nice_model(Aord, N);
    // goodness and non-triviality of the sub-cocycle over W
    CdgaPresentation W = prefix_presentation(Aord, n - 1);
    NiceModel nmW = build_nice_model(W, N);
    DualCochain deltaW = build_shriek_cocycle(nmW.model);
    GoodnessReport gw = check_goodness(deltaW);
    NontrivialityCertificate nt = verify_nontriviality(deltaW);
    if (!gw.good() || !nt.ok)
        throw std::runtime_error("part2: sub-cocycle failed goodness/non-triviality");

    DualCochain delta = build_shriek_cocycle(nm.model);
    LoopTensorSquare L = build_loop_tensor_square(nm.model);
    SectionPsi S = build_section_psi(L);

    // image of psi avoids the model bar of the split generator
    int top_bar = L.big_bar(n - 1);
    for (int g = 0; g < L.target.table->size(); ++g)
        for (const auto& [m, c] : S.psi.image(g).terms())
            if (m.contains(top_bar))
                throw std::runtime_error("part2: psi image touches the split bar");

    // (delta ⊗ id) . psi = 0 on the basis of the target, degrees <= N
    int checked = 0;
    for (int deg = 0; deg <= N; ++deg) {
        for (const Monomial& w : basis(*L.target.table, deg)) {
            Poly z = S.psi(Poly::term(L.target.table, w, Q(1)));
            if (!delta_tensor_id(L, delta, z).is_zero())
                throw std::runtime_error("part2: (delta x id) . psi != 0 at " +
                                         mono_to_string(*L.target.table, w));
            ++checked;
        }
    }

    cert.certified = true;
    cert.route = "part2";
    cert.witnesses.push_back({"even top generator", (*A.table)[pick].name});
    cert.witnesses.push_back({"sub-cocycle class sign", nt.sign > 0 ? "+1" : "-1"});
    cert.witnesses.push_back({"(eps x id) . psi", "identity on all generators"});
    cert.witnesses.push_back({"(delta x id) . psi",
                              "0 on all " + std::to_string(checked) +
                                  " basis monomials of degree <= " + std::to_string(N)});
    for (int j = 0; j < n; ++j)
        if (!S.corrections[j].is_zero())
            cert.witnesses.push_back(
                {"psi correction of " + (*Aord.table)[j].name + "~@2", S.corrections[j].to_string()});
    for (int g = 0; g < L.target.table->size(); ++g)
        cert.witnesses.push_back(
            {"psi(" + (*L.target.table)[g].name + ")", S.psi.image(g).to_string()});
    return cert;
}

/* ------------------------------------------------------------------ */
/* Semi-pure reduction                                                 */
/* ------------------------------------------------------------------ */

bool is_quadratic(const CdgaPresentation& A) {
    for (int i = 0; i < A.table->size(); ++i)
        for (const auto& [m, c] : A.d.image(i).terms())
            if (m.factor_count() > 2) return false;
    return true;
}

namespace {

/* topological order by differential references, smallest index first */
std::vector<int> filtration_order(const GeneratorTable& T, const std::vector<Poly>& d_images) {
    int n = T.size();
    std::vector<std::set<int>> refs(n);
    for (int i = 0; i < n; ++i)
        for (const auto& [m, c] : d_images[i].terms())
            for (const auto& [g, e] : m.factors) refs[i].insert(g);
    std::vector<int> order;
    std::vector<char> placed(n, 0);
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int i = 0; i < n && pick < 0; ++i) {
            if (placed[i]) continue;
            bool ok = true;
            for (int r : refs[i])
                if (!placed[r]) {
                    ok = false;
                    break;
                }
            if (ok) pick = i;
        }
        if (pick < 0) throw std::runtime_error("no Sullivan filtration order exists");
        placed[pick] = 1;
        order.push_back(pick);
    }
    return order;
}

CdgaPresentation presentation_in_filtration_order(TablePtr t, std::vector<Poly> d_images) {
    std::vector<int> order = filtration_order(*t, d_images);
    bool already = true;
    for (int i = 0; i < (int)order.size(); ++i)
        if (order[i] != i) already = false;
    if (already) return make_presentation(t, std::move(d_images));
    std::vector<Generator> gens;
    std::vector<int> new_of_old(t->size(), -1);
    for (int i = 0; i < (int)order.size(); ++i) {
        gens.push_back((*t)[order[i]]);
        new_of_old[order[i]] = i;
    }
    TablePtr nt = make_table(std::move(gens));
    std::vector<Poly> rename;
    for (int old = 0; old < t->size(); ++old)
        rename.push_back(Poly::generator(nt, new_of_old[old]));
    AlgebraMap to_new(t, nt, std::move(rename));
    std::vector<Poly> images;
    for (int i = 0; i < (int)order.size(); ++i) images.push_back(to_new(d_images[order[i]]));
    return make_presentation(nt, std::move(images));
}

}  // namespace

SemipureReduction semipure_reduce(const CdgaPresentation& A) {
    if (!is_quadratic(A))
        throw std::runtime_error(
            "semipure_reduce: differential must be quadratic-or-less; "
            "supply a quadratic presentation");
    SemipureReduction out;
    if (is_semipure(A)) {
        out.reduced = A;
        out.projection = AlgebraMap::identity(A.table);
        out.changed = false;
        return out;
    }
    const GeneratorTable& T = *A.table;

    // linear part of d on even generators, processed per degree
    std::vector<int> u_gens;                    // pivot even generators
    std::vector<std::pair<int, QVec>> w_even;   // (anchor even gen, combo over even gens)
    std::set<int> dropped_odd;

    std::set<int> degrees;
    for (int j = 0; j < T.size(); ++j)
        if (!T[j].odd()) degrees.insert(T[j].degree);
    for (int m : degrees) {
        std::vector<int> evens, odds;
        for (int j = 0; j < T.size(); ++j) {
            if (!T[j].odd() && T[j].degree == m) evens.push_back(j);
            if (T[j].odd() && T[j].degree == m + 1) odds.push_back(j);
        }
        QMatrix M((int)odds.size(), (int)evens.size());
        for (int c = 0; c < (int)evens.size(); ++c) {
            for (const auto& [mono, coef] : A.d.image(evens[c]).terms()) {
                if (mono.factor_count() != 1) continue;
                int g = mono.factors[0].first;
                auto it = std::find(odds.begin(), odds.end(), g);
                if (it == odds.end()) throw std::runtime_error("semipure_reduce: degree bookkeeping");
                M.set((int)(it - odds.begin()), c, coef);
            }
        }
        RrefResult R = rref(M);
        for (int c = 0; c < (int)evens.size(); ++c) {
            if (R.row_of_pivot_col[c] >= 0)
                u_gens.push_back(evens[c]);
        }
        for (const QVec& v : nullspace_basis(M)) {
            // anchor = the free column carrying coefficient 1
            int anchor = -1;
            for (const auto& [c, q] : v.e)
                if (R.row_of_pivot_col[c] < 0 && q == 1) anchor = evens[c];
            QVec global;
            for (const auto& [c, q] : v.e) global.e.emplace_back(evens[c], q);
            w_even.emplace_back(anchor, std::move(global));
        }
        // odd generators absorbed by d0(U): pivot columns of the span of d0(u)
        QMatrix DU((int)u_gens.size(), (int)odds.size());
        int r = 0;
        for (int u : u_gens) {
            if (T[u].degree != m) continue;
            for (const auto& [mono, coef] : A.d.image(u).terms()) {
                if (mono.factor_count() != 1) continue;
                int g = mono.factors[0].first;
                auto it = std::find(odds.begin(), odds.end(), g);
                DU.set(r, (int)(it - odds.begin()), coef);
            }
            ++r;
        }
        DU.rows = r;
        DU.row.resize(r);
        RrefResult RU = rref(DU);
        for (int c = 0; c < (int)odds.size(); ++c)
            if (RU.row_of_pivot_col[c] >= 0) dropped_odd.insert(odds[c]);
    }

    // core generators: W^even combos anchored at free even columns, and the
    // odd generators outside the span of d0(U); ordered by anchor index
    struct CoreGen {
        int anchor;
        Poly combo;  // over A.table
    };
    std::vector<CoreGen> core;
    for (auto& [anchor, v] : w_even) {
        Poly p(A.table);
        for (const auto& [g, q] : v.e) p.add_term(Monomial::gen(g), q);
        core.push_back({anchor, std::move(p)});
    }
    for (int j = 0; j < T.size(); ++j)
        if (T[j].odd() && !dropped_odd.count(j))
            core.push_back({j, Poly::generator(A.table, j)});
    std::sort(core.begin(), core.end(),
              [](const CoreGen& a, const CoreGen& b) { return a.anchor < b.anchor; });

    // full auxiliary table [core | U | dU] with the isomorphism onto A
    std::vector<Generator> full_gens;
    std::vector<Poly> full_images;
    for (const CoreGen& c : core) {
        full_gens.push_back(T[c.anchor]);
        full_images.push_back(c.combo);
    }
    const int ncore = (int)core.size();
    for (int u : u_gens) {
        full_gens.push_back({T[u].name + "#u", T[u].degree});
        full_images.push_back(Poly::generator(A.table, u));
    }
    for (int u : u_gens) {
        full_gens.push_back({T[u].name + "#du", T[u].degree + 1});
        full_images.push_back(A.d.image(u));
        out.removed_pairs.push_back("(" + T[u].name + ", d " + T[u].name + ")");
    }
    TablePtr ft = make_table(std::move(full_gens));
    std::vector<Poly> psi_images;
    for (Poly& p : full_images) psi_images.push_back(std::move(p));
    AlgebraMap Psi(ft, A.table, std::move(psi_images));
    AlgebraMap Psi_inv = invert_iso(Psi);

    // core table and the projection q = (drop U, dU) . Psi_inv
    std::vector<Generator> core_gens;
    for (const CoreGen& c : core) core_gens.push_back(T[c.anchor]);
    TablePtr ct = make_table(std::move(core_gens));
    auto drop_to_core = [&](const Poly& p) {
        Poly outp(ct);
        for (const auto& [m, c] : p.terms()) {
            bool keep = true;
            for (const auto& [g, e] : m.factors)
                if (g >= ncore) keep = false;
            if (keep) outp.add_term(m, c);
        }
        return outp;
    };
    std::vector<Poly> q_images;
    for (int g = 0; g < T.size(); ++g) q_images.push_back(drop_to_core(Psi_inv.image(g)));
    AlgebraMap q(A.table, ct, std::move(q_images));

    std::vector<Poly> core_d;
    for (int i = 0; i < ncore; ++i) core_d.push_back(q(A.d.apply(core[i].combo)));
    CdgaPresentation reduced = presentation_in_filtration_order(ct, core_d);

    // re-target q onto the possibly re-ordered table
    if (reduced.table != ct) {
        std::vector<Poly> rename;
        for (int i = 0; i < ct->size(); ++i) {
            int idx = reduced.table->index_of((*ct)[i].name);
            rename.push_back(Poly::generator(reduced.table, idx));
        }
        AlgebraMap to_new(ct, reduced.table, std::move(rename));
        q = to_new.compose(q);
    }

    if (!is_cochain_map(q, A.d, reduced.d))
        throw std::runtime_error("semipure_reduce: projection is not a cochain map");
    if (!is_semipure(reduced))
        throw std::runtime_error("semipure_reduce: result is not semi-pure");
    out.reduced = std::move(reduced);
    out.projection = std::move(q);
    out.changed = true;
    return out;
}

/* ------------------------------------------------------------------ */
/* Pure decomposition                                                  */
/* ------------------------------------------------------------------ */

namespace {

/* exact division of P by (x0 - a) in the even polynomial subring;
 * a contains no x0 */
Poly divide_by_linear(const Poly& P, int x0, const Poly& a) {
    const TablePtr& t = P.table();
    Poly quotient(t);
    Poly rem = P;
    Poly divisor = Poly::generator(t, x0) - a;
    long guard = 0;
    while (!rem.is_zero()) {
        if (++guard > 100000) throw std::runtime_error("division: runaway");
        // leading monomial in x0
        const Monomial* lead = nullptr;
        Q lead_c;
        int lead_e = 0;
        for (const auto& [m, c] : rem.terms()) {
            int e = m.exponent_of(x0);
            if (e > lead_e || (e == lead_e && e > 0 && lead == nullptr)) {
                lead = &m;
                lead_c = c;
                lead_e = e;
            }
        }
        if (lead == nullptr || lead_e == 0)
            throw std::runtime_error("division failed: remainder " + rem.to_string());
        Monomial t_mono;
        for (const auto& [g, e] : lead->factors) {
            if (g == x0) {
                if (e > 1) t_mono.factors.emplace_back(g, e - 1);
            } else {
                t_mono.factors.emplace_back(g, e);
            }
        }
        Poly step = Poly::term(t, t_mono, lead_c);
        quotient += step;
        rem -= divisor * step;
    }
    return quotient;
}

}  // namespace

PureDecomposition pure_decompose(const CdgaPresentation& A) {
    if (!is_pure(A)) throw std::runtime_error("pure_decompose: input is not pure");

    CdgaPresentation S = A;  // combined state: first ncore generators form the core
    int ncore = A.table->size();
    AlgebraMap fwd = AlgebraMap::identity(A.table);
    AlgebraMap bwd = AlgebraMap::identity(A.table);

    for (;;) {
        // earliest odd core generator whose differential has a linear term
        int y0 = -1, x0 = -1;
        Q c0;
        for (int j = 0; j < ncore && y0 < 0; ++j) {
            if (!(*S.table)[j].odd()) continue;
            for (const auto& [m, co] : S.d.image(j).terms()) {
                if (m.factor_count() != 1) continue;
                int g = m.factors[0].first;
                if (y0 < 0 || g < x0) {
                    y0 = j;
                    x0 = g;
                    c0 = co;
                }
            }
        }
        if (y0 < 0) break;

        Poly a = Poly::generator(S.table, x0) - S.d.image(y0).scaled(1 / c0);
        bool a_has_x0 = false;
        for (const auto& [m, co] : a.terms())
            if (m.contains(x0)) a_has_x0 = true;
        if (c0 != 1 || a_has_x0) {
            // change of coordinates: the pivot generator becomes d(y0)
            std::vector<Poly> cc_images;
            for (int i = 0; i < S.table->size(); ++i)
                cc_images.push_back(i == x0 ? S.d.image(y0) : Poly::generator(S.table, i));
            AlgebraMap Psi_cc(S.table, S.table, std::move(cc_images));
            AlgebraMap Psi_cc_inv = invert_iso(Psi_cc);
            std::vector<Poly> new_d;
            for (int i = 0; i < S.table->size(); ++i)
                new_d.push_back(Psi_cc_inv(S.d.apply(Psi_cc.image(i))));
            S = CdgaPresentation{S.table, Derivation(S.table, +1, std::move(new_d))};
            fwd = Psi_cc_inv.compose(fwd);
            bwd = bwd.compose(Psi_cc);
            a = Poly::zero(S.table);
            c0 = 1;
        }

        // build the new combined table: core minus the pair, pairs appended
        const int old_n = S.table->size();
        std::vector<Generator> gens;
        std::vector<int> new_of_old(old_n, -1);
        std::vector<int> core_old;  // old indices of the new core, evens first
        for (int j = 0; j < ncore; ++j)
            if (j != x0 && j != y0 && !(*S.table)[j].odd()) core_old.push_back(j);
        for (int j = 0; j < ncore; ++j)
            if (j != x0 && j != y0 && (*S.table)[j].odd()) core_old.push_back(j);
        for (int old : core_old) {
            new_of_old[old] = (int)gens.size();
            gens.push_back((*S.table)[old]);
        }
        for (int j = ncore; j < old_n; ++j) {
            new_of_old[j] = (int)gens.size();
            gens.push_back((*S.table)[j]);
        }
        new_of_old[x0] = (int)gens.size();
        gens.push_back((*S.table)[x0]);
        new_of_old[y0] = (int)gens.size();
        gens.push_back((*S.table)[y0]);
        TablePtr nt = make_table(std::move(gens));

        AlgebraMap eta = [&] {
            std::vector<Poly> im;
            for (int i = 0; i < old_n; ++i)
                im.push_back(i == x0 ? a : Poly::generator(S.table, i));
            return AlgebraMap(S.table, S.table, std::move(im));
        }();
        AlgebraMap rename = [&] {
            std::vector<Poly> im;
            for (int i = 0; i < old_n; ++i) im.push_back(Poly::generator(nt, new_of_old[i]));
            return AlgebraMap(S.table, nt, std::move(im));
        }();
        // on even generators: x0 -> x0 + a, the rest unchanged
        AlgebraMap phi_even = [&] {
            std::vector<Poly> im;
            for (int k = 0; k < old_n; ++k) {
                if (k == x0)
                    im.push_back(Poly::generator(nt, new_of_old[x0]) + rename(a));
                else
                    im.push_back(Poly::generator(nt, new_of_old[k]));
            }
            return AlgebraMap(S.table, nt, std::move(im));
        }();

        // phi: old -> new, psi: new -> old
        std::vector<Poly> phi_im(old_n, Poly::zero(nt));
        std::vector<Poly> psi_im(old_n, Poly::zero(S.table));
        for (int i = 0; i < old_n; ++i) {
            if (i == x0) {
                phi_im[i] = phi_even.image(x0);
                psi_im[new_of_old[i]] = Poly::generator(S.table, x0) - a;
            } else if (i == y0) {
                phi_im[i] = Poly::generator(nt, new_of_old[y0]);
                psi_im[new_of_old[i]] = Poly::generator(S.table, y0);
            } else if (i < ncore && (*S.table)[i].odd()) {
                Poly diff = S.d.image(i) - eta(S.d.image(i));
                Poly b = diff.is_zero() ? Poly::zero(S.table) : divide_by_linear(diff, x0, a);
                phi_im[i] = Poly::generator(nt, new_of_old[i]) +
                            Poly::generator(nt, new_of_old[y0]) * phi_even(b);
                psi_im[new_of_old[i]] =
                    Poly::generator(S.table, i) - Poly::generator(S.table, y0) * b;
            } else {
                phi_im[i] = Poly::generator(nt, new_of_old[i]);
                psi_im[new_of_old[i]] = Poly::generator(S.table, i);
            }
        }

        // differential on the new table
        std::vector<Poly> nd(old_n, Poly::zero(nt));
        for (int i = 0; i < old_n; ++i) {
            if (i == x0) {
                nd[new_of_old[i]] = Poly::zero(nt);
            } else if (i == y0) {
                nd[new_of_old[i]] = Poly::generator(nt, new_of_old[x0]);
            } else if (i < ncore) {
                nd[new_of_old[i]] = rename(eta(S.d.image(i)));
            } else {
                nd[new_of_old[i]] = rename(S.d.image(i));
            }
        }
        CdgaPresentation Snew{nt, Derivation(nt, +1, std::move(nd))};
        if (!Snew.d.is_differential()) throw std::runtime_error("pure_decompose: d^2 != 0");

        AlgebraMap phi_step(S.table, nt, std::move(phi_im));
        AlgebraMap psi_step(nt, S.table, std::move(psi_im));
        if (!is_cochain_map(phi_step, S.d, Snew.d) || !is_cochain_map(psi_step, Snew.d, S.d))
            throw std::runtime_error("pure_decompose: split maps are not cochain maps");
        for (int g = 0; g < old_n; ++g) {
            if (psi_step(phi_step.image(g)) != Poly::generator(S.table, g))
                throw std::runtime_error("pure_decompose: psi . phi != id");
            if (phi_step(psi_step.image(g)) != Poly::generator(nt, g))
                throw std::runtime_error("pure_decompose: phi . psi != id");
        }
        fwd = phi_step.compose(fwd);
        bwd = bwd.compose(psi_step);
        S = std::move(Snew);
        ncore -= 2;
    }

    PureDecomposition out;
    out.combined = S;
    out.split = std::move(fwd);
    out.merge = std::move(bwd);
    out.core = prefix_presentation(S, ncore);
    {
        std::vector<Generator> pg(S.table->generators().begin() + ncore,
                                  S.table->generators().end());
        TablePtr pt = make_table(std::move(pg));
        std::vector<Poly> pd;
        for (int i = ncore; i < S.table->size(); ++i) {
            Poly img(pt);
            for (const auto& [m, c] : S.d.image(i).terms()) {
                Monomial shifted;
                for (const auto& [g, e] : m.factors) shifted.factors.emplace_back(g - ncore, e);
                img.add_term(shifted, c);
            }
            pd.push_back(std::move(img));
        }
        out.contractible = make_presentation(pt, std::move(pd));
    }
    if (!is_pure(out.core) || !is_minimal(out.core))
        throw std::runtime_error("pure_decompose: core is not pure minimal");
    return out;
}

}  // namespace sullivan
