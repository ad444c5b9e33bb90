#include "sullivan/models.hpp"

#include <stdexcept>

namespace sullivan {

std::vector<char> MultiplicationModel::even_ideal_mask() const {
    std::vector<char> mask(algebra.table->size(), 0);
    for (int j = 0; j < base.table->size(); ++j) {
        if ((*base.table)[j].odd()) continue;
        mask[first_of(j)] = mask[second_of(j)] = mask[bar_of(j)] = 1;
    }
    return mask;
}

std::vector<char> MultiplicationModel::even_ideal_mask_without(int base_gen) const {
    std::vector<char> mask = even_ideal_mask();
    mask[bar_of(base_gen)] = 0;
    return mask;
}

namespace {

TablePtr model_table(const GeneratorTable& T) {
    std::vector<Generator> gens;
    gens.reserve(3 * T.size());
    for (int j = 0; j < T.size(); ++j) {
        const Generator& g = T[j];
        gens.push_back({g.name + "'", g.degree});
        gens.push_back({g.name + "''", g.degree});
        gens.push_back({g.name + "~", g.degree - 1});
    }
    return make_table(std::move(gens));
}

struct ModelScaffold {
    TablePtr mt;
    AlgebraMap first, second;  // base -> model
    Derivation s;              // contraction
};

ModelScaffold scaffold(const CdgaPresentation& A) {
    ModelScaffold sc;
    sc.mt = model_table(*A.table);
    std::vector<Poly> f1, f2, simg;
    for (int j = 0; j < A.table->size(); ++j) {
        f1.push_back(Poly::generator(sc.mt, 3 * j));
        f2.push_back(Poly::generator(sc.mt, 3 * j + 1));
        simg.push_back(Poly::generator(sc.mt, 3 * j + 2));
        simg.push_back(Poly::generator(sc.mt, 3 * j + 2));
        simg.push_back(Poly::zero(sc.mt));
    }
    sc.first = AlgebraMap(A.table, sc.mt, std::move(f1));
    sc.second = AlgebraMap(A.table, sc.mt, std::move(f2));
    sc.s = Derivation(sc.mt, -1, std::move(simg));
    return sc;
}

ModelPtr build_model_impl(const CdgaPresentation& A, bool nice) {
    ModelScaffold sc = scaffold(A);
    const TablePtr& mt = sc.mt;
    const int nbase = A.table->size();

    std::vector<char> even_ideal(mt->size(), 0);
    for (int j = 0; j < nbase; ++j)
        if (!(*A.table)[j].odd())
            even_ideal[3 * j] = even_ideal[3 * j + 1] = even_ideal[3 * j + 2] = 1;

    std::vector<Poly> d_images(mt->size(), Poly::zero(mt));
    std::vector<Poly> corrections;
    corrections.reserve(nbase);

    for (int j = 0; j < nbase; ++j) {
        const Poly& dv = A.d.image(j);
        d_images[3 * j] = sc.first(dv);
        d_images[3 * j + 1] = sc.second(dv);

        // correction(v) = sum_{n>=1} (s d)^n v' / n!  over the prefix model
        Derivation d_partial(mt, +1, d_images);
        Poly corr = nilpotent_partial_sum(sc.s, d_partial, Poly::generator(mt, 3 * j));

        if (nice && !(*A.table)[j].odd() && !corr.is_zero() && !in_ideal(corr, even_ideal)) {
            // constrained solve inside the even ideal of the prefix model
            std::vector<char> prefix(mt->size(), 0);
            for (int i = 0; i < 3 * j; ++i) prefix[i] = 1;
            std::vector<char> base_prefix(A.table->size(), 0);
            for (int i = 0; i < j; ++i) base_prefix[i] = 1;
            std::vector<char> base_evens(A.table->size(), 0);
            for (int i = 0; i < j; ++i) base_evens[i] = !(*A.table)[i].odd();

            ComplexMap F;
            F.src.table = mt;
            F.src.d = nullptr;  // filled below
            F.src.allowed = prefix;
            auto ideal_keep = [even_ideal](const Monomial& m) {
                for (const auto& [g, e] : m.factors)
                    if (even_ideal[g]) return true;
                return false;
            };
            F.src.keep = ideal_keep;
            F.src.subcomplex = true;
            F.dst.table = A.table;
            F.dst.d = &A.d;
            F.dst.allowed = base_prefix;
            F.dst.keep = [base_evens](const Monomial& m) {
                for (const auto& [g, e] : m.factors)
                    if (base_evens[g]) return true;
                return false;
            };
            F.dst.subcomplex = true;
            Derivation d_prefix(mt, +1, d_images);
            F.src.d = &d_prefix;

            // augmentation restricted to the prefix
            std::vector<Poly> aug_images;
            for (int i = 0; i < mt->size(); ++i) {
                int bj = i / 3;
                aug_images.push_back(i % 3 == 2 ? Poly::zero(A.table)
                                                : Poly::generator(A.table, bj));
            }
            AlgebraMap aug(mt, A.table, std::move(aug_images));
            F.f = [&aug](const Poly& p) { return aug(p); };

            Poly target = sc.second(dv) - sc.first(dv);
            corr = solve_coboundary_in_kernel(F, target, (*A.table)[j].degree + 1);
        }

        corrections.push_back(corr);
        d_images[3 * j + 2] =
            Poly::generator(mt, 3 * j + 1) - Poly::generator(mt, 3 * j) - corr;
    }

    std::vector<Poly> aug_images;
    for (int i = 0; i < mt->size(); ++i) {
        int j = i / 3;
        aug_images.push_back(i % 3 == 2 ? Poly::zero(A.table) : Poly::generator(A.table, j));
    }
    AlgebraMap aug(mt, A.table, std::move(aug_images));

    auto M = std::make_shared<MultiplicationModel>();
    M->base = A;
    M->algebra = make_presentation(mt, std::move(d_images));
    M->aug = std::move(aug);
    M->first_copy = std::move(sc.first);
    M->second_copy = std::move(sc.second);
    M->contraction = std::move(sc.s);
    M->correction = std::move(corrections);
    M->built_nice = nice;

    if (!is_cochain_map(M->aug, M->algebra.d, M->base.d))
        throw std::runtime_error("multiplication model: augmentation is not a cochain map");
    for (int j = 0; j < nbase; ++j) {
        if (!M->aug(M->correction[j]).is_zero())
            throw std::runtime_error("multiplication model: correction of " +
                                     (*A.table)[j].name + " not in ker(aug)");
        Poly want = M->second_copy(A.d.image(j)) - M->first_copy(A.d.image(j));
        if (M->algebra.d.apply(M->correction[j]) != want)
            throw std::runtime_error("multiplication model: correction of " +
                                     (*A.table)[j].name + " has wrong differential");
    }
    return M;
}

}  // namespace

ModelPtr build_multiplication_model(const CdgaPresentation& A) {
    return build_model_impl(A, false);
}

LoopModel build_loop_model(const MultiplicationModel& M) {
    const CdgaPresentation& A = M.base;
    std::vector<Generator> gens;
    gens.reserve(2 * A.table->size());
    for (int j = 0; j < A.table->size(); ++j) {
        const Generator& g = (*A.table)[j];
        gens.push_back({g.name, g.degree});
        gens.push_back({g.name + "~", g.degree - 1});
    }
    TablePtr lt = make_table(std::move(gens));

    std::vector<Poly> from_base_images, sbar_images;
    for (int j = 0; j < A.table->size(); ++j) from_base_images.push_back(Poly::generator(lt, 2 * j));
    AlgebraMap from_base(A.table, lt, std::move(from_base_images));
    for (int j = 0; j < A.table->size(); ++j) {
        sbar_images.push_back(Poly::generator(lt, 2 * j + 1));
        sbar_images.push_back(Poly::zero(lt));
    }
    Derivation sbar(lt, -1, std::move(sbar_images));

    std::vector<Poly> d_images;
    for (int j = 0; j < A.table->size(); ++j) {
        Poly dv = from_base(A.d.image(j));
        d_images.push_back(dv);
        d_images.push_back(-sbar.apply(dv));
    }

    LoopModel L;
    L.base = A;
    L.algebra = make_presentation(lt, std::move(d_images));
    L.sbar = std::move(sbar);
    L.from_base = std::move(from_base);

    std::vector<Poly> collapse_images;
    for (int i = 0; i < M.algebra.table->size(); ++i) {
        int j = i / 3;
        collapse_images.push_back(i % 3 == 2 ? Poly::generator(lt, 2 * j + 1)
                                             : Poly::generator(lt, 2 * j));
    }
    L.collapse = AlgebraMap(M.algebra.table, lt, std::move(collapse_images));
    if (!is_cochain_map(L.collapse, M.algebra.d, L.algebra.d))
        throw std::runtime_error("loop model: collapse map is not a cochain map");
    return L;
}

LoopModel build_loop_model(const CdgaPresentation& A) {
    ModelPtr M = build_multiplication_model(A);
    return build_loop_model(*M);
}

Poly solve_coboundary_in_kernel(const ComplexMap& F, const Poly& c, int n) {
    if (!c.is_zero() && (!c.is_homogeneous() || c.degree() != n))
        throw std::runtime_error("solver: cocycle not homogeneous of the stated degree");
    if (c.is_zero()) return Poly::zero(F.src.table);
    if (!F.src.differential(c).is_zero()) throw std::runtime_error("solver: dc != 0");
    if (!F.f(c).is_zero()) throw std::runtime_error("solver: f(c) != 0");
    if (n < 1) throw std::runtime_error("solver: no candidates below degree 0");

    std::vector<Monomial> below = F.src.slice_basis(n - 1);
    std::vector<Monomial> here = F.src.slice_basis(n);
    std::vector<Monomial> dst_below = F.dst.slice_basis(n - 1);

    // kernel of f within the (n-1)-slice
    QMatrix fm((int)dst_below.size(), (int)below.size());
    for (int j = 0; j < (int)below.size(); ++j) {
        Poly fb = F.dst.project(F.f(Poly::term(F.src.table, below[j], Q(1))));
        QVec col = poly_to_coords(dst_below, fb);
        for (const auto& [r, v] : col.e) fm.set(r, j, v);
    }
    std::vector<QVec> kernel = nullspace_basis(fm);

    // d restricted to the kernel basis
    QMatrix dm((int)here.size(), (int)kernel.size());
    for (int l = 0; l < (int)kernel.size(); ++l) {
        Poly kb = coords_to_poly(F.src.table, below, kernel[l]);
        QVec col = poly_to_coords(here, F.src.differential(kb));
        for (const auto& [r, v] : col.e) dm.set(r, l, v);
    }
    QVec cv = poly_to_coords(here, c);
    std::vector<Q> rhs(here.size(), Q(0));
    for (const auto& [r, v] : cv.e) rhs[r] = v;
    auto sol = solve_minimal(dm, rhs);
    if (!sol)
        throw std::runtime_error(
            "solver: no primitive in the kernel of f in degree " + std::to_string(n - 1) +
            " (" + std::to_string(kernel.size()) + " kernel basis vectors, " +
            std::to_string(here.size()) + " target monomials); precondition violated");
    Poly out(F.src.table);
    for (int l = 0; l < (int)kernel.size(); ++l)
        if ((*sol)[l] != 0) out += coords_to_poly(F.src.table, below, kernel[l]).scaled((*sol)[l]);
    if (F.src.differential(out) != c || !F.f(out).is_zero())
        throw std::runtime_error("solver: internal verification failed");
    return out;
}

bool NicenessReport::all_good() const {
    if (!ideal_is_differential || !bars_avoid_own_bar) return false;
    for (const auto& [n, ok] : ideal_map_iso)
        if (!ok) return false;
    for (const auto& [n, ok] : quotient_map_iso)
        if (!ok) return false;
    return true;
}

NicenessReport check_niceness(const MultiplicationModel& M, int N) {
    NicenessReport rep;
    rep.checked_up_to = N;
    const GeneratorTable& T = *M.base.table;
    std::vector<char> ideal = M.even_ideal_mask();

    // (a) the even ideal is a differential ideal: check d of each ideal generator
    rep.ideal_is_differential = true;
    for (int j = 0; j < T.size(); ++j) {
        if (T[j].odd()) continue;
        for (int idx : {M.first_of(j), M.second_of(j), M.bar_of(j)}) {
            if (!in_ideal(M.algebra.d.image(idx), ideal)) {
                rep.ideal_is_differential = false;
                rep.violation_a = "d(" + (*M.algebra.table)[idx].name + ") leaves the even ideal";
            }
        }
    }
    // (b) d(bar(x_i)) avoids bar(x_i)
    rep.bars_avoid_own_bar = true;
    for (int j = 0; j < T.size(); ++j) {
        if (T[j].odd()) continue;
        if (!in_ideal(M.algebra.d.image(M.bar_of(j)), M.even_ideal_mask_without(j))) {
            rep.bars_avoid_own_bar = false;
            rep.violation_b = "d(" + (*M.algebra.table)[M.bar_of(j)].name +
                              ") not in the ideal omitting its bar";
        }
    }
    if (M.base.even_count() == 0) {
        // conditions (a), (b) vacuous; (c) reduces to the model quasi-isomorphism
        rep.ideal_is_differential = true;
        rep.bars_avoid_own_bar = true;
    }

    // (c) induced maps on the ideal complex and the quotient complex
    std::vector<char> base_evens(T.size(), 0);
    for (int j = 0; j < T.size(); ++j) base_evens[j] = !T[j].odd();
    auto ideal_keep = [ideal](const Monomial& m) {
        for (const auto& [g, e] : m.factors)
            if (ideal[g]) return true;
        return false;
    };
    auto base_keep = [base_evens](const Monomial& m) {
        for (const auto& [g, e] : m.factors)
            if (base_evens[g]) return true;
        return false;
    };

    ComplexView src_ideal = ComplexView::of(M.algebra);
    src_ideal.keep = ideal_keep;
    src_ideal.subcomplex = true;
    ComplexView dst_ideal = ComplexView::of(M.base);
    dst_ideal.keep = base_keep;
    dst_ideal.subcomplex = true;
    InducedMapReport r1 =
        induced_map(src_ideal, dst_ideal, [&M](const Poly& p) { return M.aug(p); }, N);
    for (const auto& [n, d] : r1.degrees) {
        rep.ideal_map_iso[n] = d.iso;
        rep.ideal_map_surjective[n] = d.cochain_surjective;
    }

    ComplexView src_quot = ComplexView::of(M.algebra);
    src_quot.keep = [ideal_keep](const Monomial& m) { return !ideal_keep(m); };
    ComplexView dst_quot = ComplexView::of(M.base);
    dst_quot.keep = [base_keep](const Monomial& m) { return !base_keep(m); };
    InducedMapReport r2 = induced_map(
        src_quot, dst_quot, [&M, &dst_quot](const Poly& p) { return dst_quot.project(M.aug(p)); },
        N);
    for (const auto& [n, d] : r2.degrees) rep.quotient_map_iso[n] = d.iso;
    return rep;
}

NiceModel build_nice_model(const CdgaPresentation& A, int N) {
    if (!is_semipure(A)) throw std::runtime_error("nice model requires a semi-pure algebra");
    if (N < 0) {
        int top = 0;
        for (const Generator& g : A.table->generators()) top = std::max(top, g.degree);
        N = 2 * top + 4;
    }
    NiceModel out;
    out.model = build_model_impl(A, true);
    out.report = check_niceness(*out.model, N);
    return out;
}

InducedMapReport check_model_quasi_iso(const MultiplicationModel& M, int N) {
    return check_quasi_iso(ComplexView::of(M.algebra), ComplexView::of(M.base), M.aug, N);
}

}  // namespace sullivan
