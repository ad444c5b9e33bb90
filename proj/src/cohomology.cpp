#include "sullivan/cohomology.hpp"

#include <future>
#include <stdexcept>
#include <thread>

namespace sullivan {

ComplexView ComplexView::of(const CdgaPresentation& A) {
    ComplexView C;
    C.table = A.table;
    C.d = &A.d;
    return C;
}

std::vector<Monomial> ComplexView::slice_basis(int n) const {
    std::vector<Monomial> all = basis(*table, n, allowed);
    if (!keep) return all;
    std::vector<Monomial> out;
    out.reserve(all.size());
    for (Monomial& m : all)
        if (keep(m)) out.push_back(std::move(m));
    return out;
}

Poly ComplexView::project(const Poly& p) const {
    if (!keep) return p;
    Poly out(table);
    for (const auto& [m, c] : p.terms())
        if (keep(m)) out.add_term(m, c);
    return out;
}

Poly ComplexView::differential(const Poly& p) const {
    Poly dp = d->apply(p);
    if (!keep) return dp;
    if (subcomplex) {
        for (const auto& [m, c] : dp.terms())
            if (!keep(m))
                throw std::runtime_error("subcomplex not closed under d at monomial " +
                                         mono_to_string(*table, m));
        return dp;
    }
    return project(dp);
}

DegreeSlice make_slice(const ComplexView& C, int n) {
    DegreeSlice s;
    s.degree = n;
    s.basis = C.slice_basis(n);
    std::vector<Monomial> next = C.slice_basis(n + 1);
    std::map<Monomial, int, MonomialOrder> index;
    for (int i = 0; i < (int)next.size(); ++i) index.emplace(next[i], i);
    s.d_matrix = QMatrix((int)next.size(), (int)s.basis.size());
    for (int j = 0; j < (int)s.basis.size(); ++j) {
        Poly dm = C.differential(Poly::term(C.table, s.basis[j], Q(1)));
        for (const auto& [m, c] : dm.terms()) {
            auto it = index.find(m);
            if (it == index.end())
                throw std::runtime_error("slice: differential leaves the complex at " +
                                         mono_to_string(*C.table, m));
            s.d_matrix.set(it->second, j, c);
        }
    }
    return s;
}

QVec poly_to_coords(const std::vector<Monomial>& basis, const Poly& p) {
    std::map<Monomial, int, MonomialOrder> index;
    for (int i = 0; i < (int)basis.size(); ++i) index.emplace(basis[i], i);
    QVec v;
    for (const auto& [m, c] : p.terms()) {
        auto it = index.find(m);
        if (it == index.end()) throw std::runtime_error("poly_to_coords: monomial outside basis");
        v.e.emplace_back(it->second, c);
    }
    std::sort(v.e.begin(), v.e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

Poly coords_to_poly(const TablePtr& table, const std::vector<Monomial>& basis, const QVec& v) {
    Poly p(table);
    for (const auto& [i, c] : v.e) p.add_term(basis.at(i), c);
    return p;
}

/* run fn(n) for n in [0, N], fanning out across threads; results indexed by n */
template <typename F>
static void for_degrees(int N, F&& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || N < 4) {
        for (int n = 0; n <= N; ++n) fn(n);
        return;
    }
    std::vector<std::future<void>> futs;
    futs.reserve(N + 1);
    for (int n = 0; n <= N; ++n)
        futs.push_back(std::async(std::launch::async, [&fn, n]() { fn(n); }));
    for (auto& f : futs) f.get();
}

CohomologyReport cohomology_dims(const ComplexView& C, int N, bool with_representatives,
                                 bool modp_check) {
    if (N < 0) throw std::runtime_error("cohomology: negative degree bound");
    std::vector<DegreeSlice> slices(N + 1);
    std::vector<int> ranks(N + 1, 0);
    for_degrees(N, [&](int n) {
        slices[n] = make_slice(C, n);
        ranks[n] = exact_rank(slices[n].d_matrix);
        if (modp_check && rank_modp(slices[n].d_matrix) != ranks[n])
            throw std::runtime_error("cohomology: mod-p rank check failed in degree " +
                                     std::to_string(n));
    });
    CohomologyReport rep;
    for (int n = 0; n <= N; ++n) {
        int dim_ker = (int)slices[n].basis.size() - ranks[n];
        int dim_im = n == 0 ? 0 : ranks[n - 1];
        rep.dims[n] = dim_ker - dim_im;
    }
    if (with_representatives) {
        for (int n = 0; n <= N; ++n) {
            std::vector<QVec> cocycles = nullspace_basis(slices[n].d_matrix);
            RrefResult bound;
            if (n > 0) {
                QMatrix im((int)slices[n - 1].d_matrix.cols, (int)slices[n].basis.size());
                // rows of `im` are the boundaries d(b) of the (n-1)-basis
                for (int j = 0; j < slices[n - 1].d_matrix.cols; ++j) im.row[j] = QVec{};
                for (int r = 0; r < slices[n - 1].d_matrix.rows; ++r)
                    for (const auto& [cidx, v] : slices[n - 1].d_matrix.row[r].e)
                        im.row[cidx].e.emplace_back(r, v);
                bound = rref(im);
            }
            QMatrix reduced(0, (int)slices[n].basis.size());
            for (QVec& z : cocycles) {
                QVec r = reduce_against(bound, std::move(z));
                if (!r.is_zero()) {
                    reduced.row.push_back(std::move(r));
                    ++reduced.rows;
                }
            }
            RrefResult reps = rref(reduced);
            std::vector<Poly> polys;
            for (const QVec& v : reps.rows)
                polys.push_back(coords_to_poly(C.table, slices[n].basis, v));
            if ((int)polys.size() != rep.dims[n])
                throw std::runtime_error("cohomology: representative count mismatch in degree " +
                                         std::to_string(n));
            rep.representatives[n] = std::move(polys);
        }
    }
    return rep;
}

bool InducedMapReport::all_iso(int N) const {
    for (int n = 0; n <= N; ++n) {
        auto it = degrees.find(n);
        if (it == degrees.end() || !it->second.iso) return false;
    }
    return true;
}

InducedMapReport induced_map(const ComplexView& src, const ComplexView& dst,
                             const std::function<Poly(const Poly&)>& f, int N) {
    CohomologyReport hs = cohomology_dims(src, N, true);
    CohomologyReport hd = cohomology_dims(dst, N, true);
    InducedMapReport out;
    for (int n = 0; n <= N; ++n) {
        InducedDegree deg;
        deg.dim_src = hs.dims[n];
        deg.dim_dst = hd.dims[n];
        std::vector<Monomial> dst_basis = dst.slice_basis(n);
        std::vector<Monomial> src_basis = src.slice_basis(n);

        // cochain map check on the slice basis
        std::vector<Monomial> dst_next = dst.slice_basis(n + 1);
        for (const Monomial& m : src_basis) {
            Poly a = f(src.differential(Poly::term(src.table, m, Q(1))));
            Poly b = dst.differential(f(Poly::term(src.table, m, Q(1))));
            if (dst.project(a) != dst.project(b))
                throw std::runtime_error("induced_map: not a cochain map at " +
                                         mono_to_string(*src.table, m));
        }

        // cochain-level surjectivity of f in this degree
        {
            QMatrix F((int)dst_basis.size(), (int)src_basis.size());
            for (int j = 0; j < (int)src_basis.size(); ++j) {
                Poly fm = dst.project(f(Poly::term(src.table, src_basis[j], Q(1))));
                QVec col = poly_to_coords(dst_basis, fm);
                for (const auto& [r, v] : col.e) F.set(r, j, v);
            }
            deg.cochain_surjective = exact_rank(F) == (int)dst_basis.size();
        }

        // boundaries of dst in degree n
        RrefResult bound;
        if (n > 0) {
            std::vector<Monomial> below = dst.slice_basis(n - 1);
            QMatrix im((int)below.size(), (int)dst_basis.size());
            for (int j = 0; j < (int)below.size(); ++j)
                im.row[j] =
                    poly_to_coords(dst_basis, dst.differential(Poly::term(dst.table, below[j], Q(1))));
            bound = rref(im);
        }
        // dst representatives reduced to echelon rows for coordinate solving
        QMatrix repmat(deg.dim_dst, (int)dst_basis.size());
        for (int i = 0; i < deg.dim_dst; ++i)
            repmat.row[i] = poly_to_coords(dst_basis, hd.representatives[n][i]);

        deg.matrix.assign(deg.dim_dst, std::vector<Q>(deg.dim_src, Q(0)));
        QMatrix solve_mat((int)dst_basis.size(), deg.dim_dst);
        for (int i = 0; i < deg.dim_dst; ++i)
            for (const auto& [c, v] : repmat.row[i].e) solve_mat.set(c, i, v);

        std::vector<std::vector<Q>> cols;
        bool ok = true;
        for (int j = 0; j < deg.dim_src; ++j) {
            Poly img = dst.project(f(hs.representatives[n][j]));
            QVec v = reduce_against(bound, poly_to_coords(dst_basis, img));
            std::vector<Q> rhs(dst_basis.size(), Q(0));
            for (const auto& [c, q] : v.e) rhs[c] = q;
            auto sol = solve_minimal(solve_mat, rhs);
            if (!sol) {
                ok = false;
                break;
            }
            for (int i = 0; i < deg.dim_dst; ++i) deg.matrix[i][j] = (*sol)[i];
        }
        if (!ok)
            throw std::runtime_error("induced_map: image class outside target cohomology, degree " +
                                     std::to_string(n));
        QMatrix mat(deg.dim_dst, deg.dim_src);
        for (int i = 0; i < deg.dim_dst; ++i)
            for (int j = 0; j < deg.dim_src; ++j) mat.set(i, j, deg.matrix[i][j]);
        int r = exact_rank(mat);
        deg.injective = r == deg.dim_src;
        deg.surjective = r == deg.dim_dst;
        deg.iso = deg.injective && deg.surjective;
        out.degrees[n] = std::move(deg);
    }
    return out;
}

InducedMapReport check_quasi_iso(const ComplexView& src, const ComplexView& dst,
                                 const AlgebraMap& f, int N) {
    return induced_map(src, dst, [&f](const Poly& p) { return f(p); }, N);
}

}  // namespace sullivan
