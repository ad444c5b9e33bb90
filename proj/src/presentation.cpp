#include "sullivan/presentation.hpp"

#include <stdexcept>

namespace sullivan {

int CdgaPresentation::even_count() const {
    int n = 0;
    for (const Generator& g : table->generators()) n += g.odd() ? 0 : 1;
    return n;
}

int CdgaPresentation::odd_count() const {
    int n = 0;
    for (const Generator& g : table->generators()) n += g.odd() ? 1 : 0;
    return n;
}

CdgaPresentation make_presentation(TablePtr table, std::vector<Poly> d_images,
                                   PresentationOptions opts) {
    if (opts.require_degree_two)
        for (const Generator& g : table->generators())
            if (g.degree < 2)
                throw std::runtime_error("generator " + g.name + " has degree 1; degree >= 2 required");
    Derivation d(table, +1, std::move(d_images));
    for (int k = 0; k < table->size(); ++k) {
        for (const auto& [m, c] : d.image(k).terms()) {
            for (const auto& [g, e] : m.factors) {
                if (g >= k)
                    throw std::runtime_error("differential of " + (*table)[k].name +
                                             " references " + (*table)[g].name +
                                             ", which does not precede it");
            }
        }
    }
    if (!d.is_differential()) throw std::runtime_error("d^2 != 0");
    return CdgaPresentation{std::move(table), std::move(d)};
}

bool is_pure(const CdgaPresentation& A) {
    const GeneratorTable& T = *A.table;
    for (int i = 0; i < T.size(); ++i) {
        const Poly& im = A.d.image(i);
        if (!T[i].odd()) {
            if (!im.is_zero()) return false;
        } else {
            for (const auto& [m, c] : im.terms())
                for (const auto& [g, e] : m.factors)
                    if (T[g].odd()) return false;
        }
    }
    return true;
}

bool is_semipure(const CdgaPresentation& A) {
    const GeneratorTable& T = *A.table;
    std::vector<char> evens(T.size(), 0);
    for (int i = 0; i < T.size(); ++i) evens[i] = !T[i].odd();
    for (int i = 0; i < T.size(); ++i) {
        if (T[i].odd()) continue;
        if (!in_ideal(A.d.image(i), evens)) return false;
    }
    return true;
}

bool is_minimal(const CdgaPresentation& A) {
    for (int i = 0; i < A.table->size(); ++i)
        for (const auto& [m, c] : A.d.image(i).terms())
            if (m.factor_count() < 2) return false;
    return true;
}

bool in_ideal(const Poly& p, const std::vector<char>& ideal_gens) {
    for (const auto& [m, c] : p.terms()) {
        bool hit = false;
        for (const auto& [g, e] : m.factors)
            if (ideal_gens[g]) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

bool is_cochain_map(const AlgebraMap& f, const Derivation& d_src, const Derivation& d_dst) {
    for (int g = 0; g < f.src()->size(); ++g)
        if (f(d_src.image(g)) != d_dst.apply(f.image(g))) return false;
    return true;
}

CdgaPresentation reorder_presentation(const CdgaPresentation& A, const std::vector<int>& perm) {
    const GeneratorTable& T = *A.table;
    if ((int)perm.size() != T.size()) throw std::runtime_error("reorder: bad permutation");
    std::vector<Generator> gens;
    gens.reserve(perm.size());
    std::vector<int> new_of_old(T.size(), -1);
    for (int i = 0; i < (int)perm.size(); ++i) {
        gens.push_back(T[perm[i]]);
        new_of_old[perm[i]] = i;
    }
    TablePtr nt = make_table(std::move(gens));
    std::vector<Poly> rename;
    rename.reserve(T.size());
    for (int old = 0; old < T.size(); ++old)
        rename.push_back(Poly::generator(nt, new_of_old[old]));
    AlgebraMap to_new(A.table, nt, std::move(rename));
    std::vector<Poly> images;
    images.reserve(T.size());
    for (int i = 0; i < T.size(); ++i) images.push_back(to_new(A.d.image(perm[i])));
    return make_presentation(nt, std::move(images));
}

}  // namespace sullivan
