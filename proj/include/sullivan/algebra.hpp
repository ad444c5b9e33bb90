#ifndef SULLIVAN_ALGEBRA_HPP
#define SULLIVAN_ALGEBRA_HPP

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sullivan {

/* Exact rational coefficients. All arithmetic in the library is exact;
 * there is no floating point anywhere. */
using Q = mpq_class;

std::string q_to_string(const Q& q);
Q q_from_string(const std::string& s);

/* A generator of a free graded-commutative algebra. Parity (degree mod 2)
 * decides exterior vs polynomial behaviour. */
struct Generator {
    std::string name;
    int degree = 0;

    bool odd() const { return degree % 2 != 0; }
};

/* Ordered list of generators. The order is the Sullivan filtration order:
 * whenever the table carries a differential, d(generator k) may only
 * reference generators of index < k. Immutable after construction. */
class GeneratorTable {
public:
    GeneratorTable() = default;
    explicit GeneratorTable(std::vector<Generator> gens);

    int size() const { return static_cast<int>(gens_.size()); }
    const Generator& operator[](int i) const { return gens_.at(i); }
    const std::vector<Generator>& generators() const { return gens_; }

    /* -1 when absent */
    int index_of(const std::string& name) const;

private:
    std::vector<Generator> gens_;
    std::map<std::string, int> by_name_;
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

TablePtr make_table(std::vector<Generator> gens);

/* Canonical-form monomial: factors sorted by strictly increasing generator
 * index; an odd generator appears with multiplicity exactly 1. The empty
 * factor list is the unit monomial. */
struct Monomial {
    std::vector<std::pair<int, int>> factors;  // (generator index, exponent)

    static Monomial one() { return Monomial{}; }
    static Monomial gen(int index, int exp = 1) { return Monomial{{{index, exp}}}; }

    bool is_one() const { return factors.empty(); }
    int exponent_of(int index) const;
    bool contains(int index) const { return exponent_of(index) > 0; }

    int degree(const GeneratorTable& T) const;
    int factor_count() const;

    bool operator==(const Monomial& o) const { return factors == o.factors; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
};

/* Total order on monomials: lexicographic on dense exponent sequences
 * (the generator with the smallest index where exponents differ decides;
 * smaller exponent first). Deterministic and table-free. */
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/* Product of canonical monomials with Koszul sign. Returns nullopt when the
 * product vanishes (an odd generator squared). */
std::optional<std::pair<Monomial, int>> mono_mul(const GeneratorTable& T, const Monomial& a,
                                                 const Monomial& b);

/* Splits a monomial into the part outside `cls` and the part inside `cls`
 * (both canonical), together with the Koszul sign of the unshuffle
 * (outside first, inside second). `cls(index)` selects the inside class. */
struct MonomialSplit {
    Monomial outside;
    Monomial inside;
    int sign = 1;
};
template <typename Pred>
MonomialSplit mono_split(const GeneratorTable& T, const Monomial& m, Pred cls);

/* Exact-rational linear combination of canonical monomials over a fixed
 * generator table. No zero coefficients are stored; the empty map is the
 * zero element. Values are immutable in spirit: all operations return new
 * polynomials, so sharing across threads is safe. */
class Poly {
public:
    Poly() = default;
    explicit Poly(TablePtr table) : table_(std::move(table)) {}

    static Poly zero(TablePtr table) { return Poly(std::move(table)); }
    static Poly unit(TablePtr table);
    static Poly generator(TablePtr table, int index);
    static Poly term(TablePtr table, Monomial m, Q c);
    static Poly constant(TablePtr table, Q c);

    const TablePtr& table() const { return table_; }
    const std::map<Monomial, Q, MonomialOrder>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }

    Q coefficient(const Monomial& m) const;

    /* degree bookkeeping (zero polynomial reports false / -1) */
    bool is_homogeneous() const;
    int degree() const;      // degree when homogeneous and nonzero, else -1
    int max_degree() const;  // -1 for zero
    Poly component(int n) const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);

    Poly scaled(const Q& c) const;
    Poly pow(int e) const;

    void add_term(const Monomial& m, const Q& c);

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void check_same_table(const Poly& o) const;

    TablePtr table_;
    std::map<Monomial, Q, MonomialOrder> terms_;
};

/* All monomials of total degree n over the generators selected by `pred`
 * (default: all). Sorted by MonomialOrder. */
std::vector<Monomial> basis(const GeneratorTable& T, int n);
std::vector<Monomial> basis(const GeneratorTable& T, int n,
                            const std::vector<char>& allowed);

/* Homomorphism of graded algebras determined by generator images. Images
 * must be zero or homogeneous of the generator's degree, so applying the
 * map to a canonical monomial needs no Koszul corrections. */
class AlgebraMap {
public:
    AlgebraMap() = default;
    AlgebraMap(TablePtr src, TablePtr dst, std::vector<Poly> images);

    static AlgebraMap identity(const TablePtr& table);

    const TablePtr& src() const { return src_; }
    const TablePtr& dst() const { return dst_; }
    const Poly& image(int gen_index) const { return images_.at(gen_index); }
    const std::vector<Poly>& images() const { return images_; }

    Poly operator()(const Poly& p) const;
    Poly apply_monomial(const Monomial& m) const;

    /* this ∘ inner */
    AlgebraMap compose(const AlgebraMap& inner) const;

private:
    TablePtr src_, dst_;
    std::vector<Poly> images_;
};

std::string mono_to_string(const GeneratorTable& T, const Monomial& m);

/* ---- template implementation ---- */

template <typename Pred>
MonomialSplit mono_split(const GeneratorTable& T, const Monomial& m, Pred cls) {
    MonomialSplit out;
    // Sign: each odd "inside" factor moves right past every odd "outside"
    // factor that follows it.
    int odd_inside_seen = 0;
    int parity = 0;
    for (const auto& [g, e] : m.factors) {
        if (cls(g)) {
            out.inside.factors.emplace_back(g, e);
            if (T[g].odd()) odd_inside_seen += 1;
        } else {
            out.outside.factors.emplace_back(g, e);
            if (T[g].odd()) parity ^= (odd_inside_seen & 1);
        }
    }
    out.sign = (parity % 2 == 0) ? 1 : -1;
    return out;
}

}  // namespace sullivan

#endif
