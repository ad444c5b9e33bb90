#include "sullivan/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace sullivan {

std::string q_to_string(const Q& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

Q q_from_string(const std::string& s) {
    Q q;
    if (q.set_str(s, 10) != 0) throw std::runtime_error("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

GeneratorTable::GeneratorTable(std::vector<Generator> gens) : gens_(std::move(gens)) {
    for (int i = 0; i < size(); ++i) {
        const Generator& g = gens_[i];
        if (g.degree < 1) throw std::runtime_error("generator " + g.name + " has degree < 1");
        if (!by_name_.emplace(g.name, i).second)
            throw std::runtime_error("duplicate generator name: " + g.name);
    }
}

int GeneratorTable::index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
}

TablePtr make_table(std::vector<Generator> gens) {
    return std::make_shared<const GeneratorTable>(std::move(gens));
}

int Monomial::exponent_of(int index) const {
    for (const auto& [g, e] : factors)
        if (g == index) return e;
    return 0;
}

int Monomial::degree(const GeneratorTable& T) const {
    int d = 0;
    for (const auto& [g, e] : factors) d += e * T[g].degree;
    return d;
}

int Monomial::factor_count() const {
    int n = 0;
    for (const auto& [g, e] : factors) n += e;
    return n;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    // lexicographic on dense exponent sequences, missing exponents read as 0
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        int ga = i < a.factors.size() ? a.factors[i].first : INT32_MAX;
        int gb = j < b.factors.size() ? b.factors[j].first : INT32_MAX;
        if (ga < gb) return false;  // a has a positive exponent where b has 0
        if (gb < ga) return true;
        int ea = a.factors[i].second, eb = b.factors[j].second;
        if (ea != eb) return ea < eb;
        ++i, ++j;
    }
    return false;
}

std::optional<std::pair<Monomial, int>> mono_mul(const GeneratorTable& T, const Monomial& a,
                                                 const Monomial& b) {
    Monomial out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    // Koszul sign: each odd factor of b passes every odd factor of a whose
    // index is larger.
    int parity = 0;
    int odd_a_total = 0;
    std::vector<int> odd_a;  // indices of odd generators in a, ascending
    for (const auto& [g, e] : a.factors)
        if (T[g].odd()) {
            odd_a.push_back(g);
            ++odd_a_total;
        }
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        int ga = i < a.factors.size() ? a.factors[i].first : INT32_MAX;
        int gb = j < b.factors.size() ? b.factors[j].first : INT32_MAX;
        if (ga < gb) {
            out.factors.push_back(a.factors[i++]);
        } else if (gb < ga) {
            int g = b.factors[j].first;
            if (T[g].odd()) {
                int larger = odd_a_total -
                             static_cast<int>(std::upper_bound(odd_a.begin(), odd_a.end(), g) -
                                              odd_a.begin());
                parity ^= (larger & 1);
            }
            out.factors.push_back(b.factors[j++]);
        } else {
            if (T[ga].odd()) return std::nullopt;  // odd generator squared
            out.factors.emplace_back(ga, a.factors[i].second + b.factors[j].second);
            ++i, ++j;
        }
    }
    return std::make_pair(std::move(out), parity ? -1 : 1);
}

Poly Poly::unit(TablePtr table) { return term(std::move(table), Monomial::one(), Q(1)); }

Poly Poly::generator(TablePtr table, int index) {
    if (index < 0 || index >= table->size()) throw std::runtime_error("generator index out of range");
    return term(std::move(table), Monomial::gen(index), Q(1));
}

Poly Poly::term(TablePtr table, Monomial m, Q c) {
    Poly p(std::move(table));
    if (c != 0) p.terms_.emplace(std::move(m), std::move(c));
    return p;
}

Poly Poly::constant(TablePtr table, Q c) { return term(std::move(table), Monomial::one(), std::move(c)); }

Q Poly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Q(0) : it->second;
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return false;
    int d = terms_.begin()->first.degree(*table_);
    for (const auto& [m, c] : terms_)
        if (m.degree(*table_) != d) return false;
    return true;
}

int Poly::degree() const {
    if (terms_.empty() || !is_homogeneous()) return -1;
    return terms_.begin()->first.degree(*table_);
}

int Poly::max_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree(*table_));
    return d;
}

Poly Poly::component(int n) const {
    Poly out(table_);
    for (const auto& [m, c] : terms_)
        if (m.degree(*table_) == n) out.terms_.emplace(m, c);
    return out;
}

void Poly::check_same_table(const Poly& o) const {
    if (table_ != o.table_)
        throw std::runtime_error("polynomials over different generator tables");
}

Poly Poly::operator-() const {
    Poly out(table_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    check_same_table(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same_table(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly out = *this;
    out += o;
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    Poly out = *this;
    out -= o;
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    check_same_table(o);
    Poly out(table_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            auto prod = mono_mul(*table_, ma, mb);
            if (!prod) continue;
            out.add_term(prod->first, ca * cb * prod->second);
        }
    }
    return out;
}

Poly Poly::scaled(const Q& c) const {
    Poly out(table_);
    if (c == 0) return out;
    for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
    return out;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::runtime_error("negative power");
    Poly out = Poly::unit(table_);
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
}

void Poly::add_term(const Monomial& m, const Q& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Poly::operator==(const Poly& o) const {
    return table_ == o.table_ && terms_ == o.terms_;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    // display sorted by (degree, monomial order)
    std::vector<const std::pair<const Monomial, Q>*> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back(&t);
    std::stable_sort(ts.begin(), ts.end(), [&](auto* x, auto* y) {
        return x->first.degree(*table_) < y->first.degree(*table_);
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : ts) {
        const Q& c = t->second;
        Q a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        std::string mono = mono_to_string(*table_, t->first);
        if (mono == "1") {
            os << a;
        } else {
            if (a != 1) os << a << "*";
            os << mono;
        }
    }
    return os.str();
}

static void basis_rec(const GeneratorTable& T, const std::vector<char>& allowed, int idx,
                      int remaining, Monomial& cur, std::vector<Monomial>& out) {
    if (remaining == 0) {
        // remaining generators contribute exponent 0
        out.push_back(cur);
        return;
    }
    if (idx >= T.size()) return;
    // exponent 0 first: enumeration comes out sorted by MonomialOrder
    basis_rec(T, allowed, idx + 1, remaining, cur, out);
    if (!allowed.empty() && !allowed[idx]) return;
    int d = T[idx].degree;
    int cap = T[idx].odd() ? 1 : remaining / d;
    for (int e = 1; e <= cap; ++e) {
        if (e * d > remaining) break;
        cur.factors.emplace_back(idx, e);
        basis_rec(T, allowed, idx + 1, remaining - e * d, cur, out);
        cur.factors.pop_back();
    }
}

std::vector<Monomial> basis(const GeneratorTable& T, int n, const std::vector<char>& allowed) {
    if (n < 0) throw std::runtime_error("basis: negative degree");
    std::vector<Monomial> out;
    Monomial cur;
    basis_rec(T, allowed, 0, n, cur, out);
    std::sort(out.begin(), out.end(), MonomialOrder{});
    return out;
}

std::vector<Monomial> basis(const GeneratorTable& T, int n) { return basis(T, n, {}); }

AlgebraMap::AlgebraMap(TablePtr src, TablePtr dst, std::vector<Poly> images)
    : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != src_->size())
        throw std::runtime_error("algebra map: one image per generator required");
    for (int i = 0; i < src_->size(); ++i) {
        const Poly& im = images_[i];
        if (im.table() != dst_) throw std::runtime_error("algebra map: image over wrong table");
        if (!im.is_zero() && (!im.is_homogeneous() || im.degree() != (*src_)[i].degree))
            throw std::runtime_error("algebra map: image of " + (*src_)[i].name +
                                     " is not homogeneous of the generator's degree");
    }
}

AlgebraMap AlgebraMap::identity(const TablePtr& table) {
    std::vector<Poly> images;
    images.reserve(table->size());
    for (int i = 0; i < table->size(); ++i) images.push_back(Poly::generator(table, i));
    return AlgebraMap(table, table, std::move(images));
}

Poly AlgebraMap::apply_monomial(const Monomial& m) const {
    Poly out = Poly::unit(dst_);
    for (const auto& [g, e] : m.factors) {
        const Poly& im = images_.at(g);
        if (im.is_zero()) return Poly::zero(dst_);
        out = out * (e == 1 ? im : im.pow(e));
    }
    return out;
}

Poly AlgebraMap::operator()(const Poly& p) const {
    if (p.table() != src_) throw std::runtime_error("algebra map applied to foreign polynomial");
    Poly out(dst_);
    for (const auto& [m, c] : p.terms()) out += apply_monomial(m).scaled(c);
    return out;
}

AlgebraMap AlgebraMap::compose(const AlgebraMap& inner) const {
    if (inner.dst_ != src_) throw std::runtime_error("algebra map composition mismatch");
    std::vector<Poly> images;
    images.reserve(inner.images_.size());
    for (const Poly& im : inner.images_) images.push_back((*this)(im));
    return AlgebraMap(inner.src_, dst_, std::move(images));
}

std::string mono_to_string(const GeneratorTable& T, const Monomial& m) {
    if (m.is_one()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, e] : m.factors) {
        if (!first) os << "*";
        first = false;
        os << T[g].name;
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

}  // namespace sullivan
