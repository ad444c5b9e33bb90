#include "sullivan/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace sullivan {

Q QVec::at(int col) const {
    auto it = std::lower_bound(e.begin(), e.end(), col,
                               [](const auto& p, int c) { return p.first < c; });
    if (it != e.end() && it->first == col) return it->second;
    return Q(0);
}

void QVec::set(int col, const Q& v) {
    auto it = std::lower_bound(e.begin(), e.end(), col,
                               [](const auto& p, int c) { return p.first < c; });
    if (it != e.end() && it->first == col) {
        if (v == 0)
            e.erase(it);
        else
            it->second = v;
    } else if (v != 0) {
        e.insert(it, {col, v});
    }
}

void QMatrix::set(int r, int c, const Q& v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw std::runtime_error("matrix index");
    row[r].set(c, v);
}

namespace {

using ZVec = std::vector<std::pair<int, mpz_class>>;  // sorted by column

ZVec scale_to_integers(const QVec& v) {
    mpz_class lcm = 1;
    for (const auto& [c, q] : v.e) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    ZVec out;
    out.reserve(v.e.size());
    for (const auto& [c, q] : v.e) {
        mpz_class t = q.get_num() * (lcm / q.get_den());
        out.emplace_back(c, std::move(t));
    }
    return out;
}

void strip_content(ZVec& v) {
    if (v.empty()) return;
    mpz_class g = 0;
    for (const auto& [c, z] : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (g == 0 || g == 1) return;
    for (auto& [c, z] : v) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
}

/* a*r1 - b*r2, sparse merge */
ZVec combine(const mpz_class& a, const ZVec& r1, const mpz_class& b, const ZVec& r2) {
    ZVec out;
    out.reserve(r1.size() + r2.size());
    std::size_t i = 0, j = 0;
    while (i < r1.size() || j < r2.size()) {
        int c1 = i < r1.size() ? r1[i].first : INT32_MAX;
        int c2 = j < r2.size() ? r2[j].first : INT32_MAX;
        if (c1 < c2) {
            out.emplace_back(c1, a * r1[i].second);
            ++i;
        } else if (c2 < c1) {
            out.emplace_back(c2, -b * r2[j].second);
            ++j;
        } else {
            mpz_class t = a * r1[i].second - b * r2[j].second;
            if (t != 0) out.emplace_back(c1, std::move(t));
            ++i, ++j;
        }
    }
    return out;
}

}  // namespace

int exact_rank(const QMatrix& A) {
    std::vector<ZVec> rows;
    rows.reserve(A.rows);
    for (const QVec& r : A.row) {
        ZVec z = scale_to_integers(r);
        strip_content(z);
        if (!z.empty()) rows.push_back(std::move(z));
    }
    int rank = 0;
    while (!rows.empty()) {
        // sparsest row as pivot, lowest index on ties
        std::size_t best = 0;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].size() < rows[best].size()) best = i;
        ZVec piv = std::move(rows[best]);
        rows.erase(rows.begin() + best);
        ++rank;
        int pc = piv.front().first;
        const mpz_class& pv = piv.front().second;
        std::vector<ZVec> next;
        next.reserve(rows.size());
        for (ZVec& r : rows) {
            auto it = std::lower_bound(r.begin(), r.end(), pc,
                                       [](const auto& p, int c) { return p.first < c; });
            if (it == r.end() || it->first != pc) {
                next.push_back(std::move(r));
                continue;
            }
            ZVec u = combine(pv, r, it->second, piv);
            strip_content(u);
            if (!u.empty()) next.push_back(std::move(u));
        }
        rows = std::move(next);
    }
    return rank;
}

int bareiss_rank_dense(const QMatrix& A) {
    int n = A.rows, m = A.cols;
    std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(m, 0));
    for (int i = 0; i < n; ++i) {
        ZVec z = scale_to_integers(A.row[i]);
        for (const auto& [c, v] : z) M[i][c] = v;
    }
    mpz_class prev = 1;
    int rank = 0;
    int r = 0;
    for (int c = 0; c < m && r < n; ++c) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (M[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[piv], M[r]);
        for (int i = r + 1; i < n; ++i) {
            for (int j = c + 1; j < m; ++j) {
                mpz_class t = M[r][c] * M[i][j] - M[i][c] * M[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                M[i][j] = std::move(t);
            }
            M[i][c] = 0;
        }
        prev = M[r][c];
        ++r;
        ++rank;
    }
    return rank;
}

int rank_modp(const QMatrix& A) {
    const uint64_t p = (uint64_t(1) << 61) - 1;
    auto mulmod = [&](uint64_t a, uint64_t b) -> uint64_t {
        return (uint64_t)((__uint128_t)a * b % p);
    };
    auto powmod = [&](uint64_t a, uint64_t e) {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    std::vector<std::vector<uint64_t>> M;
    M.reserve(A.rows);
    for (const QVec& r : A.row) {
        std::vector<uint64_t> d(A.cols, 0);
        for (const auto& [c, q] : r.e) {
            mpz_class num = q.get_num() % (long)p;  // may be negative
            mpz_class den = q.get_den() % (long)p;
            long n = num.get_si(), dn = den.get_si();
            uint64_t un = n >= 0 ? (uint64_t)n : p - (uint64_t)(-n);
            uint64_t ud = (uint64_t)dn;
            if (ud == 0) throw std::runtime_error("rank_modp: denominator divisible by p");
            d[c] = mulmod(un, powmod(ud, p - 2));
        }
        M.push_back(std::move(d));
    }
    int rank = 0, r = 0;
    for (int c = 0; c < A.cols && r < (int)M.size(); ++c) {
        int piv = -1;
        for (int i = r; i < (int)M.size(); ++i)
            if (M[i][c]) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[piv], M[r]);
        uint64_t inv = powmod(M[r][c], p - 2);
        for (int i = r + 1; i < (int)M.size(); ++i) {
            if (!M[i][c]) continue;
            uint64_t f = mulmod(M[i][c], inv);
            for (int j = c; j < A.cols; ++j) {
                uint64_t t = mulmod(f, M[r][j]);
                M[i][j] = (M[i][j] >= t) ? M[i][j] - t : M[i][j] + p - t;
            }
        }
        ++r;
        ++rank;
    }
    return rank;
}

RrefResult rref(const QMatrix& A) {
    std::vector<QVec> live = A.row;
    std::vector<char> used(live.size(), 0);
    std::vector<int> pivot_rows;
    RrefResult R;
    R.row_of_pivot_col.assign(A.cols, -1);
    for (int c = 0; c < A.cols; ++c) {
        int pr = -1;
        for (std::size_t i = 0; i < live.size(); ++i) {
            if (used[i]) continue;
            if (live[i].at(c) != 0) {
                pr = (int)i;
                break;
            }
        }
        if (pr < 0) continue;
        used[pr] = 1;
        Q pv = live[pr].at(c);
        for (auto& [col, v] : live[pr].e) v /= pv;
        for (std::size_t i = 0; i < live.size(); ++i) {
            if ((int)i == pr) continue;
            Q f = live[i].at(c);
            if (f == 0) continue;
            // live[i] -= f * live[pr]
            QVec out;
            out.e.reserve(live[i].e.size() + live[pr].e.size());
            std::size_t a = 0, b = 0;
            while (a < live[i].e.size() || b < live[pr].e.size()) {
                int c1 = a < live[i].e.size() ? live[i].e[a].first : INT32_MAX;
                int c2 = b < live[pr].e.size() ? live[pr].e[b].first : INT32_MAX;
                if (c1 < c2) {
                    out.e.push_back(live[i].e[a++]);
                } else if (c2 < c1) {
                    out.e.emplace_back(c2, -f * live[pr].e[b].second);
                    ++b;
                } else {
                    Q t = live[i].e[a].second - f * live[pr].e[b].second;
                    if (t != 0) out.e.emplace_back(c1, std::move(t));
                    ++a, ++b;
                }
            }
            live[i] = std::move(out);
        }
        R.row_of_pivot_col[c] = (int)pivot_rows.size();
        pivot_rows.push_back(pr);
        R.pivot_col.push_back(c);
        ++R.rank;
    }
    for (int pr : pivot_rows) R.rows.push_back(std::move(live[pr]));
    return R;
}

std::optional<std::vector<Q>> solve_minimal(const QMatrix& A, const std::vector<Q>& b) {
    if ((int)b.size() != A.rows) throw std::runtime_error("solve: size mismatch");
    QMatrix aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        aug.row[i] = A.row[i];
        if (b[i] != 0) aug.row[i].e.emplace_back(A.cols, b[i]);
    }
    RrefResult R = rref(aug);
    std::vector<Q> x(A.cols, Q(0));
    for (int r = 0; r < R.rank; ++r) {
        if (R.pivot_col[r] == A.cols) return std::nullopt;  // inconsistent
        x[R.pivot_col[r]] = R.rows[r].at(A.cols);
    }
    return x;
}

std::vector<QVec> nullspace_basis(const QMatrix& A) {
    RrefResult R = rref(A);
    std::vector<QVec> out;
    for (int c = 0; c < A.cols; ++c) {
        if (R.row_of_pivot_col[c] >= 0) continue;
        QVec v;
        for (int r = 0; r < R.rank; ++r) {
            Q coef = R.rows[r].at(c);
            if (coef != 0) v.e.emplace_back(R.pivot_col[r], -coef);
        }
        v.e.emplace_back(c, Q(1));
        std::sort(v.e.begin(), v.e.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        out.push_back(std::move(v));
    }
    return out;
}

QVec reduce_against(const RrefResult& R, QVec v) {
    for (int r = 0; r < R.rank; ++r) {
        Q f = v.at(R.pivot_col[r]);
        if (f == 0) continue;
        QVec out;
        out.e.reserve(v.e.size() + R.rows[r].e.size());
        std::size_t a = 0, b = 0;
        while (a < v.e.size() || b < R.rows[r].e.size()) {
            int c1 = a < v.e.size() ? v.e[a].first : INT32_MAX;
            int c2 = b < R.rows[r].e.size() ? R.rows[r].e[b].first : INT32_MAX;
            if (c1 < c2) {
                out.e.push_back(v.e[a++]);
            } else if (c2 < c1) {
                out.e.emplace_back(c2, -f * R.rows[r].e[b].second);
                ++b;
            } else {
                Q t = v.e[a].second - f * R.rows[r].e[b].second;
                if (t != 0) out.e.emplace_back(c1, std::move(t));
                ++a, ++b;
            }
        }
        v = std::move(out);
    }
    return v;
}

}  // namespace sullivan
