#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "quasicox/cyclotomic.hpp"

namespace quasicox {

// Minimal multiplication data a character-table computation needs.
struct GroupTables {
    std::vector<std::vector<unsigned>> mul;      // product table
    std::vector<unsigned> inv;                   // inverse table
    std::vector<std::vector<unsigned>> classes;  // conjugacy classes, identity class first
    std::vector<unsigned> class_of;              // element -> class id
    const CycloField* field = nullptr;           // field containing all character values
};

struct IrreducibleCharacter {
    unsigned degree = 0;
    std::vector<Scalar> values;  // per conjugacy class, identity class first
};

namespace detail {

// Arithmetic in F_p for a word-sized prime.
class Fp {
public:
    explicit Fp(std::uint64_t p) : p_(p) {}
    std::uint64_t p() const { return p_; }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b % p_) % p_; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p_; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        a %= p_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const { return pow(a, p_ - 2); }

private:
    std::uint64_t p_;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        fs.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

inline std::uint64_t primitive_root(const Fp& F) {
    const auto qs = prime_factors(F.p() - 1);
    for (std::uint64_t h = 2; h < F.p(); ++h) {
        bool ok = true;
        for (std::uint64_t q : qs)
            if (F.pow(h, (F.p() - 1) / q) == 1) {
                ok = false;
                break;
            }
        if (ok) return h;
    }
    throw std::logic_error("character table: no primitive root found");
}

using FpVec = std::vector<std::uint64_t>;
using FpMat = std::vector<FpVec>;

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<size_t> fp_rref(FpMat& m, const Fp& F) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    const size_t cols = m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < m.size(); ++col) {
        size_t p = row;
        while (p < m.size() && m[p][col] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        const std::uint64_t s = F.inv(m[row][col]);
        for (size_t j = 0; j < cols; ++j) m[row][j] = F.mul(m[row][j], s);
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            const std::uint64_t f = m[i][col];
            for (size_t j = 0; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[row][j]));
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(pivots.size());
    return pivots;
}

inline FpMat fp_kernel(FpMat m, const Fp& F) {
    if (m.empty()) return {};
    const size_t cols = m[0].size();
    const auto pivots = fp_rref(m, F);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    FpMat basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        FpVec v(cols, 0);
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.sub(0, m[r][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace detail

// Character table by the Burnside/Dixon method: common eigenvectors of the
// class multiplication matrices over F_p, degrees from the orthogonality
// relation, and exact values lifted through discrete Fourier coefficients.
// Deterministic: rows are sorted by (degree, values) at the end.
inline std::vector<IrreducibleCharacter> character_table_burnside_dixon(const GroupTables& G) {
    using namespace detail;
    const size_t N = G.mul.size();
    const size_t r = G.classes.size();

    const auto order_of = [&](unsigned g) {
        unsigned o = 1, cur = g;
        while (cur != 0) {
            cur = G.mul[cur][g];
            ++o;
        }
        return o;
    };
    unsigned exponent = 1;
    for (unsigned g = 0; g < N; ++g) exponent = std::lcm(exponent, order_of(g));

    std::uint64_t p = exponent + 1;
    while (p <= 2 * N || (p - 1) % exponent != 0 || !is_prime(p)) ++p;
    const Fp F(p);

    // class multiplication matrices: (A_i)_{j,k} = #{(u,v) in C_i x C_j : uv = rep_k}
    std::vector<FpMat> A(r, FpMat(r, FpVec(r, 0)));
    for (size_t i = 0; i < r; ++i)
        for (size_t k = 0; k < r; ++k) {
            const unsigned zk = G.classes[k][0];
            for (unsigned u : G.classes[i]) {
                const unsigned v = G.mul[G.inv[u]][zk];
                A[i][G.class_of[v]][k] += 1;
            }
            for (size_t j = 0; j < r; ++j) A[i][j][k] %= p;
        }

    // refine the full space into common one-dimensional eigenspaces
    std::vector<FpMat> spaces;
    {
        FpMat full(r, FpVec(r, 0));
        for (size_t i = 0; i < r; ++i) full[i][i] = 1;
        spaces.push_back(std::move(full));
    }
    for (size_t i = 1; i < r; ++i) {
        std::vector<FpMat> next;
        for (auto& S : spaces) {
            const size_t m = S.size();
            if (m == 1) {
                next.push_back(std::move(S));
                continue;
            }
            // restriction of A_i to the subspace (S is in RREF, rows are basis vectors)
            FpMat Sm(m, FpVec(m, 0));
            std::vector<size_t> pivots;
            {
                FpMat tmp = S;
                pivots = fp_rref(tmp, F);
            }
            std::vector<FpVec> images(m, FpVec(r, 0));
            for (size_t b = 0; b < m; ++b)
                for (size_t row = 0; row < r; ++row)
                    for (size_t col = 0; col < r; ++col)
                        if (A[i][row][col] && S[b][col])
                            images[b][row] = F.add(images[b][row], F.mul(A[i][row][col], S[b][col]));
            for (size_t b = 0; b < m; ++b)
                for (size_t k = 0; k < m; ++k) Sm[k][b] = images[b][pivots[k]];

            bool split_any = false;
            for (std::uint64_t lam = 0; lam < p && !split_any; ++lam) {
                FpMat shifted = Sm;
                for (size_t d = 0; d < m; ++d) shifted[d][d] = F.sub(shifted[d][d], lam);
                FpMat ker = fp_kernel(shifted, F);
                if (ker.empty() || ker.size() == m) continue;
                split_any = true;
                // eigenvectors for lam, in subspace coordinates -> ambient space
                FpMat sub;
                for (const auto& kv : ker) {
                    FpVec v(r, 0);
                    for (size_t b = 0; b < m; ++b)
                        if (kv[b])
                            for (size_t col = 0; col < r; ++col)
                                v[col] = F.add(v[col], F.mul(kv[b], S[b][col]));
                    sub.push_back(std::move(v));
                }
                fp_rref(sub, F);
                next.push_back(std::move(sub));
                // complement: vectors of S not in the lam eigenspace get re-refined
                // by the remaining eigenvalues; gather them per eigenvalue
                for (std::uint64_t lam2 = lam + 1; lam2 < p; ++lam2) {
                    FpMat shifted2 = Sm;
                    for (size_t d = 0; d < m; ++d) shifted2[d][d] = F.sub(shifted2[d][d], lam2);
                    FpMat ker2 = fp_kernel(shifted2, F);
                    if (ker2.empty()) continue;
                    FpMat sub2;
                    for (const auto& kv : ker2) {
                        FpVec v(r, 0);
                        for (size_t b = 0; b < m; ++b)
                            if (kv[b])
                                for (size_t col = 0; col < r; ++col)
                                    v[col] = F.add(v[col], F.mul(kv[b], S[b][col]));
                        sub2.push_back(std::move(v));
                    }
                    fp_rref(sub2, F);
                    next.push_back(std::move(sub2));
                }
            }
            if (!split_any) next.push_back(std::move(S));
        }
        spaces = std::move(next);
    }
    for (const auto& S : spaces)
        if (S.size() != 1)
            throw std::logic_error("character table: eigenspace refinement did not separate");

    // each eigenvector, scaled so the identity-class entry is 1, is the vector
    // of values |C_k| chi(g_k) / chi(1)
    std::vector<IrreducibleCharacter> table;
    for (const auto& S : spaces) {
        FpVec w = S[0];
        if (w[0] == 0) throw std::logic_error("character table: eigenvector vanishes at identity");
        const std::uint64_t scale = F.inv(w[0]);
        for (auto& x : w) x = F.mul(x, scale);

        std::uint64_t s = 0;
        for (size_t k = 0; k < r; ++k) {
            const size_t kinv = G.class_of[G.inv[G.classes[k][0]]];
            s = F.add(s, F.mul(F.mul(w[k], w[kinv]), F.inv(G.classes[k].size() % p)));
        }
        const std::uint64_t d2 = F.mul(N % p, F.inv(s));
        unsigned degree = 0;
        for (unsigned d = 1; static_cast<std::uint64_t>(d) * d <= N; ++d)
            if (F.mul(d, d) == d2) {
                degree = d;
                break;
            }
        if (degree == 0) throw std::logic_error("character table: degree recovery failed");

        FpVec chi_p(r);
        for (size_t k = 0; k < r; ++k)
            chi_p[k] = F.mul(F.mul(degree, w[k]), F.inv(G.classes[k].size() % p));

        const std::uint64_t h = primitive_root(F);
        IrreducibleCharacter ch;
        ch.degree = degree;
        ch.values.assign(r, Scalar(0));
        for (size_t k = 0; k < r; ++k) {
            const unsigned g = G.classes[k][0];
            const unsigned o = order_of(g);
            const std::uint64_t lam = F.pow(h, (p - 1) / o);
            const std::uint64_t lam_inv = F.inv(lam);
            std::vector<std::uint64_t> m(o, 0);
            for (unsigned j = 0; j < o; ++j) {
                std::uint64_t acc = 0;
                unsigned cur = 0;  // g^0
                for (unsigned t = 0; t < o; ++t) {
                    acc = F.add(acc, F.mul(chi_p[G.class_of[cur]], F.pow(lam_inv, static_cast<std::uint64_t>(j) * t % o)));
                    cur = G.mul[cur][g];
                }
                m[j] = F.mul(acc, F.inv(o % p));
                if (m[j] > degree)
                    throw std::logic_error("character table: Fourier coefficient lift out of range");
            }
            std::uint64_t msum = 0;
            for (unsigned j = 0; j < o; ++j) msum += m[j];
            if (msum != degree)
                throw std::logic_error("character table: Fourier coefficients do not sum to the degree");
            Scalar val(static_cast<long>(m[0]));
            if (o % 2 == 0) val += Scalar(-static_cast<long>(m[o / 2]));
            for (unsigned j = 1; 2 * j < o; ++j) {
                if (m[j] != m[o - j])
                    throw std::logic_error("character table: non-real character encountered");
                if (m[j])
                    val += Scalar(static_cast<long>(m[j])) * Scalar::two_cos(G.field, j, o);
            }
            ch.values[k] = val;
        }
        table.push_back(std::move(ch));
    }

    std::sort(table.begin(), table.end(), [](const IrreducibleCharacter& a, const IrreducibleCharacter& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        for (size_t k = 0; k < a.values.size(); ++k)
            if (int c = Scalar::compare(a.values[k], b.values[k]); c != 0) return c > 0;
        return false;
    });

    // consistency: completeness and row orthogonality
    {
        unsigned long dd = 0;
        for (const auto& ch : table) dd += static_cast<unsigned long>(ch.degree) * ch.degree;
        if (dd != N) throw std::logic_error("character table: sum of squared degrees is wrong");
        if (table.size() != r) throw std::logic_error("character table: wrong number of rows");
        for (size_t a = 0; a < r; ++a)
            for (size_t b = a; b < r; ++b) {
                Scalar acc(0);
                for (size_t k = 0; k < r; ++k) {
                    const size_t kinv = G.class_of[G.inv[G.classes[k][0]]];
                    acc += Scalar(static_cast<long>(G.classes[k].size())) * table[a].values[k] *
                           table[b].values[kinv];
                }
                const Scalar expect = a == b ? Scalar(static_cast<long>(N)) : Scalar(0);
                if (acc != expect) throw std::logic_error("character table: orthogonality failed");
            }
    }
    return table;
}

}  // namespace quasicox
