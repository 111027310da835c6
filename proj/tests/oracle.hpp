#pragma once

// Brute-force reference computations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "bkmod/gf.hpp"
#include "bkmod/rank_one.hpp"
#include "bkmod/shapes.hpp"
#include "bkmod/types.hpp"
#include "bkmod/util.hpp"
#include "bkmod/weights.hpp"

namespace oracle {

using namespace bkmod;

// monic polynomials of degree m, coefficient vectors low degree first
inline std::vector<std::vector<int>> monics(int p, int m)
{
    std::vector<std::vector<int>> out;
    int64_t count = ipow(p, m);
    for (int64_t code = 0; code < count; ++code) {
        std::vector<int> c(m + 1, 0);
        int64_t x = code;
        for (int k = 0; k < m; ++k) {
            c[k] = int(x % p);
            x /= p;
        }
        c[m] = 1;
        out.push_back(c);
    }
    return out;
}

inline std::vector<int> poly_mul(int p, const std::vector<int>& a, const std::vector<int>& b)
{
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
}

// every product of two monic polynomials of positive degree summing to m
inline std::set<std::vector<int>> reducible_monics(int p, int m)
{
    std::set<std::vector<int>> out;
    for (int d = 1; d <= m / 2; ++d)
        for (const auto& a : monics(p, d))
            for (const auto& b : monics(p, m - d)) out.insert(poly_mul(p, a, b));
    return out;
}

// first irreducible monic when comparing coefficients from degree 0 upward
inline std::vector<int> first_irreducible(int p, int m)
{
    if (m == 1) return {0, 1};
    auto red = reducible_monics(p, m);
    std::vector<std::vector<int>> all = monics(p, m);
    std::sort(all.begin(), all.end());
    for (const auto& c : all)
        if (!red.count(c)) return c;
    return {};
}

// gamma from eq. [k_i - k'_i] = sum_j p^j gamma_{i-j} by exhaustive search
inline std::vector<int> brute_gamma(const TameType& tau)
{
    const int p = tau.ctx.p, fp = tau.fp;
    const int64_t E = tau.eKK;
    int64_t count = ipow(p, fp);
    std::vector<std::vector<int>> hits;
    for (int64_t code = 0; code < count; ++code) {
        std::vector<int> g(fp);
        int64_t x = code;
        bool allTop = true;
        for (int k = 0; k < fp; ++k) {
            g[k] = int(x % p);
            x /= p;
            if (g[k] != p - 1) allTop = false;
        }
        if (allTop) continue;
        bool ok = true;
        for (int i = 0; i < fp && ok; ++i) {
            int64_t s = 0;
            for (int j = 0; j < fp; ++j) s += ipow(p, j) * g[mod(i - j, fp)];
            if (s != mod(tau.kVec[i] - tau.kpVec[i], E)) ok = false;
        }
        if (ok) hits.push_back(g);
    }
    return hits.size() == 1 ? hits[0] : std::vector<int>{};
}

// the integer solutions of p*alpha_{i-1} - alpha_i = r_i in a box
inline std::vector<std::vector<int64_t>> brute_alpha(int p, const std::vector<int64_t>& r, int64_t bound)
{
    const int n = int(r.size());
    std::vector<std::vector<int64_t>> out;
    std::vector<int64_t> a(n, 0);
    std::function<void(int)> rec = [&](int k) {
        if (k == n) {
            for (int i = 0; i < n; ++i)
                if (p * a[mod(i - 1, n)] - a[i] != r[i]) return;
            out.push_back(a);
            return;
        }
        for (int64_t v = -bound; v <= bound; ++v) {
            a[k] = v;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

// number of base-|F| digits of a count that is a power of |F|
inline int log_size(uint64_t count, uint64_t q)
{
    int k = 0;
    while (count > 1) {
        if (count % q != 0) return -1;
        count /= q;
        ++k;
    }
    return k;
}

// all F-combinations of a list of coordinate vectors
inline int brute_rank(const Field& F, const std::vector<std::vector<uint64_t>>& cols, size_t rows)
{
    std::set<std::vector<uint64_t>> span;
    std::vector<uint64_t> coef(cols.size(), 0);
    const uint64_t q = F->size();
    while (true) {
        std::vector<uint64_t> v(rows, 0);
        for (size_t c = 0; c < cols.size(); ++c)
            for (size_t r = 0; r < rows; ++r) v[r] = F->add(v[r], F->mul(coef[c], cols[c][r]));
        span.insert(v);
        size_t k = 0;
        while (k < coef.size() && ++coef[k] == q) coef[k++] = 0;
        if (k == coef.size()) break;
    }
    return log_size(span.size(), q);
}

// the Ext differential applied to a monomial, via series arithmetic;
// returns the coefficients on the given codomain basis
inline std::vector<uint64_t> ext_column_by_series(const RankOneBK& M, const RankOneBK& N, int i, int64_t j,
                                                  int64_t top, const std::vector<std::pair<int, int64_t>>& basis)
{
    const Field& F = M.field;
    const int P = M.period;
    const int64_t big = 4 * top + 64;
    std::vector<TruncSeries> out(P, TruncSeries::zero(F, top));
    auto mu = TruncSeries::monomial(FieldElem::one(F), j, big);
    auto t1 = TruncSeries::monomial(-M.a[i], M.r[i], big) * mu;
    out[i] = out[i] + t1;
    int i1 = (i + 1) % P;
    auto t2 = TruncSeries::monomial(N.a[i1], N.r[i1], big) * semilinear_substitute(mu, M.ctx.p);
    out[i1] = out[i1] + t2;
    std::vector<uint64_t> col;
    for (auto [k, d] : basis) col.push_back(out[k].coefficient(d).code());
    // nothing may land outside the basis below the truncation
    for (int k = 0; k < P; ++k) {
        for (int64_t d = 0; d < top; ++d) {
            if (out[k].coefficient(d).is_zero()) continue;
            bool listed = false;
            for (auto [k2, d2] : basis)
                if (k2 == k && d2 == d) listed = true;
            if (!listed) return {};
        }
    }
    return col;
}

// dim of {mu in (F((u))/F[[u]])^P : a_i u^{r_i} mu_i = b_i phi(mu_{i-1}) u^{s_i}},
// terms of mu_i in degrees [-e', -1] congruent to c_i - d_i, by enumeration
inline int brute_principal_hom(const RankOneBK& M, const RankOneBK& N)
{
    const Field& F = M.field;
    const int P = M.period, p = M.ctx.p;
    const int64_t E = M.eKK(), eP = M.ePrime(), big = 4 * eP * p + 64;
    std::vector<std::pair<int, int64_t>> slots;
    for (int i = 0; i < P; ++i)
        for (int64_t d = -eP; d < 0; ++d)
            if (mod(d - (M.c[i] - N.c[i]), E) == 0) slots.push_back({i, d});
    const uint64_t q = F->size();
    std::vector<uint64_t> coef(slots.size(), 0);
    uint64_t solutions = 0;
    while (true) {
        std::vector<TruncSeries> mu(P, TruncSeries::zero(F, 0));
        for (size_t k = 0; k < slots.size(); ++k)
            mu[slots[k].first] = mu[slots[k].first] + TruncSeries::monomial(FieldElem(F, coef[k]), slots[k].second, 0);
        bool ok = true;
        for (int i = 0; i < P && ok; ++i) {
            auto lhs = TruncSeries::monomial(M.a[i], M.r[i], big) * mu[i];
            auto rhs = TruncSeries::monomial(N.a[i], N.r[i], big) * semilinear_substitute(mu[mod(i - 1, P)], p);
            if (!(lhs - rhs).principal_part().is_zero()) ok = false;
        }
        if (ok) ++solutions;
        size_t k = 0;
        while (k < coef.size() && ++coef[k] == q) coef[k++] = 0;
        if (k == coef.size()) break;
    }
    return log_size(solutions, q);
}

// Brauer characters on semisimple classes of GL2(k), with the n-th roots of
// unity realized in Z/ell for a prime ell = 1 mod n
class RootsOfUnity {
public:
    explicit RootsOfUnity(int64_t n, int64_t start = 1000000) : n_(n)
    {
        for (int64_t k = start;; ++k) {
            ell_ = k * n + 1;
            if (is_prime(ell_)) break;
        }
        std::vector<int64_t> primes;
        int64_t m = ell_ - 1;
        for (int64_t d = 2; d * d <= m; ++d) {
            if (m % d) continue;
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
        if (m > 1) primes.push_back(m);
        for (int64_t g = 2;; ++g) {
            bool gen = true;
            for (int64_t r : primes)
                if (powmod(g, (ell_ - 1) / r) == 1) gen = false;
            if (gen) {
                omega_ = powmod(g, (ell_ - 1) / n);
                break;
            }
        }
    }

    int64_t ell() const { return ell_; }
    int64_t root(int64_t k) const { return powmod(omega_, mod(k, n_)); }
    int64_t add(int64_t a, int64_t b) const { return (a + b) % ell_; }
    int64_t mul(int64_t a, int64_t b) const { return int64_t((__int128)a * b % ell_); }
    int64_t from_int(int64_t a) const { return mod(a, ell_); }

private:
    int64_t powmod(int64_t b, int64_t e) const
    {
        int64_t r = 1;
        b %= ell_;
        while (e > 0) {
            if (e & 1) r = int64_t((__int128)r * b % ell_);
            b = int64_t((__int128)b * b % ell_);
            e >>= 1;
        }
        return r;
    }

    int64_t n_;
    int64_t ell_ = 0;
    int64_t omega_ = 0;
};

// the Serre weight at an element with eigenvalues zeta^a, zeta^b, zeta of order q^2-1
inline int64_t weight_brauer(const RootsOfUnity& R, int p, int f, const SerreWeight& w, int64_t a, int64_t b)
{
    int64_t val = 1;
    for (int j = 0; j < f; ++j) {
        int64_t tw = ipow(p, int(mod(f - j, f)));
        int64_t sum = 0;
        for (int k = 0; k <= w.s[j]; ++k) sum = R.add(sum, R.root(tw * (a * k + b * (w.s[j] - k))));
        val = R.mul(val, R.mul(R.root(tw * (a + b) * w.t[j]), sum));
    }
    return val;
}

// the characteristic zero representation attached to tau
inline int64_t type_character(const RootsOfUnity& R, const TameType& tau, int64_t a, int64_t b, bool elliptic)
{
    const int64_t q = tau.ctx.q();
    if (tau.isScalar) return R.root((a + b) * tau.k0);
    if (tau.kind == Kind::PrincipalSeries) {
        if (elliptic) return 0;
        if (a == b) return R.mul(R.from_int(q + 1), R.root(a * (tau.k0 + tau.k0p)));
        return R.add(R.root(a * tau.k0 + b * tau.k0p), R.root(b * tau.k0 + a * tau.k0p));
    }
    if (elliptic) return R.from_int(-R.add(R.root(a * tau.k0), R.root(b * tau.k0)));
    if (a == b) return R.mul(R.from_int(q - 1), R.root(a * tau.k0));
    return 0;
}

// compares the sum of the Brauer characters of `weights` with the reduction of
// the representation of GL2(k) attached to tau, on every semisimple class
inline bool brauer_match(const TameType& tau, const std::vector<SerreWeight>& weights, const RootsOfUnity& R)
{
    const int p = tau.ctx.p, f = tau.ctx.f;
    const int64_t q = tau.ctx.q(), n = q * q - 1;
    auto check = [&](int64_t a, int64_t b, bool elliptic) {
        int64_t lhs = 0;
        for (const auto& w : weights) lhs = R.add(lhs, weight_brauer(R, p, f, w, a, b));
        return lhs == type_character(R, tau, a, b, elliptic);
    };
    for (int64_t u = 0; u < q - 1; ++u)
        for (int64_t v = u; v < q - 1; ++v)
            if (!check((q + 1) * u, (q + 1) * v, false)) return false;
    for (int64_t a = 0; a < n; ++a) {
        if (a % (q + 1) == 0) continue;
        int64_t b = mod(a * q, n);
        if (b < a) continue;
        if (!check(a, b, true)) return false;
    }
    return true;
}

}  // namespace oracle
