#include "bkmod/types.hpp"

#include <algorithm>
#include <tuple>

#include "bkmod/gf.hpp"
#include "bkmod/util.hpp"

namespace bkmod {

const char* kind_name(Kind k) { return k == Kind::Cuspidal ? "cuspidal" : "principal-series"; }

LocalContext LocalContext::make(int p, int f, int e)
{
    if (p == 2) throw Error(ErrorKind::NotSupported, "p must be odd");
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (p > 13) throw Error(ErrorKind::ContextCap, "p <= 13 required");
    if (f < 1 || f > 4) throw Error(ErrorKind::ContextCap, "1 <= f <= 4 required");
    if (e < 1 || e > 6) throw Error(ErrorKind::ContextCap, "1 <= e <= 6 required");
    return LocalContext{p, f, e};
}

int64_t LocalContext::q() const { return ipow(p, f); }

int64_t LocalContext::eKK(Kind k) const { return ipow(p, fprime(k)) - 1; }

std::string TameType::label() const
{
    if (isScalar) return "scalar:" + std::to_string(k0);
    if (kind == Kind::Cuspidal) return "cusp:" + std::to_string(k0);
    return "ps:" + std::to_string(k0) + "," + std::to_string(k0p);
}

bool TameType::operator<(const TameType& o) const
{
    auto rank = [](const TameType& t) { return t.isScalar ? 0 : (t.kind == Kind::PrincipalSeries ? 1 : 2); };
    return std::make_tuple(rank(*this), k0, k0p) < std::make_tuple(rank(o), o.k0, o.k0p);
}

TameType make_type(const LocalContext& ctx, Kind kind, int64_t k0, int64_t k0p)
{
    TameType t;
    t.ctx = ctx;
    t.kind = kind;
    t.fp = ctx.fprime(kind);
    t.eKK = ctx.eKK(kind);
    if (k0 < 0 || k0 >= t.eKK) throw Error(ErrorKind::BadResidue, "k0 must lie in [0," + std::to_string(t.eKK) + ")");
    t.k0 = k0;
    if (kind == Kind::Cuspidal) {
        int64_t derived = mod(ctx.q() * k0, t.eKK);
        if (k0p >= 0 && k0p != derived) throw Error(ErrorKind::BadResidue, "cuspidal k0p must equal q*k0");
        if (derived == k0) throw Error(ErrorKind::CuspidalDegenerate, "q*k0 = k0 mod " + std::to_string(t.eKK));
        t.k0p = derived;
    } else {
        if (k0p < 0 || k0p >= t.eKK)
            throw Error(ErrorKind::BadResidue, "k0p must lie in [0," + std::to_string(t.eKK) + ")");
        t.k0p = k0p;
        t.isScalar = (k0 == k0p);
    }
    t.kVec.resize(t.fp);
    t.kpVec.resize(t.fp);
    int64_t pi = 1;
    for (int i = 0; i < t.fp; ++i) {
        t.kVec[i] = mod(pi * t.k0, t.eKK);
        t.kpVec[i] = mod(pi * t.k0p, t.eKK);
        pi = pi * ctx.p % t.eKK;
    }
    return t;
}

std::vector<int> gamma_digits(const TameType& tau)
{
    int fp = tau.fp, p = tau.ctx.p;
    std::vector<int> gamma(fp, 0);
    if (tau.isScalar) return gamma;
    // [k_0 - k'_0] = sum_j p^j gamma_{-j}
    int64_t D = mod(tau.kVec[0] - tau.kpVec[0], tau.eKK);
    for (int j = 0; j < fp; ++j) {
        gamma[mod(-j, fp)] = int(D % p);
        D /= p;
    }
    // re-substitution at every index
    for (int i = 0; i < fp; ++i) {
        int64_t s = 0, pj = 1;
        for (int j = 0; j < fp; ++j) {
            s += pj * gamma[mod(i - j, fp)];
            pj *= p;
        }
        if (s != mod(tau.kVec[i] - tau.kpVec[i], tau.eKK))
            throw Error(ErrorKind::Internal, "gamma digit re-substitution failed for " + tau.label());
    }
    return gamma;
}

TameType swap_type(const TameType& tau)
{
    if (tau.kind == Kind::Cuspidal) return make_type(tau.ctx, Kind::Cuspidal, tau.k0p);
    return make_type(tau.ctx, Kind::PrincipalSeries, tau.k0p, tau.k0);
}

TameType canonical_type(const TameType& tau)
{
    if (tau.kind == Kind::Cuspidal) return tau.k0 < tau.k0p ? tau : swap_type(tau);
    return tau.k0 >= tau.k0p ? tau : swap_type(tau);
}

std::vector<TameType> enumerate_types(const LocalContext& ctx, bool canonical)
{
    std::vector<TameType> out;
    int64_t qm1 = ctx.q() - 1;
    for (int64_t k0 = 0; k0 < qm1; ++k0)
        for (int64_t k0p = 0; k0p < qm1; ++k0p)
            if (!canonical || k0 >= k0p) out.push_back(make_type(ctx, Kind::PrincipalSeries, k0, k0p));
    int64_t ecusp = ctx.eKK(Kind::Cuspidal);
    for (int64_t k0 = 0; k0 < ecusp; ++k0) {
        int64_t k0p = mod(ctx.q() * k0, ecusp);
        if (k0p == k0) continue;
        if (canonical && k0p < k0) continue;
        out.push_back(make_type(ctx, Kind::Cuspidal, k0));
    }
    if (canonical) std::stable_sort(out.begin(), out.end());
    return out;
}

}  // namespace bkmod
