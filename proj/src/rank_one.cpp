#include "bkmod/rank_one.hpp"

#include "bkmod/util.hpp"

namespace bkmod {

FieldElem RankOneBK::unram() const
{
    FieldElem x = FieldElem::one(field);
    for (int i = 0; i < period; ++i) x = x * a[i];
    return x;
}

FieldElem RankOneBK::unram_full() const
{
    FieldElem x = FieldElem::one(field);
    for (const auto& ai : a) x = x * ai;
    return x;
}

RankOneBK validate(const LocalContext& ctx, Kind kind, const std::vector<int64_t>& r,
                   const std::vector<FieldElem>& a, const std::vector<int64_t>& c, int period)
{
    RankOneBK M;
    M.ctx = ctx;
    M.kind = kind;
    const int fp = ctx.fprime(kind);
    if (period == 0) period = ctx.f;
    if (period != ctx.f && period != fp)
        throw Error(ErrorKind::PeriodError, "period must be f or f'");
    M.period = period;
    if (int(r.size()) != fp || int(a.size()) != fp || int(c.size()) != fp)
        throw Error(ErrorKind::PeriodError, "vectors must have length f' = " + std::to_string(fp));

    M.field = a[0].owner();
    if (!M.field || M.field->p() != ctx.p || M.field->m() % fp != 0)
        throw Error(ErrorKind::ContextMismatch, "coefficient field must contain GF(p^f')");
    for (const auto& ai : a)
        if (ai.owner().get() != M.field.get()) throw Error(ErrorKind::ContextMismatch, "coefficients from different fields");

    for (int i = 0; i < fp; ++i) {
        int j = (i + period) % fp;
        if (r[i] != r[j] || a[i] != a[j] || c[i] != c[j])
            throw Error(ErrorKind::PeriodError, "vectors are not periodic with period " + std::to_string(period));
    }
    for (const auto& ai : a)
        if (ai.is_zero()) throw Error(ErrorKind::ZeroCoefficient, "a_i must be nonzero");

    const int64_t eKK = ctx.eKK(kind), eP = ctx.ePrime(kind);
    for (int i = 0; i < fp; ++i) {
        if (r[i] < 0 || r[i] > eP) throw Error(ErrorKind::RangeError, "r_i must lie in [0,e']");
        if (c[i] < 0 || c[i] >= eKK) throw Error(ErrorKind::RangeError, "c_i must lie in [0,e(K'/K))");
    }
    for (int i = 0; i < fp; ++i) {
        int im1 = int(mod(i - 1, fp));
        if (mod(int64_t(ctx.p) * c[im1] - c[i] - r[i], eKK) != 0)
            throw Error(ErrorKind::CongruenceFailed, "p*c[" + std::to_string(im1) + "] != c[" + std::to_string(i) +
                                                         "] + r[" + std::to_string(i) + "] mod " + std::to_string(eKK));
    }
    M.r = r;
    M.a = a;
    M.c = c;
    return M;
}

RankOneBK validate_unit(const LocalContext& ctx, Kind kind, const std::vector<int64_t>& r,
                        const std::vector<int64_t>& c, int period)
{
    Field F = build_field(ctx.p, ctx.fprime(kind));
    std::vector<FieldElem> a(r.size(), FieldElem::one(F));
    return validate(ctx, kind, r, a, c, period);
}

std::vector<int64_t> alpha(const RankOneBK& M)
{
    const int fp = M.fp();
    const int64_t eKK = M.eKK();
    std::vector<int64_t> al(fp);
    for (int i = 0; i < fp; ++i) {
        int64_t s = 0;
        for (int k = 0; k < fp; ++k) s = s * M.ctx.p + M.r[mod(i - fp + 1 + k, fp)];
        if (s % eKK != 0) throw Error(ErrorKind::Internal, "alpha is not integral");
        al[i] = s / eKK;
    }
    return al;
}

GaloisChar galois_char(const RankOneBK& M)
{
    auto al = alpha(M);
    return GaloisChar{mod(M.c[0] - al[0], M.eKK()), M.unram(), M.unram_full()};
}

void check_compatible(const RankOneBK& M, const RankOneBK& N)
{
    if (M.ctx != N.ctx || M.kind != N.kind || M.period != N.period)
        throw Error(ErrorKind::ContextMismatch, "modules over different contexts");
    if (M.field.get() != N.field.get())
        throw Error(ErrorKind::ContextMismatch, "modules with different coefficient fields");
}

bool same_generic_fibre(const RankOneBK& M, const RankOneBK& N)
{
    check_compatible(M, N);
    auto x = galois_char(M), y = galois_char(N);
    return x.tameExp == y.tameExp && x.unram == y.unram;
}

bool is_isomorphic(const RankOneBK& M, const RankOneBK& N)
{
    check_compatible(M, N);
    return M.r == N.r && M.c == N.c && M.unram() == N.unram();
}

int hom_dim(const RankOneBK& M, const RankOneBK& N)
{
    if (!same_generic_fibre(M, N)) return 0;
    auto am = alpha(M), an = alpha(N);
    for (size_t i = 0; i < am.size(); ++i)
        if (am[i] < an[i]) return 0;
    return 1;
}

RankOneBK twist_conjugate(const RankOneBK& M)
{
    if (M.kind != Kind::Cuspidal) throw Error(ErrorKind::KindMismatch, "twist_conjugate needs a cuspidal context");
    const int fp = M.fp(), f = M.ctx.f;
    std::vector<int64_t> r(fp), c(fp);
    std::vector<FieldElem> a(fp);
    for (int i = 0; i < fp; ++i) {
        r[i] = M.r[(i + f) % fp];
        a[i] = M.a[(i + f) % fp];
        c[i] = M.c[(i + f) % fp];
    }
    return validate(M.ctx, M.kind, r, a, c, M.period);
}

}  // namespace bkmod
