#include "bkmod/shapes.hpp"

#include <map>

#include "bkmod/util.hpp"

namespace bkmod {

namespace {

// #{ j in [lo,hi) : j = t mod m }
int64_t count_congruent(int64_t lo, int64_t hi, int64_t t, int64_t m)
{
    if (hi <= lo) return 0;
    int64_t first = lo + mod(t - lo, m);
    if (first >= hi) return 0;
    return (hi - 1 - first) / m + 1;
}

void check_shape(const Shape& s)
{
    const int fp = s.tau.fp;
    if (int(s.J.size()) != fp) throw Error(ErrorKind::InvalidShape, "J must be a subset of Z/f'Z");
    if (s.overL) {
        if (s.tau.kind != Kind::Cuspidal) throw Error(ErrorKind::InvalidShape, "shapes over L need a cuspidal type");
        return;
    }
    if (s.tau.isScalar) {
        for (bool b : s.J)
            if (b) throw Error(ErrorKind::InvalidShape, "scalar types only admit the empty shape");
        return;
    }
    if (s.tau.kind == Kind::Cuspidal) {
        const int f = s.tau.ctx.f;
        for (int i = 0; i < fp; ++i)
            if (s.J[i] == s.J[(i + f) % fp])
                throw Error(ErrorKind::InvalidShape, "cuspidal shapes need i in J <=> i+f not in J");
    }
}

// c_i for the sub, d_i for the quotient, following J
void shape_characters(const Shape& s, std::vector<int64_t>& c, std::vector<int64_t>& d)
{
    const int fp = s.tau.fp;
    c.resize(fp);
    d.resize(fp);
    for (int i = 0; i < fp; ++i) {
        c[i] = s.J[i] ? s.tau.kVec[i] : s.tau.kpVec[i];
        d[i] = s.J[i] ? s.tau.kpVec[i] : s.tau.kVec[i];
    }
}

}  // namespace

bool Shape::contains(int64_t i) const { return J[size_t(mod(i, tau.fp))]; }

std::vector<int> Shape::members() const
{
    std::vector<int> out;
    for (int i = 0; i < int(J.size()); ++i)
        if (J[i]) out.push_back(i);
    return out;
}

std::string Shape::label() const
{
    std::string s = "{";
    auto m = members();
    for (size_t k = 0; k < m.size(); ++k) s += (k ? "," : "") + std::to_string(m[k]);
    return s + "}";
}

Shape make_shape(const TameType& tau, const std::vector<int>& members, bool overL)
{
    Shape s;
    s.tau = tau;
    s.overL = overL;
    s.J.assign(tau.fp, false);
    for (int i : members) {
        if (i < 0 || i >= tau.fp) throw Error(ErrorKind::InvalidShape, "index outside Z/f'Z");
        s.J[i] = true;
    }
    check_shape(s);
    return s;
}

std::vector<Shape> all_shapes(const TameType& tau)
{
    if (tau.isScalar) return {make_shape(tau, {})};
    const int f = tau.ctx.f, fp = tau.fp;
    std::vector<Shape> out;
    for (int mask = 0; mask < (1 << f); ++mask) {
        std::vector<int> mem;
        for (int i = 0; i < f; ++i)
            if (mask >> i & 1) mem.push_back(i);
        if (tau.kind == Kind::Cuspidal) {
            for (int i = 0; i < f; ++i)
                if (!(mask >> i & 1)) mem.push_back(i + f);
        } else if (fp != f) {
            throw Error(ErrorKind::Internal, "principal series with f' != f");
        }
        out.push_back(make_shape(tau, mem));
    }
    return out;
}

std::vector<Shape> all_shapes_over_L(const TameType& tau)
{
    if (tau.kind != Kind::Cuspidal) throw Error(ErrorKind::KindMismatch, "shapes over L need a cuspidal type");
    std::vector<Shape> out;
    for (int mask = 0; mask < (1 << tau.fp); ++mask) {
        std::vector<int> mem;
        for (int i = 0; i < tau.fp; ++i)
            if (mask >> i & 1) mem.push_back(i);
        out.push_back(make_shape(tau, mem, true));
    }
    return out;
}

bool is_transition(const Shape& s, int64_t i) { return s.contains(i - 1) != s.contains(i); }

std::vector<int> transitions(const Shape& s)
{
    std::vector<int> out;
    for (int i = 0; i < s.tau.fp; ++i)
        if (is_transition(s, i)) out.push_back(i);
    return out;
}

bool in_p_tau(const Shape& s)
{
    if (s.tau.isScalar) return s.members().empty();
    auto gamma = gamma_digits(s.tau);
    const int p = s.tau.ctx.p;
    for (int i = 0; i < s.tau.fp; ++i) {
        bool prevIn = s.contains(i - 1), in = s.contains(i);
        if (prevIn && !in && gamma[i] == p - 1) return false;
        if (!prevIn && in && gamma[i] == 0) return false;
    }
    return true;
}

std::vector<Shape> p_tau(const TameType& tau)
{
    std::vector<Shape> out;
    for (const auto& s : all_shapes(tau))
        if (in_p_tau(s)) out.push_back(s);
    return out;
}

bool RefinedShape::is_maximal() const
{
    for (auto yi : y)
        if (yi != shape.tau.ctx.e) return false;
    return true;
}

std::vector<RefinedShape> refined_shapes(const Shape& s)
{
    check_shape(s);
    const int P = s.period(), e = s.tau.ctx.e;
    std::vector<int64_t> lo(P);
    for (int i = 0; i < P; ++i) lo[i] = is_transition(s, i) ? 1 : 0;
    std::vector<RefinedShape> out;
    std::vector<int64_t> y(lo);
    while (true) {
        out.push_back(RefinedShape{s, y});
        int k = 0;
        while (k < P && y[k] == e) {
            y[k] = lo[k];
            ++k;
        }
        if (k == P) break;
        ++y[k];
    }
    return out;
}

RefinedShape maximal_refined(const Shape& s)
{
    check_shape(s);
    return RefinedShape{s, std::vector<int64_t>(s.period(), s.tau.ctx.e)};
}

ModulePair build_MN(const RefinedShape& rs)
{
    const Shape& s = rs.shape;
    check_shape(s);
    const TameType& tau = s.tau;
    const int fp = tau.fp, P = s.period();
    if (int(rs.y.size()) != P) throw Error(ErrorKind::InvalidShape, "y has the wrong length");
    const int64_t eKK = tau.eKK, eP = tau.ctx.ePrime(tau.kind);
    std::vector<int64_t> c, d, r(fp), sv(fp);
    shape_characters(s, c, d);
    for (int i = 0; i < fp; ++i) {
        int64_t y = rs.y[i % P];
        bool tr = is_transition(s, i);
        if (y < (tr ? 1 : 0) || y > tau.ctx.e) throw Error(ErrorKind::InvalidShape, "y out of range");
        r[i] = eKK * y - (tr ? mod(c[i] - d[i], eKK) : 0);
        sv[i] = eP - r[i];
    }
    return ModulePair{validate_unit(tau.ctx, tau.kind, r, c, P), validate_unit(tau.ctx, tau.kind, sv, d, P)};
}

RefinedShape shape_of_pair(const RankOneBK& M, const RankOneBK& N, const TameType& tau)
{
    check_compatible(M, N);
    if (M.ctx != tau.ctx || M.kind != tau.kind) throw Error(ErrorKind::NotTypeTau, "context differs from the type");
    const int fp = tau.fp;
    const int64_t eKK = tau.eKK, eP = M.ePrime();
    bool overL = (tau.kind == Kind::Cuspidal && M.period == fp && fp != tau.ctx.f);
    std::vector<int> mem;
    for (int i = 0; i < fp; ++i) {
        bool straight = (M.c[i] == tau.kVec[i] && N.c[i] == tau.kpVec[i]);
        bool swapped = (M.c[i] == tau.kpVec[i] && N.c[i] == tau.kVec[i]);
        if (!straight && !swapped) throw Error(ErrorKind::NotTypeTau, "descent characters do not match the type");
        if (M.r[i] + N.r[i] != eP) throw Error(ErrorKind::NotTypeTau, "r_i + s_i != e'");
        if (straight && !tau.isScalar) mem.push_back(i);
    }
    Shape s;
    try {
        s = make_shape(tau, mem, overL);
    } catch (const Error&) {
        throw Error(ErrorKind::NotTypeTau, "descent characters give no valid shape");
    }
    const int P = s.period();
    RefinedShape rs{s, std::vector<int64_t>(P)};
    for (int i = 0; i < P; ++i) {
        bool tr = is_transition(s, i);
        int64_t v = M.r[i] + (tr ? mod(M.c[i] - N.c[i], eKK) : 0);
        if (v % eKK != 0) throw Error(ErrorKind::NotTypeTau, "r is not of the refined-shape form");
        rs.y[i] = v / eKK;
        if (rs.y[i] < (tr ? 1 : 0) || rs.y[i] > tau.ctx.e) throw Error(ErrorKind::NotTypeTau, "y out of range");
    }
    return rs;
}

RankOneBK twist_unramified(const RankOneBK& M, const FieldElem& lambda)
{
    auto a = M.a;
    for (int i = 0; i < int(a.size()); i += M.period) a[i] = a[i] * lambda;
    return validate(M.ctx, M.kind, M.r, a, M.c, M.period);
}

std::vector<int> gamma_star(const Shape& s)
{
    check_shape(s);
    const TameType& tau = s.tau;
    const int fp = tau.fp, p = tau.ctx.p;
    std::vector<int> gs(fp, 0);
    if (tau.isScalar) return gs;
    auto gamma = gamma_digits(tau);
    std::vector<int64_t> c, d;
    shape_characters(s, c, d);
    const int64_t E = tau.eKK;
    for (int i = 0; i < fp; ++i) {
        gs[i] = s.contains(i - 1) ? p - 1 - gamma[i] : gamma[i];
        int im1 = int(mod(i - 1, fp));
        int64_t lhs = p * mod(d[im1] - c[im1], E);
        if (is_transition(s, i)) {
            if (lhs - mod(c[i] - d[i], E) != gs[i] * E)
                throw Error(ErrorKind::Internal, "gamma* identity fails at a transition");
        } else if (lhs + mod(c[i] - d[i], E) != (gs[i] + 1) * E) {
            throw Error(ErrorKind::Internal, "gamma* identity fails away from transitions");
        }
    }
    return gs;
}

int ext_dim(const RankOneBK& M, const RankOneBK& N)
{
    int total = hom_dim(M, N);
    const int64_t E = M.eKK();
    for (int i = 0; i < M.period; ++i) total += int(count_congruent(0, M.r[i], M.r[i] + M.c[i] - N.c[i], E));
    return total;
}

int ext_dim_height1(const RankOneBK& M, const RankOneBK& N)
{
    int total = hom_dim(M, N);
    const int64_t E = M.eKK(), eP = M.ePrime();
    for (int i = 0; i < M.period; ++i) {
        int64_t lo = std::max<int64_t>(0, M.r[i] + N.r[i] - eP);
        total += int(count_congruent(lo, M.r[i], M.r[i] + M.c[i] - N.c[i], E));
    }
    return total;
}

int64_t default_truncation(const LocalContext& ctx)
{
    return ceil_div(int64_t(ctx.p) * ctx.e + 1, ctx.p - 1) + 1;
}

ExtComplex ext_complex(const RankOneBK& M, const RankOneBK& N, int64_t truncN)
{
    check_compatible(M, N);
    const int P = M.period, p = M.ctx.p;
    const int64_t E = M.eKK(), top = E * truncN, eP = M.ePrime();
    ExtComplex out{LinearMap(M.field, 0, 0), {}, {}, {}};

    std::map<std::pair<int, int64_t>, size_t> rowIndex;
    for (int i = 0; i < P; ++i) {
        for (int64_t j = mod(M.c[i] - N.c[i], E); j + M.r[i] < top; j += E) out.domainBasis.push_back({i, j});
        int64_t floor1 = std::max<int64_t>(0, M.r[i] + N.r[i] - eP);
        for (int64_t j = mod(M.r[i] + M.c[i] - N.c[i], E); j < top; j += E) {
            rowIndex[{i, j}] = out.codomainBasis.size();
            out.codomainBasis.push_back({i, j});
            out.heightOneRows.push_back(j >= floor1);
        }
    }
    out.map = LinearMap(M.field, out.domainBasis.size(), out.codomainBasis.size());
    const FieldSpec& F = *M.field;
    for (size_t col = 0; col < out.domainBasis.size(); ++col) {
        auto [i, j] = out.domainBasis[col];
        // -a_i u^{r_i} mu_i at component i
        auto it = rowIndex.find({i, j + M.r[i]});
        if (it == rowIndex.end()) throw Error(ErrorKind::Internal, "d leaves the congruence class");
        out.map.add_to(it->second, col, F.neg(M.a[i].code()));
        // b_{i+1} phi(mu_i) u^{s_{i+1}} at component i+1
        int i1 = (i + 1) % P;
        int64_t deg = p * j + N.r[i1];
        if (deg < top) {
            auto it2 = rowIndex.find({i1, deg});
            if (it2 == rowIndex.end()) throw Error(ErrorKind::Internal, "d leaves the congruence class");
            out.map.add_to(it2->second, col, N.a[i1].code());
        }
    }
    return out;
}

namespace {

ExtOracle ext_oracle_at(const RankOneBK& M, const RankOneBK& N, int64_t truncN)
{
    auto cx = ext_complex(M, N, truncN);
    auto info = rank_kernel_cokernel(cx.map);
    size_t heightRows = 0;
    for (bool b : cx.heightOneRows) heightRows += b ? 1 : 0;
    for (size_t r = 0; r < cx.codomainBasis.size(); ++r) {
        if (cx.heightOneRows[r]) continue;
        for (size_t c = 0; c < cx.domainBasis.size(); ++c)
            if (cx.map.at(r, c) != 0) throw Error(ErrorKind::Internal, "image of d is not of height one");
    }
    ExtOracle o;
    o.ext = int(info.cokernelDim);
    o.hom = int(info.kernelDim);
    o.extHeight1 = int(heightRows - info.rank);
    o.truncN = truncN;
    return o;
}

}  // namespace

ExtOracle ext_oracle(const RankOneBK& M, const RankOneBK& N, int64_t truncN)
{
    if (truncN <= 0) truncN = default_truncation(M.ctx);
    auto a = ext_oracle_at(M, N, truncN);
    auto b = ext_oracle_at(M, N, truncN + 1);
    if (a.ext != b.ext || a.hom != b.hom || a.extHeight1 != b.extHeight1)
        throw Error(ErrorKind::TruncationUnstable,
                    "truncation " + std::to_string(truncN) + " and " + std::to_string(truncN + 1) + " disagree");
    return a;
}

int ext_dim_oracle(const RankOneBK& M, const RankOneBK& N) { return ext_oracle(M, N).ext; }

int hom_dim_oracle(const RankOneBK& M, const RankOneBK& N) { return ext_oracle(M, N).hom; }

int kext_dim(const Shape& s, const FieldElem& prodA, const FieldElem& prodB)
{
    check_shape(s);
    auto gs = gamma_star(s);
    const int P = s.period();
    int count = 0;
    for (int i = 0; i < P; ++i)
        if (is_transition(s, i) && gs[i] == 0) ++count;
    if (s.tau.ctx.e == 1 && prodA == prodB && count == P) return P - 1;
    return count;
}

namespace {

// nullity of a_i u^{r_i} mu_i = b_i phi(mu_{i-1}) u^{s_i} in F((u))/F[[u]],
// unknown terms of degree >= -floor
int principal_hom(const RankOneBK& M, const RankOneBK& N, int64_t floor)
{
    const int P = M.period, p = M.ctx.p;
    const int64_t E = M.eKK();
    std::vector<std::pair<int, int64_t>> cols;
    for (int i = 0; i < P; ++i) {
        int64_t j = -floor + mod(M.c[i] - N.c[i] + floor, E);
        for (; j < 0; j += E) cols.push_back({i, j});
    }
    std::map<std::pair<int, int64_t>, size_t> rows;
    struct Entry {
        size_t row, col;
        uint64_t v;
    };
    std::vector<Entry> entries;
    auto row_of = [&](int i, int64_t deg) {
        auto it = rows.find({i, deg});
        if (it != rows.end()) return it->second;
        size_t k = rows.size();
        rows[{i, deg}] = k;
        return k;
    };
    const FieldSpec& F = *M.field;
    for (size_t col = 0; col < cols.size(); ++col) {
        auto [i, j] = cols[col];
        if (j + M.r[i] < 0) entries.push_back({row_of(i, j + M.r[i]), col, M.a[i].code()});
        int i1 = (i + 1) % P;
        int64_t deg = p * j + N.r[i1];
        if (deg < 0) entries.push_back({row_of(i1, deg), col, F.neg(N.a[i1].code())});
    }
    LinearMap L(M.field, cols.size(), rows.size());
    for (const auto& en : entries) L.add_to(en.row, en.col, en.v);
    return int(rank_kernel_cokernel(L).kernelDim);
}

}  // namespace

KextOracle kext_oracle(const RankOneBK& M, const RankOneBK& N)
{
    check_compatible(M, N);
    const int64_t eP = M.ePrime();
    KextOracle o;
    o.principalHom = principal_hom(M, N, eP);
    int sharp = principal_hom(M, N, eP / (M.ctx.p - 1));
    if (sharp != o.principalHom) throw Error(ErrorKind::Internal, "principal parts below -floor(e'/(p-1))");
    o.galoisHom = same_generic_fibre(M, N) ? 1 : 0;
    o.hom = hom_dim(M, N);
    o.kext = o.principalHom - (o.galoisHom - o.hom);
    return o;
}

int kext_dim_oracle(const RankOneBK& M, const RankOneBK& N) { return kext_oracle(M, N).kext; }

ExtClass make_ext_class(const RankOneBK& M, const RankOneBK& N, std::vector<TruncSeries> h)
{
    check_compatible(M, N);
    if (int(h.size()) != M.period) throw Error(ErrorKind::PeriodError, "h must have one entry per period index");
    const int64_t E = M.eKK();
    for (int i = 0; i < M.period; ++i) {
        if (h[i].owner().get() != M.field.get()) throw Error(ErrorKind::ContextMismatch, "h over a different field");
        int64_t target = mod(M.r[i] + M.c[i] - N.c[i], E);
        const auto& cs = h[i].coeffs();
        for (size_t k = 0; k < cs.size(); ++k) {
            int64_t deg = h[i].low_degree() + int64_t(k);
            if (!cs[k].is_zero() && mod(deg, E) != target)
                throw Error(ErrorKind::CongruenceFailed, "h_i has a term outside the degree class r_i + c_i - d_i");
        }
    }
    return ExtClass{M, N, std::move(h)};
}

HeightDet check_height_and_det(const ExtClass& ec)
{
    HeightDet out;
    out.heightOk = true;
    out.detOk = true;
    const int64_t eP = ec.M.ePrime();
    for (int i = 0; i < ec.M.period; ++i) {
        int64_t rs = ec.M.r[i] + ec.N.r[i];
        out.detValuation.push_back(rs);
        if (!ec.h[i].divisible_by_u(std::max<int64_t>(0, rs - eP))) out.heightOk = false;
        if (rs != eP) out.detOk = false;
    }
    return out;
}

int64_t family_dim(const RefinedShape& rs)
{
    int64_t s = 0;
    for (auto y : rs.y) s += y;
    return s;
}

IrredBound irred_bound(const RankOneBK& M, const RankOneBK& N)
{
    check_compatible(M, N);
    if (M.kind != Kind::Cuspidal) throw Error(ErrorKind::KindMismatch, "irred_bound needs a cuspidal context");
    if (hom_dim(N, twist_conjugate(M)) != 1) throw Error(ErrorKind::NoNonzeroMap, "no nonzero map N -> M^(f)");
    const int fp = M.fp(), f = M.ctx.f, p = M.ctx.p, e = M.ctx.e;
    const int64_t E = M.eKK();
    auto aM = alpha(M), aN = alpha(N);
    IrredBound out;
    out.x.resize(fp);
    out.periodicOk = true;
    out.congruenceOk = true;
    for (int i = 0; i < fp; ++i) out.x[i] = aN[i] - aM[(i + f) % fp];
    for (int i = 0; i < fp; ++i) {
        if (out.x[i] != out.x[(i + f) % fp]) out.periodicOk = false;
        if (mod(out.x[i] - (N.c[i] - M.c[(i + f) % fp]), E) != 0) out.congruenceOk = false;
    }
    out.D = 1;
    for (int i = 0; i < f; ++i) out.D += ceil_div(out.x[i], E);
    out.cap = 1 + ceil_div(e, p - 1) * f;
    out.withinCap = out.D <= out.cap;
    return out;
}

}  // namespace bkmod
