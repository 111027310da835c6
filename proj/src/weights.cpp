#include "bkmod/weights.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "bkmod/util.hpp"

namespace bkmod {

namespace {

int64_t checked_mul(int64_t a, int64_t b)
{
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer elimination overflow");
    return r;
}

int64_t checked_add(int64_t a, int64_t b)
{
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer elimination overflow");
    return r;
}

// g = x a + y b, g >= 0
int64_t ext_gcd(int64_t a, int64_t b, int64_t& x, int64_t& y)
{
    int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        int64_t q = a / b;
        int64_t t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

}  // namespace

bool SerreWeight::is_steinberg(int p) const
{
    return std::all_of(s.begin(), s.end(), [p](int x) { return x == p - 1; });
}

int64_t SerreWeight::dim() const
{
    int64_t d = 1;
    for (int x : s) d *= (x + 1);
    return d;
}

std::string SerreWeight::label() const
{
    auto vec = [](const std::vector<int>& v) {
        std::string out = "(";
        for (size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
        return out + ")";
    };
    return "t=" + vec(t) + " s=" + vec(s);
}

int64_t det_exponent(int p, int f, const std::vector<int64_t>& t)
{
    const int64_t qm1 = ipow(p, f) - 1;
    int64_t E = 0;
    for (int j = 0; j < f; ++j) E = mod(E + mod(t[j], qm1) * ipow(p, int(mod(f - j, f))), qm1);
    return E;
}

std::vector<int> det_digits(int p, int f, int64_t E)
{
    E = mod(E, ipow(p, f) - 1);
    std::vector<int> d(f);
    for (int k = 0; k < f; ++k) {
        d[k] = int(E % p);
        E /= p;
    }
    std::vector<int> t(f);
    for (int j = 0; j < f; ++j) t[j] = d[mod(f - j, f)];
    return t;
}

SerreWeight canonical_weight(int p, int f, const std::vector<int64_t>& tRaw, const std::vector<int>& s)
{
    if (int(tRaw.size()) != f || int(s.size()) != f) throw Error(ErrorKind::RangeError, "weight vectors must have length f");
    for (int x : s)
        if (x < 0 || x > p - 1) throw Error(ErrorKind::RangeError, "s_j must lie in [0,p-1]");
    return SerreWeight{det_digits(p, f, det_exponent(p, f, tRaw)), s};
}

WeightFormulaData weight_formula_data(const Shape& J)
{
    const TameType& tau = J.tau;
    const int p = tau.ctx.p, f = tau.ctx.f, fp = tau.fp;
    auto gamma = gamma_digits(tau);
    WeightFormulaData w;
    w.sJ.resize(fp);
    w.tJ.resize(fp);
    for (int i = 0; i < fp; ++i) {
        int inJ = J.contains(i) ? 1 : 0;
        if (J.contains(i - 1)) {
            w.sJ[i] = p - 1 - gamma[i] - (1 - inJ);
            w.tJ[i] = gamma[i] + (1 - inJ);
        } else {
            w.sJ[i] = gamma[i] - inJ;
            w.tJ[i] = 0;
        }
    }
    if (tau.kind == Kind::PrincipalSeries) {
        std::vector<int64_t> t(w.tJ.begin(), w.tJ.end());
        w.detExp = mod(det_exponent(p, f, t) + tau.k0p, tau.ctx.q() - 1);
    } else {
        const int64_t q = tau.ctx.q(), E = tau.eKK;
        int64_t n = tau.k0p;
        for (int i = 0; i < fp; ++i) n = mod(n + w.tJ[i] * ipow(p, int(mod(fp - i, fp))), E);
        w.normExp = n;
        w.normDivisible = (n % (q + 1) == 0);
        w.thetaExp = mod(n / (q + 1), q - 1);
        for (int i = 0; i < f; ++i)
            if (w.sJ[i] != w.sJ[i + f]) w.sPeriodic = false;
    }
    return w;
}

SerreWeight sigma_tau_J(const Shape& J)
{
    if (J.overL || !in_p_tau(J)) throw Error(ErrorKind::NotInPTau, "shape " + J.label() + " is not in P_tau");
    const TameType& tau = J.tau;
    const int p = tau.ctx.p, f = tau.ctx.f;
    auto w = weight_formula_data(J);
    std::vector<int> s(w.sJ.begin(), w.sJ.begin() + f);
    for (int x : s)
        if (x < 0 || x > p - 1) throw Error(ErrorKind::Internal, "s_J out of range");
    if (tau.kind == Kind::PrincipalSeries) return SerreWeight{det_digits(p, f, w.detExp), s};
    if (!w.sPeriodic) throw Error(ErrorKind::Internal, "s_J is not f-periodic");
    if (!w.normDivisible) throw Error(ErrorKind::Internal, "twist does not factor through the norm");
    return SerreWeight{det_digits(p, f, w.thetaExp), s};
}

std::vector<SerreWeight> jh_factors(const TameType& tau)
{
    std::vector<SerreWeight> out;
    for (const auto& J : p_tau(tau)) out.push_back(sigma_tau_J(J));
    auto sorted = out;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(ErrorKind::Internal, "repeated Jordan-Holder factor for " + tau.label());
    return out;
}

CharTN char_TN(const Shape& J)
{
    if (J.overL) throw Error(ErrorKind::InvalidShape, "char_TN is defined for shapes over K");
    const TameType& tau = J.tau;
    const int p = tau.ctx.p, fp = tau.fp;
    const int64_t E = tau.eKK;
    auto gamma = gamma_digits(tau);
    CharTN out;
    out.t.resize(fp);
    int64_t x = tau.kVec[0];
    for (int i = 0; i < fp; ++i) {
        out.t[i] = J.contains(i - 1) ? gamma[i] + (J.contains(i) ? 0 : 1) : 0;
        x -= out.t[i] * ipow(p, int(mod(fp - i, fp)));
    }
    out.exponent = mod(x, E);
    auto pair = build_MN(maximal_refined(J));
    out.alphaRoute = galois_char(pair.N).tameExp;
    out.agrees = (out.alphaRoute == out.exponent);
    if (tau.kind == Kind::Cuspidal) out.niveauOne = mod(tau.ctx.q() * out.exponent - out.exponent, E) == 0;
    return out;
}

const char* case_name(DieudonneCase c)
{
    switch (c) {
    case DieudonneCase::BothIn: return "bothIn";
    case DieudonneCase::BothOut: return "bothOut";
    case DieudonneCase::OutOfJ: return "outOfJ";
    case DieudonneCase::IntoJ: return "intoJ";
    }
    return "?";
}

const char* value_name(DieudonneValue v)
{
    switch (v) {
    case DieudonneValue::Zero: return "zero";
    case DieudonneValue::Unit: return "unit";
    case DieudonneValue::Generic: return "genericCoefficient";
    }
    return "?";
}

std::vector<DieudonneEntry> dieudonne_pattern(const Shape& J)
{
    if (J.tau.isScalar) throw Error(ErrorKind::ScalarType, "no Dieudonne pattern for scalar types");
    std::vector<DieudonneEntry> out;
    for (int j = 0; j < J.tau.fp; ++j) {
        bool a = J.contains(j), b = J.contains(j + 1);
        DieudonneEntry en;
        en.j = j;
        if (a && b) {
            en.tag = DieudonneCase::BothIn;
            en.F = DieudonneValue::Zero;
            en.V = DieudonneValue::Unit;
        } else if (!a && !b) {
            en.tag = DieudonneCase::BothOut;
            en.F = DieudonneValue::Unit;
            en.V = DieudonneValue::Zero;
        } else if (a) {
            en.tag = DieudonneCase::OutOfJ;
            en.F = DieudonneValue::Generic;
            en.V = DieudonneValue::Zero;
        } else {
            en.tag = DieudonneCase::IntoJ;
            en.F = DieudonneValue::Zero;
            en.V = DieudonneValue::Generic;
        }
        out.push_back(en);
    }
    return out;
}

std::vector<int> divisor_support(const Shape& J)
{
    if (J.tau.isScalar) throw Error(ErrorKind::ScalarType, "no divisor support for scalar types");
    std::vector<int> out;
    for (int j = 0; j < J.tau.ctx.f; ++j)
        if (J.contains(j + 1)) out.push_back(j);
    return out;
}

int components_count(const TameType& tau) { return tau.isScalar ? 1 : 1 << tau.ctx.f; }

bool is_effective(const Cycle& c)
{
    return std::all_of(c.begin(), c.end(), [](const auto& kv) { return kv.second >= 0; });
}

bool is_reduced_effective(const Cycle& c)
{
    return std::all_of(c.begin(), c.end(), [](const auto& kv) { return kv.second == 0 || kv.second == 1; });
}

Cycle unit_cycle(const SerreWeight& w) { return Cycle{{w, 1}}; }

Cycle z_tau_cycle(const TameType& tau)
{
    Cycle c;
    for (const auto& w : jh_factors(tau)) c[w] += 1;
    return c;
}

std::vector<SerreWeight> non_steinberg_weights(const LocalContext& ctx)
{
    const int p = ctx.p, f = ctx.f;
    const int64_t qm1 = ctx.q() - 1;
    std::vector<SerreWeight> out;
    int64_t sCount = ipow(p, f);
    for (int64_t E = 0; E < qm1; ++E) {
        auto t = det_digits(p, f, E);
        for (int64_t code = 0; code < sCount; ++code) {
            std::vector<int> s(f);
            int64_t x = code;
            for (int j = 0; j < f; ++j) {
                s[j] = int(x % p);
                x /= p;
            }
            SerreWeight w{t, s};
            if (!w.is_steinberg(p)) out.push_back(w);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BMSystem::BMSystem(const LocalContext& ctx) : BMSystem(ctx, enumerate_types(ctx, true)) {}

BMSystem::BMSystem(const LocalContext& ctx, std::vector<TameType> typeOrder) : ctx_(ctx), types_(std::move(typeOrder))
{
    build();
}

int BMSystem::multiplicity(size_t w, size_t tau) const
{
    const auto& v = jh_[tau];
    return std::find(v.begin(), v.end(), w) != v.end() ? 1 : 0;
}

int64_t BMSystem::weight_index(const SerreWeight& w) const
{
    auto it = index_.find(w);
    return it == index_.end() ? -1 : int64_t(it->second);
}

void BMSystem::build()
{
    weights_ = non_steinberg_weights(ctx_);
    for (size_t k = 0; k < weights_.size(); ++k) index_[weights_[k]] = k;
    const size_t R = weights_.size(), C = types_.size();
    jh_.resize(C);
    for (size_t t = 0; t < C; ++t) {
        for (const auto& w : jh_factors(types_[t])) {
            auto it = index_.find(w);
            if (it == index_.end())
                throw Error(ErrorKind::Internal, "Steinberg weight in the reduction of " + types_[t].label());
            jh_[t].push_back(it->second);
        }
    }

    // connected components of the weight-type incidence graph
    std::vector<size_t> parent(R);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t t = 0; t < C; ++t)
        for (size_t k = 1; k < jh_[t].size(); ++k) parent[find(jh_[t][k])] = find(jh_[t][0]);

    std::map<size_t, size_t> blockOfRoot;
    blockOfRow_.assign(R, 0);
    for (size_t r = 0; r < R; ++r) {
        size_t root = find(r);
        auto it = blockOfRoot.find(root);
        if (it == blockOfRoot.end()) {
            it = blockOfRoot.emplace(root, blocks_.size()).first;
            blocks_.emplace_back();
        }
        blockOfRow_[r] = it->second;
        blocks_[it->second].rows.push_back(r);
    }
    for (size_t t = 0; t < C; ++t)
        if (!jh_[t].empty()) blocks_[blockOfRow_[jh_[t][0]]].cols.push_back(t);

    for (auto& B : blocks_) {
        const size_t nr = B.rows.size(), nc = B.cols.size();
        Matrix A(nr, std::vector<int64_t>(nc, 0));
        for (size_t c = 0; c < nc; ++c)
            for (size_t w : jh_[B.cols[c]]) A[size_t(std::find(B.rows.begin(), B.rows.end(), w) - B.rows.begin())][c] = 1;

        // row echelon form, pivots taken column by column in type order
        B.R = A;
        B.V.assign(nr, std::vector<int64_t>(nr, 0));
        for (size_t r = 0; r < nr; ++r) B.V[r][r] = 1;
        auto rowop = [&](size_t a, size_t b, int64_t x, int64_t y, int64_t u, int64_t v) {
            // (row a, row b) <- (x a + y b, u a + v b)
            for (auto* M : {&B.R, &B.V}) {
                auto& ra = (*M)[a];
                auto& rb = (*M)[b];
                for (size_t c = 0; c < ra.size(); ++c) {
                    int64_t ca = ra[c], cb = rb[c];
                    ra[c] = checked_add(checked_mul(x, ca), checked_mul(y, cb));
                    rb[c] = checked_add(checked_mul(u, ca), checked_mul(v, cb));
                }
            }
        };
        size_t top = 0;
        for (size_t col = 0; col < nc && top < nr; ++col) {
            for (size_t k = top + 1; k < nr; ++k) {
                if (B.R[k][col] == 0) continue;
                int64_t a = B.R[top][col], b = B.R[k][col], x, y;
                int64_t g = ext_gcd(a, b, x, y);
                rowop(top, k, x, y, -b / g, a / g);
            }
            if (B.R[top][col] == 0) continue;
            if (B.R[top][col] < 0) rowop(top, top, -1, 0, -1, 0);
            B.rowPivots.push_back({top, col});
            ++top;
        }

        // column echelon form, used when the basic solution is not integral
        B.H = A;
        B.U.assign(nc, std::vector<int64_t>(nc, 0));
        for (size_t c = 0; c < nc; ++c) B.U[c][c] = 1;
        auto colop = [&](size_t a, size_t b, int64_t x, int64_t y, int64_t u, int64_t v) {
            for (auto* M : {&B.H, &B.U})
                for (auto& row : *M) {
                    int64_t ca = row[a], cb = row[b];
                    row[a] = checked_add(checked_mul(x, ca), checked_mul(y, cb));
                    row[b] = checked_add(checked_mul(u, ca), checked_mul(v, cb));
                }
        };
        size_t col = 0;
        for (size_t r = 0; r < nr && col < nc; ++r) {
            for (size_t k = col + 1; k < nc; ++k) {
                if (B.H[r][k] == 0) continue;
                int64_t a = B.H[r][col], b = B.H[r][k], x, y;
                int64_t g = ext_gcd(a, b, x, y);
                colop(col, k, x, y, -b / g, a / g);
            }
            if (B.H[r][col] == 0) continue;
            if (B.H[r][col] < 0) colop(col, col, -1, 0, -1, 0);
            B.colPivots.push_back({r, col});
            ++col;
        }
    }
}

// free variables zero, back substitution on the row echelon form
bool BMSystem::solve_basic(const Block& B, size_t localRow, std::vector<int64_t>& z) const
{
    const size_t nr = B.rows.size(), nc = B.cols.size();
    std::vector<int64_t> rhs(nr);
    for (size_t r = 0; r < nr; ++r) rhs[r] = B.V[r][localRow];
    for (size_t r = B.rowPivots.size(); r < nr; ++r)
        if (rhs[r] != 0) return false;
    z.assign(nc, 0);
    for (size_t k = B.rowPivots.size(); k-- > 0;) {
        auto [r, pc] = B.rowPivots[k];
        int64_t acc = rhs[r];
        for (size_t c = pc + 1; c < nc; ++c) acc = checked_add(acc, -checked_mul(B.R[r][c], z[c]));
        if (acc % B.R[r][pc] != 0) return false;
        z[pc] = acc / B.R[r][pc];
    }
    return true;
}

void BMSystem::solve_general(const Block& B, size_t localRow, std::vector<int64_t>& n, const SerreWeight& w) const
{
    const size_t nr = B.rows.size(), nc = B.cols.size();
    std::vector<int64_t> z(nc, 0);
    size_t nextPivot = 0, known = 0;
    for (size_t r = 0; r < nr; ++r) {
        int64_t target = r == localRow ? 1 : 0;
        int64_t acc = 0;
        for (size_t c = 0; c < known; ++c) acc = checked_add(acc, checked_mul(B.H[r][c], z[c]));
        if (nextPivot < B.colPivots.size() && B.colPivots[nextPivot].first == r) {
            size_t pc = B.colPivots[nextPivot].second;
            int64_t rem = target - acc;
            if (rem % B.H[r][pc] != 0) throw Error(ErrorKind::NoSolution, "no integral solution for " + w.label());
            z[pc] = rem / B.H[r][pc];
            known = pc + 1;
            ++nextPivot;
        } else if (acc != target) {
            throw Error(ErrorKind::NoSolution, "inconsistent system for " + w.label());
        }
    }
    n.assign(nc, 0);
    for (size_t c = 0; c < nc; ++c)
        for (size_t k = 0; k < nc; ++k) n[c] = checked_add(n[c], checked_mul(B.U[c][k], z[k]));
}

std::vector<int64_t> BMSystem::solve(const SerreWeight& w) const
{
    if (w.is_steinberg(ctx_.p)) throw Error(ErrorKind::SteinbergWeight, "Steinberg weights are excluded");
    auto it = index_.find(w);
    if (it == index_.end()) throw Error(ErrorKind::RangeError, "not a weight for this context: " + w.label());
    const Block& B = blocks_[blockOfRow_[it->second]];
    size_t localRow = size_t(std::find(B.rows.begin(), B.rows.end(), it->second) - B.rows.begin());
    std::vector<int64_t> local;
    if (!solve_basic(B, localRow, local)) solve_general(B, localRow, local, w);
    std::vector<int64_t> n(types_.size(), 0);
    for (size_t c = 0; c < B.cols.size(); ++c) n[B.cols[c]] = local[c];
    return n;
}

namespace {

const BMSystem& cached_system(const LocalContext& ctx)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<BMSystem>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{ctx.p, ctx.f}];
    if (!slot) slot = std::make_unique<BMSystem>(LocalContext{ctx.p, ctx.f, 1});
    return *slot;
}

}  // namespace

std::map<TameType, int64_t> solve_n_tau(const LocalContext& ctx, const SerreWeight& w)
{
    const BMSystem& sys = cached_system(ctx);
    auto n = sys.solve(w);
    std::map<TameType, int64_t> out;
    for (size_t k = 0; k < n.size(); ++k)
        if (n[k] != 0) out[sys.types()[k]] = n[k];
    return out;
}

Cycle c_sigma_cycle(const BMSystem& sys, const SerreWeight& w)
{
    auto n = sys.solve(w);
    Cycle c;
    for (size_t k = 0; k < n.size(); ++k) {
        if (n[k] == 0) continue;
        for (const auto& [wt, m] : z_tau_cycle(sys.types()[k])) c[wt] = checked_add(c[wt], checked_mul(n[k], m));
    }
    for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
    return c;
}

Cycle c_sigma_cycle(const LocalContext& ctx, const SerreWeight& w) { return c_sigma_cycle(cached_system(ctx), w); }

bool verify_orthogonality(const BMSystem& sys)
{
    const size_t R = sys.weights().size(), C = sys.types().size();
    for (size_t w = 0; w < R; ++w) {
        auto n = sys.solve(sys.weights()[w]);
        for (size_t w2 = 0; w2 < R; ++w2) {
            int64_t s = 0;
            for (size_t t = 0; t < C; ++t)
                if (n[t] != 0) s += n[t] * sys.multiplicity(w2, t);
            if (s != (w == w2 ? 1 : 0)) return false;
        }
    }
    return true;
}

bool verify_orthogonality(const LocalContext& ctx) { return verify_orthogonality(cached_system(ctx)); }

}  // namespace bkmod
