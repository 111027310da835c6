#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "bkmod/gf.hpp"
#include "bkmod/rank_one.hpp"
#include "bkmod/shapes.hpp"
#include "bkmod/util.hpp"
#include "bkmod/weights.hpp"

namespace bktool {

using namespace bkmod;

namespace {

using Clock = std::chrono::steady_clock;

constexpr size_t kExhaustiveModuleCap = 2000;

Report start(const char* command, const LocalContext& ctx)
{
    Report r;
    r.command = command;
    r.ctx = ctx;
    return r;
}

void finish(Report& r, const RunConfig& cfg, Clock::time_point t0)
{
    if (cfg.timing)
        r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::vector<TameType> selected_types(const RunConfig& cfg, const LocalContext& ctx)
{
    if (!cfg.typeSelector.empty()) return {parse_type(ctx, cfg.typeSelector)};
    return enumerate_types(ctx, !cfg.ordered);
}

Json weight_json(const SerreWeight& w) { return Json{{"t", w.t}, {"s", w.s}}; }

Json cycle_json(const Cycle& c)
{
    Json out = Json::array();
    for (const auto& [w, m] : c) out.push_back(Json{{"weight", weight_json(w)}, {"mult", m}});
    return out;
}

Json module_json(const RankOneBK& M)
{
    Json a = Json::array();
    for (const auto& x : M.a) a.push_back(x.code());
    return Json{{"r", M.r}, {"a", a}, {"c", M.c}};
}

Kind kind_from_name(const std::string& s)
{
    if (s == kind_name(Kind::PrincipalSeries)) return Kind::PrincipalSeries;
    if (s == kind_name(Kind::Cuspidal)) return Kind::Cuspidal;
    throw Error(ErrorKind::RangeError, "unknown kind '" + s + "'");
}

RankOneBK module_from_json(const LocalContext& ctx, Kind kind, int period, const Field& F, const Json& j)
{
    std::vector<FieldElem> a;
    for (const auto& x : j.at("a")) {
        uint64_t code = x.get<uint64_t>();
        if (code >= F->size()) throw Error(ErrorKind::RangeError, "field element code out of range");
        a.push_back(FieldElem(F, code));
    }
    return validate(ctx, kind, j.at("r").get<std::vector<int64_t>>(), a, j.at("c").get<std::vector<int64_t>>(), period);
}

// ---- oracle sweeps ----

Json ext_item(const RankOneBK& M, const RankOneBK& N, int64_t trunc)
{
    Json it;
    it["op"] = "ext";
    it["kind"] = kind_name(M.kind);
    it["period"] = M.period;
    it["fieldDegree"] = M.field->m();
    it["trunc"] = trunc;
    it["M"] = module_json(M);
    it["N"] = module_json(N);
    try {
        Json formula{{"ext", ext_dim(M, N)}, {"hom", hom_dim(M, N)}, {"extHeight1", ext_dim_height1(M, N)}};
        auto o = ext_oracle(M, N, trunc);
        Json oracle{{"ext", o.ext}, {"hom", o.hom}, {"extHeight1", o.extHeight1}};
        it["formula"] = formula;
        it["oracle"] = oracle;
        it["pass"] = (formula == oracle);
    } catch (const Error& e) {
        it["error"] = e.what();
        it["pass"] = false;
    }
    return it;
}

Json kext_item(const Shape& J, const RankOneBK& M, const RankOneBK& N)
{
    Json it;
    it["op"] = "kext";
    it["type"] = J.tau.label();
    it["J"] = J.members();
    it["fieldDegree"] = M.field->m();
    it["M"] = module_json(M);
    it["N"] = module_json(N);
    it["inPTau"] = in_p_tau(J);
    try {
        int formula = kext_dim(J, M.unram(), N.unram());
        int oracle = kext_dim_oracle(M, N);
        it["formula"] = formula;
        it["oracle"] = oracle;
        it["pass"] = (formula == oracle);
    } catch (const Error& e) {
        it["error"] = e.what();
        it["pass"] = false;
    }
    return it;
}

// every module with descent data to K, a = (lambda, 1, ..., 1)
std::vector<RankOneBK> all_modules(const LocalContext& ctx, Kind kind, const Field& F)
{
    const int f = ctx.f, fp = ctx.fprime(kind);
    const int64_t E = ctx.eKK(kind), eP = ctx.ePrime(kind);
    std::vector<RankOneBK> out;
    std::vector<int64_t> c(f, 0);
    while (true) {
        std::vector<int64_t> rho(f), count(f), pick(f, 0);
        for (int i = 0; i < f; ++i) {
            rho[i] = mod(int64_t(ctx.p) * c[mod(i - 1, f)] - c[i], E);
            count[i] = (eP - rho[i]) / E + 1;
        }
        while (true) {
            std::vector<int64_t> r(f);
            for (int i = 0; i < f; ++i) r[i] = rho[i] + E * pick[i];
            for (uint64_t lam = 1; lam < F->size(); ++lam) {
                std::vector<FieldElem> a(f, FieldElem::one(F));
                a[0] = FieldElem(F, lam);
                out.push_back(validate(ctx, kind, extend_periodic(r, fp), extend_periodic(a, fp), extend_periodic(c, fp)));
                if (out.size() > kExhaustiveModuleCap)
                    throw Error(ErrorKind::ContextCap, "exhaustive sweep too large for this context; use --samples");
            }
            int k = 0;
            while (k < f && ++pick[k] == count[k]) pick[k++] = 0;
            if (k == f) break;
        }
        int k = 0;
        while (k < f && ++c[k] == E) c[k++] = 0;
        if (k == f) break;
    }
    return out;
}

RankOneBK random_module(SplitMix64& rng, const LocalContext& ctx, Kind kind, int period, const Field& F)
{
    const int fp = ctx.fprime(kind);
    const int64_t E = ctx.eKK(kind), eP = ctx.ePrime(kind);
    std::vector<int64_t> c(period), r(period);
    std::vector<FieldElem> a(period);
    for (int i = 0; i < period; ++i) c[i] = int64_t(rng.below(uint64_t(E)));
    for (int i = 0; i < period; ++i) {
        int64_t rho = mod(int64_t(ctx.p) * c[mod(i - 1, period)] - c[i], E);
        r[i] = rho + E * int64_t(rng.below(uint64_t((eP - rho) / E + 1)));
        a[i] = FieldElem(F, 1 + rng.below(F->size() - 1));
    }
    return validate(ctx, kind, extend_periodic(r, fp), extend_periodic(a, fp), extend_periodic(c, fp), period);
}

// N with the same r as a random module but d and b adjusted to match T(M), when possible
RankOneBK matching_module(SplitMix64& rng, const RankOneBK& M)
{
    const int P = M.period, fp = M.fp(), p = M.ctx.p;
    const int64_t E = M.eKK();
    RankOneBK N0 = random_module(rng, M.ctx, M.kind, P, M.field);
    auto target = galois_char(M);
    std::vector<int64_t> d(P);
    d[0] = mod(target.tameExp + alpha(N0)[0], E);
    for (int i = 1; i < P; ++i) d[i] = mod(p * d[i - 1] - N0.r[i], E);
    if (mod(p * d[P - 1] - d[0] - N0.r[0], E) != 0) return N0;
    std::vector<FieldElem> b(N0.a.begin(), N0.a.begin() + P);
    FieldElem rest = FieldElem::one(M.field);
    for (int i = 1; i < P; ++i) rest = rest * b[i];
    b[0] = target.unram * rest.inverse();
    std::vector<int64_t> s(N0.r.begin(), N0.r.begin() + P);
    return validate(M.ctx, M.kind, extend_periodic(s, fp), extend_periodic(b, fp), extend_periodic(d, fp), P);
}

std::pair<RankOneBK, RankOneBK> random_pair(SplitMix64& rng, const LocalContext& ctx)
{
    Kind kind = rng.below(2) ? Kind::Cuspidal : Kind::PrincipalSeries;
    const int fp = ctx.fprime(kind);
    int period = (kind == Kind::Cuspidal && rng.below(2)) ? fp : ctx.f;
    int m = fp;
    if (rng.below(4) == 0 && ipow(ctx.p, 2 * fp) <= (int64_t(1) << 16)) m = 2 * fp;
    Field F = build_field(ctx.p, m);
    RankOneBK M = random_module(rng, ctx, kind, period, F);
    RankOneBK N = rng.below(2) ? matching_module(rng, M) : random_module(rng, ctx, kind, period, F);
    return {M, N};
}

int64_t effective_trunc(const RunConfig& cfg, const LocalContext& ctx)
{
    return cfg.trunc > 0 ? cfg.trunc : default_truncation(ctx);
}

void add_item(Report& r, Json item)
{
    bool ok = item.at("pass").get<bool>();
    r.add(std::move(item), ok);
}

// ---- rendering ----

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

void Report::add(Json item, bool ok)
{
    item["pass"] = ok;
    items.push_back(std::move(item));
    (ok ? pass : fail) += 1;
}

Json Report::to_json() const
{
    Json j;
    j["command"] = command;
    j["context"] = Json{{"p", ctx.p}, {"f", ctx.f}, {"e", ctx.e}};
    j["items"] = items;
    j["summary"] = Json{{"pass", pass}, {"fail", fail}, {"millis", millis}};
    return j;
}

LocalContext make_context(const RunConfig& cfg) { return LocalContext::make(cfg.p, cfg.f, cfg.e); }

TameType parse_type(const LocalContext& ctx, const std::string& selector)
{
    auto colon = selector.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::RangeError, "type selector must look like ps:k0,k0p, cusp:k0 or scalar:k0");
    std::string kind = selector.substr(0, colon), rest = selector.substr(colon + 1);
    auto number = [&](const std::string& s) {
        size_t used = 0;
        int64_t v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw Error(ErrorKind::RangeError, "bad number '" + s + "' in type selector");
        return v;
    };
    if (kind == "ps") {
        auto comma = rest.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::RangeError, "ps selector needs k0,k0p");
        return make_type(ctx, Kind::PrincipalSeries, number(rest.substr(0, comma)), number(rest.substr(comma + 1)));
    }
    if (kind == "cusp") return make_type(ctx, Kind::Cuspidal, number(rest));
    if (kind == "scalar") {
        int64_t k = number(rest);
        return make_type(ctx, Kind::PrincipalSeries, k, k);
    }
    throw Error(ErrorKind::RangeError, "unknown type kind '" + kind + "'");
}

Report cmd_types(const RunConfig& cfg)
{
    auto t0 = Clock::now();
    auto ctx = make_context(cfg);
    Report rep = start("types", ctx);
    for (const auto& tau : selected_types(cfg, ctx)) {
        auto g = gamma_digits(tau);
        bool ok = true;
        if (tau.kind == Kind::Cuspidal)
            for (int i = 0; i < ctx.f; ++i) ok = ok && (g[i] + g[i + ctx.f] == ctx.p - 1);
        Json it{{"op", "type"},        {"type", tau.label()},  {"kind", kind_name(tau.kind)},
                {"k0", tau.k0},        {"k0p", tau.k0p},       {"scalar", tau.isScalar},
                {"kVec", tau.kVec},    {"kpVec", tau.kpVec},   {"gamma", g}};
        rep.add(std::move(it), ok);
    }
    finish(rep, cfg, t0);
    return rep;
}

Report cmd_ptau(const RunConfig& cfg)
{
    auto t0 = Clock::now();
    auto ctx = make_context(cfg);
    Report rep = start("ptau", ctx);
    const int64_t ef = int64_t(ctx.e) * ctx.f;
    for (const auto& tau : selected_types(cfg, ctx)) {
        Json members = Json::array();
        for (const auto& J : p_tau(tau)) members.push_back(J.members());
        rep.add(Json{{"op", "p_tau"}, {"type", tau.label()}, {"shapes", members}}, true);
        for (const auto& J : all_shapes(tau)) {
            bool ok = true;
            Json refined = Json::array();
            int64_t maxDim = 0;
            for (const auto& rs : refined_shapes(J)) {
                int64_t d = family_dim(rs);
                ok = ok && (rs.is_maximal() ? d == ef : d < ef);
                if (rs.is_maximal()) maxDim = d;
                auto [M, N] = build_MN(rs);
                auto back = shape_of_pair(M, N, tau);
                ok = ok && back.shape == rs.shape && back.y == rs.y;
                refined.push_back(Json{{"y", rs.y}, {"familyDim", d}});
            }
            Json it{{"op", "shape"},
                    {"type", tau.label()},
                    {"J", J.members()},
                    {"inPTau", in_p_tau(J)},
                    {"transitions", transitions(J)},
                    {"refined", refined},
                    {"maximalFamilyDim", maxDim}};
            rep.add(std::move(it), ok);
        }
    }
    finish(rep, cfg, t0);
    return rep;
}

Report cmd_weights(const RunConfig& cfg)
{
    auto t0 = Clock::now();
    auto ctx = make_context(cfg);
    Report rep = start("weights", ctx);
    const int64_t q = ctx.q();
    for (const auto& tau : selected_types(cfg, ctx)) {
        Json factors = Json::array();
        int64_t dimSum = 0;
        bool wellDefined = true;
        std::set<SerreWeight> seen;
        for (const auto& J : p_tau(tau)) {
            auto w = sigma_tau_J(J);
            auto data = weight_formula_data(J);
            wellDefined = wellDefined && data.sPeriodic && data.normDivisible;
            seen.insert(w);
            dimSum += w.dim();
            factors.push_back(Json{{"J", J.members()}, {"weight", weight_json(w)}, {"dim", w.dim()}});
        }
        int64_t expected = tau.isScalar ? 1 : (tau.kind == Kind::Cuspidal ? q - 1 : q + 1);
        bool distinct = seen.size() == factors.size();
        Json it{{"op", "jh"},          {"type", tau.label()},   {"factors", factors}, {"dimSum", dimSum},
                {"expected", expected}, {"distinct", distinct}, {"wellDefined", wellDefined}};
        rep.add(std::move(it), dimSum == expected && distinct && wellDefined);

        std::set<int64_t> exps;
        size_t inP = 0;
        for (const auto& J : all_shapes(tau)) {
            auto ch = char_TN(J);
            bool member = in_p_tau(J);
            if (member) {
                exps.insert(ch.exponent);
                ++inP;
            }
            Json c{{"op", "char_TN"},         {"type", tau.label()},         {"J", J.members()},
                   {"inPTau", member},         {"t", ch.t},                   {"exponent", ch.exponent},
                   {"alphaRoute", ch.alphaRoute}, {"niveauOne", ch.niveauOne}};
            rep.add(std::move(c), ch.agrees && ch.niveauOne);
        }
        rep.add(Json{{"op", "char_TN_injective"}, {"type", tau.label()}, {"shapes", inP}, {"distinct", exps.size()}},
                exps.size() == inP);
    }
    finish(rep, cfg, t0);
    return rep;
}

Report cmd_oracle(const RunConfig& cfg)
{
    auto t0 = Clock::now();
    auto ctx = make_context(cfg);
    Report rep = start("oracle", ctx);
    const int64_t trunc = effective_trunc(cfg, ctx);
    if (cfg.exhaustive) {
        std::vector<std::pair<Kind, int>> fields{{Kind::PrincipalSeries, ctx.f},
                                                 {Kind::PrincipalSeries, 2 * ctx.f},
                                                 {Kind::Cuspidal, 2 * ctx.f}};
        for (auto [kind, m] : fields) {
            auto mods = all_modules(ctx, kind, build_field(ctx.p, m));
            for (const auto& M : mods)
                for (const auto& N : mods) add_item(rep, ext_item(M, N, trunc));
        }
        for (const auto& tau : selected_types(cfg, ctx))
            for (const auto& J : all_shapes(tau)) {
                auto [M, N] = build_MN(maximal_refined(J));
                add_item(rep, kext_item(J, M, N));
                FieldElem g(M.field, M.field->generator());
                if (g != FieldElem::one(M.field)) add_item(rep, kext_item(J, M, twist_unramified(N, g)));
            }
    }
    int64_t samples = cfg.samples >= 0 ? cfg.samples : (cfg.exhaustive ? 0 : 200);
    SplitMix64 rng(cfg.seed);
    for (int64_t k = 0; k < samples; ++k) {
        auto [M, N] = random_pair(rng, ctx);
        add_item(rep, ext_item(M, N, trunc));
    }
    finish(rep, cfg, t0);
    return rep;
}

Report replay_oracle(const Json& previous, const RunConfig& cfg)
{
    auto t0 = Clock::now();
    if (previous.value("command", "") != "oracle") throw Error(ErrorKind::RangeError, "replay needs an oracle report");
    const auto& c = previous.at("context");
    auto ctx = LocalContext::make(c.at("p").get<int>(), c.at("f").get<int>(), c.at("e").get<int>());
    Report rep = start("oracle", ctx);
    for (const auto& item : previous.at("items")) {
        std::string op = item.at("op").get<std::string>();
        Field F = build_field(ctx.p, item.at("fieldDegree").get<int>());
        if (op == "ext") {
            Kind kind = kind_from_name(item.at("kind").get<std::string>());
            int period = item.at("period").get<int>();
            auto M = module_from_json(ctx, kind, period, F, item.at("M"));
            auto N = module_from_json(ctx, kind, period, F, item.at("N"));
            add_item(rep, ext_item(M, N, item.at("trunc").get<int64_t>()));
        } else if (op == "kext") {
            auto tau = parse_type(ctx, item.at("type").get<std::string>());
            auto J = make_shape(tau, item.at("J").get<std::vector<int>>());
            auto M = module_from_json(ctx, tau.kind, J.period(), F, item.at("M"));
            auto N = module_from_json(ctx, tau.kind, J.period(), F, item.at("N"));
            add_item(rep, kext_item(J, M, N));
        } else {
            throw Error(ErrorKind::RangeError, "cannot replay item with op '" + op + "'");
        }
    }
    finish(rep, cfg, t0);
    return rep;
}

Report cmd_bm(const RunConfig& cfg)
{
    auto t0 = Clock::now();
    auto ctx = make_context(cfg);
    Report rep = start("bm", ctx);
    BMSystem sys(ctx);
    for (const auto& tau : selected_types(cfg, ctx)) {
        Json ws = Json::array();
        for (const auto& w : jh_factors(tau)) ws.push_back(weight_json(w));
        rep.add(Json{{"op", "multiplicity"}, {"type", tau.label()}, {"weights", ws}}, true);
    }
    for (const auto& w : sys.weights()) {
        auto n = sys.solve(w);
        Json coeffs = Json::array();
        for (size_t k = 0; k < n.size(); ++k)
            if (n[k] != 0) coeffs.push_back(Json{{"type", sys.types()[k].label()}, {"n", n[k]}});
        auto cyc = c_sigma_cycle(sys, w);
        bool unit = cyc == unit_cycle(w);
        rep.add(Json{{"op", "solve"}, {"weight", weight_json(w)}, {"n", coeffs}, {"cycle", cycle_json(cyc)}, {"unitCycle", unit}},
                unit);
    }
    rep.add(Json{{"op", "orthogonality"}, {"weights", sys.weights().size()}, {"types", sys.types().size()}},
            verify_orthogonality(sys));

    auto order = sys.types();
    SplitMix64 rng(cfg.seed);
    for (size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);
    BMSystem shuffled(ctx, order);
    bool ok = verify_orthogonality(shuffled);
    for (const auto& w : shuffled.weights()) ok = ok && c_sigma_cycle(shuffled, w) == unit_cycle(w);
    rep.add(Json{{"op", "permuted_order"}, {"seed", cfg.seed}}, ok);
    finish(rep, cfg, t0);
    return rep;
}

Report cmd_components(const RunConfig& cfg)
{
    auto t0 = Clock::now();
    auto ctx = make_context(cfg);
    Report rep = start("components", ctx);
    for (const auto& tau : selected_types(cfg, ctx)) {
        auto z = z_tau_cycle(tau);
        bool reduced = is_reduced_effective(z);
        if (tau.isScalar) {
            rep.add(Json{{"op", "components"}, {"type", tau.label()}, {"count", components_count(tau)},
                         {"zTau", cycle_json(z)}, {"reducedEffective", reduced}},
                    reduced && components_count(tau) == 1);
            continue;
        }
        std::set<std::vector<int>> supports;
        for (const auto& J : all_shapes(tau)) {
            Json pattern = Json::array();
            bool ok = true;
            for (const auto& en : dieudonne_pattern(J)) {
                ok = ok && ((en.F == DieudonneValue::Zero) != (en.V == DieudonneValue::Zero));
                pattern.push_back(
                    Json{{"j", en.j}, {"case", case_name(en.tag)}, {"F", value_name(en.F)}, {"V", value_name(en.V)}});
            }
            auto sup = divisor_support(J);
            supports.insert(sup);
            rep.add(Json{{"op", "pattern"}, {"type", tau.label()}, {"J", J.members()}, {"pattern", pattern}, {"divisorSupport", sup}},
                    ok);
        }
        int count = components_count(tau);
        bool ok = reduced && int(supports.size()) == count && count == (1 << ctx.f);
        rep.add(Json{{"op", "components"}, {"type", tau.label()}, {"count", count}, {"distinctSupports", supports.size()},
                     {"zTau", cycle_json(z)}, {"reducedEffective", reduced}},
                ok);
    }
    finish(rep, cfg, t0);
    return rep;
}

std::string render(const Report& report, const std::string& format)
{
    if (format == "json") return report.to_json().dump(2) + "\n";
    std::ostringstream out;
    if (format == "csv") {
        std::vector<std::string> keys;
        for (const auto& it : report.items)
            for (const auto& [k, v] : it.items())
                if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
        out << "command,p,f,e";
        for (const auto& k : keys) out << ',' << csv_field(k);
        out << '\n';
        for (const auto& it : report.items) {
            out << report.command << ',' << report.ctx.p << ',' << report.ctx.f << ',' << report.ctx.e;
            for (const auto& k : keys) {
                out << ',';
                if (it.contains(k)) out << csv_field(scalar_text(it.at(k)));
            }
            out << '\n';
        }
        return out.str();
    }
    if (format == "text") {
        out << report.command << " p=" << report.ctx.p << " f=" << report.ctx.f << " e=" << report.ctx.e << '\n';
        for (const auto& it : report.items) {
            out << (it.at("pass").get<bool>() ? "PASS" : "FAIL");
            for (const auto& [k, v] : it.items())
                if (k != "pass") out << ' ' << k << '=' << scalar_text(v);
            out << '\n';
        }
        out << "pass=" << report.pass << " fail=" << report.fail << " millis=" << report.millis << '\n';
        return out.str();
    }
    throw Error(ErrorKind::RangeError, "unknown format '" + format + "'");
}

}  // namespace bktool
