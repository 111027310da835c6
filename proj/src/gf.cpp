#include "bkmod/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace bkmod {

namespace {

constexpr uint64_t kTableLimit = uint64_t(1) << 20;

int mod_p(int64_t a, int p)
{
    int64_t r = a % p;
    return int(r < 0 ? r + p : r);
}

int inv_mod_p(int a, int p)
{
    // p is small; Fermat
    int64_t r = 1, b = a, e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return int(r);
}

// remainder of a modulo monic-or-not b over GF(p), both low degree first
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& b, int p)
{
    int db = int(b.size()) - 1;
    int lead_inv = inv_mod_p(b.back(), p);
    for (int i = int(a.size()) - 1; i >= db; --i) {
        int c = a[i] * lead_inv % p;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j)
            a[i - db + j] = mod_p(a[i - db + j] - int64_t(c) * b[j], p);
    }
    a.resize(std::max(db, 0));
    return a;
}

std::vector<uint64_t> prime_factors(uint64_t n)
{
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool is_prime(int64_t n)
{
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible(int p, const std::vector<int>& poly)
{
    std::vector<int> f = poly;
    while (!f.empty() && f.back() % p == 0) f.pop_back();
    int deg = int(f.size()) - 1;
    if (deg < 1) return false;
    if (deg == 1) return true;
    // linear factors
    for (int x = 0; x < p; ++x) {
        int64_t v = 0;
        for (int k = deg; k >= 0; --k) v = (v * x + f[k]) % p;
        if (v == 0) return false;
    }
    // monic factors of degree 2..deg/2
    for (int d = 2; d <= deg / 2; ++d) {
        uint64_t count = 1;
        for (int k = 0; k < d; ++k) count *= uint64_t(p);
        std::vector<int> g(d + 1, 0);
        g[d] = 1;
        for (uint64_t idx = 0; idx < count; ++idx) {
            uint64_t t = idx;
            for (int k = 0; k < d; ++k) {
                g[k] = int(t % p);
                t /= p;
            }
            auto r = poly_rem(f, g, p);
            if (std::all_of(r.begin(), r.end(), [](int c) { return c == 0; })) return false;
        }
    }
    return true;
}

FieldSpec::FieldSpec(int p, int m, std::vector<int> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus))
{
    size_ = 1;
    for (int k = 0; k < m_; ++k) size_ *= uint64_t(p_);
    gen_ = find_generator();
    if (size_ <= kTableLimit) {
        log_.assign(size_, 0);
        exp_.assign(size_ - 1, 0);
        uint64_t x = 1;
        for (uint64_t k = 0; k + 1 < size_; ++k) {
            exp_[k] = uint32_t(x);
            log_[x] = uint32_t(k);
            x = poly_mul(x, gen_);
        }
        tables_ = true;
    }
}

std::vector<int> FieldSpec::digits(uint64_t code) const
{
    std::vector<int> d(m_);
    for (int k = 0; k < m_; ++k) {
        d[k] = int(code % uint64_t(p_));
        code /= uint64_t(p_);
    }
    return d;
}

uint64_t FieldSpec::from_digits(const std::vector<int>& d) const
{
    uint64_t code = 0;
    for (int k = m_ - 1; k >= 0; --k) {
        int c = k < int(d.size()) ? mod_p(d[k], p_) : 0;
        code = code * uint64_t(p_) + uint64_t(c);
    }
    return code;
}

uint64_t FieldSpec::from_int(int64_t k) const { return uint64_t(mod_p(k, p_)); }

uint64_t FieldSpec::add(uint64_t a, uint64_t b) const
{
    if (m_ == 1) return (a + b) % uint64_t(p_);
    uint64_t out = 0, scale = 1;
    for (int k = 0; k < m_; ++k) {
        uint64_t s = (a % p_ + b % p_) % p_;
        out += s * scale;
        scale *= uint64_t(p_);
        a /= p_;
        b /= p_;
    }
    return out;
}

uint64_t FieldSpec::neg(uint64_t a) const
{
    uint64_t out = 0, scale = 1;
    for (int k = 0; k < m_; ++k) {
        uint64_t c = a % p_;
        out += ((p_ - c) % p_) * scale;
        scale *= uint64_t(p_);
        a /= p_;
    }
    return out;
}

uint64_t FieldSpec::sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

uint64_t FieldSpec::poly_mul(uint64_t a, uint64_t b) const
{
    auto da = digits(a), db = digits(b);
    std::vector<int64_t> prod(2 * m_ - 1, 0);
    for (int i = 0; i < m_; ++i) {
        if (da[i] == 0) continue;
        for (int j = 0; j < m_; ++j) prod[i + j] += int64_t(da[i]) * db[j];
    }
    for (int i = 2 * m_ - 2; i >= m_; --i) {
        int64_t c = prod[i] % p_;
        if (c == 0) continue;
        // x^m = -(modulus lower terms)
        for (int j = 0; j < m_; ++j) prod[i - m_ + j] -= c * modulus_[j];
        prod[i] = 0;
    }
    std::vector<int> out(m_);
    for (int k = 0; k < m_; ++k) out[k] = mod_p(prod[k], p_);
    return from_digits(out);
}

uint64_t FieldSpec::mul(uint64_t a, uint64_t b) const
{
    if (a == 0 || b == 0) return 0;
    if (m_ == 1) return a * b % uint64_t(p_);
    if (tables_) {
        uint64_t s = uint64_t(log_[a]) + log_[b];
        if (s >= size_ - 1) s -= size_ - 1;
        return exp_[s];
    }
    return poly_mul(a, b);
}

uint64_t FieldSpec::pow(uint64_t a, uint64_t e) const
{
    uint64_t r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t FieldSpec::inv(uint64_t a) const
{
    if (a == 0) throw Error(ErrorKind::ZeroCoefficient, "inverse of zero");
    if (tables_) {
        uint32_t l = log_[a];
        return exp_[l == 0 ? 0 : size_ - 1 - l];
    }
    return pow(a, size_ - 2);
}

uint64_t FieldSpec::find_generator() const
{
    if (size_ == 2) return 1;
    auto primes = prime_factors(size_ - 1);
    for (uint64_t g = 1; g < size_; ++g) {
        bool ok = true;
        for (uint64_t l : primes) {
            if (pow(g, (size_ - 1) / l) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw Error(ErrorKind::Internal, "no generator found");
}

Field build_field(int p, int m)
{
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (m < 1 || m > 12) throw Error(ErrorKind::DegreeTooLarge, "extension degree " + std::to_string(m));

    static std::mutex mu;
    static std::map<std::pair<int, int>, Field> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, m});
    if (it != cache.end()) return it->second;

    std::vector<int> modulus;
    if (m == 1) {
        modulus = {0, 1};
    } else {
        uint64_t count = 1;
        for (int k = 0; k < m; ++k) count *= uint64_t(p);
        // lexicographic in (c_0, c_1, ..., c_{m-1})
        for (uint64_t idx = 0; idx < count; ++idx) {
            std::vector<int> cand(m + 1, 0);
            uint64_t t = idx;
            for (int k = m - 1; k >= 0; --k) {
                cand[k] = int(t % p);
                t /= p;
            }
            cand[m] = 1;
            if (is_irreducible(p, cand)) {
                modulus = cand;
                break;
            }
        }
    }
    Field F = std::make_shared<const FieldSpec>(p, m, modulus);
    cache[{p, m}] = F;
    return F;
}

void FieldElem::same_field(const FieldElem& o) const
{
    if (owner_.get() != o.owner_.get())
        throw Error(ErrorKind::ContextMismatch, "field elements from different fields");
}

FieldElem FieldElem::operator+(const FieldElem& o) const
{
    same_field(o);
    return FieldElem(owner_, owner_->add(code_, o.code_));
}

FieldElem FieldElem::operator-(const FieldElem& o) const
{
    same_field(o);
    return FieldElem(owner_, owner_->sub(code_, o.code_));
}

FieldElem FieldElem::operator-() const { return FieldElem(owner_, owner_->neg(code_)); }

FieldElem FieldElem::operator*(const FieldElem& o) const
{
    same_field(o);
    return FieldElem(owner_, owner_->mul(code_, o.code_));
}

FieldElem FieldElem::inverse() const { return FieldElem(owner_, owner_->inv(code_)); }

FieldElem FieldElem::pow(uint64_t e) const { return FieldElem(owner_, owner_->pow(code_, e)); }

bool FieldElem::operator==(const FieldElem& o) const
{
    return owner_.get() == o.owner_.get() && code_ == o.code_;
}

FieldElem frobenius(const FieldElem& x) { return x.pow(uint64_t(x.owner()->p())); }

// ---- truncated series ----

TruncSeries::TruncSeries(Field owner, int64_t lowDegree, std::vector<FieldElem> coeffs, int64_t truncOrder)
    : owner_(std::move(owner)), low_(lowDegree), coeffs_(std::move(coeffs)), trunc_(truncOrder)
{
    for (const auto& c : coeffs_)
        if (c.owner().get() != owner_.get())
            throw Error(ErrorKind::ContextMismatch, "series coefficient from a different field");
    normalize();
}

void TruncSeries::normalize()
{
    if (low_ >= trunc_) {
        low_ = trunc_;
        coeffs_.clear();
        return;
    }
    if (int64_t(coeffs_.size()) > trunc_ - low_) coeffs_.resize(size_t(trunc_ - low_));
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        low_ = trunc_;
        return;
    }
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + long(lead));
    low_ += int64_t(lead);
}

TruncSeries TruncSeries::zero(const Field& F, int64_t truncOrder) { return TruncSeries(F, truncOrder, {}, truncOrder); }

TruncSeries TruncSeries::monomial(const FieldElem& c, int64_t degree, int64_t truncOrder)
{
    return TruncSeries(c.owner(), degree, {c}, truncOrder);
}

FieldElem TruncSeries::coefficient(int64_t d) const
{
    if (d >= trunc_)
        throw Error(ErrorKind::TruncationExceeded,
                    "coefficient of degree " + std::to_string(d) + " beyond truncation " + std::to_string(trunc_));
    if (d < low_ || d >= low_ + int64_t(coeffs_.size())) return FieldElem::zero(owner_);
    return coeffs_[size_t(d - low_)];
}

int64_t TruncSeries::valuation() const
{
    if (is_zero()) throw Error(ErrorKind::TruncationExceeded, "valuation of a series known to be zero only up to truncation");
    return low_;
}

bool TruncSeries::divisible_by_u(int64_t k) const
{
    if (!is_zero()) return low_ >= k;
    if (k <= trunc_) return true;
    throw Error(ErrorKind::TruncationExceeded, "divisibility by u^" + std::to_string(k) + " undecidable at this truncation");
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const
{
    if (owner_.get() != o.owner_.get()) throw Error(ErrorKind::ContextMismatch, "series over different fields");
    int64_t t = std::min(trunc_, o.trunc_);
    int64_t lo = std::min(low_, o.low_);
    if (lo >= t) return zero(owner_, t);
    std::vector<FieldElem> c(size_t(t - lo), FieldElem::zero(owner_));
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        int64_t d = low_ + int64_t(k);
        if (d < t) c[size_t(d - lo)] = c[size_t(d - lo)] + coeffs_[k];
    }
    for (size_t k = 0; k < o.coeffs_.size(); ++k) {
        int64_t d = o.low_ + int64_t(k);
        if (d < t) c[size_t(d - lo)] = c[size_t(d - lo)] + o.coeffs_[k];
    }
    return TruncSeries(owner_, lo, std::move(c), t);
}

TruncSeries TruncSeries::operator-() const
{
    std::vector<FieldElem> c;
    c.reserve(coeffs_.size());
    for (const auto& x : coeffs_) c.push_back(-x);
    return TruncSeries(owner_, low_, std::move(c), trunc_);
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const { return *this + (-o); }

TruncSeries TruncSeries::operator*(const TruncSeries& o) const
{
    if (owner_.get() != o.owner_.get()) throw Error(ErrorKind::ContextMismatch, "series over different fields");
    int64_t t = std::min(low_ + o.trunc_, o.low_ + trunc_);
    if (is_zero() || o.is_zero()) return zero(owner_, t);
    int64_t lo = low_ + o.low_;
    if (lo >= t) return zero(owner_, t);
    std::vector<FieldElem> c(size_t(t - lo), FieldElem::zero(owner_));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        for (size_t j = 0; j < o.coeffs_.size(); ++j) {
            int64_t d = lo + int64_t(i + j);
            if (d >= t) break;
            c[i + j] = c[i + j] + coeffs_[i] * o.coeffs_[j];
        }
    }
    return TruncSeries(owner_, lo, std::move(c), t);
}

TruncSeries TruncSeries::scale(const FieldElem& a) const
{
    std::vector<FieldElem> c;
    c.reserve(coeffs_.size());
    for (const auto& x : coeffs_) c.push_back(a * x);
    return TruncSeries(owner_, low_, std::move(c), trunc_);
}

TruncSeries TruncSeries::shift(int64_t k) const { return TruncSeries(owner_, low_ + k, coeffs_, trunc_ + k); }

TruncSeries TruncSeries::principal_part() const { return TruncSeries(owner_, low_, coeffs_, std::min<int64_t>(trunc_, 0)); }

bool TruncSeries::operator==(const TruncSeries& o) const
{
    return owner_.get() == o.owner_.get() && trunc_ == o.trunc_ && low_ == o.low_ && coeffs_ == o.coeffs_;
}

TruncSeries semilinear_substitute(const TruncSeries& s, int p)
{
    const auto& c = s.coeffs();
    if (c.empty()) return TruncSeries::zero(s.owner(), s.trunc_order() * p);
    std::vector<FieldElem> out((c.size() - 1) * size_t(p) + 1, FieldElem::zero(s.owner()));
    for (size_t k = 0; k < c.size(); ++k) out[k * size_t(p)] = c[k];
    return TruncSeries(s.owner(), s.low_degree() * p, std::move(out), s.trunc_order() * p);
}

TruncSeries semilinear_substitute(const TruncSeries& s) { return semilinear_substitute(s, s.owner()->p()); }

// ---- linear algebra ----

LinearMap::LinearMap(Field F, size_t domainDim, size_t codomainDim)
    : field_(std::move(F)), cols_(domainDim), rows_(codomainDim), data_(domainDim * codomainDim, 0)
{
}

void LinearMap::add_to(size_t r, size_t c, uint64_t v)
{
    auto& x = data_[r * cols_ + c];
    x = field_->add(x, v);
}

RankInfo rank_kernel_cokernel(const LinearMap& L)
{
    const FieldSpec& F = *L.field();
    size_t R = L.codomain_dim(), C = L.domain_dim();
    std::vector<uint64_t> a(R * C);
    for (size_t r = 0; r < R; ++r)
        for (size_t c = 0; c < C; ++c) a[r * C + c] = L.at(r, c);

    size_t rank = 0;
    for (size_t col = 0; col < C && rank < R; ++col) {
        size_t piv = rank;
        while (piv < R && a[piv * C + col] == 0) ++piv;
        if (piv == R) continue;
        if (piv != rank)
            for (size_t c = 0; c < C; ++c) std::swap(a[piv * C + c], a[rank * C + c]);
        uint64_t inv = F.inv(a[rank * C + col]);
        for (size_t c = col; c < C; ++c) a[rank * C + c] = F.mul(a[rank * C + c], inv);
        for (size_t r = rank + 1; r < R; ++r) {
            uint64_t factor = a[r * C + col];
            if (factor == 0) continue;
            for (size_t c = col; c < C; ++c)
                a[r * C + c] = F.sub(a[r * C + c], F.mul(factor, a[rank * C + c]));
        }
        ++rank;
    }
    return RankInfo{rank, C - rank, R - rank};
}

}  // namespace bkmod
