#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bkmod/error.hpp"

namespace bkmod {

bool is_prime(int64_t n);

// GF(p^m) = GF(p)[x]/(modulus). Elements are encoded as integers
// sum c_k p^k, where c_k is the coefficient of x^k.
class FieldSpec {
public:
    FieldSpec(int p, int m, std::vector<int> modulus);

    int p() const { return p_; }
    int m() const { return m_; }
    const std::vector<int>& modulus() const { return modulus_; }
    uint64_t size() const { return size_; }

    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const;
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t from_int(int64_t k) const;

    std::vector<int> digits(uint64_t code) const;
    uint64_t from_digits(const std::vector<int>& d) const;

    // a fixed generator of the multiplicative group
    uint64_t generator() const { return gen_; }

private:
    uint64_t poly_mul(uint64_t a, uint64_t b) const;
    uint64_t find_generator() const;

    int p_;
    int m_;
    std::vector<int> modulus_;  // low degree first, monic, length m+1
    uint64_t size_;
    uint64_t gen_ = 0;
    bool tables_ = false;
    std::vector<uint32_t> log_;
    std::vector<uint32_t> exp_;
};

using Field = std::shared_ptr<const FieldSpec>;

bool is_irreducible(int p, const std::vector<int>& poly);

Field build_field(int p, int m);

class FieldElem {
public:
    FieldElem() = default;
    FieldElem(Field owner, uint64_t code) : owner_(std::move(owner)), code_(code) {}

    static FieldElem zero(const Field& F) { return FieldElem(F, 0); }
    static FieldElem one(const Field& F) { return FieldElem(F, 1); }
    static FieldElem from_int(const Field& F, int64_t k) { return FieldElem(F, F->from_int(k)); }

    const Field& owner() const { return owner_; }
    uint64_t code() const { return code_; }
    std::vector<int> coeffs() const { return owner_->digits(code_); }
    bool is_zero() const { return code_ == 0; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem inverse() const;
    FieldElem pow(uint64_t e) const;

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

private:
    void same_field(const FieldElem& o) const;

    Field owner_;
    uint64_t code_ = 0;
};

FieldElem frobenius(const FieldElem& x);

// Truncated Laurent series: coefficients known on [lowDegree, truncOrder).
class TruncSeries {
public:
    TruncSeries(Field owner, int64_t lowDegree, std::vector<FieldElem> coeffs, int64_t truncOrder);

    static TruncSeries zero(const Field& F, int64_t truncOrder);
    static TruncSeries monomial(const FieldElem& c, int64_t degree, int64_t truncOrder);

    const Field& owner() const { return owner_; }
    int64_t low_degree() const { return low_; }
    int64_t trunc_order() const { return trunc_; }
    const std::vector<FieldElem>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    FieldElem coefficient(int64_t d) const;
    int64_t valuation() const;
    bool divisible_by_u(int64_t k) const;

    TruncSeries operator+(const TruncSeries& o) const;
    TruncSeries operator-(const TruncSeries& o) const;
    TruncSeries operator-() const;
    TruncSeries operator*(const TruncSeries& o) const;
    TruncSeries scale(const FieldElem& c) const;
    TruncSeries shift(int64_t k) const;
    // image in F((u))/F[[u]]
    TruncSeries principal_part() const;

    bool operator==(const TruncSeries& o) const;

private:
    void normalize();

    Field owner_;
    int64_t low_;
    std::vector<FieldElem> coeffs_;
    int64_t trunc_;
};

TruncSeries semilinear_substitute(const TruncSeries& s, int p);
TruncSeries semilinear_substitute(const TruncSeries& s);

class LinearMap {
public:
    LinearMap(Field F, size_t domainDim, size_t codomainDim);

    const Field& field() const { return field_; }
    size_t domain_dim() const { return cols_; }
    size_t codomain_dim() const { return rows_; }

    // entry in row r (codomain) and column c (domain)
    uint64_t at(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    void set(size_t r, size_t c, uint64_t v) { data_[r * cols_ + c] = v; }
    void add_to(size_t r, size_t c, uint64_t v);
    FieldElem entry(size_t r, size_t c) const { return FieldElem(field_, at(r, c)); }

private:
    Field field_;
    size_t cols_;
    size_t rows_;
    std::vector<uint64_t> data_;
};

struct RankInfo {
    size_t rank = 0;
    size_t kernelDim = 0;
    size_t cokernelDim = 0;
};

RankInfo rank_kernel_cokernel(const LinearMap& L);

}  // namespace bkmod
