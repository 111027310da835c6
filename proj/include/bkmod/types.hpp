#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bkmod/error.hpp"

namespace bkmod {

enum class Kind { PrincipalSeries, Cuspidal };

const char* kind_name(Kind k);

struct LocalContext {
    int p = 3;
    int f = 1;
    int e = 1;

    // validates p odd prime <= 13, f <= 4, e <= 6
    static LocalContext make(int p, int f, int e);

    int64_t q() const;
    int fprime(Kind k) const { return k == Kind::Cuspidal ? 2 * f : f; }
    int64_t eKK(Kind k) const;
    int64_t ePrime(Kind k) const { return int64_t(e) * eKK(k); }

    bool operator==(const LocalContext& o) const { return p == o.p && f == o.f && e == o.e; }
    bool operator!=(const LocalContext& o) const { return !(*this == o); }
};

struct TameType {
    LocalContext ctx;
    Kind kind = Kind::PrincipalSeries;
    int64_t k0 = 0;
    int64_t k0p = 0;
    bool isScalar = false;
    int fp = 1;
    int64_t eKK = 2;
    std::vector<int64_t> kVec;   // k_i = p^i k0 mod eKK
    std::vector<int64_t> kpVec;  // k'_i

    std::string label() const;
    bool operator==(const TameType& o) const
    {
        return ctx == o.ctx && kind == o.kind && k0 == o.k0 && k0p == o.k0p;
    }
    bool operator<(const TameType& o) const;
};

// For cuspidal types k0p is derived; pass -1 (or the matching value).
TameType make_type(const LocalContext& ctx, Kind kind, int64_t k0, int64_t k0p = -1);

std::vector<int> gamma_digits(const TameType& tau);

// (k0,k0p) -> (k0p,k0) for principal series; cuspidal k0 -> q*k0
TameType swap_type(const TameType& tau);

// the canonical representative of the unordered type
TameType canonical_type(const TameType& tau);

std::vector<TameType> enumerate_types(const LocalContext& ctx, bool canonical);

}  // namespace bkmod
