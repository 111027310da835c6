#pragma once

#include <cstdint>
#include <vector>

#include "bkmod/gf.hpp"
#include "bkmod/types.hpp"

namespace bkmod {

// M(r,a,c): Phi(1 (x) m_{i-1}) = a_i u^{r_i} m_i, descent data h(g)^{c_i}.
// Vectors are indexed by Z/f'Z. `period` is f for modules with descent
// data to K; cuspidal modules regarded over L may have period f' = 2f.
struct RankOneBK {
    LocalContext ctx;
    Kind kind = Kind::PrincipalSeries;
    Field field;
    int period = 1;
    std::vector<int64_t> r;
    std::vector<FieldElem> a;
    std::vector<int64_t> c;

    int fp() const { return ctx.fprime(kind); }
    int64_t eKK() const { return ctx.eKK(kind); }
    int64_t ePrime() const { return ctx.ePrime(kind); }

    // product of a_i over one period
    FieldElem unram() const;
    // product over all f' indices
    FieldElem unram_full() const;
};

struct GaloisChar {
    int64_t tameExp = 0;
    FieldElem unram;
    FieldElem unramFull;
};

template <class T>
std::vector<T> extend_periodic(const std::vector<T>& v, int length)
{
    std::vector<T> out(length);
    for (int i = 0; i < length; ++i) out[i] = v[size_t(i) % v.size()];
    return out;
}

// period = 0 means f
RankOneBK validate(const LocalContext& ctx, Kind kind, const std::vector<int64_t>& r,
                   const std::vector<FieldElem>& a, const std::vector<int64_t>& c, int period = 0);

// a = all ones over GF(p^{f'})
RankOneBK validate_unit(const LocalContext& ctx, Kind kind, const std::vector<int64_t>& r,
                        const std::vector<int64_t>& c, int period = 0);

std::vector<int64_t> alpha(const RankOneBK& M);
GaloisChar galois_char(const RankOneBK& M);

void check_compatible(const RankOneBK& M, const RankOneBK& N);

bool same_generic_fibre(const RankOneBK& M, const RankOneBK& N);
bool is_isomorphic(const RankOneBK& M, const RankOneBK& N);
int hom_dim(const RankOneBK& M, const RankOneBK& N);
RankOneBK twist_conjugate(const RankOneBK& M);

}  // namespace bkmod
