#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bkmod/rank_one.hpp"
#include "bkmod/types.hpp"

namespace bkmod {

// J as a subset of Z/f'Z. Shapes over L (cuspidal types only) drop the
// constraint i in J <=> i+f not in J and have period f' instead of f.
struct Shape {
    TameType tau;
    std::vector<bool> J;
    bool overL = false;

    int period() const { return overL ? tau.fp : tau.ctx.f; }
    bool contains(int64_t i) const;
    std::vector<int> members() const;
    std::string label() const;
    bool operator==(const Shape& o) const { return tau == o.tau && J == o.J && overL == o.overL; }
};

Shape make_shape(const TameType& tau, const std::vector<int>& members, bool overL = false);

// valid shapes for tau: 2^f of them, or {empty} for scalar types
std::vector<Shape> all_shapes(const TameType& tau);
// every subset of Z/f'Z, for cuspidal tau regarded over L
std::vector<Shape> all_shapes_over_L(const TameType& tau);

bool is_transition(const Shape& s, int64_t i);
std::vector<int> transitions(const Shape& s);

bool in_p_tau(const Shape& s);
std::vector<Shape> p_tau(const TameType& tau);

struct RefinedShape {
    Shape shape;
    std::vector<int64_t> y;  // length = shape.period()

    bool is_maximal() const;
};

std::vector<RefinedShape> refined_shapes(const Shape& s);
RefinedShape maximal_refined(const Shape& s);

struct ModulePair {
    RankOneBK M;
    RankOneBK N;
};

ModulePair build_MN(const RefinedShape& rs);
RefinedShape shape_of_pair(const RankOneBK& M, const RankOneBK& N, const TameType& tau);

// multiply a_i by lambda at the indices i = 0 mod period
RankOneBK twist_unramified(const RankOneBK& M, const FieldElem& lambda);

std::vector<int> gamma_star(const Shape& s);

int ext_dim(const RankOneBK& M, const RankOneBK& N);
int ext_dim_height1(const RankOneBK& M, const RankOneBK& N);

// the map d: C0/(Phi*)^{-1}(v^N C1) -> C1/v^N C1 on the congruence-constrained monomial bases
struct ExtComplex {
    LinearMap map;
    std::vector<std::pair<int, int64_t>> domainBasis;    // (i, degree)
    std::vector<std::pair<int, int64_t>> codomainBasis;  // (i, degree)
    std::vector<bool> heightOneRows;
};

ExtComplex ext_complex(const RankOneBK& M, const RankOneBK& N, int64_t truncN);
int64_t default_truncation(const LocalContext& ctx);

struct ExtOracle {
    int ext = 0;
    int hom = 0;
    int extHeight1 = 0;
    int64_t truncN = 0;
};

// truncN = 0 selects the default; results at N and N+1 must agree
ExtOracle ext_oracle(const RankOneBK& M, const RankOneBK& N, int64_t truncN = 0);
int ext_dim_oracle(const RankOneBK& M, const RankOneBK& N);
int hom_dim_oracle(const RankOneBK& M, const RankOneBK& N);

int kext_dim(const Shape& s, const FieldElem& prodA, const FieldElem& prodB);

struct KextOracle {
    int kext = 0;
    int principalHom = 0;  // dim Hom(M, N[1/u]/N)
    int galoisHom = 0;
    int hom = 0;
};

KextOracle kext_oracle(const RankOneBK& M, const RankOneBK& N);
int kext_dim_oracle(const RankOneBK& M, const RankOneBK& N);

struct ExtClass {
    RankOneBK M;
    RankOneBK N;
    std::vector<TruncSeries> h;  // length = period
};

ExtClass make_ext_class(const RankOneBK& M, const RankOneBK& N, std::vector<TruncSeries> h);

struct HeightDet {
    bool heightOk = false;
    bool detOk = false;
    std::vector<int64_t> detValuation;  // r_i + s_i
};

HeightDet check_height_and_det(const ExtClass& ec);

int64_t family_dim(const RefinedShape& rs);

struct IrredBound {
    std::vector<int64_t> x;
    int64_t D = 0;
    int64_t cap = 0;
    bool periodicOk = false;
    bool congruenceOk = false;
    bool withinCap = false;
};

IrredBound irred_bound(const RankOneBK& M, const RankOneBK& N);

}  // namespace bkmod
