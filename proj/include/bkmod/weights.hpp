#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bkmod/rank_one.hpp"
#include "bkmod/shapes.hpp"
#include "bkmod/types.hpp"

namespace bkmod {

// tensor over j of det^{t_j} Sym^{s_j}, the j-th factor through sigma_j,
// where sigma_{j+1}^p = sigma_j. The determinant part is the character
// x -> x^E of k^x with E = sum_j t_j p^{(f-j) mod f}.
struct SerreWeight {
    std::vector<int> t;
    std::vector<int> s;

    bool is_steinberg(int p) const;
    int64_t dim() const;
    std::string label() const;

    bool operator==(const SerreWeight& o) const { return t == o.t && s == o.s; }
    bool operator<(const SerreWeight& o) const { return t != o.t ? t < o.t : s < o.s; }
};

int64_t det_exponent(int p, int f, const std::vector<int64_t>& t);
std::vector<int> det_digits(int p, int f, int64_t E);

SerreWeight canonical_weight(int p, int f, const std::vector<int64_t>& tRaw, const std::vector<int>& s);

struct WeightFormulaData {
    std::vector<int> sJ;
    std::vector<int> tJ;
    int64_t detExp = 0;    // principal series: exponent of the det twist
    int64_t normExp = 0;   // cuspidal: exponent on l^x before dividing by q+1
    int64_t thetaExp = 0;  // cuspidal only
    bool sPeriodic = true;
    bool normDivisible = true;
};

WeightFormulaData weight_formula_data(const Shape& J);
SerreWeight sigma_tau_J(const Shape& J);
std::vector<SerreWeight> jh_factors(const TameType& tau);

struct CharTN {
    std::vector<int> t;
    int64_t exponent = 0;
    int64_t alphaRoute = 0;  // galois_char(N(J)).tameExp
    bool agrees = false;
    bool niveauOne = true;
};

CharTN char_TN(const Shape& J);

enum class DieudonneCase { BothIn, BothOut, OutOfJ, IntoJ };
enum class DieudonneValue { Zero, Unit, Generic };

const char* case_name(DieudonneCase c);
const char* value_name(DieudonneValue v);

struct DieudonneEntry {
    int j = 0;  // F : D_j -> D_{j+1}
    DieudonneCase tag = DieudonneCase::BothIn;
    DieudonneValue F = DieudonneValue::Zero;
    DieudonneValue V = DieudonneValue::Zero;
};

std::vector<DieudonneEntry> dieudonne_pattern(const Shape& J);
std::vector<int> divisor_support(const Shape& J);
int components_count(const TameType& tau);

using Cycle = std::map<SerreWeight, int64_t>;

bool is_effective(const Cycle& c);
bool is_reduced_effective(const Cycle& c);
Cycle unit_cycle(const SerreWeight& w);
Cycle z_tau_cycle(const TameType& tau);

// m_w(tau) over canonical unordered types and non-Steinberg weights
class BMSystem {
public:
    explicit BMSystem(const LocalContext& ctx);
    BMSystem(const LocalContext& ctx, std::vector<TameType> typeOrder);

    const LocalContext& ctx() const { return ctx_; }
    const std::vector<TameType>& types() const { return types_; }
    const std::vector<SerreWeight>& weights() const { return weights_; }
    int multiplicity(size_t w, size_t tau) const;
    int64_t weight_index(const SerreWeight& w) const;

    // coefficients indexed like types()
    std::vector<int64_t> solve(const SerreWeight& w) const;

private:
    using Matrix = std::vector<std::vector<int64_t>>;

    struct Block {
        std::vector<size_t> rows;
        std::vector<size_t> cols;
        Matrix R;  // rows x cols, row echelon with pivots in type order
        Matrix V;  // rows x rows, unimodular, R = V A
        std::vector<std::pair<size_t, size_t>> rowPivots;  // (local row, local col)
        Matrix H;  // rows x cols, column echelon
        Matrix U;  // cols x cols, unimodular, H = A U
        std::vector<std::pair<size_t, size_t>> colPivots;
    };

    void build();
    bool solve_basic(const Block& B, size_t localRow, std::vector<int64_t>& z) const;
    void solve_general(const Block& B, size_t localRow, std::vector<int64_t>& z, const SerreWeight& w) const;

    LocalContext ctx_;
    std::vector<TameType> types_;
    std::vector<SerreWeight> weights_;
    std::map<SerreWeight, size_t> index_;
    std::vector<std::vector<size_t>> jh_;  // per type, weight indices
    std::vector<size_t> blockOfRow_;
    std::vector<Block> blocks_;
};

std::vector<SerreWeight> non_steinberg_weights(const LocalContext& ctx);

std::map<TameType, int64_t> solve_n_tau(const LocalContext& ctx, const SerreWeight& w);
Cycle c_sigma_cycle(const LocalContext& ctx, const SerreWeight& w);
Cycle c_sigma_cycle(const BMSystem& sys, const SerreWeight& w);
bool verify_orthogonality(const LocalContext& ctx);
bool verify_orthogonality(const BMSystem& sys);

}  // namespace bkmod
