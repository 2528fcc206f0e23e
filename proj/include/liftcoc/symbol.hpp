#pragma once

// Formal pseudodifferential symbols in n variables with exact rational
// coefficients.  A symbol is a finite linear combination of normal-ordered
// monomials x^a * d^b (all x factors to the left of all d factors, integer
// exponents of either sign), truncated below a per-value depth: a monomial is
// dropped as soon as any exponent falls under -depth.  The generating
// relation is [d_i, x_i] = 1; distinct variables commute.

#include "liftcoc/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>

namespace liftcoc {

inline constexpr int kMaxVars = 4;

struct TruncationPolicy {
    int depth = 8;
    int slack = 2; // extra depth used by stability re-checks
};

struct Monomial {
    // x-exponents in e[0..kMaxVars-1], d-exponents in e[kMaxVars..]; unused
    // variables stay zero so comparisons ignore the algebra's nvars.
    std::array<int16_t, 2 * kMaxVars> e{};

    auto operator<=>(const Monomial &) const = default;

    int x(int i) const { return e[i]; }
    int d(int i) const { return e[kMaxVars + i]; }
    void set_x(int i, int v) { e[i] = static_cast<int16_t>(v); }
    void set_d(int i, int v) { e[kMaxVars + i] = static_cast<int16_t>(v); }

    static Monomial one() { return {}; }
    static Monomial var_x(int i, int p = 1);
    static Monomial var_d(int i, int p = 1);
    // Exponent-wise sum; valid as a monomial constructor (x-part and d-part
    // assembled independently), not as an algebra product.
    Monomial exp_plus(const Monomial &o) const;

    bool within_depth(int depth) const;
    bool is_residue_monomial(int nvars) const; // all 2*nvars exponents == -1
};

class PsiSymbol {
  public:
    PsiSymbol() = default; // zero in 1 variable at default depth
    PsiSymbol(int nvars, int depth);

    static PsiSymbol zero(int nvars, int depth) { return {nvars, depth}; }
    static PsiSymbol constant(int nvars, int depth, const Rat &c);
    static PsiSymbol monomial(int nvars, int depth, const Monomial &m, const Rat &c = Rat(1));

    int nvars() const { return nvars_; }
    int depth() const { return depth_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rat> &terms() const { return terms_; }

    Rat coeff(const Monomial &m) const;
    // Adds c * m, dropping the term if it violates the depth bound or the
    // accumulated coefficient cancels to zero.
    void add_term(const Monomial &m, const Rat &c);

    PsiSymbol truncated(int new_depth) const;

    PsiSymbol &operator+=(const PsiSymbol &o);
    PsiSymbol &operator-=(const PsiSymbol &o);
    PsiSymbol &operator*=(const Rat &c);

    friend PsiSymbol operator+(PsiSymbol a, const PsiSymbol &b) { return a += b; }
    friend PsiSymbol operator-(PsiSymbol a, const PsiSymbol &b) { return a -= b; }
    friend PsiSymbol operator-(PsiSymbol a);
    friend PsiSymbol operator*(PsiSymbol a, const Rat &c) { return a *= c; }
    friend PsiSymbol operator*(const Rat &c, PsiSymbol a) { return a *= c; }
    friend PsiSymbol operator*(const PsiSymbol &a, const PsiSymbol &b) { return product(a, b); }
    friend bool operator==(const PsiSymbol &a, const PsiSymbol &b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    friend PsiSymbol product(const PsiSymbol &a, const PsiSymbol &b);

  private:
    int nvars_ = 1;
    int depth_ = 8;
    std::map<Monomial, Rat> terms_;
};

// Normal-ordered product of two monomials, expanded with the composition rule
//   d^b x^c = sum_k C(b,k) * c(c-1)...(c-k+1) * x^(c-k) d^(b-k)
// applied per variable (C(b,k) the generalized binomial).  Infinite
// descending tails are cut by the policy depth.
PsiSymbol monomial_product(const Monomial &m1, const Monomial &m2, int nvars,
                           const TruncationPolicy &policy);

PsiSymbol product(const PsiSymbol &a, const PsiSymbol &b);
PsiSymbol bracket(const PsiSymbol &a, const PsiSymbol &b); // ab - ba

// Noncommutative residue: coefficient of x_1^-1..x_n^-1 d_1^-1..d_n^-1.
Rat residue(const PsiSymbol &a);

// Equality of the parts both values retain at the given depth.
bool truncated_equal(const PsiSymbol &a, const PsiSymbol &b, int depth);

// Canonical text form following the CLI grammar (x1^2*d1^-3, rational
// coefficients as p/q).  Zero prints as "0".
std::string symbol_str(const PsiSymbol &a);

struct StabilityResult {
    Rat value;
    bool stable = false;
};

// Evaluates the computation at the policy depth and once more with slack;
// stable means both runs agreed exactly.
template <class F> StabilityResult stability_check(F &&compute, const TruncationPolicy &policy) {
    Rat v1 = compute(policy.depth);
    Rat v2 = compute(policy.depth + policy.slack);
    return {v1, v1 == v2};
}

} // namespace liftcoc
