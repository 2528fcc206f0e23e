#pragma once

// Derivations of the symbol algebra: the 2n outer derivations ad(ln x_i),
// ad(ln d_i) and inner derivations ad(q).  The logarithmic derivations are
// defined operationally as s-derivatives of the conjugation families
// Ad(d_i^s), Ad(x_i^s) at s = 0; the coefficient of the k-th series term is
// the literal derivative of the generalized binomial, not a transcribed
// constant.

#include "liftcoc/symbol.hpp"

namespace liftcoc {

struct Derivation {
    enum class Kind { AdLnX, AdLnD, AdInner };

    Kind kind = Kind::AdInner;
    int var = 0; // 0-based variable index for AdLnX / AdLnD
    PsiSymbol inner;

    static Derivation ad_ln_x(int var) { return {Kind::AdLnX, var, {}}; }
    static Derivation ad_ln_d(int var) { return {Kind::AdLnD, var, {}}; }
    static Derivation ad_inner(PsiSymbol q) { return {Kind::AdInner, 0, std::move(q)}; }
};

PsiSymbol apply_derivation(const Derivation &dv, const PsiSymbol &a);

// d/ds at s=0 of C(s,k) = s(s-1)...(s-k+1)/k!   (k >= 1)
Rat dds_binomial_at0(int k);
// d/ds at s=0 of (-s)(-s-1)...(-s-k+1)          (k >= 1)
Rat dds_neg_falling_at0(int k);

// The inner generator of the commutator of two derivations from the
// canonical 2n-element list (ln x_1..ln x_n, ln d_1..ln d_n):
// [D_i, D_j] = ad(q_series(i, j)).  Zero unless {i, j} is an
// (ln d_v, ln x_v) pair of one variable; antisymmetric in (i, j).
// Indices are 1-based positions in the list.
PsiSymbol q_series(int i, int j, int nvars, const TruncationPolicy &policy);

// Same pairing rule expressed on derivation values.
PsiSymbol q_series(const Derivation &a, const Derivation &b, int nvars,
                   const TruncationPolicy &policy);

} // namespace liftcoc
