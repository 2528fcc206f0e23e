#pragma once

// Finite matrices over the symbol algebra together with a scalar-identity
// part: an AugmentedOp represents  finite + Id (x) id_part.  The identity
// part models operators acting diagonally on every matrix slot at once; it
// is ordinary data here, not a limit of finite matrices.

#include "liftcoc/derivation.hpp"
#include "liftcoc/errors.hpp"
#include "liftcoc/symbol.hpp"

#include <map>
#include <string>
#include <utility>

namespace liftcoc {

class FinMatrix {
  public:
    using Index = std::pair<int, int>; // 1-based (row, col)

    FinMatrix() = default;
    FinMatrix(int nvars, int depth) : nvars_(nvars), depth_(depth) {}

    int nvars() const { return nvars_; }
    int depth() const { return depth_; }
    bool is_zero() const { return entries_.empty(); }
    const std::map<Index, PsiSymbol> &entries() const { return entries_; }

    PsiSymbol entry(int r, int c) const;
    void add_entry(int r, int c, const PsiSymbol &s);

    FinMatrix truncated(int new_depth) const;

    friend bool operator==(const FinMatrix &a, const FinMatrix &b) {
        return a.nvars_ == b.nvars_ && a.entries_ == b.entries_;
    }

  private:
    int nvars_ = 1;
    int depth_ = 8;
    std::map<Index, PsiSymbol> entries_;
};

class AugmentedOp {
  public:
    AugmentedOp() = default;
    AugmentedOp(int nvars, int depth)
        : finite_(nvars, depth), id_part_(nvars, depth), nvars_(nvars), depth_(depth) {}

    // Id (x) s
    static AugmentedOp identity_times(const PsiSymbol &s);
    // E_rc (x) s
    static AugmentedOp unit_matrix(int r, int c, const PsiSymbol &s);
    static AugmentedOp zero(int nvars, int depth) { return AugmentedOp(nvars, depth); }

    int nvars() const { return nvars_; }
    int depth() const { return depth_; }
    bool is_zero() const { return finite_.is_zero() && id_part_.is_zero(); }
    const FinMatrix &finite() const { return finite_; }
    const PsiSymbol &id_part() const { return id_part_; }

    void add_finite(int r, int c, const PsiSymbol &s) { finite_.add_entry(r, c, s); }
    void add_id(const PsiSymbol &s) { id_part_ += s; }

    AugmentedOp truncated(int new_depth) const;

    AugmentedOp &operator+=(const AugmentedOp &o);
    AugmentedOp &operator-=(const AugmentedOp &o);
    AugmentedOp &operator*=(const Rat &c);
    friend AugmentedOp operator+(AugmentedOp a, const AugmentedOp &b) { return a += b; }
    friend AugmentedOp operator-(AugmentedOp a, const AugmentedOp &b) { return a -= b; }
    friend AugmentedOp operator-(AugmentedOp a) { return a *= Rat(-1); }
    friend AugmentedOp operator*(AugmentedOp a, const Rat &c) { return a *= c; }
    friend AugmentedOp operator*(const Rat &c, AugmentedOp a) { return a *= c; }
    friend AugmentedOp operator*(const AugmentedOp &a, const AugmentedOp &b) {
        return aug_product(a, b);
    }
    friend bool operator==(const AugmentedOp &a, const AugmentedOp &b) {
        return a.finite_ == b.finite_ && a.id_part_ == b.id_part_;
    }

    friend AugmentedOp aug_product(const AugmentedOp &a, const AugmentedOp &b);

  private:
    FinMatrix finite_;
    PsiSymbol id_part_{1, 8};
    int nvars_ = 1;
    int depth_ = 8;
};

AugmentedOp aug_product(const AugmentedOp &a, const AugmentedOp &b);
AugmentedOp aug_bracket(const AugmentedOp &a, const AugmentedOp &b);

// Composite trace: matrix trace followed by the residue on each diagonal
// entry.  Throws NonTraceClassError when the identity part has nonzero
// residue (the diagonal sum would diverge); a residue-free identity part
// contributes nothing.
Rat aug_trace(const AugmentedOp &a);

// Entrywise action on the finite part and the identity part.
AugmentedOp aug_derivation(const Derivation &dv, const AugmentedOp &a);

std::string aug_str(const AugmentedOp &a);

} // namespace liftcoc
