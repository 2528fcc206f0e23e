#pragma once

// Chevalley-Eilenberg machinery over the augmented matrix algebra: black-box
// cochains with the coboundary, contraction and the adjoint action on
// cochains, and exact-rational chains with the boundary and kernel search.
//
// Sign conventions (fixed here and exercised by the calibration tests):
//   (delta c)(g_1..g_{p+1}) = sum_{i<j} (-1)^{i+j} c([g_i,g_j], .. no i, j ..)
//   boundary(g_1 ^..^ g_p)  = sum_{i<j} (-1)^{i+j} [g_i,g_j] ^ .. no i, j ..
//   (ad_t c)(g_1..g_p)      = - sum_i c(g_1, .., [t, g_i], .., g_p)
// With these, <delta c, gamma> = <c, boundary gamma> holds exactly and the
// contraction identity reads delta(i_t c) + i_t(delta c) = ad_t c.

#include "liftcoc/cocycle.hpp"
#include "liftcoc/matrix_op.hpp"

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace liftcoc {

struct CochainHandle {
    int arity = 0;
    std::function<Rat(std::span<const AugmentedOp>)> eval;
};

CochainHandle psi_cochain(CocycleSpec spec, Formula f = Formula::Auto, EvalOptions opts = {});

Rat coboundary_eval(const CochainHandle &c, std::span<const AugmentedOp> args);
CochainHandle coboundary(const CochainHandle &c);
CochainHandle contraction(const CochainHandle &c, AugmentedOp t);
CochainHandle ad_action(const CochainHandle &c, AugmentedOp t);

// Finite-dimensional coefficient space for chains: the matrix window
// gl_m tensored with a list of coefficient symbols.  The span must be closed
// under the bracket; structure constants are computed once on construction.
class ChainSpace {
  public:
    ChainSpace(int window, std::vector<PsiSymbol> coefficient_basis);

    int dim() const { return static_cast<int>(basis_.size()); }
    const AugmentedOp &basis_op(int i) const { return basis_[i]; }
    // [b_i, b_j] expanded over the basis.
    const std::vector<std::pair<int, Rat>> &bracket_coords(int i, int j) const;

  private:
    std::vector<AugmentedOp> basis_;
    std::vector<std::vector<std::vector<std::pair<int, Rat>>>> brackets_;
};

class ChainElement {
  public:
    ChainElement(const ChainSpace *space, int degree) : space_(space), degree_(degree) {}

    int degree() const { return degree_; }
    const ChainSpace *space() const { return space_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Rat> &terms() const { return terms_; }

    // Inserts c * (b_{w_0} ^ b_{w_1} ^ ...); the word is sorted into the
    // canonical increasing order with the permutation sign, words with a
    // repeated index vanish.
    void add_word(std::vector<int> word, Rat c);

    friend bool operator==(const ChainElement &a, const ChainElement &b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

  private:
    const ChainSpace *space_;
    int degree_;
    std::map<std::vector<int>, Rat> terms_;
};

ChainElement chain_boundary(const ChainElement &c);

// <c, gamma>: the cochain evaluated on each wedge word, weighted.
Rat pair_cochain_chain(const CochainHandle &c, const ChainElement &gamma);

// Basis of ker(boundary) in the given degree, by exact rational elimination.
// Throws DimensionTooLargeError if the wedge dimension exceeds the cap.
std::vector<ChainElement> find_cycles(const ChainSpace &space, int degree,
                                      std::size_t dim_cap = 20000);

// Value of the cocycle on frame ++ cycle words, summed with the cycle's
// coefficients.  Throws NotACycleError when the boundary of `cycle` is
// nonzero, ArityMismatchError when frame size + degree != arity.
Rat psi_on_matrix_cycle(const CocycleSpec &spec, std::span<const AugmentedOp> frame,
                        const ChainElement &cycle, Formula f = Formula::Auto,
                        const EvalOptions &opts = {});

} // namespace liftcoc
