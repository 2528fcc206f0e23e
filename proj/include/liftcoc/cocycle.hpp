#pragma once

// Evaluation of the cocycle formulas on tuples of augmented operators.  Every
// formula is expressed as a list of trace-word schemas; a schema fixes which
// factors carry a derivation, which carry a curvature insertion q_{ij}, and a
// scalar weight.  Evaluation alternates the arguments over all factor slots
// (signed, no 1/m! prefactor) and the unconsumed derivation labels over the
// derivation-bearing slots.  Curvature indices are never alternated; a marked
// pair consumes its two labels literally.

#include "liftcoc/combinatorics.hpp"
#include "liftcoc/matrix_op.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace liftcoc {

struct CocycleSpec {
    int k = 2; // number of derivations
    int s = 1; // cochain arity is k + 2s - 1
    std::vector<Derivation> derivs;
    // 1-based labels; must be antisymmetric: q(i,j) == -q(j,i).
    std::function<PsiSymbol(int, int, const TruncationPolicy &)> q;
    TruncationPolicy policy;

    int arity() const { return k + 2 * s - 1; }
};

// Derivation list (ad ln d_1, ad ln x_1, ad ln d_2, ad ln x_2, ...) with the
// matching curvature provider; k defaults to 2n.
CocycleSpec standard_spec(int nvars, int k, int s, const TruncationPolicy &policy);

enum class Formula {
    Auto,       // dispatch on (k, s)
    Pair3,      // two derivations, 3-cocycle: leading word + one q word
    PairHigher, // two derivations, higher cocycles (weighted split positions)
    Interval,   // general k, s = 1: leading word + marked-interval corrections
    EvenNoQ,    // general (k, s), curvature terms omitted (valid cocycle iff q == 0)
    EvenCircle, // general (k, s): even sequences + marked-circle corrections
};

struct EvalOptions {
    int jobs = 1;
};

// One multiplicative factor of a trace word.
struct WordFactor {
    bool has_arg = true;   // consumes one argument slot
    bool derivation = false; // factor is D(arg) for an alternated label
    int q_first = 0, q_second = 0; // right-multiply by q_{q_first,q_second} when nonzero
};

struct WordSchema {
    std::vector<WordFactor> factors;
    std::vector<int> free_labels; // ascending; alternated over derivation factors
    Rat weight = Rat(1);
};

std::vector<WordSchema> build_schemas(const CocycleSpec &spec, Formula f);

// Signed alternating sum of traces over all argument permutations and free
// derivation assignments, for all schemas.  Deterministic for any jobs value.
Rat alternating_trace_sum(const CocycleSpec &spec, std::span<const WordSchema> schemas,
                          std::span<const AugmentedOp> args, const EvalOptions &opts = {});

// The cocycle value.  Throws ArityMismatchError unless |args| == k + 2s - 1.
Rat psi(const CocycleSpec &spec, std::span<const AugmentedOp> args, Formula f = Formula::Auto,
        const EvalOptions &opts = {});

struct PsiParts {
    Rat leading;     // zero-curvature word(s)
    Rat corrections; // everything carrying a q insertion
};
PsiParts psi_split(const CocycleSpec &spec, std::span<const AugmentedOp> args,
                   Formula f = Formula::Auto, const EvalOptions &opts = {});

// Single marked-interval contribution (s = 1 family).
Rat evaluate_interval_term(const CocycleSpec &spec, const MarkedInterval &t,
                           std::span<const AugmentedOp> args, const EvalOptions &opts = {});

// Word pattern of a marked-interval term for the identity assignment, e.g.
// "A1*Q12*A2*D3A3*D4A4*D5A5*D6A6*A7".
std::string interval_word_pattern(const MarkedInterval &t);

// Only the zero-curvature leading word of the s = 1 formula.
Rat leading_term(const CocycleSpec &spec, std::span<const AugmentedOp> args,
                 const EvalOptions &opts = {});

// Generators Id(x)d_i and Id(x)(x_i * sum_j x_j d_j - lambda * x_i).
std::vector<AugmentedOp> twisted_generators(int n, const Rat &lambda,
                                            const TruncationPolicy &policy);

// Grouped value of the l-marked interval class on the standard assignment
// (arguments x_1, d_1, .., x_n, d_n, E_11; derivations as in standard_spec):
// both derivation orientations of each marked pair are counted, which
// contribute equally through the antisymmetry of q, so the class value is
// 2^l times the single left-packed interval term.
Rat interval_class_term(int n, int l, const TruncationPolicy &policy,
                        const EvalOptions &opts = {});

// Standard argument tuple (Id(x)x_1, Id(x)d_1, ..., E_11(x)1) used by the
// grouped-term evaluations.
std::vector<AugmentedOp> standard_xd_arguments(int n, const TruncationPolicy &policy);

} // namespace liftcoc
