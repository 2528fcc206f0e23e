#include "liftcoc/random_gen.hpp"

namespace liftcoc {

PsiSymbol random_symbol(Rng &rng, int nvars, int depth, const RandomSymbolOptions &opts) {
    PsiSymbol s(nvars, depth);
    int nterms = rng.uniform(1, opts.max_terms);
    for (int t = 0; t < nterms; ++t) {
        Monomial m;
        for (int v = 0; v < nvars; ++v) {
            m.set_x(v, rng.uniform(opts.min_exp, opts.max_exp));
            m.set_d(v, rng.uniform(opts.min_exp, opts.max_exp));
        }
        int c = 0;
        while (c == 0)
            c = rng.uniform(-opts.max_coeff, opts.max_coeff);
        s.add_term(m, Rat(c));
    }
    return s;
}

AugmentedOp random_fin_matrix(Rng &rng, int nvars, int depth, int window,
                              const RandomSymbolOptions &opts, int max_entries) {
    AugmentedOp a(nvars, depth);
    int entries = rng.uniform(1, max_entries);
    for (int e = 0; e < entries; ++e) {
        int r = rng.uniform(1, window);
        int c = rng.uniform(1, window);
        a.add_finite(r, c, random_symbol(rng, nvars, depth, opts));
    }
    return a;
}

} // namespace liftcoc
