#pragma once

// Seeded generation of test data.  Draws come from a fixed 64-bit generator
// through plain modular reduction so runs are reproducible from the seed
// alone.

#include "liftcoc/matrix_op.hpp"

#include <cstdint>

namespace liftcoc {

class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    uint64_t next() {
        // splitmix64
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    int uniform(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

  private:
    uint64_t state_;
};

struct RandomSymbolOptions {
    int min_exp = 0;  // lowest exponent per variable
    int max_exp = 2;  // highest exponent per variable
    int max_terms = 3;
    int max_coeff = 3; // coefficients drawn from [-max_coeff, max_coeff] \ {0}
};

PsiSymbol random_symbol(Rng &rng, int nvars, int depth, const RandomSymbolOptions &opts = {});

// Sparse matrix in a gl_window block with random symbol entries, no identity
// part.
AugmentedOp random_fin_matrix(Rng &rng, int nvars, int depth, int window,
                              const RandomSymbolOptions &opts = {}, int max_entries = 2);

} // namespace liftcoc
