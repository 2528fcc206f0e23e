#pragma once

// Index sets for the correction terms of the cocycle formulas: marked
// intervals, even 0/1 sequences with their compression, and marked circles.

#include <cstdint>
#include <vector>

namespace liftcoc {

// Interval with integral points 1..k-1; marks pairwise at distance >= 2.
struct MarkedInterval {
    int k = 0;
    std::vector<int> marks; // strictly increasing
};

// l-marked intervals for k derivations, 1 <= l <= k/2.
std::vector<MarkedInterval> enumerate_marked_intervals(int k, int l);

// 0/1 sequence of length k+2s: starts with 1, k ones, 2s zeros, and every
// maximal zero run between cyclically adjacent ones has even length.
struct EvenSequence {
    int k = 0, s = 0;
    std::vector<uint8_t> bits;
};

std::vector<EvenSequence> enumerate_even_sequences(int k, int s);

struct CompressedSequence {
    std::vector<uint8_t> bits; // length k+2s-1
    int s1 = 0;                // position (1-based) of the first zero of the source
};

// Shortens the first run of consecutive zeros by one.  When that run is the
// trailing one (no 1 after it), it is treated cyclically as preceding the
// first element and shortened there; s1 is recorded the same way in both
// cases.
CompressedSequence compress(const EvenSequence &a);

// Circle with len(parent.bits) integral points; position i markable only if
// bits[i] == bits[i+1] == 1 (cyclically), circular distance between marks
// >= 2.
struct MarkedCircle {
    CompressedSequence parent;
    std::vector<int> marks; // 1-based positions, increasing
};

std::vector<MarkedCircle> enumerate_marked_circles(const CompressedSequence &parent, int l);

} // namespace liftcoc
