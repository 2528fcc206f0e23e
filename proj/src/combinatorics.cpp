#include "liftcoc/combinatorics.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <functional>

namespace liftcoc {

std::vector<MarkedInterval> enumerate_marked_intervals(int k, int l) {
    assert(k >= 2 && l >= 1 && l <= k / 2);
    std::vector<MarkedInterval> out;
    std::vector<int> marks;
    std::function<void(int)> rec = [&](int next) {
        if (static_cast<int>(marks.size()) == l) {
            out.push_back({k, marks});
            return;
        }
        for (int p = next; p <= k - 1; ++p) {
            marks.push_back(p);
            rec(p + 2);
            marks.pop_back();
        }
    };
    rec(1);
    return out;
}

namespace {

// Zero runs between cyclically adjacent ones must have even length.  With
// bits[0] == 1 this reduces to: every maximal interior zero run even, and the
// trailing run (wrapping to the front, which holds a 1) even as well.
bool even_runs(const std::vector<uint8_t> &bits) {
    int run = 0;
    for (std::size_t i = 1; i < bits.size(); ++i) {
        if (bits[i] == 0) {
            ++run;
        } else {
            if (run % 2 != 0)
                return false;
            run = 0;
        }
    }
    return run % 2 == 0;
}

} // namespace

std::vector<EvenSequence> enumerate_even_sequences(int k, int s) {
    assert(k >= 1 && s >= 1);
    const int len = k + 2 * s;
    std::vector<EvenSequence> out;
    std::vector<uint8_t> bits(len, 0);
    bits[0] = 1;
    std::function<void(int, int)> rec = [&](int pos, int ones) {
        if (pos == len) {
            if (ones == k && even_runs(bits))
                out.push_back({k, s, bits});
            return;
        }
        if (ones < k) {
            bits[pos] = 1;
            rec(pos + 1, ones + 1);
        }
        bits[pos] = 0;
        rec(pos + 1, ones);
    };
    rec(1, 1);
    return out;
}

CompressedSequence compress(const EvenSequence &a) {
    const auto &bits = a.bits;
    int s1 = -1;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] == 0) {
            s1 = static_cast<int>(i) + 1;
            break;
        }
    assert(s1 > 0);
    // First 1 after the run, if any.
    int next_one = -1;
    for (std::size_t i = static_cast<std::size_t>(s1); i < bits.size(); ++i)
        if (bits[i] == 1) {
            next_one = static_cast<int>(i) + 1;
            break;
        }
    CompressedSequence c;
    c.s1 = s1;
    c.bits = bits;
    if (next_one > 0) {
        c.bits.erase(c.bits.begin() + (s1 - 1)); // one zero out of the first run
    } else {
        c.bits.pop_back(); // trailing run: shorten at the cyclic tail
    }
    return c;
}

std::vector<MarkedCircle> enumerate_marked_circles(const CompressedSequence &parent, int l) {
    const auto &bits = parent.bits;
    const int len = static_cast<int>(bits.size());
    std::vector<int> markable;
    for (int i = 1; i <= len; ++i) {
        int next = i == len ? 1 : i + 1;
        if (bits[i - 1] == 1 && bits[next - 1] == 1)
            markable.push_back(i);
    }
    auto circ_dist = [len](int a, int b) {
        int d = std::abs(a - b);
        return std::min(d, len - d);
    };
    std::vector<MarkedCircle> out;
    std::vector<int> marks;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (static_cast<int>(marks.size()) == l) {
            out.push_back({parent, marks});
            return;
        }
        for (std::size_t idx = from; idx < markable.size(); ++idx) {
            int p = markable[idx];
            bool ok = true;
            for (int m : marks)
                if (circ_dist(m, p) < 2)
                    ok = false;
            if (!ok)
                continue;
            marks.push_back(p);
            rec(idx + 1);
            marks.pop_back();
        }
    };
    rec(0);
    return out;
}

} // namespace liftcoc
