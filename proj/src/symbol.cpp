#include "liftcoc/symbol.hpp"

#include <cassert>
#include <cstring>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace liftcoc {

Monomial Monomial::var_x(int i, int p) {
    Monomial m;
    m.set_x(i, p);
    return m;
}

Monomial Monomial::var_d(int i, int p) {
    Monomial m;
    m.set_d(i, p);
    return m;
}

Monomial Monomial::exp_plus(const Monomial &o) const {
    Monomial r;
    for (std::size_t i = 0; i < e.size(); ++i)
        r.e[i] = static_cast<int16_t>(e[i] + o.e[i]);
    return r;
}

bool Monomial::within_depth(int depth) const {
    for (int16_t v : e)
        if (v < -depth)
            return false;
    return true;
}

bool Monomial::is_residue_monomial(int nvars) const {
    for (int i = 0; i < nvars; ++i)
        if (x(i) != -1 || d(i) != -1)
            return false;
    for (int i = nvars; i < kMaxVars; ++i)
        if (x(i) != 0 || d(i) != 0)
            return false;
    return true;
}

PsiSymbol::PsiSymbol(int nvars, int depth) : nvars_(nvars), depth_(depth) {
    assert(nvars >= 1 && nvars <= kMaxVars);
    assert(depth >= 1);
}

PsiSymbol PsiSymbol::constant(int nvars, int depth, const Rat &c) {
    PsiSymbol s(nvars, depth);
    s.add_term(Monomial::one(), c);
    return s;
}

PsiSymbol PsiSymbol::monomial(int nvars, int depth, const Monomial &m, const Rat &c) {
    PsiSymbol s(nvars, depth);
    s.add_term(m, c);
    return s;
}

Rat PsiSymbol::coeff(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

void PsiSymbol::add_term(const Monomial &m, const Rat &c) {
    if (c == 0 || !m.within_depth(depth_))
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

PsiSymbol PsiSymbol::truncated(int new_depth) const {
    PsiSymbol r(nvars_, new_depth);
    for (const auto &[m, c] : terms_)
        if (m.within_depth(new_depth))
            r.terms_.emplace(m, c);
    return r;
}

PsiSymbol &PsiSymbol::operator+=(const PsiSymbol &o) {
    assert(nvars_ == o.nvars_);
    if (o.depth_ < depth_)
        *this = truncated(o.depth_);
    for (const auto &[m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

PsiSymbol &PsiSymbol::operator-=(const PsiSymbol &o) {
    assert(nvars_ == o.nvars_);
    if (o.depth_ < depth_)
        *this = truncated(o.depth_);
    for (const auto &[m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

PsiSymbol &PsiSymbol::operator*=(const Rat &c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, v] : terms_)
        v *= c;
    return *this;
}

PsiSymbol operator-(PsiSymbol a) {
    for (auto &[m, v] : a.terms_)
        v = -v;
    return a;
}

namespace {

// Expansion of the normal-ordered product of two monomials, coefficients as
// integers, keyed for reuse.  The expansion shape recurs constantly inside
// alternation sums, so the memo pays for itself quickly.
struct PairKey {
    std::array<int16_t, 4 * kMaxVars> e;
    int32_t depth;
    int32_t nvars;
    bool operator==(const PairKey &o) const {
        return depth == o.depth && nvars == o.nvars && e == o.e;
    }
};

struct PairKeyHash {
    std::size_t operator()(const PairKey &k) const {
        // FNV-1a over the raw exponent bytes plus depth
        std::size_t h = 1469598103934665603ull;
        auto mix = [&h](const void *p, std::size_t n) {
            const unsigned char *b = static_cast<const unsigned char *>(p);
            for (std::size_t i = 0; i < n; ++i) {
                h ^= b[i];
                h *= 1099511628211ull;
            }
        };
        mix(k.e.data(), k.e.size() * sizeof(int16_t));
        mix(&k.depth, sizeof(k.depth));
        return h;
    }
};

using Expansion = std::vector<std::pair<Monomial, Int>>;

// Per-variable factor of the composition rule: C(b,k) * c(c-1)...(c-k+1).
// Both pieces are products of k consecutive integers, so k! divides the
// binomial numerator exactly.
Int composition_coeff(long b, long c, long k) {
    Int num = 1;
    for (long j = 0; j < k; ++j)
        num *= Int(b - j);
    Int fall = 1;
    for (long j = 0; j < k; ++j)
        fall *= Int(c - j);
    Int kfact = 1;
    for (long j = 2; j <= k; ++j)
        kfact *= j;
    Int q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), kfact.get_mpz_t());
    return q * fall;
}

Expansion expand_pair(const Monomial &m1, const Monomial &m2, int nvars, int depth) {
    // Per-variable admissible k values with their coefficients.
    struct VarTerms {
        std::vector<std::pair<int, Int>> terms; // (k, coeff)
    };
    std::array<VarTerms, kMaxVars> per_var;
    for (int i = 0; i < nvars; ++i) {
        long a = m1.x(i), b = m1.d(i), c = m2.x(i), d = m2.d(i);
        long kmax = std::min(a + c, b + d) + depth;
        if (b >= 0)
            kmax = std::min(kmax, b);
        if (c >= 0)
            kmax = std::min(kmax, c);
        for (long k = 0; k <= kmax; ++k) {
            Int f = composition_coeff(b, c, k);
            if (f != 0)
                per_var[i].terms.emplace_back(static_cast<int>(k), f);
        }
        if (per_var[i].terms.empty())
            return {}; // every candidate falls below depth
    }

    Expansion out;
    // Cartesian product over variables.
    std::array<std::size_t, kMaxVars> idx{};
    for (;;) {
        Monomial m;
        Int coeff = 1;
        for (int i = 0; i < nvars; ++i) {
            auto [k, f] = per_var[i].terms[idx[i]];
            m.set_x(i, m1.x(i) + m2.x(i) - k);
            m.set_d(i, m1.d(i) + m2.d(i) - k);
            coeff *= f;
        }
        out.emplace_back(m, coeff);
        int pos = 0;
        while (pos < nvars) {
            if (++idx[pos] < per_var[pos].terms.size())
                break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == nvars)
            break;
    }
    return out;
}

const Expansion &expand_pair_cached(const Monomial &m1, const Monomial &m2, int nvars,
                                    int depth) {
    thread_local std::unordered_map<PairKey, Expansion, PairKeyHash> cache;
    PairKey key;
    std::memcpy(key.e.data(), m1.e.data(), sizeof(m1.e));
    std::memcpy(key.e.data() + 2 * kMaxVars, m2.e.data(), sizeof(m2.e));
    key.depth = depth;
    key.nvars = nvars;
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, expand_pair(m1, m2, nvars, depth)).first;
    return it->second;
}

} // namespace

PsiSymbol monomial_product(const Monomial &m1, const Monomial &m2, int nvars,
                           const TruncationPolicy &policy) {
    PsiSymbol r(nvars, policy.depth);
    for (const auto &[m, f] : expand_pair_cached(m1, m2, nvars, policy.depth))
        r.add_term(m, Rat(f));
    return r;
}

PsiSymbol product(const PsiSymbol &a, const PsiSymbol &b) {
    assert(a.nvars_ == b.nvars_);
    int depth = std::min(a.depth_, b.depth_);
    PsiSymbol r(a.nvars_, depth);
    Rat c;
    for (const auto &[m1, c1] : a.terms_) {
        for (const auto &[m2, c2] : b.terms_) {
            const auto &exp = expand_pair_cached(m1, m2, a.nvars_, depth);
            for (const auto &[m, f] : exp) {
                c = c1 * c2;
                c *= Rat(f);
                r.add_term(m, c);
            }
        }
    }
    return r;
}

PsiSymbol bracket(const PsiSymbol &a, const PsiSymbol &b) {
    return product(a, b) - product(b, a);
}

Rat residue(const PsiSymbol &a) {
    Monomial m;
    for (int i = 0; i < a.nvars(); ++i) {
        m.set_x(i, -1);
        m.set_d(i, -1);
    }
    return a.coeff(m);
}

bool truncated_equal(const PsiSymbol &a, const PsiSymbol &b, int depth) {
    return a.truncated(depth) == b.truncated(depth);
}

namespace {

void append_monomial(std::ostringstream &os, const Monomial &m, bool &first_factor) {
    auto emit = [&](char name, int var, int exp) {
        if (exp == 0)
            return;
        if (!first_factor)
            os << '*';
        first_factor = false;
        os << name << (var + 1);
        if (exp != 1)
            os << '^' << exp;
    };
    for (int i = 0; i < kMaxVars; ++i)
        emit('x', i, m.x(i));
    for (int i = 0; i < kMaxVars; ++i)
        emit('d', i, m.d(i));
}

} // namespace

std::string symbol_str(const PsiSymbol &a) {
    if (a.is_zero())
        return "0";
    std::ostringstream os;
    bool first_term = true;
    for (const auto &[m, c] : a.terms()) {
        Rat ac = abs(c);
        if (first_term) {
            if (c < 0)
                os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first_term = false;
        bool first_factor = true;
        if (ac != 1 || m == Monomial::one()) {
            os << rat_str(ac);
            first_factor = false;
        }
        append_monomial(os, m, first_factor);
    }
    return os.str();
}

} // namespace liftcoc
