#include "liftcoc/derivation.hpp"

#include <cassert>
#include <vector>

namespace liftcoc {

namespace {

// Linear coefficient at s=0 of a product prod_j (eps*s - j) given the roots,
// computed by expanding the polynomial degree by degree (only the constant
// and linear coefficients are tracked).
Rat linear_coeff(const std::vector<long> &roots, long eps) {
    Int c0 = 1, c1 = 0;
    for (long r : roots) {
        // (c1*s + c0) * (eps*s - r): s-coefficient = -r*c1 + eps*c0
        c1 = Int(-r) * c1 + Int(eps) * c0;
        c0 *= Int(-r);
    }
    return Rat(c1);
}

} // namespace

Rat dds_binomial_at0(int k) {
    assert(k >= 1);
    std::vector<long> roots;
    for (long j = 0; j < k; ++j)
        roots.push_back(j);
    Rat kfact(1);
    for (long j = 2; j <= k; ++j)
        kfact *= j;
    Rat r = linear_coeff(roots, +1) / kfact;
    r.canonicalize();
    return r;
}

Rat dds_neg_falling_at0(int k) {
    assert(k >= 1);
    std::vector<long> roots;
    for (long j = 0; j < k; ++j)
        roots.push_back(j);
    return linear_coeff(roots, -1);
}

namespace {

// ad(ln d_v): Ad(d^s)(x^a d^b) = sum_k C(s,k) a(a-1)..(a-k+1) x^(a-k) d^(b-k),
// differentiated at s = 0.  ad(ln x_v) analogously through Ad(x^s), where the
// k-th coefficient is C(b,k) * d/ds[(-s)(-s-1)..(-s-k+1)].
void apply_log_derivation(PsiSymbol &out, const Monomial &m, const Rat &c, int var, bool ln_d,
                          int depth) {
    long a = m.x(var), b = m.d(var);
    long kmax = std::min(a, b) + depth;
    if (ln_d && a >= 0)
        kmax = std::min(kmax, a);
    if (!ln_d && b >= 0)
        kmax = std::min(kmax, b);
    Int falling = 1;
    for (long k = 1; k <= kmax; ++k) {
        Rat coeff;
        if (ln_d) {
            falling *= Int(a - k + 1);
            coeff = dds_binomial_at0(static_cast<int>(k)) * Rat(falling);
        } else {
            // C(b,k) = b(b-1)..(b-k+1)/k!
            falling *= Int(b - k + 1);
            Int kfact = 1;
            for (long j = 2; j <= k; ++j)
                kfact *= j;
            coeff = dds_neg_falling_at0(static_cast<int>(k)) * Rat(falling) / Rat(kfact);
        }
        coeff.canonicalize();
        if (coeff == 0)
            continue;
        Monomial t = m;
        t.set_x(var, m.x(var) - static_cast<int>(k));
        t.set_d(var, m.d(var) - static_cast<int>(k));
        out.add_term(t, c * coeff);
    }
}

} // namespace

PsiSymbol apply_derivation(const Derivation &dv, const PsiSymbol &a) {
    if (dv.kind == Derivation::Kind::AdInner) {
        PsiSymbol q = dv.inner;
        if (q.depth() > a.depth())
            q = q.truncated(a.depth());
        return bracket(q, a);
    }
    PsiSymbol out(a.nvars(), a.depth());
    for (const auto &[m, c] : a.terms())
        apply_log_derivation(out, m, c, dv.var, dv.kind == Derivation::Kind::AdLnD, a.depth());
    return out;
}

namespace {

// Generator of [ad(ln d_v), ad(ln x_v)]; the coefficients follow from the
// conjugation-family definition and are cross-checked against the commutator
// in the test suite.
PsiSymbol log_pair_generator(int var, int nvars, const TruncationPolicy &policy) {
    PsiSymbol q(nvars, policy.depth);
    Int fact = 1; // (m-1)!
    for (int m = 1; m <= policy.depth; ++m) {
        if (m >= 2)
            fact *= Int(m - 1);
        Monomial mono;
        mono.set_x(var, -m);
        mono.set_d(var, -m);
        Rat c(fact, m);
        c.canonicalize();
        q.add_term(mono, c);
    }
    return q;
}

} // namespace

PsiSymbol q_series(const Derivation &a, const Derivation &b, int nvars,
                   const TruncationPolicy &policy) {
    using K = Derivation::Kind;
    if (a.kind == K::AdLnD && b.kind == K::AdLnX && a.var == b.var)
        return log_pair_generator(a.var, nvars, policy);
    if (a.kind == K::AdLnX && b.kind == K::AdLnD && a.var == b.var)
        return -log_pair_generator(a.var, nvars, policy);
    return PsiSymbol::zero(nvars, policy.depth);
}

PsiSymbol q_series(int i, int j, int nvars, const TruncationPolicy &policy) {
    assert(i >= 1 && i <= 2 * nvars && j >= 1 && j <= 2 * nvars);
    auto of_index = [nvars](int idx) {
        return idx <= nvars ? Derivation::ad_ln_x(idx - 1) : Derivation::ad_ln_d(idx - nvars - 1);
    };
    return q_series(of_index(i), of_index(j), nvars, policy);
}

} // namespace liftcoc
