#include "liftcoc/cocycle.hpp"

#include "liftcoc/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

namespace liftcoc {

CocycleSpec standard_spec(int nvars, int k, int s, const TruncationPolicy &policy) {
    assert(k >= 1 && k <= 2 * nvars);
    CocycleSpec spec;
    spec.k = k;
    spec.s = s;
    spec.policy = policy;
    for (int v = 0; v < (k + 1) / 2; ++v) {
        spec.derivs.push_back(Derivation::ad_ln_d(v));
        if (static_cast<int>(spec.derivs.size()) < k)
            spec.derivs.push_back(Derivation::ad_ln_x(v));
    }
    auto derivs = spec.derivs;
    spec.q = [derivs, nvars](int i, int j, const TruncationPolicy &p) {
        return q_series(derivs[i - 1], derivs[j - 1], nvars, p);
    };
    return spec;
}

namespace {

WordSchema interval_schema(const MarkedInterval &t) {
    const int k = t.k;
    WordSchema ws;
    ws.factors.resize(k + 1);
    std::set<int> marks(t.marks.begin(), t.marks.end());
    std::set<int> consumed;
    for (int j : marks) {
        consumed.insert(j);
        consumed.insert(j + 1);
    }
    for (int pos = 1; pos <= k + 1; ++pos) {
        WordFactor &f = ws.factors[pos - 1];
        if (marks.count(pos)) {
            f.q_first = pos;
            f.q_second = pos + 1;
        } else if (marks.count(pos - 1) || pos == k + 1) {
            // plain argument
        } else {
            f.derivation = true;
        }
    }
    for (int l = 1; l <= k; ++l)
        if (!consumed.count(l))
            ws.free_labels.push_back(l);
    return ws;
}

WordSchema even_schema(const CompressedSequence &c, int k) {
    WordSchema ws;
    ws.factors.resize(c.bits.size());
    for (std::size_t i = 0; i < c.bits.size(); ++i)
        ws.factors[i].derivation = c.bits[i] == 1;
    for (int l = 1; l <= k; ++l)
        ws.free_labels.push_back(l);
    ws.weight = Rat(c.s1 % 2 == 0 ? 1 : -1);
    return ws;
}

WordSchema circle_schema(const MarkedCircle &t, int k) {
    const auto &bits = t.parent.bits;
    const int len = static_cast<int>(bits.size());
    std::vector<int> label(len + 1, 0); // 1-based positions -> derivation label
    int rank = 0;
    for (int pos = 1; pos <= len; ++pos)
        if (bits[pos - 1] == 1)
            label[pos] = ++rank;
    assert(rank == k);

    std::set<int> marks(t.marks.begin(), t.marks.end());
    std::set<int> successors;
    std::set<int> consumed;
    for (int i : marks) {
        int succ = i == len ? 1 : i + 1;
        successors.insert(succ);
        consumed.insert(label[i]);
        consumed.insert(label[succ]);
    }

    WordSchema ws;
    ws.factors.resize(len);
    for (int pos = 1; pos <= len; ++pos) {
        WordFactor &f = ws.factors[pos - 1];
        if (marks.count(pos)) {
            int succ = pos == len ? 1 : pos + 1;
            f.q_first = label[pos];
            f.q_second = label[succ];
        } else if (successors.count(pos)) {
            // plain argument
        } else if (bits[pos - 1] == 1) {
            f.derivation = true;
        }
    }
    for (int l = 1; l <= k; ++l)
        if (!consumed.count(l))
            ws.free_labels.push_back(l);
    ws.weight = Rat(t.parent.s1 % 2 == 0 ? 1 : -1);
    return ws;
}

std::vector<WordSchema> pair3_schemas() {
    WordSchema lead;
    lead.factors = {{true, true, 0, 0}, {true, true, 0, 0}, {true, false, 0, 0}};
    lead.free_labels = {1, 2};
    WordSchema qword;
    qword.factors = {{false, false, 1, 2}, {true, false, 0, 0}, {true, false, 0, 0},
                     {true, false, 0, 0}};
    return {lead, qword};
}

std::vector<WordSchema> pair_higher_schemas(int s) {
    // Two derivations; arity 2s+1.  The second derivation walks the even
    // positions 2, 4, ..., up to the split bound; the final position carries
    // weight 1/2 when s is odd (split index s+1 even).
    const int i = s;
    const int arity = 2 * i + 1;
    int last_pos = (i % 2 == 0) ? i + 2 : i + 1;
    Rat last_weight = (i % 2 == 0) ? Rat(1, 2) : Rat(1);

    std::vector<WordSchema> out;
    WordSchema qword;
    qword.factors.assign(arity + 1, WordFactor{true, false, 0, 0});
    qword.factors[0] = {false, false, 1, 2};
    out.push_back(qword);
    for (int p = 2; p <= last_pos; p += 2) {
        WordSchema ws;
        ws.factors.assign(arity, WordFactor{true, false, 0, 0});
        ws.factors[0].derivation = true;
        ws.factors[p - 1].derivation = true;
        ws.free_labels = {1, 2};
        ws.weight = (p == last_pos) ? last_weight : Rat(1);
        out.push_back(ws);
    }
    return out;
}

std::vector<WordSchema> interval_schemas(int k) {
    std::vector<WordSchema> out;
    WordSchema lead;
    lead.factors.assign(k + 1, WordFactor{true, false, 0, 0});
    for (int p = 0; p < k; ++p)
        lead.factors[p].derivation = true;
    for (int l = 1; l <= k; ++l)
        lead.free_labels.push_back(l);
    out.push_back(lead);
    for (int l = 1; l <= k / 2; ++l)
        for (const auto &t : enumerate_marked_intervals(k, l))
            out.push_back(interval_schema(t));
    return out;
}

std::vector<WordSchema> even_schemas(int k, int s, bool with_circles) {
    std::vector<WordSchema> out;
    for (const auto &a : enumerate_even_sequences(k, s)) {
        CompressedSequence c = compress(a);
        out.push_back(even_schema(c, k));
        if (with_circles)
            for (int l = 1; l <= k / 2; ++l)
                for (const auto &t : enumerate_marked_circles(c, l))
                    out.push_back(circle_schema(t, k));
    }
    return out;
}

Formula dispatch(const CocycleSpec &spec, Formula f) {
    if (f != Formula::Auto)
        return f;
    if (spec.s == 1)
        return spec.k == 2 ? Formula::Pair3 : Formula::Interval;
    return spec.k == 2 ? Formula::PairHigher : Formula::EvenCircle;
}

} // namespace

std::vector<WordSchema> build_schemas(const CocycleSpec &spec, Formula f) {
    switch (dispatch(spec, f)) {
    case Formula::Pair3:
        assert(spec.k == 2 && spec.s == 1);
        return pair3_schemas();
    case Formula::PairHigher:
        assert(spec.k == 2 && spec.s >= 2);
        return pair_higher_schemas(spec.s);
    case Formula::Interval:
        assert(spec.s == 1);
        return interval_schemas(spec.k);
    case Formula::EvenNoQ:
        return even_schemas(spec.k, spec.s, false);
    case Formula::EvenCircle:
        return even_schemas(spec.k, spec.s, true);
    default:
        assert(false);
        return {};
    }
}

namespace {

struct EvalContext {
    const CocycleSpec *spec = nullptr;
    int eval_depth = 8;
    std::vector<AugmentedOp> args;                    // truncated to eval_depth
    std::vector<std::vector<AugmentedOp>> deriv_args; // [label-1][arg]
    std::map<std::pair<int, int>, AugmentedOp> q_ops; // Id (x) q(i, j)
};

EvalContext make_context(const CocycleSpec &spec, std::span<const WordSchema> schemas,
                         std::span<const AugmentedOp> args) {
    EvalContext ctx;
    ctx.spec = &spec;
    ctx.eval_depth = spec.policy.depth;
    for (const auto &a : args)
        ctx.eval_depth = std::min(ctx.eval_depth, a.depth());
    for (const auto &a : args)
        ctx.args.push_back(a.truncated(ctx.eval_depth));

    ctx.deriv_args.resize(spec.derivs.size());
    for (std::size_t l = 0; l < spec.derivs.size(); ++l)
        for (const auto &a : ctx.args)
            ctx.deriv_args[l].push_back(aug_derivation(spec.derivs[l], a));

    TruncationPolicy qp{ctx.eval_depth, spec.policy.slack};
    int nv = args.empty() ? 1 : args[0].nvars();
    for (const auto &ws : schemas)
        for (const auto &f : ws.factors)
            if (f.q_first != 0 && !ctx.q_ops.count({f.q_first, f.q_second})) {
                PsiSymbol q = spec.q ? spec.q(f.q_first, f.q_second, qp)
                                     : PsiSymbol::zero(nv, qp.depth);
                ctx.q_ops.emplace(std::make_pair(f.q_first, f.q_second),
                                  AugmentedOp::identity_times(q));
            }
    return ctx;
}

int rank_below(uint32_t unused_mask, int idx) {
    return __builtin_popcount(unused_mask & ((1u << idx) - 1));
}

// Depth-first expansion of one schema's alternating sum.  forced_arg pins the
// argument used at the first argument-bearing factor (parallel partitioning).
Rat dfs_schema(const EvalContext &ctx, const WordSchema &ws, int forced_arg) {
    const int m = static_cast<int>(ctx.args.size());
    const int nfree = static_cast<int>(ws.free_labels.size());
    int first_arg_factor = -1;
    for (std::size_t i = 0; i < ws.factors.size(); ++i)
        if (ws.factors[i].has_arg) {
            first_arg_factor = static_cast<int>(i);
            break;
        }

    Rat acc(0);
    // Recursive walk; partial products are copied down the stack (arity is
    // small), zero products prune the branch.
    std::function<void(std::size_t, uint32_t, uint32_t, int, const std::optional<AugmentedOp> &)>
        rec = [&](std::size_t fi, uint32_t args_unused, uint32_t labels_unused, int parity,
                  const std::optional<AugmentedOp> &prod) {
            if (fi == ws.factors.size()) {
                assert(prod.has_value());
                Rat t = aug_trace(*prod);
                if (t != 0) {
                    if (parity)
                        t = -t;
                    acc += t * ws.weight;
                }
                return;
            }
            const WordFactor &f = ws.factors[fi];
            auto extend = [&](const AugmentedOp &factor, uint32_t au, uint32_t lu, int par) {
                if (factor.is_zero())
                    return;
                if (!prod.has_value()) {
                    rec(fi + 1, au, lu, par, factor);
                    return;
                }
                AugmentedOp next = aug_product(*prod, factor);
                if (next.is_zero())
                    return;
                rec(fi + 1, au, lu, par, next);
            };
            if (!f.has_arg) {
                // bare curvature factor
                extend(ctx.q_ops.at({f.q_first, f.q_second}), args_unused, labels_unused, parity);
                return;
            }
            for (int a = 0; a < m; ++a) {
                if (!(args_unused & (1u << a)))
                    continue;
                if (static_cast<int>(fi) == first_arg_factor && forced_arg >= 0 &&
                    a != forced_arg)
                    continue;
                int par_a = parity ^ (rank_below(args_unused, a) & 1);
                uint32_t au = args_unused & ~(1u << a);
                if (f.derivation) {
                    for (int li = 0; li < nfree; ++li) {
                        if (!(labels_unused & (1u << li)))
                            continue;
                        int par_l = par_a ^ (rank_below(labels_unused, li) & 1);
                        uint32_t lu = labels_unused & ~(1u << li);
                        const AugmentedOp &da = ctx.deriv_args[ws.free_labels[li] - 1][a];
                        if (da.is_zero())
                            continue;
                        AugmentedOp factor = da;
                        if (f.q_first != 0)
                            factor = aug_product(factor, ctx.q_ops.at({f.q_first, f.q_second}));
                        extend(factor, au, lu, par_l);
                    }
                } else {
                    AugmentedOp factor = ctx.args[a];
                    if (f.q_first != 0)
                        factor = aug_product(factor, ctx.q_ops.at({f.q_first, f.q_second}));
                    extend(factor, au, labels_unused, par_a);
                }
            }
        };

    uint32_t all_args = m >= 32 ? ~0u : ((1u << m) - 1);
    uint32_t all_labels = nfree >= 32 ? ~0u : ((1u << nfree) - 1);
    rec(0, all_args, all_labels, 0, std::nullopt);
    return acc;
}

} // namespace

Rat alternating_trace_sum(const CocycleSpec &spec, std::span<const WordSchema> schemas,
                          std::span<const AugmentedOp> args, const EvalOptions &opts) {
    EvalContext ctx = make_context(spec, schemas, args);
    const int m = static_cast<int>(args.size());

    struct Task {
        std::size_t schema;
        int forced_arg; // -1: whole schema in one task
    };
    std::vector<Task> tasks;
    for (std::size_t si = 0; si < schemas.size(); ++si) {
        bool any_arg = false;
        for (const auto &f : schemas[si].factors)
            any_arg |= f.has_arg;
        if (any_arg && m > 1)
            for (int a = 0; a < m; ++a)
                tasks.push_back({si, a});
        else
            tasks.push_back({si, -1});
    }

    std::vector<Rat> results(tasks.size(), Rat(0));
    std::vector<std::exception_ptr> errors(tasks.size());
    auto run_task = [&](std::size_t ti) {
        try {
            results[ti] = dfs_schema(ctx, schemas[tasks[ti].schema], tasks[ti].forced_arg);
        } catch (...) {
            errors[ti] = std::current_exception();
        }
    };

    int jobs = std::max(1, opts.jobs);
    if (jobs == 1 || tasks.size() <= 1) {
        for (std::size_t ti = 0; ti < tasks.size(); ++ti)
            run_task(ti);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t ti = next.fetch_add(1);
                if (ti >= tasks.size())
                    return;
                run_task(ti);
            }
        };
        std::vector<std::thread> pool;
        int nthreads = std::min<std::size_t>(jobs, tasks.size());
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }

    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    // Fixed summation order keeps the reported value independent of the
    // thread schedule (it already is, by exactness; this keeps it obvious).
    Rat total(0);
    for (const auto &r : results)
        total += r;
    return total;
}

Rat psi(const CocycleSpec &spec, std::span<const AugmentedOp> args, Formula f,
        const EvalOptions &opts) {
    if (static_cast<int>(args.size()) != spec.arity())
        throw ArityMismatchError("expected " + std::to_string(spec.arity()) + " arguments, got " +
                                 std::to_string(args.size()));
    auto schemas = build_schemas(spec, f);
    return alternating_trace_sum(spec, schemas, args, opts);
}

PsiParts psi_split(const CocycleSpec &spec, std::span<const AugmentedOp> args, Formula f,
                   const EvalOptions &opts) {
    if (static_cast<int>(args.size()) != spec.arity())
        throw ArityMismatchError("expected " + std::to_string(spec.arity()) + " arguments, got " +
                                 std::to_string(args.size()));
    auto schemas = build_schemas(spec, f);
    std::vector<WordSchema> lead, corr;
    for (const auto &ws : schemas) {
        bool has_q = false;
        for (const auto &fc : ws.factors)
            has_q |= fc.q_first != 0;
        (has_q ? corr : lead).push_back(ws);
    }
    PsiParts parts;
    parts.leading = alternating_trace_sum(spec, lead, args, opts);
    parts.corrections = corr.empty() ? Rat(0) : alternating_trace_sum(spec, corr, args, opts);
    return parts;
}

Rat evaluate_interval_term(const CocycleSpec &spec, const MarkedInterval &t,
                           std::span<const AugmentedOp> args, const EvalOptions &opts) {
    std::vector<WordSchema> one{interval_schema(t)};
    return alternating_trace_sum(spec, one, args, opts);
}

std::string interval_word_pattern(const MarkedInterval &t) {
    WordSchema ws = interval_schema(t);
    std::ostringstream os;
    auto free_it = ws.free_labels.begin();
    for (std::size_t i = 0; i < ws.factors.size(); ++i) {
        if (i)
            os << '*';
        const auto &f = ws.factors[i];
        if (f.derivation) {
            os << 'D' << *free_it++ << 'A' << (i + 1);
        } else if (f.q_first != 0) {
            os << 'A' << (i + 1) << "*Q" << f.q_first << f.q_second;
        } else {
            os << 'A' << (i + 1);
        }
    }
    return os.str();
}

Rat leading_term(const CocycleSpec &spec, std::span<const AugmentedOp> args,
                 const EvalOptions &opts) {
    if (static_cast<int>(args.size()) != spec.k + 1)
        throw ArityMismatchError("leading term expects k+1 arguments");
    auto schemas = interval_schemas(spec.k);
    std::vector<WordSchema> lead{schemas.front()};
    return alternating_trace_sum(spec, lead, args, opts);
}

std::vector<AugmentedOp> twisted_generators(int n, const Rat &lambda,
                                            const TruncationPolicy &policy) {
    assert(n >= 1 && n <= kMaxVars);
    std::vector<AugmentedOp> out;
    for (int i = 0; i < n; ++i)
        out.push_back(AugmentedOp::identity_times(
            PsiSymbol::monomial(n, policy.depth, Monomial::var_d(i))));
    for (int i = 0; i < n; ++i) {
        PsiSymbol s(n, policy.depth);
        for (int j = 0; j < n; ++j) {
            // x_i * x_j d_j is already normal-ordered
            Monomial m = Monomial::var_x(i).exp_plus(Monomial::var_x(j)).exp_plus(
                Monomial::var_d(j));
            s.add_term(m, Rat(1));
        }
        s.add_term(Monomial::var_x(i), -lambda);
        out.push_back(AugmentedOp::identity_times(s));
    }
    return out;
}

std::vector<AugmentedOp> standard_xd_arguments(int n, const TruncationPolicy &policy) {
    std::vector<AugmentedOp> args;
    for (int v = 0; v < n; ++v) {
        args.push_back(AugmentedOp::identity_times(
            PsiSymbol::monomial(n, policy.depth, Monomial::var_x(v))));
        args.push_back(AugmentedOp::identity_times(
            PsiSymbol::monomial(n, policy.depth, Monomial::var_d(v))));
    }
    args.push_back(
        AugmentedOp::unit_matrix(1, 1, PsiSymbol::constant(n, policy.depth, Rat(1))));
    return args;
}

Rat interval_class_term(int n, int l, const TruncationPolicy &policy, const EvalOptions &opts) {
    assert(l >= 1 && l <= n);
    const int k = 2 * n;
    CocycleSpec spec = standard_spec(n, k, 1, policy);
    auto args = standard_xd_arguments(n, policy);
    MarkedInterval t;
    t.k = k;
    for (int j = 1; j <= 2 * l - 1; j += 2)
        t.marks.push_back(j);
    Rat single = evaluate_interval_term(spec, t, args, opts);
    // Both derivation orientations of each marked pair contribute equally
    // (label swap flips the sign, the antisymmetry of q flips it back), so
    // the grouped class value is 2^l times the single term.
    return Rat(1 << l) * single;
}

} // namespace liftcoc
