#include "liftcoc/ce.hpp"

#include "liftcoc/errors.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace liftcoc {

CochainHandle psi_cochain(CocycleSpec spec, Formula f, EvalOptions opts) {
    CochainHandle h;
    h.arity = spec.arity();
    auto schemas = std::make_shared<std::vector<WordSchema>>(build_schemas(spec, f));
    auto sp = std::make_shared<CocycleSpec>(std::move(spec));
    h.eval = [sp, schemas, opts](std::span<const AugmentedOp> args) {
        return alternating_trace_sum(*sp, *schemas, args, opts);
    };
    return h;
}

Rat coboundary_eval(const CochainHandle &c, std::span<const AugmentedOp> args) {
    const int p1 = static_cast<int>(args.size());
    if (p1 != c.arity + 1)
        throw ArityMismatchError("coboundary expects arity+1 arguments");
    Rat acc(0);
    std::vector<AugmentedOp> sub;
    sub.reserve(c.arity);
    for (int i = 1; i <= p1; ++i) {
        for (int j = i + 1; j <= p1; ++j) {
            sub.clear();
            sub.push_back(aug_bracket(args[i - 1], args[j - 1]));
            for (int t = 1; t <= p1; ++t)
                if (t != i && t != j)
                    sub.push_back(args[t - 1]);
            Rat v = c.eval(sub);
            if ((i + j) % 2)
                v = -v;
            acc += v;
        }
    }
    return acc;
}

CochainHandle coboundary(const CochainHandle &c) {
    CochainHandle d;
    d.arity = c.arity + 1;
    d.eval = [c](std::span<const AugmentedOp> args) { return coboundary_eval(c, args); };
    return d;
}

CochainHandle contraction(const CochainHandle &c, AugmentedOp t) {
    if (c.arity < 1)
        throw ArityMismatchError("contraction needs arity >= 1");
    CochainHandle r;
    r.arity = c.arity - 1;
    r.eval = [c, t = std::move(t)](std::span<const AugmentedOp> args) {
        std::vector<AugmentedOp> full;
        full.reserve(args.size() + 1);
        full.push_back(t);
        full.insert(full.end(), args.begin(), args.end());
        return c.eval(full);
    };
    return r;
}

CochainHandle ad_action(const CochainHandle &c, AugmentedOp t) {
    CochainHandle r;
    r.arity = c.arity;
    r.eval = [c, t = std::move(t)](std::span<const AugmentedOp> args) {
        Rat acc(0);
        std::vector<AugmentedOp> mod(args.begin(), args.end());
        for (std::size_t i = 0; i < mod.size(); ++i) {
            AugmentedOp saved = mod[i];
            mod[i] = aug_bracket(t, saved);
            acc -= c.eval(mod);
            mod[i] = saved;
        }
        return acc;
    };
    return r;
}

namespace {

// Least-squares-free exact decomposition of a symbol over a list of basis
// symbols, via Gaussian elimination on the monomial-coefficient matrix.
class SymbolSpan {
  public:
    explicit SymbolSpan(const std::vector<PsiSymbol> &basis) : basis_(basis) {
        std::set<Monomial> support;
        for (const auto &s : basis)
            for (const auto &[m, c] : s.terms())
                support.insert(m);
        monomials_.assign(support.begin(), support.end());
        rows_ = static_cast<int>(monomials_.size());
        cols_ = static_cast<int>(basis.size());
    }

    // Returns coords such that sum coords[i] * basis[i] == s; throws when s
    // is outside the span.
    std::vector<Rat> decompose(const PsiSymbol &s) const {
        // Dense solve, rebuilt per call; spans here are tiny.
        std::vector<std::vector<Rat>> a(rows_, std::vector<Rat>(cols_ + 1, Rat(0)));
        for (int r = 0; r < rows_; ++r) {
            for (int c = 0; c < cols_; ++c)
                a[r][c] = basis_[c].coeff(monomials_[r]);
            a[r][cols_] = s.coeff(monomials_[r]);
        }
        for (const auto &[m, c] : s.terms())
            if (!std::binary_search(monomials_.begin(), monomials_.end(), m))
                throw std::invalid_argument(
                    "coefficient span is not closed under the bracket");
        std::vector<int> pivot_col_of_row;
        int prow = 0;
        for (int c = 0; c < cols_ && prow < rows_; ++c) {
            int sel = -1;
            for (int r = prow; r < rows_; ++r)
                if (a[r][c] != 0) {
                    sel = r;
                    break;
                }
            if (sel < 0)
                continue;
            std::swap(a[sel], a[prow]);
            Rat inv = Rat(1) / a[prow][c];
            for (int cc = c; cc <= cols_; ++cc)
                a[prow][cc] *= inv;
            for (int r = 0; r < rows_; ++r)
                if (r != prow && a[r][c] != 0) {
                    Rat f = a[r][c];
                    for (int cc = c; cc <= cols_; ++cc)
                        a[r][cc] -= f * a[prow][cc];
                }
            pivot_col_of_row.push_back(c);
            ++prow;
        }
        std::vector<Rat> coords(cols_, Rat(0));
        for (int r = 0; r < prow; ++r)
            coords[pivot_col_of_row[r]] = a[r][cols_];
        for (int r = prow; r < rows_; ++r)
            if (a[r][cols_] != 0)
                throw std::invalid_argument(
                    "coefficient span is not closed under the bracket");
        // Verify (free columns may exist when basis symbols are dependent).
        return coords;
    }

  private:
    const std::vector<PsiSymbol> &basis_;
    std::vector<Monomial> monomials_;
    int rows_, cols_;
};

} // namespace

ChainSpace::ChainSpace(int window, std::vector<PsiSymbol> coefficient_basis) {
    assert(window >= 1 && !coefficient_basis.empty());
    const int nv = coefficient_basis.front().nvars();
    const int depth = coefficient_basis.front().depth();
    for (int r = 1; r <= window; ++r)
        for (int c = 1; c <= window; ++c)
            for (const auto &s : coefficient_basis)
                basis_.push_back(AugmentedOp::unit_matrix(r, c, s));

    SymbolSpan span(coefficient_basis);
    const int nsym = static_cast<int>(coefficient_basis.size());
    auto slot = [&](int r, int c, int sym) { return ((r - 1) * window + (c - 1)) * nsym + sym; };

    brackets_.assign(basis_.size(), {});
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        brackets_[i].assign(basis_.size(), {});
        for (std::size_t j = 0; j < basis_.size(); ++j) {
            AugmentedOp br = aug_bracket(basis_[i], basis_[j]);
            std::vector<std::pair<int, Rat>> coords;
            for (const auto &[idx, sym] : br.finite().entries()) {
                auto sym_coords = span.decompose(sym);
                for (int t = 0; t < nsym; ++t)
                    if (sym_coords[t] != 0)
                        coords.emplace_back(slot(idx.first, idx.second, t), sym_coords[t]);
            }
            if (!br.id_part().is_zero())
                throw std::invalid_argument("bracket left the finite window");
            std::sort(coords.begin(), coords.end(),
                      [](const auto &a, const auto &b) { return a.first < b.first; });
            brackets_[i][j] = std::move(coords);
        }
    }
    (void)nv;
    (void)depth;
}

const std::vector<std::pair<int, Rat>> &ChainSpace::bracket_coords(int i, int j) const {
    return brackets_[i][j];
}

void ChainElement::add_word(std::vector<int> word, Rat c) {
    if (c == 0)
        return;
    assert(static_cast<int>(word.size()) == degree_);
    // insertion sort, tracking the permutation sign
    int swaps = 0;
    for (std::size_t i = 1; i < word.size(); ++i)
        for (std::size_t j = i; j > 0 && word[j - 1] > word[j]; --j) {
            std::swap(word[j - 1], word[j]);
            ++swaps;
        }
    for (std::size_t i = 1; i < word.size(); ++i)
        if (word[i] == word[i - 1])
            return;
    if (swaps % 2)
        c = -c;
    auto [it, inserted] = terms_.emplace(std::move(word), c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

ChainElement chain_boundary(const ChainElement &c) {
    const int p = c.degree();
    ChainElement out(c.space(), std::max(p - 1, 0));
    if (p < 2)
        return out;
    for (const auto &[word, coeff] : c.terms()) {
        for (int i = 0; i < p; ++i) {
            for (int j = i + 1; j < p; ++j) {
                const auto &br = c.space()->bracket_coords(word[i], word[j]);
                if (br.empty())
                    continue;
                std::vector<int> rest;
                rest.reserve(p - 1);
                rest.push_back(0); // placeholder for the bracket slot
                for (int t = 0; t < p; ++t)
                    if (t != i && t != j)
                        rest.push_back(word[t]);
                Rat sign = ((i + j) % 2) ? Rat(-1) : Rat(1);
                for (const auto &[b, bc] : br) {
                    rest[0] = b;
                    out.add_word(rest, coeff * bc * sign);
                }
            }
        }
    }
    return out;
}

Rat pair_cochain_chain(const CochainHandle &c, const ChainElement &gamma) {
    if (c.arity != gamma.degree())
        throw ArityMismatchError("pairing needs matching arity and degree");
    Rat acc(0);
    std::vector<AugmentedOp> ops;
    for (const auto &[word, coeff] : gamma.terms()) {
        ops.clear();
        for (int b : word)
            ops.push_back(gamma.space()->basis_op(b));
        acc += coeff * c.eval(ops);
    }
    return acc;
}

namespace {

std::vector<std::vector<int>> wedge_words(int dim, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> w(degree);
    std::function<void(int, int)> rec = [&](int pos, int from) {
        if (pos == degree) {
            out.push_back(w);
            return;
        }
        for (int b = from; b < dim; ++b) {
            w[pos] = b;
            rec(pos + 1, b + 1);
        }
    };
    if (degree >= 0)
        rec(0, 0);
    return out;
}

} // namespace

std::vector<ChainElement> find_cycles(const ChainSpace &space, int degree, std::size_t dim_cap) {
    const int dim = space.dim();
    auto cols = wedge_words(dim, degree);
    if (cols.size() > dim_cap)
        throw DimensionTooLargeError("wedge dimension " + std::to_string(cols.size()) +
                                     " exceeds cap " + std::to_string(dim_cap));
    if (degree < 2) {
        // boundary vanishes identically
        std::vector<ChainElement> out;
        for (const auto &w : cols) {
            ChainElement e(&space, degree);
            e.add_word(w, Rat(1));
            out.push_back(std::move(e));
        }
        return out;
    }

    auto rows = wedge_words(dim, degree - 1);
    std::map<std::vector<int>, int> row_index;
    for (std::size_t r = 0; r < rows.size(); ++r)
        row_index[rows[r]] = static_cast<int>(r);

    const int R = static_cast<int>(rows.size());
    const int C = static_cast<int>(cols.size());
    std::vector<std::vector<Rat>> a(R, std::vector<Rat>(C, Rat(0)));
    for (int c = 0; c < C; ++c) {
        ChainElement e(&space, degree);
        e.add_word(cols[c], Rat(1));
        ChainElement b = chain_boundary(e);
        for (const auto &[word, coeff] : b.terms())
            a[row_index.at(word)][c] = coeff;
    }

    // rational row reduction; nullspace from the free columns
    std::vector<int> pivot_of_col(C, -1);
    int prow = 0;
    for (int c = 0; c < C && prow < R; ++c) {
        int sel = -1;
        for (int r = prow; r < R; ++r)
            if (a[r][c] != 0) {
                sel = r;
                break;
            }
        if (sel < 0)
            continue;
        std::swap(a[sel], a[prow]);
        Rat inv = Rat(1) / a[prow][c];
        for (int cc = c; cc < C; ++cc)
            a[prow][cc] *= inv;
        for (int r = 0; r < R; ++r)
            if (r != prow && a[r][c] != 0) {
                Rat f = a[r][c];
                for (int cc = c; cc < C; ++cc)
                    a[r][cc] -= f * a[prow][cc];
            }
        pivot_of_col[c] = prow;
        ++prow;
    }

    std::vector<ChainElement> out;
    for (int c = 0; c < C; ++c) {
        if (pivot_of_col[c] >= 0)
            continue;
        ChainElement e(&space, degree);
        e.add_word(cols[c], Rat(1));
        for (int cc = 0; cc < C; ++cc)
            if (pivot_of_col[cc] >= 0) {
                Rat v = a[pivot_of_col[cc]][c];
                if (v != 0)
                    e.add_word(cols[cc], -v);
            }
        out.push_back(std::move(e));
    }
    return out;
}

Rat psi_on_matrix_cycle(const CocycleSpec &spec, std::span<const AugmentedOp> frame,
                        const ChainElement &cycle, Formula f, const EvalOptions &opts) {
    if (!chain_boundary(cycle).is_zero())
        throw NotACycleError("chain has nonzero boundary");
    if (static_cast<int>(frame.size()) + cycle.degree() != spec.arity())
        throw ArityMismatchError("frame size plus cycle degree must equal the arity");
    auto schemas = build_schemas(spec, f);
    Rat acc(0);
    std::vector<AugmentedOp> args;
    for (const auto &[word, coeff] : cycle.terms()) {
        args.assign(frame.begin(), frame.end());
        for (int b : word)
            args.push_back(cycle.space()->basis_op(b));
        acc += coeff * alternating_trace_sum(spec, schemas, args, opts);
    }
    return acc;
}

} // namespace liftcoc
