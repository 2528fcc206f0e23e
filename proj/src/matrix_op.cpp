#include "liftcoc/matrix_op.hpp"

#include <cassert>
#include <sstream>

namespace liftcoc {

PsiSymbol FinMatrix::entry(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? PsiSymbol::zero(nvars_, depth_) : it->second;
}

void FinMatrix::add_entry(int r, int c, const PsiSymbol &s) {
    assert(r >= 1 && c >= 1);
    if (s.is_zero())
        return;
    auto [it, inserted] = entries_.emplace(Index{r, c}, s);
    if (!inserted) {
        it->second += s;
        if (it->second.is_zero())
            entries_.erase(it);
    }
}

FinMatrix FinMatrix::truncated(int new_depth) const {
    FinMatrix r(nvars_, new_depth);
    for (const auto &[idx, s] : entries_) {
        PsiSymbol t = s.truncated(new_depth);
        if (!t.is_zero())
            r.entries_.emplace(idx, std::move(t));
    }
    return r;
}

AugmentedOp AugmentedOp::identity_times(const PsiSymbol &s) {
    AugmentedOp a(s.nvars(), s.depth());
    a.id_part_ = s;
    return a;
}

AugmentedOp AugmentedOp::unit_matrix(int r, int c, const PsiSymbol &s) {
    AugmentedOp a(s.nvars(), s.depth());
    a.finite_.add_entry(r, c, s);
    return a;
}

AugmentedOp AugmentedOp::truncated(int new_depth) const {
    AugmentedOp a(nvars_, new_depth);
    a.finite_ = finite_.truncated(new_depth);
    a.id_part_ = id_part_.truncated(new_depth);
    return a;
}

AugmentedOp &AugmentedOp::operator+=(const AugmentedOp &o) {
    assert(nvars_ == o.nvars_);
    for (const auto &[idx, s] : o.finite_.entries())
        finite_.add_entry(idx.first, idx.second, s);
    id_part_ += o.id_part_;
    depth_ = std::min(depth_, o.depth_);
    return *this;
}

AugmentedOp &AugmentedOp::operator-=(const AugmentedOp &o) {
    assert(nvars_ == o.nvars_);
    for (const auto &[idx, s] : o.finite_.entries())
        finite_.add_entry(idx.first, idx.second, -s);
    id_part_ -= o.id_part_;
    depth_ = std::min(depth_, o.depth_);
    return *this;
}

AugmentedOp &AugmentedOp::operator*=(const Rat &c) {
    FinMatrix f(nvars_, depth_);
    for (const auto &[idx, s] : finite_.entries())
        f.add_entry(idx.first, idx.second, s * c);
    finite_ = std::move(f);
    id_part_ *= c;
    return *this;
}

AugmentedOp aug_product(const AugmentedOp &a, const AugmentedOp &b) {
    assert(a.nvars_ == b.nvars_);
    int depth = std::min(a.depth(), b.depth());
    AugmentedOp r(a.nvars_, depth);

    // finite * finite
    for (const auto &[ia, sa] : a.finite_.entries())
        for (const auto &[ib, sb] : b.finite_.entries())
            if (ia.second == ib.first)
                r.finite_.add_entry(ia.first, ib.second, product(sa, sb));
    // finite * Id-part: scale entries on the right
    if (!b.id_part_.is_zero())
        for (const auto &[ia, sa] : a.finite_.entries())
            r.finite_.add_entry(ia.first, ia.second, product(sa, b.id_part_));
    // Id-part * finite
    if (!a.id_part_.is_zero())
        for (const auto &[ib, sb] : b.finite_.entries())
            r.finite_.add_entry(ib.first, ib.second, product(a.id_part_, sb));
    r.id_part_ = product(a.id_part_, b.id_part_);
    return r;
}

AugmentedOp aug_bracket(const AugmentedOp &a, const AugmentedOp &b) {
    return aug_product(a, b) - aug_product(b, a);
}

Rat aug_trace(const AugmentedOp &a) {
    if (residue(a.id_part()) != 0)
        throw NonTraceClassError("identity part has nonzero residue");
    Rat t(0);
    for (const auto &[idx, s] : a.finite().entries())
        if (idx.first == idx.second)
            t += residue(s);
    return t;
}

AugmentedOp aug_derivation(const Derivation &dv, const AugmentedOp &a) {
    AugmentedOp r(a.nvars(), a.depth());
    for (const auto &[idx, s] : a.finite().entries())
        r.add_finite(idx.first, idx.second, apply_derivation(dv, s));
    r.add_id(apply_derivation(dv, a.id_part()));
    return r;
}

std::string aug_str(const AugmentedOp &a) {
    if (a.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    if (!a.id_part().is_zero()) {
        os << "ID*(" << symbol_str(a.id_part()) << ")";
        first = false;
    }
    for (const auto &[idx, s] : a.finite().entries()) {
        if (!first)
            os << " + ";
        first = false;
        os << "E[" << idx.first << "," << idx.second << "]*(" << symbol_str(s) << ")";
    }
    return os.str();
}

} // namespace liftcoc
