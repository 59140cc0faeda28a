#include "padiclog/linalg.hpp"

#include <algorithm>

namespace padiclog {

Comparison combine(Comparison acc, Comparison next) {
    if (acc == Comparison::Unequal || next == Comparison::Unequal) return Comparison::Unequal;
    if (acc == Comparison::Indistinguishable || next == Comparison::Indistinguishable)
        return Comparison::Indistinguishable;
    return Comparison::Equal;
}

ScalarMatrix scalar_matrix(const ContextPtr& ctx, const std::vector<std::vector<mpq_class>>& rows) {
    std::vector<std::vector<PadicScalar>> out;
    for (const auto& r : rows) {
        std::vector<PadicScalar> row;
        for (const auto& x : r) row.push_back(PadicScalar::from_rational(ctx, x));
        out.push_back(std::move(row));
    }
    return ScalarMatrix::from_rows(out);
}

ScalarMatrix identity_matrix(const ContextPtr& ctx, std::size_t n) {
    return ScalarMatrix::identity(n, PadicScalar::zero(ctx), PadicScalar::one(ctx));
}

ScalarMatrix zero_matrix(const ContextPtr& ctx, std::size_t rows, std::size_t cols) {
    return ScalarMatrix(rows, cols, PadicScalar::zero(ctx));
}

ScalarMatrix inverse(const ScalarMatrix& m) {
    if (!m.is_square() || m.rows() == 0) fail(ErrorKind::InvalidArgument, "inverse of a non-square matrix");
    const std::size_t n = m.rows();
    const ContextPtr ctx = m(0, 0).context();
    ScalarMatrix a = m;
    ScalarMatrix inv = identity_matrix(ctx, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t r = c; r < n; ++r) {
            if (a(r, c).is_zero()) continue;
            if (piv == n || a(r, c).valuation() < a(piv, c).valuation()) piv = r;
        }
        if (piv == n)
            fail(ErrorKind::SingularOperator, "matrix is singular at working precision (column " + std::to_string(c) + ")");
        if (piv != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        const PadicScalar s = a(c, c).inv();
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) = s * a(c, j);
            inv(c, j) = s * inv(c, j);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c).is_exact_zero()) continue;
            const PadicScalar f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

PadicScalar det(const ScalarMatrix& m) {
    if (m.rows() == 0) fail(ErrorKind::InvalidArgument, "determinant of an empty matrix");
    return determinant(m, PadicScalar::zero(m(0, 0).context()));
}

long min_valuation(const ScalarMatrix& m) {
    long v = PadicScalar::kInfinity;
    for (const auto& x : m.data()) v = std::min(v, x.valuation());
    return v;
}

Comparison compare(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return Comparison::Unequal;
    Comparison acc = Comparison::Equal;
    for (std::size_t k = 0; k < a.data().size(); ++k) acc = combine(acc, compare(a.data()[k], b.data()[k]));
    return acc;
}

bool is_integral(const ScalarMatrix& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](const PadicScalar& x) { return x.is_integral(); });
}

PolyMatrix to_poly(const ScalarMatrix& m) {
    return m.map([](const PadicScalar& x) { return Poly::constant(x); });
}

PolyMatrix identity_poly_matrix(const ContextPtr& ctx, std::size_t n) {
    return to_poly(identity_matrix(ctx, n));
}

ScalarMatrix eval_at_zero(const PolyMatrix& m) {
    return m.map([](const Poly& f) { return eval_at_zero(f); });
}

PolyMatrix reduce_mod_omega(const PolyMatrix& m, int n) {
    return m.map([n](const Poly& f) { return reduce_mod_omega_poly(f, n); });
}

Poly det(const PolyMatrix& m) {
    if (m.rows() == 0) fail(ErrorKind::InvalidArgument, "determinant of an empty matrix");
    ContextPtr ctx;
    for (const auto& f : m.data())
        if (f.context()) ctx = f.context();
    return determinant(m, Poly(ctx));
}

long min_valuation(const PolyMatrix& m) {
    long v = PadicScalar::kInfinity;
    for (const auto& f : m.data()) v = std::min(v, f.min_valuation());
    return v;
}

Comparison compare(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return Comparison::Unequal;
    Comparison acc = Comparison::Equal;
    for (std::size_t k = 0; k < a.data().size(); ++k) acc = combine(acc, compare(a.data()[k], b.data()[k]));
    return acc;
}

Comparison compare_to_zero(const PolyMatrix& m) {
    Comparison acc = Comparison::Equal;
    for (const auto& f : m.data()) acc = combine(acc, compare_to_zero(f));
    return acc;
}

ColumnEchelon column_echelon(const ScalarMatrix& a) {
    ScalarMatrix m = a;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t i = 0; i < rows && next < cols; ++i) {
        std::size_t best = cols;
        for (std::size_t j = next; j < cols; ++j) {
            if (m(i, j).is_zero()) continue;
            if (best == cols || m(i, j).valuation() < m(i, best).valuation()) best = j;
        }
        if (best == cols) continue;
        if (best != next)
            for (std::size_t r = 0; r < rows; ++r) std::swap(m(r, best), m(r, next));
        const PadicScalar pinv = m(i, next).inv();
        for (std::size_t j = next + 1; j < cols; ++j) {
            if (m(i, j).is_zero()) continue;
            const PadicScalar t = m(i, j) * pinv;
            for (std::size_t r = 0; r < rows; ++r) m(r, j) -= t * m(r, next);
        }
        pivots.push_back(i);
        ++next;
    }
    ColumnEchelon e;
    e.pivot_rows = pivots;
    if (next == 0) {
        e.columns = ScalarMatrix();
        return e;
    }
    std::vector<std::vector<PadicScalar>> out(rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t j = 0; j < next; ++j) out[r].push_back(m(r, j));
    e.columns = ScalarMatrix::from_rows(out);
    return e;
}

Membership lattice_contains(const ColumnEchelon& e, const Vector& w) {
    Vector x = w;
    Membership result = Membership::Member;
    std::size_t k = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (k < e.pivot_rows.size() && e.pivot_rows[k] == i) {
            if (!x[i].is_zero()) {
                const PadicScalar t = x[i] / e.columns(i, k);
                if (!t.is_integral()) return Membership::NotMember;
                for (std::size_t r = 0; r < x.size(); ++r) x[r] -= t * e.columns(r, k);
            }
            ++k;
            continue;
        }
        switch (compare_to_zero(x[i])) {
        case Comparison::Unequal: return Membership::NotMember;
        case Comparison::Indistinguishable: result = Membership::Indeterminate; break;
        case Comparison::Equal: break;
        }
    }
    return result;
}

std::size_t rank(const ScalarMatrix& a) { return column_echelon(a).pivot_rows.size(); }

std::vector<Vector> kernel_basis(const ScalarMatrix& a) {
    ScalarMatrix m = a;
    const std::size_t rows = m.rows(), cols = m.cols();
    if (cols == 0) return {};
    const ContextPtr ctx = m(0, 0).context();
    std::vector<std::size_t> pivot_col_of_row;
    std::vector<bool> is_pivot(cols, false);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (m(i, c).is_zero()) continue;
            if (piv == rows || m(i, c).valuation() < m(piv, c).valuation()) piv = i;
        }
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
        const PadicScalar s = m(r, c).inv();
        for (std::size_t j = 0; j < cols; ++j) m(r, j) = s * m(r, j);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const PadicScalar f = m(i, c);
            for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivot_col_of_row.push_back(c);
        is_pivot[c] = true;
        ++r;
    }
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(cols, PadicScalar::zero(ctx));
        v[f] = PadicScalar::one(ctx);
        for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i) v[pivot_col_of_row[i]] = -m(i, f);
        long mv = PadicScalar::kInfinity;
        for (const auto& x : v) mv = std::min(mv, x.valuation());
        if (mv != 0 && mv != PadicScalar::kInfinity) {
            const PadicScalar pk = PadicScalar::from_integer(ctx, ctx->p()).pow(-mv);
            for (auto& x : v) x = pk * x;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace padiclog

namespace padiclog {

std::string describe_nonzero(const PolyMatrix& m) {
    std::string indeterminate;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto& cs = m(i, j).coeffs();
            for (std::size_t k = 0; k < cs.size(); ++k) {
                const Comparison c = compare_to_zero(cs[k]);
                if (c == Comparison::Equal) continue;
                std::string where = "(" + std::to_string(i) + "," + std::to_string(j) + ") X^" + std::to_string(k) +
                                    ": " + cs[k].to_string();
                if (c == Comparison::Unequal) return where;
                if (indeterminate.empty()) indeterminate = where;
            }
        }
    return indeterminate;
}

} // namespace padiclog
