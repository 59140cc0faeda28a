#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "padiclog/matrix.hpp"
#include "padiclog/series.hpp"

namespace padiclog {

using Vector = std::vector<PadicScalar>;
using ScalarMatrix = Matrix<PadicScalar>;
using PolyMatrix = Matrix<Poly>;
using SeriesMatrix = Matrix<Series>;

/// Equal only if every part is Equal; Unequal dominates Indistinguishable.
Comparison combine(Comparison acc, Comparison next);

ScalarMatrix scalar_matrix(const ContextPtr& ctx, const std::vector<std::vector<mpq_class>>& rows);
ScalarMatrix identity_matrix(const ContextPtr& ctx, std::size_t n);
ScalarMatrix zero_matrix(const ContextPtr& ctx, std::size_t rows, std::size_t cols);

/// Gauss-Jordan with the smallest-valuation pivot in each column.
/// SingularOperator if a column has no pivot distinguishable from zero.
ScalarMatrix inverse(const ScalarMatrix& m);
PadicScalar det(const ScalarMatrix& m);
long min_valuation(const ScalarMatrix& m);
Comparison compare(const ScalarMatrix& a, const ScalarMatrix& b);
bool is_integral(const ScalarMatrix& m);

PolyMatrix to_poly(const ScalarMatrix& m);
PolyMatrix identity_poly_matrix(const ContextPtr& ctx, std::size_t n);
ScalarMatrix eval_at_zero(const PolyMatrix& m);
PolyMatrix reduce_mod_omega(const PolyMatrix& m, int n);
Poly det(const PolyMatrix& m);
long min_valuation(const PolyMatrix& m);
Comparison compare(const PolyMatrix& a, const PolyMatrix& b);
Comparison compare_to_zero(const PolyMatrix& m);

/// Column echelon form of a Z_p-lattice spanned by the columns of a matrix
/// over Q_p, obtained with unimodular column operations only.
struct ColumnEchelon {
    ScalarMatrix columns;                     // reduced generators, pivot order
    std::vector<std::size_t> pivot_rows;      // pivot row of each generator
};

ColumnEchelon column_echelon(const ScalarMatrix& a);

enum class Membership { Member, NotMember, Indeterminate };

/// Is w in the Z_p-span of the echelon generators?
Membership lattice_contains(const ColumnEchelon& e, const Vector& w);

std::size_t rank(const ScalarMatrix& a);

/// Basis of the Q_p-kernel of a, each vector scaled to be primitive
/// (minimum valuation 0).
std::vector<Vector> kernel_basis(const ScalarMatrix& a);

} // namespace padiclog

namespace padiclog {

/// Human-readable location of the first coefficient that is not certified
/// zero, e.g. "(1,0) X^4: 3^-1 * 2 (prec 19)"; empty when all are zero.
std::string describe_nonzero(const PolyMatrix& m);

} // namespace padiclog
