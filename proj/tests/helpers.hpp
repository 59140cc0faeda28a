#pragma once

#include <random>
#include <vector>

#include "oracle/rational.hpp"
#include "padiclog/log_matrix.hpp"

namespace testing_helpers {

using namespace padiclog;

inline oracle::QPoly to_q(const Poly& f) {
    oracle::QPoly out;
    for (const auto& c : f.coeffs()) out.push_back(c.to_rational());
    oracle::trim(out);
    return out;
}

inline oracle::QMat to_q(const ScalarMatrix& m) {
    oracle::QMat out(m.rows(), std::vector<mpq_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).to_rational();
    return out;
}

inline bool same(const Poly& f, const oracle::QPoly& g) {
    return compare(f, Poly::from_rationals(f.context(), g)) == Comparison::Equal;
}

inline bool same(const PolyMatrix& m, const oracle::PMat& g) {
    if (m.rows() != g.size() || m.cols() != g[0].size()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!same(m(i, j), g[i][j])) return false;
    return true;
}

inline bool same(const ScalarMatrix& m, const oracle::QMat& g) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (compare(m(i, j), PadicScalar::from_rational(m(i, j).context(), g[i][j])) != Comparison::Equal)
                return false;
    return true;
}

struct Instance {
    int d, d0, r;
    oracle::QMat C;
};

inline Instance pollack_instance() { return {2, 1, 1, {{0, -1}, {1, 0}}}; }

inline mpz_class qdet_num(const oracle::QMat& m) { return oracle::det(m).get_num(); }

/// Random integral C with det(C) a unit at p whose data passes the
/// hypothesis checks; shapes cycle through (d,d0,r) = (2,1,1), (4,2,1), (2,1,2), (4,1,1).
inline std::vector<Instance> random_instances(long p, int count, unsigned seed) {
    const Instance shapes[] = {{2, 1, 1, {}}, {4, 2, 1, {}}, {2, 1, 2, {}}, {4, 1, 1, {}}};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> entry(-4, 4);
    auto ctx = PadicContext::make(p, 20, 12);
    std::vector<Instance> out;
    int shape = 0;
    while (static_cast<int>(out.size()) < count) {
        Instance inst = shapes[shape % 4];
        const std::size_t n = static_cast<std::size_t>(inst.r * inst.d);
        inst.C.assign(n, std::vector<mpq_class>(n));
        for (auto& row : inst.C)
            for (auto& x : row) x = entry(rng);
        if (qdet_num(inst.C) % p == 0) continue;
        try {
            (void)FrobeniusData::make(ctx, inst.d, inst.d0, inst.r, inst.C);
        } catch (const Error&) {
            continue;
        }
        out.push_back(inst);
        ++shape;
    }
    return out;
}

inline oracle::QMat frob(const Instance& inst, long p) {
    oracle::QMat m = inst.C;
    const std::size_t f = static_cast<std::size_t>(inst.r * inst.d0);
    for (auto& row : m)
        for (std::size_t j = f; j < row.size(); ++j) row[j] /= p;
    return m;
}

/// M_n over Q by direct multiplication: C_phi^(n+1) C_n ... C_1.
inline oracle::PMat oracle_Mn(const Instance& inst, long p, unsigned n) {
    const oracle::QMat cphi = frob(inst, p);
    const oracle::QMat cinv = oracle::inverse(inst.C);
    const std::size_t f = static_cast<std::size_t>(inst.r * inst.d0);
    oracle::PMat prod = oracle::lift(cphi);
    for (unsigned i = 0; i < n; ++i) prod = oracle::pmul(prod, oracle::lift(cphi));
    for (unsigned k = n; k >= 1; --k) {
        oracle::PMat ck = oracle::lift(cinv);
        const auto phi = oracle::cyclo(static_cast<unsigned long>(p), k);
        for (std::size_t i = f; i < ck.size(); ++i)
            for (auto& e : ck[i]) e = oracle::mul(phi, e);
        prod = oracle::pmul(prod, ck);
    }
    return prod;
}

} // namespace testing_helpers
