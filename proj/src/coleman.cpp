#include "padiclog/coleman.hpp"

namespace padiclog {

namespace {

std::vector<Poly> reps(const std::vector<LambdaN>& v) {
    std::vector<Poly> out;
    for (const auto& x : v) out.push_back(x.rep());
    return out;
}

std::vector<LambdaN> to_lambda(const std::vector<Poly>& v, int level) {
    std::vector<LambdaN> out;
    for (const auto& f : v) out.emplace_back(f, level);
    return out;
}

void check_shape(const FrobeniusData& fd, int n, std::size_t len) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "level must be >= 1");
    if (len != fd.size()) fail(ErrorKind::InvalidArgument, "vector length must be rd = " + std::to_string(fd.size()));
}

std::vector<Poly> times(const PolyMatrix& m, const std::vector<Poly>& v, int n) {
    std::vector<Poly> out = m.apply(v);
    for (auto& f : out) f = reduce_mod_omega_poly(f, n);
    return out;
}

} // namespace

ColemanVector make_coleman(int level, const std::vector<Poly>& comps) {
    return ColemanVector{level, to_lambda(comps, level), kKernelTag};
}

RegulatorVector make_regulator(int level, const std::vector<Poly>& comps) {
    return RegulatorVector{level, to_lambda(comps, level)};
}

Comparison compare(const RegulatorVector& a, const RegulatorVector& b) {
    if (a.level != b.level || a.components.size() != b.components.size()) return Comparison::Unequal;
    Comparison acc = Comparison::Equal;
    for (std::size_t i = 0; i < a.components.size(); ++i)
        acc = combine(acc, compare(a.components[i].rep(), b.components[i].rep()));
    return acc;
}

RegulatorVector forward(const FrobeniusData& fd, int n, const ColemanVector& col) {
    check_shape(fd, n, col.components.size());
    std::vector<Poly> v = reps(col.components);
    for (int k = 1; k <= n; ++k) v = times(build_Cn(fd, k), v, n);
    return make_regulator(n, v);
}

ColemanVector factor_level(const FrobeniusData& fd, int n, const RegulatorVector& L) {
    check_shape(fd, n, L.components.size());
    if (L.level != n) fail(ErrorKind::InvalidArgument, "regulator vector is at a different level");
    const PolyMatrix C = to_poly(fd.C());
    std::vector<Poly> v = reps(L.components);
    for (int k = n; k >= 1; --k) {
        const Poly phi = phi_cyclo(fd.context(), k);
        for (std::size_t i = fd.fil_rank(); i < fd.size(); ++i) {
            auto [q, r] = divide_exact(v[i], phi);
            switch (compare_to_zero(r)) {
            case Comparison::Equal: break;
            case Comparison::Unequal:
                fail(ErrorKind::NotInImage, "component " + std::to_string(i + 1) + " at stage " + std::to_string(k) +
                                                " is not divisible by Phi_{p^" + std::to_string(k) + "}; remainder X^0 coefficient " +
                                                r.coeff(0).to_string());
            case Comparison::Indistinguishable:
                fail(ErrorKind::PrecisionLoss, "component " + std::to_string(i + 1) + " at stage " + std::to_string(k) +
                                                   ": remainder is zero only below the certification floor");
            }
            v[i] = q;
        }
        v = times(C, v, n);
    }
    ColemanVector out = make_coleman(n, v);
    switch (compare(forward(fd, n, out), L)) {
    case Comparison::Equal: break;
    case Comparison::Indistinguishable: fail(ErrorKind::PrecisionLoss, "factorization postcondition holds only below the floor");
    case Comparison::Unequal: fail(ErrorKind::NotInImage, "factorization postcondition failed");
    }
    return out;
}

RegulatorVector integral_shift(const FrobeniusData& fd, int n, const std::vector<Poly>& raw) {
    check_shape(fd, n, raw.size());
    const PolyMatrix shift = to_poly(matrix_power(fd.C_phi_inv(), n + 1));
    const std::vector<Poly> v = times(shift, raw, n);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v[i].size(); ++j)
            if (!v[i].coeffs()[j].is_zero() && !v[i].coeffs()[j].is_integral())
                fail(ErrorKind::NotIntegral, "component " + std::to_string(i + 1) + " X^" + std::to_string(j) + ": " +
                                                 v[i].coeffs()[j].to_string());
    return make_regulator(n, v);
}

std::vector<ColemanVector> kernel_basis_h(const FrobeniusData& fd, int n) {
    if (fd.size() > 4) fail(ErrorKind::InvalidArgument, "explicit kernel bases are offered only for rd <= 4");
    const ContextPtr& ctx = fd.context();
    const std::size_t deg = static_cast<std::size_t>(ctx->pow(n).get_ui());
    const std::size_t rd = fd.size(), dim = rd * deg;
    ScalarMatrix h = zero_matrix(ctx, dim, dim);
    for (std::size_t i = 0; i < rd; ++i)
        for (std::size_t j = 0; j < deg; ++j) {
            std::vector<Poly> e(rd, Poly(ctx));
            e[i] = Poly::monomial(ctx, j, PadicScalar::one(ctx));
            const RegulatorVector img = forward(fd, n, make_coleman(n, e));
            for (std::size_t a = 0; a < rd; ++a)
                for (std::size_t b = 0; b < deg; ++b) h(a * deg + b, i * deg + j) = img.components[a].rep().coeff(b);
        }
    std::vector<ColemanVector> out;
    for (const auto& v : kernel_basis(h)) {
        std::vector<Poly> comps;
        for (std::size_t i = 0; i < rd; ++i)
            comps.emplace_back(ctx, std::vector<PadicScalar>(v.begin() + static_cast<std::ptrdiff_t>(i * deg),
                                                             v.begin() + static_cast<std::ptrdiff_t>((i + 1) * deg)));
        out.push_back(make_coleman(n, comps));
    }
    return out;
}

} // namespace padiclog
