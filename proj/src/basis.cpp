#include "padiclog/basis.hpp"

#include <algorithm>
#include <random>

namespace padiclog {

namespace {

std::string index_list(const std::vector<std::size_t>& idx) {
    std::string s = "{";
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i] + 1);
    return s + "}";
}

void require_vectors(const std::vector<Vector>& vs, std::size_t len, const char* what) {
    for (const auto& v : vs)
        if (v.size() != len) fail(ErrorKind::InvalidArgument, std::string(what) + ": vector of wrong length");
}

bool is_unit_value(const PadicScalar& x) {
    return compare_to_zero(x) == Comparison::Unequal && x.valuation() == 0;
}

std::vector<Vector> pick(const std::vector<Vector>& vs, const std::vector<std::size_t>& idx) {
    std::vector<Vector> out;
    for (auto i : idx) out.push_back(vs[i]);
    return out;
}

PadicScalar det_of_columns(const std::vector<Vector>& cols) { return det(columns_matrix(cols)); }

// Nonzero at precision and below the desk threshold rel_prec - size.
Status determinant_status(const PadicScalar& d, std::size_t size) {
    const Comparison c = compare_to_zero(d);
    if (c == Comparison::Equal) return Status::Fail;
    if (c == Comparison::Indistinguishable) return Status::Indeterminate;
    if (d.valuation() >= static_cast<long>(d.context()->rel_prec()) - static_cast<long>(size))
        return Status::Indeterminate;
    return Status::Pass;
}

BasisCertificate certificate_for(const LatticeSetup& setup, const std::vector<Vector>& family, std::string name) {
    BasisCertificate cert;
    cert.family = std::move(name);
    cert.saturated = true;
    for (const auto& idx : subsets(setup.g, setup.g_minus)) {
        std::vector<Vector> cols = pick(family, idx);
        cols.insert(cols.end(), setup.fil0_dual.begin(), setup.fil0_dual.end());
        const PadicScalar d = det_of_columns(cols);
        SubsetEntry e;
        e.indices = idx;
        e.status = determinant_status(d, setup.g);
        if (e.status == Status::Pass) e.valuation = d.valuation();
        if (e.status != Status::Pass || e.valuation != 0) cert.saturated = false;
        if (e.status == Status::Fail) cert.status = Status::Fail;
        else if (e.status == Status::Indeterminate && cert.status == Status::Pass) cert.status = Status::Indeterminate;
        cert.entries.push_back(std::move(e));
    }
    return cert;
}

Vector scale(const PadicScalar& s, const Vector& v) {
    Vector out;
    for (const auto& x : v) out.push_back(s * x);
    return out;
}

Vector add(const Vector& a, const Vector& b) {
    Vector out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return out;
}

Vector moment_point(const ContextPtr& ctx, std::size_t rank, long t, bool with_constant) {
    Vector v;
    mpz_class power = with_constant ? 1 : t;
    for (std::size_t i = 0; i < rank; ++i) {
        v.push_back(PadicScalar::from_integer(ctx, power));
        power *= t;
    }
    return v;
}

bool all_forms_units(const std::vector<Hyperplane>& hs, const Vector& v) {
    for (const auto& h : hs)
        if (!is_unit_value(hyperplane_form(h, v))) return false;
    return true;
}

// Base-p digits of n as a length-g integer vector.
std::vector<long> residue_digits(long n, long p, std::size_t g) {
    std::vector<long> xs(g, 0);
    for (std::size_t i = 0; i < g && n > 0; ++i) {
        xs[i] = n % p;
        n /= p;
    }
    return xs;
}

// Vector complementing the hyperplane h over Z_p, off every hyperplane of w0.
std::optional<Vector> complement_vector(const ContextPtr& ctx, const Hyperplane& h,
                                        const std::vector<Hyperplane>& w0, std::size_t rank) {
    std::optional<Vector> e;
    for (std::size_t j = 0; j < rank && !e; ++j) {
        std::vector<long> xs(rank, 0);
        xs[j] = 1;
        Vector cand = integer_vector(ctx, xs);
        if (is_unit_value(hyperplane_form(h, cand))) e = cand;
    }
    if (!e) return std::nullopt;
    const PadicScalar p = PadicScalar::from_integer(ctx, ctx->p());
    const long limit = static_cast<long>(rank * (w0.size() + 1)) + 2;
    for (long t = 0; t <= limit; ++t) {
        Vector cand = add(*e, scale(p, moment_point(ctx, rank, t, false)));
        if (avoids(w0, cand)) return cand;
    }
    return std::nullopt;
}

long det_mod_p(std::vector<std::vector<long>> m, long p) {
    const std::size_t n = m.size();
    long d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] % p == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = p - d;
        }
        const long a = ((m[c][c] % p) + p) % p;
        d = d * a % p;
        long inv = 1, b = a, e = p - 2;
        for (; e > 0; e >>= 1, b = b * b % p)
            if (e & 1) inv = inv * b % p;
        for (std::size_t r = c + 1; r < n; ++r) {
            const long f = ((m[r][c] % p) + p) % p * inv % p;
            for (std::size_t j = c; j < n; ++j) m[r][j] = ((m[r][j] - f * m[c][j]) % p + p) % p;
        }
    }
    return d % p;
}

long residue_of(const PadicScalar& x, long p) {
    if (x.is_zero() || x.valuation() > 0) return 0;
    return mpz_class(x.unit() % p).get_si();
}

// Depth-first search for `need` more points of P^{rank-1}(F_p) such that
// every rank-subset of pts is independent mod p. `budget` bounds the nodes.
bool extend_arc(std::vector<std::vector<long>>& pts, std::size_t rank, std::size_t need, long p,
                const std::vector<std::vector<long>>& candidates, std::size_t from, long& budget) {
    if (need == 0) return true;
    const auto ss = subsets(pts.size(), rank - 1);
    for (std::size_t i = from; i < candidates.size(); ++i) {
        if (--budget < 0) return false;
        bool fits = true;
        for (const auto& s : ss) {
            std::vector<std::vector<long>> rows;
            for (auto j : s) rows.push_back(pts[j]);
            rows.push_back(candidates[i]);
            if (det_mod_p(rows, p) == 0) {
                fits = false;
                break;
            }
        }
        if (!fits) continue;
        pts.push_back(candidates[i]);
        if (extend_arc(pts, rank, need - 1, p, candidates, i + 1, budget)) return true;
        pts.pop_back();
    }
    return false;
}

// Row echelon form over F_p of the integer vectors chosen so far.
struct ResidueSpan {
    long p;
    std::vector<std::vector<long>> rows; // echelon rows, pivot = first nonzero
    std::vector<std::size_t> pivots;

    static long mod(long a, long p) { return ((a % p) + p) % p; }

    long inv(long a) const {
        long r = 1, b = mod(a, p), e = p - 2;
        while (e > 0) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    }

    std::vector<long> reduce(std::vector<long> x) const {
        for (auto& c : x) c = mod(c, p);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const long f = x[pivots[k]];
            if (f == 0) continue;
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i] - f * rows[k][i], p);
        }
        return x;
    }

    bool insert(const std::vector<long>& x) {
        std::vector<long> r = reduce(x);
        std::size_t piv = r.size();
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] != 0) {
                piv = i;
                break;
            }
        if (piv == r.size()) return false;
        const long s = inv(r[piv]);
        for (auto& c : r) c = c * s % p;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const long f = rows[k][piv];
            if (f == 0) continue;
            for (std::size_t i = 0; i < r.size(); ++i) rows[k][i] = mod(rows[k][i] - f * r[i], p);
        }
        rows.push_back(r);
        pivots.push_back(piv);
        return true;
    }
};

// All g_minus-subsets of {0..j} containing j pass for both families.
bool new_vector_fits(const LatticeSetup& setup, const std::vector<Vector>& plain, const std::vector<Vector>& moved) {
    const std::size_t j = plain.size() - 1;
    if (j + 1 < setup.g_minus) return true;
    for (const auto& rest : subsets(j, setup.g_minus - 1)) {
        std::vector<std::size_t> idx = rest;
        idx.push_back(j);
        for (const auto* fam : {&plain, &moved}) {
            std::vector<Vector> cols = pick(*fam, idx);
            cols.insert(cols.end(), setup.fil0_dual.begin(), setup.fil0_dual.end());
            if (determinant_status(det_of_columns(cols), setup.g) != Status::Pass) return false;
        }
    }
    return true;
}

} // namespace

std::string BasisCertificate::witness() const {
    for (const auto& e : entries) {
        if (e.status == Status::Fail) return family + " I=" + index_list(e.indices) + ": det[v_I | Fil0] = 0";
        if (e.status == Status::Indeterminate)
            return family + " I=" + index_list(e.indices) + ": determinant indistinguishable from zero";
    }
    return {};
}

LatticeSetup LatticeSetup::make(ContextPtr ctx, std::size_t g, std::size_t g_minus, std::vector<Vector> fil0_dual,
                                std::optional<ScalarMatrix> phi_matrix) {
    if (g_minus < 1 || g_minus > g) fail(ErrorKind::InvalidArgument, "need 1 <= g_minus <= g");
    if (g > 8) fail(ErrorKind::InvalidArgument, "g > 8 is outside the supported range");
    if (fil0_dual.size() != g - g_minus)
        fail(ErrorKind::InvalidArgument, "fil0_dual must hold g - g_minus = " + std::to_string(g - g_minus) + " vectors");
    require_vectors(fil0_dual, g, "fil0_dual");
    if (!fil0_dual.empty()) {
        bool summand = false;
        const ScalarMatrix f = columns_matrix(fil0_dual);
        for (const auto& rows : subsets(g, fil0_dual.size())) {
            std::vector<std::vector<PadicScalar>> minor;
            for (auto r : rows) minor.push_back(f.row(r));
            if (is_unit_value(det(ScalarMatrix::from_rows(minor)))) {
                summand = true;
                break;
            }
        }
        if (!summand) fail(ErrorKind::InvalidArgument, "fil0_dual does not span a direct summand");
    }
    if (phi_matrix && (phi_matrix->rows() != g || phi_matrix->cols() != g))
        fail(ErrorKind::InvalidArgument, "phi_matrix must be g x g");
    LatticeSetup s;
    s.ctx = std::move(ctx);
    s.g = g;
    s.g_minus = g_minus;
    s.fil0_dual = std::move(fil0_dual);
    s.phi_matrix = std::move(phi_matrix);
    return s;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

ScalarMatrix columns_matrix(const std::vector<Vector>& cols) {
    if (cols.empty()) fail(ErrorKind::InvalidArgument, "no columns");
    std::vector<std::vector<PadicScalar>> rows(cols.front().size());
    for (const auto& c : cols) {
        if (c.size() != rows.size()) fail(ErrorKind::InvalidArgument, "columns of different lengths");
        for (std::size_t i = 0; i < c.size(); ++i) rows[i].push_back(c[i]);
    }
    return ScalarMatrix::from_rows(rows);
}

Vector integer_vector(const ContextPtr& ctx, const std::vector<long>& xs) {
    Vector v;
    for (long x : xs) v.push_back(PadicScalar::from_integer(ctx, x));
    return v;
}

BasisCertificate is_admissible(const LatticeSetup& setup, const std::vector<Vector>& basis) {
    if (basis.size() != setup.g) fail(ErrorKind::InvalidArgument, "basis must have g vectors");
    require_vectors(basis, setup.g, "basis");
    return certificate_for(setup, basis, "plain");
}

ScalarMatrix strong_operator(const LatticeSetup& setup) {
    if (!setup.phi_matrix) fail(ErrorKind::InvalidArgument, "strong admissibility needs phi_matrix");
    const ScalarMatrix& phi = *setup.phi_matrix;
    const ScalarMatrix id = identity_matrix(setup.ctx, setup.g);
    const PadicScalar p = PadicScalar::from_integer(setup.ctx, setup.ctx->p());
    return inverse(id - phi) * (phi.scaled(p) - id);
}

std::pair<BasisCertificate, BasisCertificate> is_strongly_admissible(const LatticeSetup& setup,
                                                                     const std::vector<Vector>& basis) {
    BasisCertificate plain = is_admissible(setup, basis);
    const ScalarMatrix t = strong_operator(setup);
    std::vector<Vector> moved;
    for (const auto& v : basis) moved.push_back(t.apply(v));
    return {std::move(plain), certificate_for(setup, moved, "transformed")};
}

PadicScalar hyperplane_form(const Hyperplane& h, const Vector& v) {
    std::vector<Vector> cols = h;
    cols.push_back(v);
    if (cols.size() != v.size()) fail(ErrorKind::InvalidArgument, "hyperplane must have rank - 1 generators");
    return det_of_columns(cols);
}

bool avoids(const std::vector<Hyperplane>& hs, const Vector& v) {
    for (const auto& h : hs)
        if (compare_to_zero(hyperplane_form(h, v)) != Comparison::Unequal) return false;
    return true;
}

Vector escape_union(const ContextPtr& ctx, std::size_t rank, const std::vector<Hyperplane>& hyperplanes, int k) {
    if (rank == 0 || k < 1) fail(ErrorKind::InvalidArgument, "escape_union needs rank >= 1 and k >= 1");
    // Each form restricted to the moment curve is a nonzero polynomial of
    // degree < rank in t, so this many parameters always suffice.
    const long limit = static_cast<long>(rank * (hyperplanes.size() + 1)) + 1;
    for (long t = 0; t <= limit; ++t) {
        Vector w = moment_point(ctx, rank, t, true);
        if (!avoids(hyperplanes, w)) continue;
        const PadicScalar pk = PadicScalar::from_integer(ctx, ctx->pow(k));
        while (true) {
            bool divisible = true;
            for (const auto& x : w)
                if (!x.is_zero() && x.valuation() < k) divisible = false;
            if (!divisible) break;
            w = scale(pk.inv(), w);
        }
        return w;
    }
    fail(ErrorKind::SearchExhausted, "escape_union: no moment-curve point off the hyperplanes at rel_prec " +
                                         std::to_string(ctx->rel_prec()));
}

std::pair<PadicScalar, PadicScalar> avoid_slopes(const PadicScalar& a, const PadicScalar& b, const PadicScalar& c,
                                                 const PadicScalar& d, const std::vector<PadicScalar>& forbidden) {
    if (!is_unit_value(a * d - b * c) || !a.is_integral() || !b.is_integral() || !c.is_integral() ||
        !d.is_integral())
        fail(ErrorKind::InvalidArgument, "avoid_slopes needs a matrix in GL_2(Z_p)");
    const ContextPtr ctx = a.context();
    const long p = ctx->p();
    const PadicScalar x = PadicScalar::one(ctx);
    const long limit = 2 * p * static_cast<long>(forbidden.size() + 2);
    for (long yi = 1; yi <= limit; ++yi) {
        if (yi % p == 0) continue;
        const PadicScalar y = PadicScalar::from_integer(ctx, yi);
        const PadicScalar den = c * x + d * y;
        if (!is_unit_value(den)) continue;
        const PadicScalar ratio = (a * x + b * y) / den;
        bool ok = true;
        for (const auto& f : forbidden)
            if (compare(ratio, f) != Comparison::Unequal) ok = false;
        if (ok) return {x, y};
    }
    fail(ErrorKind::SearchExhausted, "avoid_slopes: no admissible y up to " + std::to_string(limit));
}

Vector merge_complement(const Hyperplane& w1, const Hyperplane& w2, const Vector& v1, const Vector& v2,
                        const std::vector<Hyperplane>& w0) {
    if (v1.size() != v2.size() || v1.empty()) fail(ErrorKind::InvalidArgument, "merge_complement: vector lengths");
    const PadicScalar l1 = hyperplane_form(w1, v1);
    const PadicScalar l2 = hyperplane_form(w2, v2);
    if (!is_unit_value(l1)) fail(ErrorKind::DegenerateInput, "W1 + Z_p v1 is not all of W");
    if (!is_unit_value(l2)) fail(ErrorKind::DegenerateInput, "W2 + Z_p v2 is not all of W");
    if (!avoids(w0, v1)) fail(ErrorKind::DegenerateInput, "v1 lies in W0");
    if (!avoids(w0, v2)) fail(ErrorKind::DegenerateInput, "v2 lies in W0");

    // x1: v2-coordinate of v1 in W2 + Z_p v2; x2: v1-coordinate of v2 in W1 + Z_p v1.
    const PadicScalar x1 = hyperplane_form(w2, v1) / l2;
    if (is_unit_value(x1)) return v1;
    const PadicScalar x2 = hyperplane_form(w1, v2) / l1;
    if (is_unit_value(x2)) return v2;

    const ContextPtr ctx = v1.front().context();
    const PadicScalar one = PadicScalar::one(ctx);
    const PadicScalar dx = x1 * x2 - one;
    const PadicScalar a = x2 / dx, b = -one / dx, c = -one / dx, d = x1 / dx;

    std::vector<PadicScalar> forbidden;
    for (const auto& h : w0) forbidden.push_back(-hyperplane_form(h, v2) / hyperplane_form(h, v1));
    const auto [x, y] = avoid_slopes(a, b, c, d, forbidden);
    const PadicScalar alpha = a * x + b * y;
    const PadicScalar beta = c * x + d * y;
    Vector v = add(scale(alpha, v1), scale(beta, v2));

    if (!is_unit_value(hyperplane_form(w1, v)) || !is_unit_value(hyperplane_form(w2, v)) || !avoids(w0, v))
        fail(ErrorKind::DegenerateInput, "merged vector failed re-verification");
    return v;
}

ExtendResult generic_position_extend(const std::vector<Vector>& w_basis, std::size_t k) {
    if (w_basis.empty()) fail(ErrorKind::InvalidArgument, "empty basis");
    const std::size_t rank = w_basis.size();
    require_vectors(w_basis, rank, "W basis");
    if (!is_unit_value(det_of_columns(w_basis))) fail(ErrorKind::InvalidArgument, "W basis is not a Z_p-basis");
    const ContextPtr ctx = w_basis.front().front().context();

    ExtendResult res;
    res.vectors = w_basis;
    for (std::size_t step = 0; step < k; ++step) {
        const auto ss = subsets(res.vectors.size(), rank - 1);
        std::vector<Hyperplane> hs;
        for (const auto& s : ss) hs.push_back(pick(res.vectors, s));

        std::optional<Vector> chosen;
        std::string route;
        try {
            std::optional<Vector> v;
            Hyperplane prev;
            for (const auto& h : hs) {
                std::optional<Vector> vs = complement_vector(ctx, h, hs, rank);
                if (!vs) {
                    v.reset();
                    break;
                }
                if (!v) v = vs;
                else v = merge_complement(prev, h, *v, *vs, hs);
                prev = h;
            }
            if (v && all_forms_units(hs, *v)) {
                chosen = v;
                route = "lemma";
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateInput && e.kind() != ErrorKind::SearchExhausted) throw;
        }
        if (!chosen) {
            const long p = ctx->p();
            long total = 1;
            for (std::size_t i = 0; i < rank && total <= 20000; ++i) total *= p;
            for (long n = 1; n < total && total <= 20000 && !chosen; ++n) {
                Vector cand = integer_vector(ctx, residue_digits(n, p, rank));
                if (all_forms_units(hs, cand)) {
                    chosen = cand;
                    route = "residue-search";
                }
            }
        }
        if (!chosen) {
            chosen = escape_union(ctx, rank, hs, 1);
            route = "generic";
        }
        res.vectors.push_back(*chosen);
        res.routes.push_back(route);
    }

    auto saturated = [&](const std::vector<Vector>& vs) {
        bool all_units = true;
        for (const auto& s : subsets(vs.size(), rank)) {
            const PadicScalar d = det_of_columns(pick(vs, s));
            if (determinant_status(d, rank) != Status::Pass)
                fail(ErrorKind::SearchExhausted, "generic_position_extend: subset " + index_list(s) +
                                                     " is singular at rel_prec " + std::to_string(ctx->rel_prec()));
            if (d.valuation() != 0) all_units = false;
        }
        return all_units;
    };
    res.saturated = saturated(res.vectors);

    // The greedy choice can end in a complete arc that is too small. When an
    // arc of size rank + k exists mod p, search for one by backtracking.
    const long p = ctx->p();
    const bool feasible = rank + k <= static_cast<std::size_t>(p) + 1 || rank == 1 || k == 1;
    long points = 1;
    for (std::size_t i = 0; i < rank && points <= 20000; ++i) points *= p;
    if (!res.saturated && feasible && points <= 20000) {
        std::vector<std::vector<long>> candidates;
        for (long n = 1; n < points; ++n) {
            std::vector<long> xs = residue_digits(n, p, rank);
            const auto lead = std::find_if(xs.begin(), xs.end(), [](long x) { return x != 0; });
            if (*lead == 1) candidates.push_back(xs);
        }
        std::vector<std::vector<long>> pts;
        for (const auto& v : w_basis) {
            std::vector<long> r;
            for (const auto& x : v) r.push_back(residue_of(x, p));
            pts.push_back(r);
        }
        long budget = 200000;
        if (extend_arc(pts, rank, k, p, candidates, 0, budget)) {
            std::vector<Vector> vs = w_basis;
            for (std::size_t j = rank; j < pts.size(); ++j) vs.push_back(integer_vector(ctx, pts[j]));
            if (saturated(vs)) {
                res.vectors = std::move(vs);
                res.routes.assign(k, "residue-backtrack");
                res.saturated = true;
            }
        }
    }
    return res;
}

CandidateBasis certify(const LatticeSetup& setup, std::vector<Vector> basis, std::string route) {
    CandidateBasis out;
    out.plain = is_admissible(setup, basis);
    const bool lattice_basis = is_unit_value(det_of_columns(basis));
    out.admissible = lattice_basis && out.plain.status == Status::Pass;
    out.saturated = out.admissible && out.plain.saturated;
    if (setup.phi_matrix) {
        auto [plain, moved] = is_strongly_admissible(setup, basis);
        out.transformed = std::move(moved);
        out.strongly_admissible = out.admissible && out.transformed->status == Status::Pass;
    }
    out.vectors = std::move(basis);
    out.route = std::move(route);
    return out;
}

CandidateBasis construct_admissible(const LatticeSetup& setup) {
    const std::size_t g = setup.g, gm = setup.g_minus, gp = setup.g_plus();
    const ContextPtr& ctx = setup.ctx;

    // Complete Fil0 by standard vectors to a basis F = [fil0 | E] of Z_p^g.
    std::vector<Vector> e_cols;
    for (const auto& js : subsets(g, gm)) {
        std::vector<Vector> cols = setup.fil0_dual;
        std::vector<Vector> extra;
        for (auto j : js) {
            std::vector<long> xs(g, 0);
            xs[j] = 1;
            extra.push_back(integer_vector(ctx, xs));
        }
        cols.insert(cols.end(), extra.begin(), extra.end());
        if (is_unit_value(det_of_columns(cols))) {
            e_cols = std::move(extra);
            break;
        }
    }
    if (e_cols.empty()) fail(ErrorKind::DegenerateInput, "could not complete Fil0 to a basis");

    // In W = dual / Fil0 the images of E form the standard basis.
    std::vector<Vector> w_std;
    for (std::size_t i = 0; i < gm; ++i) {
        std::vector<long> xs(gm, 0);
        xs[i] = 1;
        w_std.push_back(integer_vector(ctx, xs));
    }
    const ExtendResult ext = generic_position_extend(w_std, gp);

    // Lift w_j to E w_j, plus the j-th Fil0 generator for the last g_plus vectors.
    std::vector<Vector> basis;
    for (std::size_t j = 0; j < g; ++j) {
        Vector v(g, PadicScalar::zero(ctx));
        for (std::size_t i = 0; i < gm; ++i) v = add(v, scale(ext.vectors[j][i], e_cols[i]));
        if (j >= gm) v = add(v, setup.fil0_dual[j - gm]);
        basis.push_back(std::move(v));
    }

    std::string route = "extend:";
    for (std::size_t i = 0; i < ext.routes.size(); ++i) route += (i ? "," : "") + ext.routes[i];
    CandidateBasis out = certify(setup, std::move(basis), route);
    if (!out.admissible)
        fail(ErrorKind::SearchExhausted, "constructed basis did not certify (" + out.plain.witness() + ") at rel_prec " +
                                             std::to_string(ctx->rel_prec()));
    return out;
}

CandidateBasis construct_strongly_admissible(const LatticeSetup& setup, const StrongSearchOptions& opts) {
    const ScalarMatrix t = strong_operator(setup);
    const ContextPtr& ctx = setup.ctx;
    const std::size_t g = setup.g;
    const long p = ctx->p();

    if (!opts.deterministic_only) {
        std::mt19937_64 rng(opts.seed);
        const long bound = opts.sample_bound > 0 ? opts.sample_bound : p;
        std::uniform_int_distribution<long> dist(-bound, bound);
        for (int attempt = 0; attempt < opts.attempts; ++attempt) {
            ResidueSpan span{p, {}, {}};
            std::vector<Vector> plain, moved;
            bool ok = true;
            for (std::size_t j = 0; j < g && ok; ++j) {
                std::vector<long> xs(g);
                for (auto& x : xs) x = dist(rng);
                if (!span.insert(xs)) {
                    ok = false;
                    break;
                }
                plain.push_back(integer_vector(ctx, xs));
                moved.push_back(t.apply(plain.back()));
                ok = new_vector_fits(setup, plain, moved);
            }
            if (!ok) continue;
            CandidateBasis out = certify(setup, plain, "random");
            out.seed = opts.seed;
            if (out.strongly_admissible) return out;
        }
    }

    // Deterministic fallback: greedy over residue representatives [0, p)^g.
    long residues = 1;
    for (std::size_t i = 0; i < g && residues <= opts.enumeration_limit; ++i) residues *= p;
    ResidueSpan span{p, {}, {}};
    std::vector<Vector> plain, moved;
    for (std::size_t j = 0; j < g; ++j) {
        bool found = false;
        for (long n = 1; n < std::min(residues, opts.enumeration_limit + 1) && !found; ++n) {
            std::vector<long> xs = residue_digits(n, p, g);
            ResidueSpan trial = span;
            if (!trial.insert(xs)) continue;
            plain.push_back(integer_vector(ctx, xs));
            moved.push_back(t.apply(plain.back()));
            if (new_vector_fits(setup, plain, moved)) {
                span = std::move(trial);
                found = true;
            } else {
                plain.pop_back();
                moved.pop_back();
            }
        }
        if (!found)
            fail(ErrorKind::SearchExhausted, "no strongly admissible vector " + std::to_string(j + 1) + " (p=" +
                                                 std::to_string(p) + ", g=" + std::to_string(g) + ", rel_prec=" +
                                                 std::to_string(ctx->rel_prec()) + ", seed=" +
                                                 std::to_string(opts.seed) + ")");
    }
    CandidateBasis out = certify(setup, plain, "deterministic");
    out.seed = opts.seed;
    if (!out.strongly_admissible)
        fail(ErrorKind::SearchExhausted, "deterministic basis did not certify: " + out.transformed->witness());
    return out;
}

} // namespace padiclog
