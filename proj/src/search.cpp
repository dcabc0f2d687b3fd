#include "pbrigid/search.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "pbrigid/error.hpp"

namespace pbrigid {

namespace {

// Dense linear algebra over F_p with p below 2^31, so products fit in 64 bits.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

struct FpSystem {
    std::uint64_t p = 2;
    std::size_t cols = 0;
    std::vector<std::vector<std::uint64_t>> rows;

    // Reduced row echelon form; returns pivot column per pivot row.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
            std::size_t sel = r;
            while (sel < rows.size() && rows[sel][c] == 0) ++sel;
            if (sel == rows.size()) continue;
            std::swap(rows[r], rows[sel]);
            const std::uint64_t inv = mod_inverse(rows[r][c], p);
            for (auto& x : rows[r]) x = x * inv % p;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == r || rows[i][c] == 0) continue;
                const std::uint64_t f = rows[i][c];
                for (std::size_t j = 0; j < rows[r].size(); ++j)
                    rows[i][j] = (rows[i][j] + (p - f) * rows[r][j]) % p;
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }
};

// All ring-variable exponent vectors (full arity, U and V zero) with total
// degree at most cap, in ascending canonical term order.
std::vector<Exponents> ring_monomials(std::size_t nvars, std::uint64_t cap) {
    std::vector<Exponents> out;
    Exponents current(nvars + 2, 0);
    const std::function<void(std::size_t, std::uint64_t)> walk = [&](std::size_t slot,
                                                                     std::uint64_t left) {
        if (slot == nvars) {
            out.push_back(current);
            return;
        }
        for (std::uint64_t e = 0; e <= left; ++e) {
            current[slot] = e;
            walk(slot + 1, left - e);
        }
        current[slot] = 0;
    };
    walk(0, cap);
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
}

struct SearchContext {
    PresPtr pres;
    FieldSpec field;
    std::uint64_t p = 2;
    std::uint64_t layers = 1;
    std::vector<std::size_t> moving;        // generator indices allowed to move
    std::vector<Poly> monomials;            // candidate mu as polynomials
    std::vector<Poly> columns;              // nf(dG/dx_i * mu) per unknown
    std::map<Exponents, std::size_t, GrlexLess> row_index;
    std::vector<std::vector<std::uint64_t>> matrix;  // dense column-major free
    std::vector<std::vector<std::uint64_t>> nullspace;
    std::size_t rank = 0;
    std::function<void(std::uint64_t, std::uint64_t)> progress;

    SearchOutcome outcome;
};

std::vector<std::uint64_t> poly_to_column(const SearchContext& ctx, const Poly& f,
                                          bool* representable) {
    std::vector<std::uint64_t> col(ctx.row_index.size(), 0);
    *representable = true;
    for (const auto& [exps, coeff] : f.terms()) {
        auto it = ctx.row_index.find(exps);
        if (it == ctx.row_index.end()) {
            *representable = false;
            return col;
        }
        col[it->second] = coeff.residue();
    }
    return col;
}

// Solves matrix * x = rhs. The matrix rows are the monomial equations; the
// returned particular solution sets all free unknowns to zero.
std::optional<std::vector<std::uint64_t>> solve_particular(const SearchContext& ctx,
                                                           const std::vector<std::uint64_t>& rhs) {
    const std::size_t n = ctx.columns.size();
    FpSystem sys;
    sys.p = ctx.p;
    sys.cols = n;
    sys.rows.assign(ctx.row_index.size(), std::vector<std::uint64_t>(n + 1, 0));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < ctx.matrix[c].size(); ++r)
            sys.rows[r][c] = ctx.matrix[c][r];
    for (std::size_t r = 0; r < rhs.size(); ++r) sys.rows[r][n] = rhs[r];

    auto pivots = sys.rref();
    std::vector<std::uint64_t> x(n, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == n) return std::nullopt;  // pivot in the rhs column
        x[pivots[r]] = sys.rows[r][n];
    }
    return x;
}

void compute_nullspace(SearchContext& ctx) {
    const std::size_t n = ctx.columns.size();
    FpSystem sys;
    sys.p = ctx.p;
    sys.cols = n;
    sys.rows.assign(ctx.row_index.size(), std::vector<std::uint64_t>(n, 0));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < ctx.matrix[c].size(); ++r)
            sys.rows[r][c] = ctx.matrix[c][r];
    auto pivots = sys.rref();
    ctx.rank = pivots.size();

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint64_t> v(n, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = (ctx.p - sys.rows[r][f] % ctx.p) % ctx.p;
        ctx.nullspace.push_back(std::move(v));
    }
}

// Layer-d additions encoded by the solution vector, as a polynomial per
// moving generator.
std::vector<std::pair<std::size_t, Poly>> layer_polys(const SearchContext& ctx,
                                                      const std::vector<std::uint64_t>& sol,
                                                      std::uint64_t layer) {
    std::vector<std::pair<std::size_t, Poly>> out;
    Exponents u_shift(ctx.pres->nvars() + 2, 0);
    u_shift[ctx.pres->nvars()] = layer;
    const Poly u_pow =
        Poly::monomial(ctx.field, ctx.pres->nvars(), u_shift, Coeff::from_int(ctx.field, 1));
    for (std::size_t m = 0; m < ctx.moving.size(); ++m) {
        Poly add = Poly::zero(ctx.field, ctx.pres->nvars());
        for (std::size_t k = 0; k < ctx.monomials.size(); ++k) {
            const std::uint64_t c = sol[m * ctx.monomials.size() + k];
            if (c == 0) continue;
            add = add + ctx.monomials[k].scale(Coeff::from_int(ctx.field, static_cast<long long>(c)));
        }
        if (!add.is_zero()) out.emplace_back(ctx.moving[m], add * u_pow);
    }
    return out;
}

void search_layer(SearchContext& ctx, std::vector<Poly>& images, std::uint64_t layer) {
    if (layer > ctx.layers) {
        ++ctx.outcome.candidates;
        if (ctx.progress && ctx.outcome.candidates % 4096 == 0)
            ctx.progress(ctx.outcome.candidates,
                         static_cast<std::uint64_t>(ctx.outcome.maps.size()));
        bool moved = false;
        for (std::size_t i = 0; i < images.size() && !moved; ++i)
            moved = images[i].involves(ctx.pres->nvars());
        if (!moved) return;  // the identity candidate
        ExpMap candidate(ctx.pres, images);
        if (candidate.verify().ok) ctx.outcome.maps.push_back(std::move(candidate));
        return;
    }

    const Poly w = ctx.pres->normal_form(ctx.pres->relation().substitute(images));
    bool representable = true;
    const auto rhs_raw = poly_to_column(ctx, w.coefficient_of_u(layer), &representable);
    if (!representable) return;
    std::vector<std::uint64_t> rhs(rhs_raw.size());
    for (std::size_t r = 0; r < rhs.size(); ++r) rhs[r] = (ctx.p - rhs_raw[r] % ctx.p) % ctx.p;

    const auto particular = solve_particular(ctx, rhs);
    if (!particular) return;

    mpz_class combos;
    mpz_ui_pow_ui(combos.get_mpz_t(), static_cast<unsigned long>(ctx.p),
                  static_cast<unsigned long>(ctx.nullspace.size()));
    for (mpz_class t = 0; t < combos; ++t) {
        std::vector<std::uint64_t> sol = *particular;
        mpz_class rem = t;
        for (const auto& basis : ctx.nullspace) {
            const std::uint64_t digit =
                mpz_class(rem % static_cast<unsigned long>(ctx.p)).get_ui();
            rem /= static_cast<unsigned long>(ctx.p);
            if (digit)
                for (std::size_t k = 0; k < sol.size(); ++k)
                    sol[k] = (sol[k] + digit * basis[k]) % ctx.p;
        }
        const auto additions = layer_polys(ctx, sol, layer);
        for (const auto& [idx, add] : additions) images[idx] = images[idx] + add;
        search_layer(ctx, images, layer + 1);
        for (const auto& [idx, add] : additions) images[idx] = images[idx] - add;
    }
}

}  // namespace

SearchOutcome enumerate_maps(const PresPtr& pres, const SearchBounds& bounds) {
    if (!pres) fail(Errc::presentation_mismatch, "missing presentation");
    const FieldSpec& field = pres->field();
    if (field.characteristic == 0)
        fail(Errc::invalid_characteristic,
             "search enumerates coefficients and needs a finite field");

    SearchContext ctx;
    ctx.pres = pres;
    ctx.field = field;
    ctx.p = field.characteristic;
    ctx.layers = bounds.max_u_degree;
    ctx.progress = bounds.progress;

    const std::size_t n = pres->nvars();
    if (bounds.variable_mask) {
        ctx.moving = *bounds.variable_mask;
        std::sort(ctx.moving.begin(), ctx.moving.end());
        ctx.moving.erase(std::unique(ctx.moving.begin(), ctx.moving.end()), ctx.moving.end());
        for (std::size_t i : ctx.moving)
            if (i >= n) fail(Errc::arity_mismatch, "mask index outside the generators");
    } else {
        for (std::size_t i = 0; i < n; ++i) ctx.moving.push_back(i);
    }

    std::vector<Poly> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(Poly::variable(field, n, i));

    if (ctx.layers == 0 || ctx.moving.empty()) {
        ctx.outcome.candidates = 1;  // only the identity fits the bounds
        ctx.outcome.leaf_bound = 1;
        return std::move(ctx.outcome);
    }

    for (const auto& exps : ring_monomials(n, bounds.max_total_degree))
        ctx.monomials.push_back(
            Poly::monomial(field, n, exps, Coeff::from_int(field, 1)));

    for (std::size_t i : ctx.moving) {
        const Poly d = pres->relation().derivative(i);
        for (const Poly& mu : ctx.monomials)
            ctx.columns.push_back(pres->normal_form(d * mu));
    }
    ctx.outcome.unknowns = ctx.columns.size();

    for (const Poly& col : ctx.columns)
        for (const auto& [exps, coeff] : col.terms()) {
            (void)coeff;
            ctx.row_index.emplace(exps, 0);
        }
    std::size_t next = 0;
    for (auto& [exps, idx] : ctx.row_index) idx = next++;

    for (const Poly& col : ctx.columns) {
        bool representable = true;
        ctx.matrix.push_back(poly_to_column(ctx, col, &representable));
    }
    compute_nullspace(ctx);
    ctx.outcome.rank = ctx.rank;

    mpz_ui_pow_ui(ctx.outcome.leaf_bound.get_mpz_t(), static_cast<unsigned long>(ctx.p),
                  static_cast<unsigned long>(ctx.nullspace.size() * ctx.layers));
    if (ctx.outcome.leaf_bound > mpz_class(static_cast<unsigned long>(bounds.ceiling))) {
        std::ostringstream os;
        os << "branch bound " << ctx.p << "^" << ctx.nullspace.size() * ctx.layers << " = "
           << ctx.outcome.leaf_bound.get_str() << " exceeds ceiling " << bounds.ceiling;
        fail(Errc::search_space_too_large, os.str());
    }

    search_layer(ctx, images, 1);
    return std::move(ctx.outcome);
}

const char* cross_check_flag_name(CrossCheckFlag f) {
    switch (f) {
        case CrossCheckFlag::confirmed: return "CONFIRMED";
        case CrossCheckFlag::consistent: return "CONSISTENT";
        case CrossCheckFlag::contradiction: return "CONTRADICTION";
    }
    return "CONSISTENT";
}

CrossCheckReport cross_check(const std::vector<std::uint64_t>& tuple, std::uint64_t p,
                             const SearchBounds& bounds) {
    const FieldSpec field = make_field(p);
    CrossCheckReport report;
    report.verdict = classify(field, tuple);

    const auto pres = RingPresentation::pham_brieskorn(field, tuple);
    const SearchOutcome outcome = enumerate_maps(pres, bounds);
    report.found = outcome.maps.size();

    if (report.verdict.witness && report.verdict.witness->presentation()->same_presentation(*pres))
        for (const ExpMap& m : outcome.maps) {
            bool same = true;
            for (std::size_t i = 0; same && i < tuple.size(); ++i)
                same = m.image(i) == report.verdict.witness->image(i);
            if (same) {
                report.witness_rediscovered = true;
                break;
            }
        }

    const bool rigid_family = report.verdict.status == RigidityStatus::rigid ||
                              report.verdict.status == RigidityStatus::stably_rigid;
    const bool nonrigid_family = report.verdict.status == RigidityStatus::non_rigid ||
                                 report.verdict.status == RigidityStatus::non_domain_non_rigid;
    if (rigid_family && report.found > 0)
        report.flag = CrossCheckFlag::contradiction;
    else if (nonrigid_family && report.found > 0)
        report.flag = CrossCheckFlag::confirmed;
    else
        report.flag = CrossCheckFlag::consistent;

    std::ostringstream os;
    os << "verdict " << status_name(report.verdict.status) << " (" << report.verdict.rule
       << "); " << report.found << " map(s) within bounds";
    if (report.witness_rediscovered) os << "; classifier witness rediscovered";
    if (report.found == 0) os << "; no map found within bounds (not a rigidity proof)";
    report.detail = os.str();
    return report;
}

}  // namespace pbrigid
