#include "mplsym/integrator.hpp"

#include <algorithm>
#include <set>

namespace mplsym {

namespace {

void collect_args(const ExprPtr& e, std::vector<RatFunc>& out) {
    for (const auto& a : e->args) out.push_back(a);
    if (e->kind == Kind::G || e->kind == Kind::H || e->kind == Kind::Nielsen || e->kind == Kind::Log)
        out.push_back(e->arg);
    for (const auto& c : e->children) collect_args(c, out);
}

int count_letters(const ExprPtr& e, const Alphabet& A) {
    std::vector<RatFunc> args;
    collect_args(e, args);
    std::set<int> used;
    for (const auto& a : args) {
        if (a.is_zero()) continue;
        auto v = try_decompose(a.lifted(A.ring()), A);
        if (!v) return 99;
        for (const auto& [i, k] : *v)
            if (k != 0 && !A.is_constant(i)) used.insert(i);
    }
    return int(used.size());
}

bool depends_on_variables(const ExprPtr& e) {
    std::vector<RatFunc> args;
    collect_args(e, args);
    return std::any_of(args.begin(), args.end(), [](const RatFunc& f) { return !f.is_constant(); });
}

// Multisets of indices into `pool` (non-decreasing) realizing the given parts.
void enumerate_products(const Partition& parts, size_t pos, const std::map<int, std::vector<int>>& by_weight,
                        std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (pos == parts.size()) {
        out.push_back(cur);
        return;
    }
    auto it = by_weight.find(parts[pos]);
    if (it == by_weight.end()) return;
    const auto& pool = it->second;
    size_t start = 0;
    if (pos > 0 && parts[pos] == parts[pos - 1]) {
        start = size_t(std::find(pool.begin(), pool.end(), cur.back()) - pool.begin());
    }
    for (size_t i = start; i < pool.size(); ++i) {
        cur.push_back(pool[i]);
        enumerate_products(parts, pos + 1, by_weight, cur, out);
        cur.pop_back();
    }
}

}  // namespace

BasisFunction make_basis_function(const ExprPtr& e, const Alphabet& A, const std::string& label) {
    BasisFunction b;
    b.expr = e;
    b.symbol = symbol_of(e, A);
    b.weight = weight(e);
    b.nletters = count_letters(e, A);
    b.constant = !depends_on_variables(e);
    b.label = label.empty() ? to_string(e) : label;
    return b;
}

std::vector<BasisFunction> default_indecomposables(const Alphabet& A, int max_weight, const AnsatzOptions& opt) {
    std::vector<BasisFunction> out;
    for (size_t i = 0; i < A.size(); ++i) {
        const MPoly& p = A.display_poly(int(i));
        ExprPtr e = p.is_constant() && p == MPoly(2).lifted(A.ring()) ? make_const(Constant::Ln2) : make_log(RatFunc(p));
        out.push_back(make_basis_function(e, A));
    }
    if (max_weight < 2) return out;
    auto cands = candidate_args_depth1(A, opt.bound, opt.const_bound);
    for (int n = 2; n <= max_weight; ++n)
        for (const auto& c : cands) out.push_back(make_basis_function(make_Li({n}, {c.value}), A));
    if (max_weight >= 4 && opt.depth2) {
        std::vector<RatFunc> vals;
        for (const auto& c : cands)
            if (!c.value.is_constant()) vals.push_back(c.value);
        for (const auto& pr : candidate_args_depthk(vals, 2, A)) {
            ExprPtr li = g_to_li(make_G({RatFunc(0), pr[0], RatFunc(0), pr[1]}, RatFunc(1)));
            out.push_back(make_basis_function(li, A));
        }
    }
    return out;
}

std::vector<AnsatzElement> build_ansatz(const Partition& lambda, const std::vector<BasisFunction>& indec) {
    std::map<int, std::vector<int>> by_weight;
    for (size_t i = 0; i < indec.size(); ++i) by_weight[indec[i].weight].push_back(int(i));
    std::vector<std::vector<int>> prods;
    std::vector<int> cur;
    enumerate_products(lambda, 0, by_weight, cur, prods);
    std::vector<AnsatzElement> out;
    for (const auto& f : prods) {
        AnsatzElement el;
        el.factors = f;
        el.symbol = Symbol::unit();
        for (int i : f) {
            el.symbol = shuffle(el.symbol, indec[i].symbol);
            el.nletters += indec[i].nletters;
            el.label += (el.label.empty() ? "" : "*") + indec[i].label;
        }
        el.projected = project_partition(lambda, el.symbol);
        out.push_back(std::move(el));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const AnsatzElement& a, const AnsatzElement& b) { return a.nletters < b.nletters; });
    return out;
}

Integrator::Integrator(Alphabet A, std::vector<BasisFunction> indec) : A_(std::move(A)), indec_(std::move(indec)) {}

const std::vector<AnsatzElement>& Integrator::ansatz(const Partition& lambda) {
    auto it = ansatz_.find(lambda);
    if (it != ansatz_.end()) return it->second;
    return ansatz_[lambda] = build_ansatz(lambda, indec_);
}

namespace {

void reduce(std::map<Word, Rational>& v, const std::map<Word, Rational>& pv, const Rational& f) {
    for (const auto& [w, c] : pv) {
        Rational& t = v[w];
        t -= f * c;
        if (t == 0) v.erase(w);
    }
}

}  // namespace

Integrator::Echelon& Integrator::echelon(const Partition& lambda) {
    auto it = echelon_.find(lambda);
    if (it != echelon_.end()) return it->second;
    const auto& cols = ansatz(lambda);
    Echelon E;
    for (size_t j = 0; j < cols.size(); ++j) {
        std::map<Word, Rational> v = cols[j].projected.terms();
        std::map<int, Rational> combo = {{int(j), 1}};
        for (size_t p = 0; p < E.vec.size(); ++p) {
            auto f = v.find(E.pivot_word[p]);
            if (f == v.end()) continue;
            Rational k = f->second / E.vec[p].at(E.pivot_word[p]);
            reduce(v, E.vec[p], k);
            for (const auto& [i, c] : E.combo[p]) {
                Rational& t = combo[i];
                t -= k * c;
                if (t == 0) combo.erase(i);
            }
        }
        if (v.empty()) continue;
        E.pivot_word.push_back(v.begin()->first);
        E.vec.push_back(std::move(v));
        E.combo.push_back(std::move(combo));
    }
    return echelon_[lambda] = std::move(E);
}

std::vector<Rational> Integrator::solve_level(const Symbol& residual, const Partition& lambda) {
    const auto& cols = ansatz(lambda);
    Echelon& E = echelon(lambda);
    std::map<Word, Rational> v = project_partition(lambda, residual).terms();
    std::vector<Rational> c(cols.size(), 0);
    for (size_t p = 0; p < E.vec.size(); ++p) {
        auto f = v.find(E.pivot_word[p]);
        if (f == v.end()) continue;
        Rational k = f->second / E.vec[p].at(E.pivot_word[p]);
        reduce(v, E.vec[p], k);
        for (const auto& [i, cc] : E.combo[p]) c[i] += k * cc;
    }
    if (!v.empty()) {
        Symbol rest(residual.weight());
        for (const auto& [w, q] : v) rest.add(w, q);
        throw Unsolvable("no solution at partition " + partition_to_string(lambda) +
                         "; unmatched projection " + rest.to_string(A_));
    }
    return c;
}

ExprPtr Integrator::element_expr(const AnsatzElement& el) const {
    std::vector<ExprPtr> f;
    for (int i : el.factors) f.push_back(indec_[i].expr);
    return make_product(f);
}

IntegrationResult Integrator::integrate(const Symbol& S, bool check_integrable) {
    IntegrationResult res;
    int w = S.weight();
    if (w == 0) {
        res.expression = make_scalar(S.coeff({}));
        res.residual = Symbol(0);
        return res;
    }
    if (check_integrable) {
        auto rep = integrability_check(S, A_);
        if (!rep.integrable) throw NotIntegrable("symbol fails the integrability condition: " + rep.witness);
    }
    Symbol residual = S;
    std::vector<Monom> terms;
    for (const Partition& lambda : partitions_desc(w)) {
        LevelRecord rec;
        rec.lambda = lambda;
        if (!residual.is_zero()) {
            auto c = solve_level(residual, lambda);
            const auto& cols = ansatz(lambda);
            for (size_t j = 0; j < c.size(); ++j) {
                if (c[j] == 0) continue;
                residual -= cols[j].symbol * c[j];
                rec.coeffs.push_back({cols[j].label, c[j]});
                Monom m{c[j], {}};
                for (int i : cols[j].factors) m.factors.push_back(indec_[i].expr);
                terms.push_back(std::move(m));
            }
        }
        res.levels.push_back(std::move(rec));
    }
    res.expression = from_monoms(terms);
    res.residual = residual;
    return res;
}

IntegrationResult integrate_symbol(const Symbol& S, const Alphabet& A, const AnsatzOptions& opt) {
    Integrator I(A, default_indecomposables(A, S.weight(), opt));
    return I.integrate(S);
}

std::vector<ExprPtr> kernel_constants(int w) {
    ExprPtr pi = make_const(Constant::Pi), z3 = make_const(Constant::Zeta3), l2 = make_const(Constant::Ln2);
    switch (w) {
        case 2:
            return {make_power(pi, 2)};
        case 3:
            return {z3, make_product({make_power(pi, 2), l2})};
        case 4:
            return {make_power(pi, 4), make_product({make_power(pi, 2), make_power(l2, 2)}), make_product({z3, l2}),
                    make_sum({make_const(Constant::Li4Half), scaled(Rational(1, 24), make_power(l2, 4))})};
        default:
            return {};
    }
}

namespace {

// Solves the normal equations of the least-squares problem rows * a = rhs.
std::vector<Real> least_squares(const std::vector<std::vector<Real>>& rows, const std::vector<Real>& rhs) {
    size_t n = rows.empty() ? 0 : rows[0].size();
    std::vector<std::vector<Real>> M(n, std::vector<Real>(n + 1, Real(0)));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) M[i][j] += rows[r][i] * rows[r][j];
            M[i][n] += rows[r][i] * rhs[r];
        }
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < n; ++r)
            if (abs(M[r][c]) > abs(M[piv][c])) piv = r;
        std::swap(M[c], M[piv]);
        if (M[c][c] == 0) throw ReconstructionFailed("singular kernel ansatz at the sample points");
        for (size_t r = 0; r < n; ++r) {
            if (r == c || M[r][c] == 0) continue;
            Real f = M[r][c] / M[c][c];
            for (size_t k = c; k <= n; ++k) M[r][k] -= f * M[c][k];
        }
    }
    std::vector<Real> a(n);
    for (size_t i = 0; i < n; ++i) a[i] = M[i][n] / M[i][i];
    return a;
}

}  // namespace

FixReport fix_constants(const std::function<Real(const Rational&)>& target, const ExprPtr& candidate, int w,
                        const std::vector<BasisFunction>& indec, const FixOptions& opt) {
    if (w > 4) throw PreconditionViolated("the kernel ansatz covers weights up to 4");
    FixReport rep;
    rep.points = opt.points;
    if (rep.points.empty())
        for (int k = 1; k <= 18; ++k) rep.points.push_back(Rational(k, 23));

    // x-dependent products phi of weight u <= w - 2, paired with constants of weight w - u.
    std::vector<int> xdep;
    auto real_on_points = [&](const ExprPtr& e) {
        Precision p(30);
        try {
            for (const Rational& q : rep.points) {
                std::map<std::string, Rational> pt;
                for (const auto& v : expr_variables(to_string(e))) pt[v] = q;
                eval_expr(e, pt);
            }
        } catch (const OutOfRegion&) {
            return false;
        } catch (const DivergentSpec&) {
            return false;
        }
        return true;
    };
    for (size_t i = 0; i < indec.size(); ++i)
        if (!indec[i].constant && indec[i].weight <= w - 2 && real_on_points(indec[i].expr)) xdep.push_back(int(i));
    std::vector<std::pair<ExprPtr, int>> phis = {{make_scalar(1), 0}};
    for (int u = 1; u <= w - 2; ++u)
        for (const Partition& lam : partitions_desc(u)) {
            std::map<int, std::vector<int>> byw;
            for (int i : xdep) byw[indec[i].weight].push_back(i);
            std::vector<std::vector<int>> prods;
            std::vector<int> cur;
            enumerate_products(lam, 0, byw, cur, prods);
            for (const auto& f : prods) {
                std::vector<ExprPtr> fs;
                for (int i : f) fs.push_back(indec[i].expr);
                phis.push_back({from_monoms({Monom{1, fs}}), u});
            }
        }

    std::set<std::string> vars;
    for (const auto& v : expr_variables(to_string(candidate))) vars.insert(v);
    for (const auto& [phi, u] : phis)
        for (const auto& v : expr_variables(to_string(phi))) vars.insert(v);
    auto at = [&](const Rational& p) {
        std::map<std::string, Rational> pt;
        for (const auto& v : vars) pt[v] = p;
        return pt;
    };

    Precision guard(opt.digits + 30);
    std::vector<std::vector<Real>> rows;
    std::vector<Real> rhs;
    for (const Rational& p : rep.points) {
        auto pt = at(p);
        rhs.push_back(target(p) - eval_expr(candidate, pt));
        std::vector<Real> row;
        for (const auto& [phi, u] : phis) row.push_back(eval_expr(phi, pt));
        rows.push_back(std::move(row));
    }
    std::vector<Real> a = least_squares(rows, rhs);

    std::vector<Monom> consts;
    Real zero_tol = pow(Real(10), -(opt.digits + 5));
    for (size_t i = 0; i < phis.size(); ++i) {
        if (abs(a[i]) < zero_tol) continue;
        auto K = kernel_constants(w - phis[i].second);
        if (K.empty()) throw ReconstructionFailed("nonzero coefficient of " + to_string(phis[i].first) +
                                                  " but no kernel constant of weight " +
                                                  std::to_string(w - phis[i].second));
        std::vector<Real> vals = {a[i]};
        for (const auto& k : K) vals.push_back(eval_expr(k, {}));
        auto rel = integer_relation(vals, opt.digits + 10, opt.maxcoeff);
        if (!rel) throw ReconstructionFailed("no rational combination of kernel constants matches the coefficient of " +
                                             to_string(phis[i].first));
        for (size_t j = 0; j < K.size(); ++j) {
            if ((*rel)[j + 1] == 0) continue;
            Rational c(-(*rel)[j + 1], (*rel)[0]);
            c.canonicalize();
            auto phi_terms = expand(phis[i].first);
            for (Monom m : expand(K[j])) {
                m.coeff *= c;
                for (const auto& f : phi_terms.at(0).factors) m.factors.push_back(f);
                consts.push_back(std::move(m));
            }
        }
    }
    rep.constants = from_monoms(consts);
    std::vector<Monom> all = expand(candidate);
    auto ce = expand(rep.constants);
    all.insert(all.end(), ce.begin(), ce.end());
    rep.expression = from_monoms(all);

    rep.max_residual = 0;
    Real tol = pow(Real(10), -(opt.digits - 10));
    for (size_t r = 0; r < rep.points.size(); ++r) {
        Real d = abs(rhs[r] - eval_expr(rep.constants, at(rep.points[r])));
        rep.residuals.push_back(d);
        if (d > rep.max_residual) rep.max_residual = d;
    }
    if (rep.max_residual > tol)
        throw ReconstructionFailed("constant fit leaves residual " + format_real(rep.max_residual, 6));
    return rep;
}

}  // namespace mplsym
