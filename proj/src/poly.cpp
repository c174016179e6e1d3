#include "curlkit/poly.hpp"

#include <algorithm>

namespace curlkit {

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Poly Poly::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw DomainError("polynomial variable index out of range");
    Poly p(nvars);
    Exponents e(nvars, 0);
    e[i] = 1;
    p.add_term(e, Rational(1));
    return p;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int Poly::degree() const {
    int deg = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int k : e) d += k;
        deg = std::max(deg, d);
    }
    return deg;
}

Poly Poly::partial(int i) const {
    Poly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponents d = e;
        d[i] -= 1;
        out.add_term(d, Rational(e[i]) * c);
    }
    return out;
}

Rational Poly::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::eval_rational(const std::vector<Rational>& x) const {
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) term *= x[i];
        sum += term;
    }
    return sum;
}

double Poly::eval(const Point& x) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c.to_double();
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) term *= x[i];
        sum += term;
    }
    return sum;
}

Jet Poly::eval_jets(const JetVec& x) const {
    const int dim = x.front().dim();
    const int order = x.front().order();
    Jet sum = Jet::constant(0.0, dim, order);
    for (const auto& [e, c] : terms_) {
        Jet term = Jet::constant(c.to_double(), dim, order);
        for (int i = 0; i < nvars_; ++i)
            if (e[i] > 0) term = term * powi(x[i], e[i]);
        sum = sum + term;
    }
    return sum;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string coeff = c.to_string();
        bool neg = !coeff.empty() && coeff[0] == '-';
        std::string mag = neg ? coeff.substr(1) : coeff;
        if (first) {
            out += neg ? "-" : "";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono;
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out += mag;
        } else if (mag == "1") {
            out += mono;
        } else {
            out += mag + "*" + mono;
        }
    }
    return out;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
}

Poly operator-(const Poly& a) {
    Poly out(a.nvars_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, -c);
    return out;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Poly::Exponents e(a.nvars_);
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

Poly operator*(const Rational& s, const Poly& a) {
    Poly out(a.nvars_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, s * c);
    return out;
}

bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

std::vector<std::string> DarbouxChart::names() const {
    std::vector<std::string> out;
    for (int i = 1; i <= ell; ++i) out.push_back("x" + std::to_string(i));
    for (int i = 1; i <= ell; ++i) out.push_back("y" + std::to_string(i));
    out.push_back("z");
    return out;
}

std::vector<Poly> DarbouxChart::theta() const {
    const int n = nvars();
    std::vector<Poly> th(n, Poly(n));
    for (int i = 0; i < ell; ++i) {
        th[x(i)] = (-kappa) * Poly::variable(n, y(i));
        th[y(i)] = kappa * Poly::variable(n, x(i));
    }
    th[z()] = Poly::constant(n, Rational(1));
    return th;
}

Poly divergence(const PolyVec& X) {
    const int n = static_cast<int>(X.size());
    Poly out(X.front().nvars());
    for (int i = 0; i < n; ++i) out = out + X[i].partial(i);
    return out;
}

PolyVec commutator(const PolyVec& X, const PolyVec& Y) {
    const int n = static_cast<int>(X.size());
    PolyVec out(n, Poly(X.front().nvars()));
    for (int k = 0; k < n; ++k) {
        Poly c(X.front().nvars());
        for (int a = 0; a < n; ++a) c = c + X[a] * Y[k].partial(a) - Y[a] * X[k].partial(a);
        out[k] = c;
    }
    return out;
}

Poly theta_pairing(const PolyVec& X, const DarbouxChart& chart) {
    std::vector<Poly> th = chart.theta();
    Poly out(chart.nvars());
    for (int i = 0; i < chart.nvars(); ++i) out = out + th[i] * X[i];
    return out;
}

bool is_tangent(const PolyVec& Y, const DarbouxChart& chart) {
    return theta_pairing(Y, chart).is_zero();
}

PolyVec euler_field(const DarbouxChart& chart) {
    const int n = chart.nvars();
    PolyVec e(n, Poly(n));
    for (int i = 0; i < chart.ell; ++i) {
        e[chart.x(i)] = Poly::variable(n, chart.x(i));
        e[chart.y(i)] = Poly::variable(n, chart.y(i));
    }
    return e;
}

PolyVec tangent_u(const DarbouxChart& chart, int i) {
    const int n = chart.nvars();
    PolyVec u(n, Poly(n));
    u[chart.x(i)] = Poly::constant(n, Rational(1));
    u[chart.z()] = chart.kappa * Poly::variable(n, chart.y(i));
    return u;
}

PolyVec tangent_v(const DarbouxChart& chart, int i) {
    const int n = chart.nvars();
    PolyVec v(n, Poly(n));
    v[chart.y(i)] = Poly::constant(n, Rational(1));
    v[chart.z()] = (-chart.kappa) * Poly::variable(n, chart.x(i));
    return v;
}

PolyVec darboux_contact_field(const Poly& phi, const DarbouxChart& chart) {
    const int n = chart.nvars();
    if (phi.nvars() != n) throw DomainError("hamiltonian has wrong variable count for chart");
    PolyVec X(n, Poly(n));
    const Rational half(1, 2);
    const Rational inv2k = Rational(1) / (Rational(2) * chart.kappa);
    const Poly dz_phi = phi.partial(chart.z());

    Poly e_phi(n);  // E(φ)
    for (int i = 0; i < chart.ell; ++i)
        e_phi = e_phi + Poly::variable(n, chart.x(i)) * phi.partial(chart.x(i)) +
                Poly::variable(n, chart.y(i)) * phi.partial(chart.y(i));

    for (int i = 0; i < chart.ell; ++i) {
        X[chart.y(i)] = inv2k * phi.partial(chart.x(i)) +
                        half * dz_phi * Poly::variable(n, chart.y(i));
        X[chart.x(i)] = -(inv2k * phi.partial(chart.y(i))) +
                        half * dz_phi * Poly::variable(n, chart.x(i));
    }
    X[chart.z()] = phi - half * e_phi;
    return X;
}

WeightedDensityPoly lie_derivative_density(const PolyVec& X, const WeightedDensityPoly& phi) {
    const int n = static_cast<int>(X.size());
    Poly out(phi.poly.nvars());
    for (int i = 0; i < n; ++i) out = out + X[i] * phi.poly.partial(i);
    out = out + phi.weight * (divergence(X) * phi.poly);
    return {out, phi.weight};
}

PolyVec lie_derivative_oneform(const PolyVec& X, const PolyVec& theta) {
    const int n = static_cast<int>(X.size());
    PolyVec out(n, Poly(X.front().nvars()));
    for (int j = 0; j < n; ++j) {
        Poly c(X.front().nvars());
        for (int k = 0; k < n; ++k) c = c + X[k] * theta[j].partial(k) + theta[k] * X[k].partial(j);
        out[j] = c;
    }
    return out;
}

WeightedDensityPoly poisson_bracket(const WeightedDensityPoly& a, const WeightedDensityPoly& b,
                                    const DarbouxChart& chart) {
    if (a.poly.nvars() != chart.nvars() || b.poly.nvars() != chart.nvars())
        throw DomainError("poisson bracket arguments live on a different chart");
    const int n = chart.nvars();
    const Rational lp1(chart.ell + 1);
    const Rational half(1, 2);

    auto half_euler = [&](const Poly& f) {
        Poly e(n);
        for (int i = 0; i < chart.ell; ++i)
            e = e + Poly::variable(n, chart.x(i)) * f.partial(chart.x(i)) +
                Poly::variable(n, chart.y(i)) * f.partial(chart.y(i));
        return half * e;
    };

    Poly sum(n);
    for (int i = 0; i < chart.ell; ++i)
        sum = sum + a.poly.partial(chart.x(i)) * b.poly.partial(chart.y(i)) -
              a.poly.partial(chart.y(i)) * b.poly.partial(chart.x(i));

    sum = sum + a.poly.partial(chart.z()) * (half_euler(b.poly) + (lp1 * b.weight) * b.poly);
    sum = sum - b.poly.partial(chart.z()) * (half_euler(a.poly) + (lp1 * a.weight) * a.poly);

    return {sum, a.weight + b.weight + Rational(1, chart.ell + 1)};
}

PolyDiffOp PolyDiffOp::multiplication(const Poly& f, const Rational& lambda) {
    PolyDiffOp op(f.nvars(), lambda);
    op.add_coefficient(std::vector<int>(f.nvars(), 0), f);
    return op;
}

PolyDiffOp PolyDiffOp::lie(const PolyVec& X, const Rational& lambda) {
    const int n = static_cast<int>(X.size());
    PolyDiffOp op(X.front().nvars(), lambda);
    for (int i = 0; i < n; ++i) {
        std::vector<int> multi(op.nvars(), 0);
        multi[i] = 1;
        op.add_coefficient(multi, X[i]);
    }
    op.add_coefficient(std::vector<int>(op.nvars(), 0), lambda * divergence(X));
    return op;
}

int PolyDiffOp::order() const {
    int o = 0;
    for (const auto& [multi, c] : coeffs_) {
        int total = 0;
        for (int k : multi) total += k;
        o = std::max(o, total);
    }
    return o;
}

Poly PolyDiffOp::coefficient(const std::vector<int>& multi) const {
    auto it = coeffs_.find(multi);
    return it == coeffs_.end() ? Poly(nvars_) : it->second;
}

void PolyDiffOp::add_coefficient(const std::vector<int>& multi, const Poly& c) {
    if (c.is_zero()) return;
    auto it = coeffs_.find(multi);
    if (it == coeffs_.end()) {
        coeffs_.emplace(multi, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

WeightedDensityPoly PolyDiffOp::apply(const WeightedDensityPoly& phi) const {
    if (phi.weight != lambda_)
        throw DomainError("operator applied to a density of the wrong weight");
    Poly out(nvars_);
    for (const auto& [multi, c] : coeffs_) {
        Poly d = phi.poly;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < multi[i]; ++k) d = d.partial(i);
        out = out + c * d;
    }
    return {out, phi.weight};
}

PolyDiffOp operator+(const PolyDiffOp& a, const PolyDiffOp& b) {
    if (a.lambda_ != b.lambda_) throw DomainError("operator sum with mismatched weights");
    PolyDiffOp out = a;
    for (const auto& [multi, c] : b.coeffs_) out.add_coefficient(multi, c);
    return out;
}

PolyDiffOp operator*(const Rational& s, const PolyDiffOp& a) {
    PolyDiffOp out(a.nvars_, a.lambda_);
    for (const auto& [multi, c] : a.coeffs_) out.add_coefficient(multi, s * c);
    return out;
}

PolyDiffOp compose_ops(const PolyDiffOp& a, const PolyDiffOp& b) {
    if (a.order() + b.order() > 2)
        throw DomainError("operator composition exceeds order 2");
    const int n = a.nvars();
    PolyDiffOp out(n, a.lambda());

    for (const auto& [alpha, ca] : a.coefficients()) {
        int a_ord = 0;
        for (int k : alpha) a_ord += k;
        for (const auto& [beta, cb] : b.coefficients()) {
            if (a_ord == 0) {
                out.add_coefficient(beta, ca * cb);
            } else if (a_ord == 1) {
                int i = 0;
                while (alpha[i] == 0) ++i;
                // ∂_i(c_b ∂^β) = (∂_i c_b)∂^β + c_b ∂^{β+e_i}
                out.add_coefficient(beta, ca * cb.partial(i));
                std::vector<int> up = beta;
                up[i] += 1;
                out.add_coefficient(up, ca * cb);
            } else {
                // α = e_i + e_j (possibly i == j)
                int i = -1, j = -1;
                for (int t = 0; t < n; ++t) {
                    if (alpha[t] == 2) { i = j = t; break; }
                    if (alpha[t] == 1) { (i < 0 ? i : j) = t; }
                }
                out.add_coefficient(beta, ca * cb.partial(i).partial(j));
                std::vector<int> up_i = beta, up_j = beta, up_ij = beta;
                up_i[i] += 1;
                up_j[j] += 1;
                up_ij[i] += 1;
                up_ij[j] += 1;
                out.add_coefficient(up_j, ca * cb.partial(i));
                out.add_coefficient(up_i, ca * cb.partial(j));
                out.add_coefficient(up_ij, ca * cb);
            }
        }
    }
    return out;
}

Poly subsymbol_eq13(const PolyDiffOp& T, const DarbouxChart& chart) {
    if (T.order() > 2) throw DomainError("subsymbol is defined for operators of order <= 2");
    const int n = chart.nvars();
    if (T.nvars() != n) throw DomainError("operator lives on a different chart");
    std::vector<Poly> th = chart.theta();

    // Symmetrized second-order coefficients S^{ab} and first-order P^a.
    std::vector<Poly> S(size_t(n) * n, Poly(n));
    std::vector<Poly> P(n, Poly(n));
    const Rational half(1, 2);
    for (const auto& [multi, c] : T.coefficients()) {
        int total = 0;
        for (int k : multi) total += k;
        if (total == 1) {
            int i = 0;
            while (multi[i] == 0) ++i;
            P[i] = P[i] + c;
        } else if (total == 2) {
            int i = -1, j = -1;
            for (int t = 0; t < n; ++t) {
                if (multi[t] == 2) { i = j = t; break; }
                if (multi[t] == 1) { (i < 0 ? i : j) = t; }
            }
            if (i == j) {
                S[size_t(i) * n + i] = S[size_t(i) * n + i] + c;
            } else {
                S[size_t(i) * n + j] = S[size_t(i) * n + j] + half * c;
                S[size_t(j) * n + i] = S[size_t(j) * n + i] + half * c;
            }
        }
    }

    const Rational lp1(chart.ell + 1);
    const Rational c_pref = (Rational(1) + Rational(2) * T.lambda() * lp1) / Rational(chart.ell + 2);

    Poly div_term(n);
    for (int a = 0; a < n; ++a) {
        Poly va(n);
        for (int b = 0; b < n; ++b) va = va + S[size_t(a) * n + b] * th[b];
        div_term = div_term + va.partial(a);
    }
    Poly p_term(n);
    for (int a = 0; a < n; ++a) p_term = p_term + P[a] * th[a];

    return p_term - c_pref * div_term;
}

PolyDiffOp build_operator(const ContactDecomposition& d, const DarbouxChart& chart,
                          const Rational& lambda) {
    const int n = chart.nvars();
    auto zero_field = [&]() { return PolyVec(n, Poly(n)); };
    auto field_or = [&](const PolyVec& y) { return y.empty() ? zero_field() : y; };
    auto poly_or = [&](const Poly& p) { return p.nvars() == 0 ? Poly(n) : p; };

    const Poly phi1 = poly_or(d.phi1), phi2 = poly_or(d.phi2), phi3 = poly_or(d.phi3),
               phi4 = poly_or(d.phi4), f = poly_or(d.f);
    const PolyVec y1 = field_or(d.y1), y2 = field_or(d.y2), y3 = field_or(d.y3),
                  y4 = field_or(d.y4);

    for (const PolyVec* y : {&y1, &y2, &y3, &y4})
        if (!is_tangent(*y, chart))
            throw DomainError("decomposition field is not tangent to the contact distribution");

    auto L = [&](const PolyVec& X) { return PolyDiffOp::lie(X, lambda); };
    auto Lphi = [&](const Poly& p) { return L(darboux_contact_field(p, chart)); };

    PolyDiffOp T = compose_ops(Lphi(phi1), Lphi(phi2));
    T = T + compose_ops(Lphi(phi3), L(y1));
    T = T + compose_ops(L(y2), L(y3));
    T = T + Lphi(phi4);
    T = T + L(y4);
    T = T + PolyDiffOp::multiplication(f, lambda);
    return T;
}

Poly subsymbol_eq11(const ContactDecomposition& d, const DarbouxChart& chart,
                    const Rational& lambda) {
    const int n = chart.nvars();
    auto zero_field = [&]() { return PolyVec(n, Poly(n)); };
    auto field_or = [&](const PolyVec& y) { return y.empty() ? zero_field() : y; };
    auto poly_or = [&](const Poly& p) { return p.nvars() == 0 ? Poly(n) : p; };

    const Poly phi1 = poly_or(d.phi1), phi2 = poly_or(d.phi2), phi3 = poly_or(d.phi3),
               phi4 = poly_or(d.phi4);
    const PolyVec y1 = field_or(d.y1), y2 = field_or(d.y2), y3 = field_or(d.y3);

    for (const PolyVec* y : {&y1, &y2, &y3})
        if (!is_tangent(*y, chart))
            throw DomainError("decomposition field is not tangent to the contact distribution");

    const Rational half(1, 2);
    const Rational ratio = Rational(chart.ell + 1) / Rational(chart.ell + 2);

    PolyVec x1 = darboux_contact_field(phi1, chart);
    PolyVec x2 = darboux_contact_field(phi2, chart);
    Poly bracket12 = theta_pairing(commutator(x1, x2), chart);

    WeightedDensityPoly phi3_density{phi3, Rational(-1, chart.ell + 1)};
    Poly lie_y1_phi3 = lie_derivative_density(y1, phi3_density).poly;

    Poly bracket23 = theta_pairing(commutator(y2, y3), chart);

    return half * bracket12 - (ratio * (lambda - half)) * lie_y1_phi3 + half * bracket23 + phi4;
}

}  // namespace curlkit
