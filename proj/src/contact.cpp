#include "curlkit/contact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace curlkit {

Mat<double> exterior_derivative(const JetVec& theta) {
    const int n = static_cast<int>(theta.size());
    Mat<double> w(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = theta[j].d(i) - theta[i].d(j);
    return w;
}

namespace {

// Pfaffian of the 4x4 antisymmetric minor of w with row/col `skip` removed.
double pfaffian4_minor(const Mat<double>& w, int skip) {
    int idx[4];
    int t = 0;
    for (int i = 0; i < 5; ++i)
        if (i != skip) idx[t++] = i;
    const int a = idx[0], b = idx[1], c = idx[2], d = idx[3];
    return w(a, b) * w(c, d) - w(a, c) * w(b, d) + w(a, d) * w(b, c);
}

double perm_sign(std::vector<int>& perm) {
    // Sign by counting transpositions in cycle decomposition.
    const int n = static_cast<int>(perm.size());
    std::vector<bool> seen(n, false);
    int sign = 1;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = perm[j];
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

}  // namespace

double contact_volume_coeff(const JetVec& theta) {
    const int n = static_cast<int>(theta.size());
    const int ell = (n - 1) / 2;
    if (n % 2 == 0) throw DomainError("contact volume needs an odd-dimensional chart");
    Mat<double> w = exterior_derivative(theta);

    if (ell == 1) {
        return theta[0].value() * w(1, 2) - theta[1].value() * w(0, 2) +
               theta[2].value() * w(0, 1);
    }
    if (ell == 2) {
        double sum = 0.0;
        double sign = 1.0;
        for (int k = 0; k < 5; ++k) {
            sum += sign * theta[k].value() * pfaffian4_minor(w, k);
            sign = -sign;
        }
        return 2.0 * sum;
    }

    // Generic fallback: (1/2^ℓ) Σ_σ sgn(σ) θ_{σ0} W_{σ1σ2} ⋯ W_{σ(n-2)σ(n-1)}.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double sum = 0.0;
    do {
        std::vector<int> p = perm;
        double term = perm_sign(p) * theta[perm[0]].value();
        for (int m = 0; m < ell; ++m) term *= w(perm[1 + 2 * m], perm[2 + 2 * m]);
        sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum / std::pow(2.0, ell);
}

double contact_volume_coeff(const ContactFormField& theta, const Point& p) {
    return contact_volume_coeff(theta.components(p, 1));
}

Jet contact_volume_jet(const JetVec& theta) {
    const int n = static_cast<int>(theta.size());
    const int ell = (n - 1) / 2;
    if (n % 2 == 0) throw DomainError("contact volume needs an odd-dimensional chart");
    if (theta.front().order() < 2)
        throw DomainError("volume-coefficient jets need order-2 contact form jets");
    const int dim = theta.front().dim();

    // W_ij = ∂_iθ_j − ∂_jθ_i as order-1 jets.
    std::vector<Jet> w(size_t(n) * n, Jet::constant(0.0, dim, 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            w[size_t(i) * n + j] = theta[j].partial(i) - theta[i].partial(j);
    auto wat = [&](int i, int j) -> const Jet& { return w[size_t(i) * n + j]; };
    std::vector<Jet> th(n, Jet::constant(0.0, dim, 1));
    for (int i = 0; i < n; ++i) th[i] = theta[i].truncated(1);

    if (ell == 1) return th[0] * wat(1, 2) - th[1] * wat(0, 2) + th[2] * wat(0, 1);

    if (ell == 2) {
        Jet sum = Jet::constant(0.0, dim, 1);
        double sign = 1.0;
        for (int k = 0; k < 5; ++k) {
            int idx[4];
            int t = 0;
            for (int i = 0; i < 5; ++i)
                if (i != k) idx[t++] = i;
            const int a = idx[0], b = idx[1], c = idx[2], d = idx[3];
            Jet pf = wat(a, b) * wat(c, d) - wat(a, c) * wat(b, d) + wat(a, d) * wat(b, c);
            sum = sum + sign * (th[k] * pf);
            sign = -sign;
        }
        return 2.0 * sum;
    }

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Jet sum = Jet::constant(0.0, dim, 1);
    do {
        std::vector<int> pcopy = perm;
        Jet term = th[perm[0]];
        for (int m = 0; m < ell; ++m) term = term * wat(perm[1 + 2 * m], perm[2 + 2 * m]);
        double sgn = 1.0;
        {
            std::vector<bool> seen(n, false);
            for (int i = 0; i < n; ++i) {
                if (seen[i]) continue;
                int len = 0, j = i;
                while (!seen[j]) {
                    seen[j] = true;
                    j = pcopy[j];
                    ++len;
                }
                if (len % 2 == 0) sgn = -sgn;
            }
        }
        sum = sum + sgn * term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum / std::pow(2.0, ell);
}

bool contact_check(const ContactFormField& theta, const Point& p, double floor) {
    return std::fabs(contact_volume_coeff(theta, p)) > floor;
}

double volume_ratio(const ContactFormField& theta, const ContactFormField& theta_ref,
                    const Point& p) {
    return contact_volume_coeff(theta, p) / contact_volume_coeff(theta_ref, p);
}

ContactHamiltonian project_pi(const std::vector<double>& X, const ContactFormField& theta,
                              const Point& p, const ContactFormField* theta_ref, double floor) {
    const int ell = theta.chart().contact_rank();
    JetVec th = theta.components(p, 1);
    const double vol = contact_volume_coeff(th);
    if (std::fabs(vol) <= floor) throw NonContactPointError(vol, p);
    double pairing = 0.0;
    for (size_t i = 0; i < th.size(); ++i) pairing += th[i].value() * X[i];
    double scale = 1.0;
    if (theta_ref != nullptr) {
        const double rho = vol / contact_volume_coeff(*theta_ref, p);
        scale = std::pow(std::fabs(rho), -1.0 / double(ell + 1));
    }
    return ContactHamiltonian(pairing * scale, ell);
}

DensityValue to_coordinate_reference(const DensityValue& d, double vol_coeff, bool* sign_flag) {
    const double w = d.weight.to_double();
    if (sign_flag) *sign_flag = (vol_coeff < 0.0);
    const double factor = std::pow(std::fabs(vol_coeff), w);
    return DensityValue(d.coefficient * factor, d.weight, VolumeRef::Coordinate);
}

}  // namespace curlkit
