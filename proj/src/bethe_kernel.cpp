#include "bosegas/bethe_kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bosegas/errors.hpp"

namespace bosegas {

namespace {

void check_particles(int n) {
    if (n < 1) throw std::invalid_argument("kernel needs at least one particle");
    if (n > kMaxParticles)
        throw UnsupportedError("permutation kernel supports n <= " + std::to_string(kMaxParticles) + ", got " +
                               std::to_string(n));
}

struct Compensated {
    double re_sum = 0.0, re_comp = 0.0, im_sum = 0.0, im_comp = 0.0;

    static void step(double& sum, double& comp, double x) {
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    void add(Complex v) {
        step(re_sum, re_comp, v.real());
        step(im_sum, im_comp, v.imag());
    }
    Complex value() const { return {re_sum + re_comp, im_sum + im_comp}; }
};

}  // namespace

PermutationTable PermutationTable::full(int n) {
    check_particles(n);
    PermutationTable t;
    t.n_ = n;
    std::vector<std::uint8_t> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), std::uint8_t{0});
    do {
        t.data_.insert(t.data_.end(), sigma.begin(), sigma.end());
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return t;
}

PermutationTable PermutationTable::clustered(const Partition& lambda) {
    const int n = lambda.n();
    check_particles(n);
    // successor[j] is true when z_{j+1} = z_j + 1 inside one cluster.
    std::vector<bool> successor(static_cast<std::size_t>(n), false);
    std::size_t pos = 0;
    for (int part : lambda.parts()) {
        for (int i = 0; i + 1 < part; ++i) successor[pos + static_cast<std::size_t>(i)] = true;
        pos += static_cast<std::size_t>(part);
    }

    const PermutationTable all = full(n);
    PermutationTable t;
    t.n_ = n;
    std::array<int, kMaxParticles> where{};
    for (std::size_t k = 0; k < all.size(); ++k) {
        const auto sigma = all[k];
        for (int i = 0; i < n; ++i) where[sigma[static_cast<std::size_t>(i)]] = i;
        bool keep = true;
        for (int j = 0; j + 1 < n && keep; ++j)
            if (successor[static_cast<std::size_t>(j)] && where[static_cast<std::size_t>(j)] < where[static_cast<std::size_t>(j) + 1])
                keep = false;
        if (keep) t.data_.insert(t.data_.end(), sigma.begin(), sigma.end());
    }
    return t;
}

BetheKernel::BetheKernel(double t, const SpacePoints& x, PermutationTable perms, double guard)
    : t_(t), xs_(x.sorted()), perms_(std::move(perms)), guard_(guard) {
    if (!(t > 0.0)) throw std::invalid_argument("time must be positive");
    if (xs_.size() != static_cast<std::size_t>(perms_.n()))
        throw std::invalid_argument("kernel: coordinate count does not match particle count");
}

BetheKernel::BetheKernel(double t, const SpacePoints& x, const Partition& lambda, bool short_circuit, double guard)
    : BetheKernel(t, x, short_circuit ? PermutationTable::clustered(lambda) : PermutationTable::full(lambda.n()),
                  guard) {
    std::size_t pos = 0;
    for (int part : lambda.parts()) {
        for (int i = 0; i + 1 < part; ++i) successor_[pos + static_cast<std::size_t>(i)] = true;
        pos += static_cast<std::size_t>(part);
    }
}

ScaledComplex BetheKernel::evaluate(std::span<const Complex> z) const {
    const std::size_t n = xs_.size();
    if (z.size() != n) throw std::invalid_argument("kernel: need one spectral variable per coordinate");

    // Pair weights W[a][b] = (z_a - z_b - 1) / (z_a - z_b).
    std::array<Complex, kMaxParticles * kMaxParticles> pair{};
    Complex quad{};
    for (std::size_t a = 0; a < n; ++a) {
        quad += z[a] * z[a];
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            const Complex d = z[a] - z[b];
            if (std::norm(d) < guard_ * guard_) {
                std::ostringstream os;
                os << "spectral variables " << a << " and " << b << " closer than " << guard_;
                throw NearSingularityError(os.str());
            }
            pair[a * n + b] = (d - 1.0) / d;
        }
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (!successor_[j]) continue;
        pair[(j + 1) * n + j] = 0.0;
        pair[j * n + j + 1] = 2.0;
    }
    const Complex common = 0.5 * t_ * quad;

    // Upper bound on Re sum_i x_(i) z_sigma(i): pair sorted real parts with sorted x.
    std::array<double, kMaxParticles> re{};
    for (std::size_t a = 0; a < n; ++a) re[a] = z[a].real();
    std::sort(re.begin(), re.begin() + static_cast<std::ptrdiff_t>(n));
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) bound += xs_[i] * re[i];

    Compensated sum;
    for (std::size_t k = 0; k < perms_.size(); ++k) {
        const auto sigma = perms_[k];
        Complex weight{1.0, 0.0};
        for (std::size_t a = 1; a < n; ++a)
            for (std::size_t b = 0; b < a; ++b) weight *= pair[sigma[a] * n + sigma[b]];
        if (weight == Complex{}) continue;
        Complex linear{-bound, 0.0};
        for (std::size_t i = 0; i < n; ++i) linear += xs_[i] * z[sigma[i]];
        sum.add(weight * std::exp(linear));
    }
    return ScaledComplex{sum.value() * std::polar(1.0, common.imag()), common.real() + bound}.normalized();
}

ScaledComplex eval_E(const KernelInput& in) {
    const int n = static_cast<int>(in.z.size());
    return BetheKernel(in.t, in.x, PermutationTable::full(n)).evaluate(in.z);
}

ScaledComplex eval_E_clustered(double t, const SpacePoints& x, const Partition& lambda,
                               std::span<const Complex> w, bool short_circuit) {
    const auto z = cluster_expand(w, lambda);
    return BetheKernel(t, x, lambda, short_circuit).evaluate(z);
}

Complex pivoted_determinant(std::span<Complex> m, std::size_t dim) {
    if (m.size() < dim * dim) throw std::invalid_argument("pivoted_determinant: matrix too small");
    Complex det{1.0, 0.0};
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t piv = col;
        double best = std::norm(m[col * dim + col]);
        for (std::size_t r = col + 1; r < dim; ++r) {
            const double a = std::norm(m[r * dim + col]);
            if (a > best) {
                best = a;
                piv = r;
            }
        }
        if (best == 0.0) throw NumericError("pivoted_determinant: singular matrix at column " + std::to_string(col));
        if (piv != col) {
            for (std::size_t c = 0; c < dim; ++c) std::swap(m[col * dim + c], m[piv * dim + c]);
            det = -det;
        }
        const Complex p = m[col * dim + col];
        det *= p;
        for (std::size_t r = col + 1; r < dim; ++r) {
            const Complex f = m[r * dim + col] / p;
            if (f == Complex{}) continue;
            for (std::size_t c = col + 1; c < dim; ++c) m[r * dim + c] -= f * m[col * dim + c];
        }
    }
    return det;
}

Complex cluster_determinant(std::span<const Complex> w, const Partition& lambda) {
    const std::size_t ell = lambda.length();
    if (w.size() != ell) throw std::invalid_argument("cluster_determinant: need one variable per part");
    if (ell > static_cast<std::size_t>(kMaxParticles)) throw UnsupportedError("cluster_determinant: too many parts");
    std::array<Complex, kMaxParticles * kMaxParticles> m{};
    for (std::size_t i = 0; i < ell; ++i)
        for (std::size_t j = 0; j < ell; ++j) m[i * ell + j] = 1.0 / (w[i] + static_cast<double>(lambda[i]) - w[j]);
    return pivoted_determinant(std::span<Complex>(m.data(), ell * ell), ell);
}

Complex cauchy_determinant(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size() || u.empty()) throw std::invalid_argument("cauchy_determinant: size mismatch");
    const std::size_t ell = u.size();
    Complex num{1.0, 0.0};
    Complex den{1.0, 0.0};
    for (std::size_t i = 0; i < ell; ++i) {
        for (std::size_t j = 0; j < ell; ++j) {
            const Complex d = u[i] - v[j];
            if (d == Complex{}) throw std::invalid_argument("cauchy_determinant: u_i equals v_j");
            den *= d;
            if (i < j) num *= (u[i] - u[j]) * (v[j] - v[i]);
        }
    }
    return num / den;
}

NuIntegrand::NuIntegrand(double t, const SpacePoints& x, const Partition& lambda)
    : lambda_(lambda), kernel_(t, x, lambda, true) {}

ScaledComplex NuIntegrand::operator()(std::span<const Complex> w) const {
    std::array<Complex, kMaxParticles> z{};
    const auto n = static_cast<std::size_t>(lambda_.n());
    cluster_expand_into(w, lambda_, std::span<Complex>(z.data(), n));
    const ScaledComplex e = kernel_.evaluate(std::span<const Complex>(z.data(), n));
    return e * (cluster_determinant(w, lambda_) * lambda_.inverse_multiplicity());
}

ScaledComplex nu_integrand(double t, const SpacePoints& x, const Partition& lambda, std::span<const Complex> w) {
    return NuIntegrand(t, x, lambda)(w);
}

}  // namespace bosegas
