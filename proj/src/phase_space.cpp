#include "crjc/phase_space.hpp"

#include "crjc/parallel.hpp"
#include "crjc/propagator.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace crjc {

double FieldDensity::min_eigenvalue() const
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

FieldDensity reduced_density(const QubitFieldState& s)
{
    const auto dim = static_cast<Eigen::Index>(s.e.dim());
    Eigen::VectorXcd e(dim), g(dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        e(n) = s.e[static_cast<std::size_t>(n)];
        g(n) = s.g[static_cast<std::size_t>(n)];
    }
    return FieldDensity{e * e.adjoint() + g * g.adjoint()};
}

double WignerGrid::integral() const
{
    return values.sum() * spec.d_re() * spec.d_im();
}

double WignerGrid::interpolate(double re, double im) const
{
    const double u = (re - spec.re_min) / spec.d_re();
    const double v = (im - spec.im_min) / spec.d_im();
    if (u < 0.0 || v < 0.0 || u > spec.n_re - 1 || v > spec.n_im - 1)
        throw std::out_of_range("WignerGrid::interpolate: point outside grid");
    const int i = std::min(static_cast<int>(u), spec.n_re - 2);
    const int j = std::min(static_cast<int>(v), spec.n_im - 2);
    const double fu = u - i, fv = v - j;
    return (1 - fu) * (1 - fv) * values(j, i) + fu * (1 - fv) * values(j, i + 1) +
           (1 - fu) * fv * values(j + 1, i) + fu * fv * values(j + 1, i + 1);
}

double WignerGrid::max_abs_diff(const WignerGrid& other) const
{
    if (!(spec == other.spec))
        throw std::invalid_argument("WignerGrid::max_abs_diff: grids differ");
    return (values - other.values).cwiseAbs().maxCoeff();
}

int wigner_series_limit(int support, double abs_alpha)
{
    const double spread = std::sqrt(static_cast<double>(support)) + abs_alpha;
    return static_cast<int>(std::ceil(spread * spread + 12.0 * spread + 10.0));
}

namespace {

// mu(alpha, n, s) for n <= n_top, s <= s_max, stored s-major.
class MuTable
{
public:
    void fill(cplx alpha, int n_top, int s_max, MuRoute route)
    {
        n_top_ = n_top;
        s_max_ = s_max;
        data_.assign(static_cast<std::size_t>(n_top + 1) * static_cast<std::size_t>(s_max + 1),
                     cplx{});
        switch (route) {
        case MuRoute::table:
            fill_diagonals(alpha);
            break;
        case MuRoute::symmetry:
            for (int s = 0; s <= s_max; ++s)
                for (int n = 0; n <= n_top; ++n)
                    ref(n, s) = mu(alpha, n, s);
            break;
        case MuRoute::direct:
            for (int s = 0; s <= s_max; ++s)
                for (int n = 0; n <= n_top; ++n)
                    ref(n, s) = mu_direct(alpha, n, s);
            break;
        }
    }

    const cplx* row(int s) const { return data_.data() + static_cast<std::size_t>(s) * (n_top_ + 1); }

private:
    cplx& ref(int n, int s) { return data_[static_cast<std::size_t>(s) * (n_top_ + 1) + n]; }

    // Along each diagonal n - s = const the Laguerre superscript is fixed, so
    // one three-term recurrence in the degree covers the whole diagonal.
    void fill_diagonals(cplx alpha)
    {
        const double x = std::norm(alpha);
        const cplx up = std::conj(alpha);  // n > s: conj(alpha)^(n-s)
        const cplx down = -alpha;          // n < s: (-alpha)^(s-n)

        auto run = [&](int a, cplx head, int length, bool upper) {
            // head = base^a / sqrt(a!); entry j carries head * sqrt(j! a!/(j+a)!) L_j^a(x)
            double l_prev = 0.0, l_cur = 1.0;
            cplx pref = head;
            for (int j = 0; j < length; ++j) {
                if (j == 1) {
                    l_prev = 1.0;
                    l_cur = 1.0 + a - x;
                } else if (j > 1) {
                    const double next =
                        ((2.0 * (j - 1) + 1.0 + a - x) * l_cur - (j - 1 + a) * l_prev) / j;
                    l_prev = l_cur;
                    l_cur = next;
                }
                if (j > 0)
                    pref *= std::sqrt(static_cast<double>(j) / (j + a));
                if (upper)
                    ref(j + a, j) = pref * l_cur;
                else
                    ref(j, j + a) = pref * l_cur;
            }
        };

        cplx head_up = 1.0;
        for (int a = 0; a <= n_top_; ++a) {
            if (a > 0)
                head_up *= up / std::sqrt(static_cast<double>(a));
            run(a, head_up, std::min(n_top_ - a, s_max_) + 1, true);
        }
        cplx head_down = 1.0;
        for (int a = 1; a <= s_max_; ++a) {
            head_down *= down / std::sqrt(static_cast<double>(a));
            const int length = std::min(n_top_, s_max_ - a) + 1;
            if (length > 0)
                run(a, head_down, length, false);
        }
    }

    int n_top_ = 0;
    int s_max_ = 0;
    std::vector<cplx> data_;
};

} // namespace

WignerGrid wigner_closed(const Scenario& sc, double t, const GridSpec& grid, MuRoute route)
{
    grid.validate();
    const auto& p = sc.params;
    const auto& ic = sc.initial;
    if (!p.kerr_family())
        throw std::invalid_argument("wigner_closed: F/G/f overrides not supported");
    const int N = ic.cutoff();
    const int k = p.k;
    const bool use_e = ic.alpha_e != cplx{};
    const bool use_g = ic.alpha_g != cplx{};

    int support = 0;
    if (use_e)
        support = std::max(support, ic.c.support_top());
    if (use_g)
        support = std::max(support, ic.d.support_top());
    const int n_top = std::min(N, support + k);
    const auto len = static_cast<std::size_t>(n_top) + 1;

    // series coefficients: r_i(s) = sum_n w_i[n] mu(alpha, n, s)
    std::vector<cplx> w1(len), w2(len), w3(len), w4(len);
    for (int n = 0; n <= n_top; ++n) {
        const auto i = static_cast<std::size_t>(n);
        const auto here = efg(n, t, p);
        const auto shifted = efg(n - k, t, p);
        const double root = sqrt_factorial_ratio(n, k);
        w1[i] = ic.c.at_or_zero(n) * shifted.E * std::conj(shifted.F);
        w4[i] = ic.d.at_or_zero(n) * here.E * here.F;
        if (n + k <= N) {
            w2[i] = ic.c.at_or_zero(n + k) * here.E * here.G * root;
            if (n + k <= n_top)
                w3[static_cast<std::size_t>(n + k)] = ic.d.at_or_zero(n) * here.E * here.G * root;
        }
    }

    const double ae2 = std::norm(ic.alpha_e);
    const double ag2 = std::norm(ic.alpha_g);
    const cplx cross = ic.alpha_e * std::conj(ic.alpha_g);
    const double scale = 1.0 / ((ae2 + ag2) * std::numbers::pi);

    WignerGrid out{grid, Eigen::MatrixXd::Zero(grid.n_im, grid.n_re), false};
    parallel_for(static_cast<std::size_t>(grid.n_im), [&](std::size_t row) {
        const int j = static_cast<int>(row);
        MuTable table;
        for (int i = 0; i < grid.n_re; ++i) {
            const cplx alpha(grid.re(i), grid.im(j));
            const int s_max = wigner_series_limit(n_top, std::abs(alpha));
            table.fill(alpha, n_top, s_max, route);
            double acc = 0.0;
            for (int s = 0; s <= s_max; ++s) {
                const cplx* m = table.row(s);
                cplx r1{}, r2{}, r3{}, r4{};
                for (std::size_t n = 0; n < len; ++n) {
                    r1 += w1[n] * m[n];
                    r2 += w2[n] * m[n];
                    r3 += w3[n] * m[n];
                    r4 += w4[n] * m[n];
                }
                double term = 0.0;
                if (use_e)
                    term += ae2 * (std::norm(r1) + std::norm(r2));
                if (use_g)
                    term += ag2 * (std::norm(r3) + std::norm(r4));
                if (use_e && use_g)
                    term += 2.0 * std::real(cross * (r1 * std::conj(r3) + r2 * std::conj(r4)));
                acc += (s % 2 == 0) ? term : -term;
            }
            out.values(j, i) = scale * std::exp(-std::norm(alpha)) * acc;
        }
    });
    return out;
}

namespace {

// Eigenbasis of the quadrature X = i(a^dag - a) on dim levels. With
// S = diag(i^n), S^dag X S is the real tridiagonal matrix with off-diagonal
// sqrt(n+1), so V = S Q with Q real orthogonal.
struct QuadratureBasis
{
    Eigen::MatrixXd q;          // columns are eigenvectors of S^dag X S
    Eigen::VectorXd lambda;     // ascending; lambda[M-1-j] = -lambda[j]
    Eigen::VectorXd parity;     // <v_{M-1-j}| P |v_j>, +-1

    explicit QuadratureBasis(int dim)
    {
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
        Eigen::VectorXd sub(dim - 1);
        for (int n = 0; n + 1 < dim; ++n)
            sub(n) = std::sqrt(static_cast<double>(n + 1));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
        solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("wigner_oracle: quadrature diagonalisation failed");
        q = solver.eigenvectors();
        lambda = solver.eigenvalues();
        parity.resize(dim);
        for (int j = 0; j < dim; ++j) {
            const int partner = dim - 1 - j;
            double v = 0.0;
            for (int s = 0; s < dim; ++s)
                v += (s % 2 == 0 ? 1.0 : -1.0) * q(s, partner) * q(s, j);
            if (std::abs(std::abs(v) - 1.0) > 1e-8)
                throw std::runtime_error("wigner_oracle: parity does not pair the quadrature basis");
            parity(j) = v;
        }
    }
};

} // namespace

WignerGrid wigner_oracle(const FieldDensity& density, const GridSpec& grid)
{
    grid.validate();
    const int N = density.cutoff();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> rho_solver(density.rho);
    if (rho_solver.info() != Eigen::Success)
        throw std::runtime_error("wigner_oracle: density diagonalisation failed");
    std::vector<double> weights;
    std::vector<Eigen::VectorXcd> kets;
    const double wmax = rho_solver.eigenvalues().cwiseAbs().maxCoeff();
    for (int b = 0; b <= N; ++b) {
        const double w = rho_solver.eigenvalues()(b);
        if (std::abs(w) > 1e-15 * wmax) {
            weights.push_back(w);
            kets.push_back(rho_solver.eigenvectors().col(b));
        }
    }

    int support = 0;
    double mean_n = 0.0;
    for (int n = 0; n <= N; ++n) {
        const double pn = density.rho(n, n).real();
        mean_n += n * pn;
        if (std::abs(pn) > 1e-30)
            support = n;
    }
    double amax = 0.0;
    for (double re : {grid.re_min, grid.re_max})
        for (double im : {grid.im_min, grid.im_max})
            amax = std::max(amax, std::hypot(re, im));
    const int dim = std::max(wigner_series_limit(support, amax) + 40, N + 21);
    const QuadratureBasis basis(dim);
    const Eigen::MatrixXd qt = basis.q.topRows(support + 1).transpose();  // dim x (support+1)

    WignerGrid out{grid, Eigen::MatrixXd::Zero(grid.n_im, grid.n_re), false};
    out.cutoff_warning = amax * amax + mean_n > 0.8 * N;

    parallel_for(static_cast<std::size_t>(grid.n_im), [&](std::size_t row) {
        const int j = static_cast<int>(row);
        const int cols = grid.n_re;
        Eigen::MatrixXd u_re(support + 1, cols), u_im(support + 1, cols);
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(cols);
        for (std::size_t b = 0; b < kets.size(); ++b) {
            // u = S^dag R(-theta) psi for beta = -alpha = r e^{i theta}
            for (int i = 0; i < cols; ++i) {
                const cplx beta = -cplx(grid.re(i), grid.im(j));
                const double theta = std::arg(beta) + 0.5 * std::numbers::pi;
                for (int n = 0; n <= support; ++n) {
                    const cplx v = kets[b](n) * std::polar(1.0, -theta * n);
                    u_re(n, i) = v.real();
                    u_im(n, i) = v.imag();
                }
            }
            const Eigen::MatrixXd z_re = qt * u_re;
            const Eigen::MatrixXd z_im = qt * u_im;
            for (int i = 0; i < cols; ++i) {
                const double r = std::abs(cplx(grid.re(i), grid.im(j)));
                double value = 0.0;
                for (int m = 0; m < dim; ++m) {
                    const int partner = dim - 1 - m;
                    const cplx zm(z_re(m, i), z_im(m, i));
                    const cplx zp(z_re(partner, i), z_im(partner, i));
                    value += basis.parity(m) *
                             std::real(std::conj(zp) * zm * std::polar(1.0, -2.0 * r * basis.lambda(m)));
                }
                acc(i) += weights[b] * value;
            }
        }
        out.values.row(j) = acc.transpose() / std::numbers::pi;
    });
    return out;
}

int count_lobes(const WignerGrid& grid, double radius, double threshold)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("count_lobes: radius must be positive");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("count_lobes: threshold must lie in (0, 1)");
    constexpr int samples = 720;
    std::vector<double> ring(samples);
    for (int i = 0; i < samples; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / samples;
        ring[static_cast<std::size_t>(i)] =
            grid.interpolate(radius * std::cos(phi), radius * std::sin(phi));
    }
    const double peak = *std::max_element(ring.begin(), ring.end());
    if (!(peak > 0.0))
        return 0;
    const double level = threshold * peak;
    int runs = 0;
    bool all_above = true;
    for (int i = 0; i < samples; ++i) {
        const bool above = ring[static_cast<std::size_t>(i)] > level;
        const bool prev = ring[static_cast<std::size_t>((i + samples - 1) % samples)] > level;
        all_above = all_above && above;
        if (above && !prev)
            ++runs;
    }
    return all_above ? 1 : runs;
}

void write_wigner_csv(std::ostream& os, const WignerGrid& grid)
{
    char buf[96];
    os << "re,im,W\n";
    for (int j = 0; j < grid.spec.n_im; ++j)
        for (int i = 0; i < grid.spec.n_re; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid.spec.re(i),
                          grid.spec.im(j), grid.at(i, j));
            os << buf;
        }
}

void write_wigner_pgm(std::ostream& os, const WignerGrid& grid)
{
    const double wmin = grid.values.minCoeff();
    const double wmax = grid.values.maxCoeff();
    const double span = wmax > wmin ? wmax - wmin : 1.0;
    const auto& g = grid.spec;
    char buf[256];
    os << "P2\n";
    std::snprintf(buf, sizeof buf, "# grid re=[%.17g, %.17g] n_re=%d im=[%.17g, %.17g] n_im=%d\n",
                  g.re_min, g.re_max, g.n_re, g.im_min, g.im_max, g.n_im);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "# gray = round(255 * (W - wmin) / (wmax - wmin)), wmin=%.17g wmax=%.17g\n", wmin,
                  wmax);
    os << buf;
    os << "# first row is im_max\n";
    os << g.n_re << ' ' << g.n_im << "\n255\n";
    for (int j = g.n_im - 1; j >= 0; --j) {
        for (int i = 0; i < g.n_re; ++i) {
            const long v = std::lround(255.0 * (grid.at(i, j) - wmin) / span);
            os << v << (i + 1 == g.n_re ? '\n' : ' ');
        }
    }
}

} // namespace crjc
