#include "crjc/model.hpp"

#include "crjc/fock.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace crjc {

DiagonalFn DiagonalFn::polynomial(std::vector<double> coeffs)
{
    if (coeffs.empty())
        coeffs.push_back(0.0);
    return DiagonalFn(Kind::polynomial, std::move(coeffs));
}

DiagonalFn DiagonalFn::parity(double scale) { return DiagonalFn(Kind::parity, {scale}); }

double DiagonalFn::operator()(long n) const
{
    if (kind_ == Kind::parity)
        return (n % 2 == 0 ? 1.0 : -1.0) * coeffs_.front();
    double acc = 0.0;
    const double x = static_cast<double>(n);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

DiagonalFn DiagonalFn::parse(const std::string& text)
{
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw std::invalid_argument("diagonal function '" + text +
                                    "': expected poly(...) or parity(...)");
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string name = trim(text.substr(0, open));
    std::vector<double> args;
    std::stringstream body(text.substr(open + 1, close - open - 1));
    std::string item;
    while (std::getline(body, item, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size())
            throw std::invalid_argument("diagonal function '" + text + "': bad number '" +
                                        item + "'");
        args.push_back(v);
    }
    if (name == "poly")
        return polynomial(std::move(args));
    if (name == "parity") {
        if (args.size() > 1)
            throw std::invalid_argument("parity(...) takes at most one scale");
        return parity(args.empty() ? 1.0 : args.front());
    }
    throw std::invalid_argument("diagonal function '" + text + "': unknown kind '" + name + "'");
}

std::string DiagonalFn::to_string() const
{
    std::string out = kind_ == Kind::parity ? "parity(" : "poly(";
    char buf[32];
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", coeffs_[i]);
        if (i)
            out += ", ";
        out += buf;
    }
    return out + ")";
}

void ModelParams::validate() const
{
    if (k < 1)
        throw std::invalid_argument("ModelParams: k must be >= 1");
    if (!(g >= 0.0))
        throw std::invalid_argument("ModelParams: g must be >= 0");
    if (!std::isfinite(delta) || !std::isfinite(g) || !std::isfinite(chi))
        throw std::invalid_argument("ModelParams: non-finite parameter");
}

double ModelParams::F_at(long n) const { return F ? (*F)(n) : 0.0; }
double ModelParams::G_at(long n) const
{
    return G ? (*G)(n) : chi * static_cast<double>(n) * static_cast<double>(n);
}
double ModelParams::f_at(long n) const { return f ? (*f)(n) : 1.0; }

namespace {

void check_dims(const ModelParams& p, int cutoff)
{
    p.validate();
    if (cutoff + 1 < 2 * p.k + 2)
        throw std::invalid_argument("Hamiltonian: cutoff " + std::to_string(cutoff) +
                                    " too small for k = " + std::to_string(p.k));
}

using Diag = std::function<double(long)>;

// Diagonal blocks plus g f (ladder)^k couplings. `rotating` couples |e,n>
// with |g,n+k>; otherwise |e,n+k> with |g,n>.
JointMatrix assemble(const ModelParams& p, int cutoff, const Diag& e_diag, const Diag& g_diag,
                     bool rotating)
{
    const Eigen::Index dim = 2 * (cutoff + 1);
    JointMatrix h = JointMatrix::Zero(dim, dim);
    for (int n = 0; n <= cutoff; ++n) {
        h(e_index(n), e_index(n)) = e_diag(n);
        h(g_index(cutoff, n), g_index(cutoff, n)) = g_diag(n);
    }
    const int k = p.k;
    for (int m = 0; m + k <= cutoff; ++m) {
        const double w = p.g * p.f_at(m + k) * sqrt_factorial_ratio(m, k);
        const auto e = rotating ? e_index(m) : e_index(m + k);
        const auto g = rotating ? g_index(cutoff, m + k) : g_index(cutoff, m);
        h(e, g) = w;
        h(g, e) = w;
    }
    return h;
}

} // namespace

JointMatrix build_H0(const ModelParams& p, int cutoff)
{
    check_dims(p, cutoff);
    const double half = 0.5 * p.delta;
    return assemble(
        p, cutoff, [&](long n) { return half + p.G_at(n) + p.F_at(n); },
        [&](long n) { return -half + p.G_at(n) - p.F_at(n); }, true);
}

JointMatrix build_H0_shifted_kerr(const ModelParams& p, int cutoff)
{
    check_dims(p, cutoff);
    if (!p.kerr_family())
        throw std::invalid_argument("build_H0_shifted_kerr: custom F/G/f not supported");
    const double half = 0.5 * p.delta;
    const int k = p.k;
    return assemble(
        p, cutoff, [&](long n) { return half + p.chi * double(n + k) * double(n + k); },
        [&](long n) { return -half + p.chi * double(n - k) * double(n - k); }, true);
}

JointMatrix build_H(const ModelParams& p, int cutoff)
{
    check_dims(p, cutoff);
    const double half = 0.5 * p.delta;
    const int k = p.k;
    Diag d_plus, d_minus;
    if (p.kerr_family()) {
        d_plus = [&](long n) { return p.chi * double(n + k) * double(n + k); };
        d_minus = [&](long n) { return p.chi * double(n - k) * double(n - k); };
    } else {
        d_plus = [&](long n) { return p.G_at(n) + p.F_at(n); };
        d_minus = [&](long n) { return p.G_at(n) - p.F_at(n); };
    }
    return assemble(
        p, cutoff, [&](long n) { return half + d_plus(n - k); },
        [&](long n) { return -half + d_minus(n + k); }, false);
}

JointMatrix rotating_source(const ModelParams& p, int cutoff)
{
    return p.kerr_family() ? build_H0_shifted_kerr(p, cutoff) : build_H0(p, cutoff);
}

JointMatrix build_Bk(int k, int cutoff)
{
    if (k < 1)
        throw std::invalid_argument("build_Bk: k must be >= 1");
    const Eigen::Index dim = 2 * (cutoff + 1);
    JointMatrix b = JointMatrix::Zero(dim, dim);
    for (int n = 0; n + k <= cutoff; ++n) {
        const double w = sqrt_factorial_ratio(n, k);
        b(e_index(n + k), e_index(n)) = w;                   // (a^dag)^k |n> on e
        b(g_index(cutoff, n), g_index(cutoff, n + k)) = w;  // a^k |n+k> on g
    }
    return b;
}

double interior_max_abs(const JointMatrix& m, int cutoff, int limit)
{
    double worst = 0.0;
    for (int br = 0; br < 2; ++br)
        for (int bc = 0; bc < 2; ++bc)
            for (int i = 0; i <= limit; ++i)
                for (int j = 0; j <= limit; ++j) {
                    const auto r = br == 0 ? e_index(i) : g_index(cutoff, i);
                    const auto c = bc == 0 ? e_index(j) : g_index(cutoff, j);
                    worst = std::max(worst, std::abs(m(r, c)));
                }
    return worst;
}

double intertwining_residual(const ModelParams& p, int cutoff, int guard)
{
    if (guard < p.k)
        throw std::invalid_argument("intertwining_residual: guard must be >= k");
    const int limit = cutoff - guard - p.k;
    if (limit < 0)
        throw std::invalid_argument("intertwining_residual: guard leaves no interior");
    const JointMatrix h0 = rotating_source(p, cutoff);
    const JointMatrix h = build_H(p, cutoff);
    const JointMatrix b = build_Bk(p.k, cutoff);
    const JointMatrix diff = b * h0 - h * b;
    return interior_max_abs(diff, cutoff, limit);
}

JointMatrix constant_of_motion(Motion which, int k, int cutoff)
{
    const Eigen::Index dim = 2 * (cutoff + 1);
    const double sign = which == Motion::C0 ? 1.0 : -1.0;
    JointMatrix c = JointMatrix::Zero(dim, dim);
    for (int n = 0; n <= cutoff; ++n) {
        c(e_index(n), e_index(n)) = n + sign * 0.5 * k;
        c(g_index(cutoff, n), g_index(cutoff, n)) = n - sign * 0.5 * k;
    }
    return c;
}

double hermiticity_residual(const JointMatrix& m)
{
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace crjc
