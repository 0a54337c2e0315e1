#include "crjc/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace crjc {

EigenPropagator::EigenPropagator(const JointMatrix& h) : h_(h)
{
    if (h.rows() != h.cols() || h.rows() < 2 || h.rows() % 2 != 0)
        throw std::invalid_argument("EigenPropagator: expected a square joint matrix");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (hermiticity_residual(h) > 1e-12 * scale)
        throw std::invalid_argument("EigenPropagator: Hamiltonian is not Hermitian");
    cutoff_ = static_cast<int>(h.rows() / 2) - 1;
    Eigen::SelfAdjointEigenSolver<JointMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("EigenPropagator: eigendecomposition failed");
    vecs_ = solver.eigenvectors();
    evals_ = solver.eigenvalues();
}

QubitFieldState EigenPropagator::evolve(const QubitFieldState& state, double t) const
{
    if (state.cutoff() != cutoff_)
        throw std::invalid_argument("EigenPropagator::evolve: cutoff mismatch");
    Eigen::VectorXcd coeffs = vecs_.adjoint() * to_joint_vector(state);
    for (Eigen::Index j = 0; j < coeffs.size(); ++j)
        coeffs(j) *= std::polar(1.0, -evals_(j) * t);
    return from_joint_vector(vecs_ * coeffs);
}

JointMatrix EigenPropagator::unitary(double t) const
{
    Eigen::VectorXcd phases(evals_.size());
    for (Eigen::Index j = 0; j < evals_.size(); ++j)
        phases(j) = std::polar(1.0, -evals_(j) * t);
    return vecs_ * phases.asDiagonal() * vecs_.adjoint();
}

double EigenPropagator::decomposition_residual() const
{
    return (h_ * vecs_ - vecs_ * evals_.asDiagonal()).cwiseAbs().maxCoeff();
}

QubitFieldState evolve_oracle(const JointMatrix& h, const QubitFieldState& state, double t)
{
    return EigenPropagator(h).evolve(state, t);
}

Eigen::VectorXcd to_joint_vector(const QubitFieldState& s)
{
    const int N = s.cutoff();
    Eigen::VectorXcd v(2 * (N + 1));
    for (int n = 0; n <= N; ++n) {
        v(e_index(n)) = s.e[static_cast<std::size_t>(n)];
        v(g_index(N, n)) = s.g[static_cast<std::size_t>(n)];
    }
    return v;
}

QubitFieldState from_joint_vector(const Eigen::VectorXcd& v)
{
    const int N = static_cast<int>(v.size() / 2) - 1;
    QubitFieldState s(N);
    for (int n = 0; n <= N; ++n) {
        s.e[static_cast<std::size_t>(n)] = v(e_index(n));
        s.g[static_cast<std::size_t>(n)] = v(g_index(N, n));
    }
    return s;
}

double max_abs_diff(const QubitFieldState& a, const QubitFieldState& b, int limit)
{
    if (a.cutoff() != b.cutoff())
        throw std::invalid_argument("max_abs_diff: cutoff mismatch");
    const int top = limit < 0 ? a.cutoff() : std::min(limit, a.cutoff());
    double worst = 0.0;
    for (int n = 0; n <= top; ++n) {
        const auto i = static_cast<std::size_t>(n);
        worst = std::max({worst, std::abs(a.e[i] - b.e[i]), std::abs(a.g[i] - b.g[i])});
    }
    return worst;
}

std::pair<QubitFieldState, double> phase_align(const QubitFieldState& a, const QubitFieldState& b)
{
    if (a.cutoff() != b.cutoff())
        throw std::invalid_argument("phase_align: cutoff mismatch");
    // largest |b| entry; first occurrence wins
    cplx ref_a{}, ref_b{};
    double best = -1.0;
    for (std::size_t i = 0; i < b.e.dim(); ++i) {
        for (int br = 0; br < 2; ++br) {
            const cplx vb = br == 0 ? b.e[i] : b.g[i];
            if (std::abs(vb) > best) {
                best = std::abs(vb);
                ref_b = vb;
                ref_a = br == 0 ? a.e[i] : a.g[i];
            }
        }
    }
    QubitFieldState aligned = b;
    if (best > 0.0 && std::abs(ref_a) > 0.0) {
        const double phase = std::arg(ref_a) - std::arg(ref_b);
        aligned *= std::polar(1.0, phase);
    }
    return {aligned, max_abs_diff(a, aligned)};
}

} // namespace crjc
