#pragma once

// Reference time evolution by dense Hermitian eigendecomposition. Used as
// the independent check for every closed-form path.

#include "crjc/model.hpp"
#include "crjc/states.hpp"

#include <utility>

namespace crjc {

/// Diagonalises H = V diag(lambda) V^dag once; evolve() is then a pair of
/// dense products per call. Immutable after construction.
class EigenPropagator
{
public:
    /// Throws std::invalid_argument when H is not Hermitian to 1e-12
    /// relative to its largest entry.
    explicit EigenPropagator(const JointMatrix& h);

    QubitFieldState evolve(const QubitFieldState& state, double t) const;

    /// exp(-i H t) as a dense matrix.
    JointMatrix unitary(double t) const;

    /// max |H V - V Lambda| entry.
    double decomposition_residual() const;

    int cutoff() const { return cutoff_; }
    const Eigen::VectorXd& eigenvalues() const { return evals_; }

private:
    JointMatrix h_;
    JointMatrix vecs_;
    Eigen::VectorXd evals_;
    int cutoff_ = 0;
};

/// exp(-i H t) |state> with a one-off decomposition.
QubitFieldState evolve_oracle(const JointMatrix& h, const QubitFieldState& state, double t);

Eigen::VectorXcd to_joint_vector(const QubitFieldState& s);
QubitFieldState from_joint_vector(const Eigen::VectorXcd& v);

/// Rotates b by the unit phase that matches its largest-magnitude amplitude
/// to a's at the same index. Returns the aligned state and max |a - b'|.
std::pair<QubitFieldState, double> phase_align(const QubitFieldState& a,
                                               const QubitFieldState& b);

/// max |a - b| over both branches; restricted to Fock index <= limit when
/// limit >= 0.
double max_abs_diff(const QubitFieldState& a, const QubitFieldState& b, int limit = -1);

} // namespace crjc
