#include "usc/dynamics.hpp"

#include <Eigen/SparseLU>
#include <cmath>

namespace usc::dynamics {

namespace {

// Solves L vec(rho) = 0 with the equation of row `replaced` swapped for the
// trace condition. The diagonal rows of L sum to zero, so any one of them is
// redundant when the null space is one-dimensional.
Vec solve_with_trace_row(const Sparse& L, Eigen::Index d, Eigen::Index replaced)
{
    const Eigen::Index n = d * d;
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(static_cast<std::size_t>(L.nonZeros() + d));
    for (int k = 0; k < L.outerSize(); ++k) {
        for (Sparse::InnerIterator it(L, k); it; ++it) {
            if (it.row() != replaced) trips.emplace_back(it.row(), it.col(), it.value());
        }
    }
    for (Eigen::Index i = 0; i < d; ++i) trips.emplace_back(replaced, i + i * d, 1.0);
    Sparse A(n, n);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();

    Eigen::SparseLU<Sparse> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) {
        throw Error(ErrorKind::NonuniqueSteadyStateError, "steady-state system is singular: " + lu.lastErrorMessage());
    }
    Vec rhs = Vec::Zero(n);
    rhs(replaced) = 1.0;
    Vec x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite()) {
        throw Error(ErrorKind::NonuniqueSteadyStateError, "steady-state solve failed");
    }
    return x;
}

} // namespace

QState steady_state(const LindbladModel& m)
{
    m.validate();
    const Eigen::Index d = m.H.dim();
    const Sparse L = liouvillian(m);

    const Vec x0 = solve_with_trace_row(L, d, 0);
    const Vec x1 = solve_with_trace_row(L, d, (d - 1) + (d - 1) * d);
    // Two independent replacements agree only if the null vector is unique.
    if ((x0 - x1).cwiseAbs().maxCoeff() > 1e-6) {
        throw Error(ErrorKind::NonuniqueSteadyStateError, "generator has a degenerate null space");
    }

    Dense rho = Eigen::Map<const Dense>(x0.data(), d, d);
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace();
    const double scale = std::max(1.0, L.coeffs().cwiseAbs().maxCoeff());
    const Vec r = L * Eigen::Map<const Vec>(rho.data(), d * d);
    if (r.cwiseAbs().maxCoeff() > 1e-8 * scale) {
        throw Error(ErrorKind::NonuniqueSteadyStateError, "steady-state residual too large");
    }
    return QState::density_unchecked(m.space(), rho);
}

double steady_state_residual(const LindbladModel& m, const QState& rho)
{
    const Dense r = apply_lindblad(m, rho.density_matrix());
    return r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
}

} // namespace usc::dynamics
