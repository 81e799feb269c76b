#include "usc/effective.hpp"

#include <cmath>
#include <sstream>

namespace usc::effective {

namespace {

double falling_root(int n_max, int change)
{
    double p = 1.0;
    for (int k = 0; k < change; ++k) p *= static_cast<double>(n_max - k);
    return std::sqrt(p);
}

} // namespace

EffectiveResult second_quantized_fit(const std::vector<FitBlock>& blocks, double tol)
{
    if (blocks.empty()) throw Error(ErrorKind::ShapeError, "second_quantized_fit needs at least one block");
    const std::size_t K = blocks.front().n_i.size();
    const std::size_t J = blocks.front().s_i.size();
    for (const FitBlock& b : blocks) {
        if (b.n_i.size() != K || b.n_f.size() != K || b.s_i.size() != J || b.s_f.size() != J) {
            throw Error(ErrorKind::ShapeError, "all blocks must list the same modes and atoms");
        }
        for (std::size_t k = 0; k < K; ++k)
            if (b.n_i[k] < 0 || b.n_f[k] < 0) throw Error(ErrorKind::DomainError, "photon numbers must be non-negative");
        for (std::size_t j = 0; j < J; ++j)
            if (std::abs(b.s_i[j]) != 1 || std::abs(b.s_f[j]) != 1) throw Error(ErrorKind::DomainError, "atom states are +1 or -1");
    }

    // Unknowns: chi (K*J), lambda (J), alpha.
    const auto nu = static_cast<Eigen::Index>(K * J + J + 1);
    const auto rows = static_cast<Eigen::Index>(2 * blocks.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, nu);
    Eigen::VectorXd rhs(rows);
    Eigen::Index r = 0;
    double scale = 0.0;
    for (const FitBlock& b : blocks) {
        for (int side = 0; side < 2; ++side) {
            const auto& nn = side == 0 ? b.n_i : b.n_f;
            const auto& ss = side == 0 ? b.s_i : b.s_f;
            for (std::size_t k = 0; k < K; ++k)
                for (std::size_t j = 0; j < J; ++j) A(r, static_cast<Eigen::Index>(k * J + j)) = nn[k] * ss[j];
            for (std::size_t j = 0; j < J; ++j) A(r, static_cast<Eigen::Index>(K * J + j)) = ss[j];
            A(r, nu - 1) = 1.0;
            rhs(r) = b.correction(side, side).real();
            scale = std::max(scale, std::abs(b.correction(side, side)));
            ++r;
        }
    }

    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    const Eigen::VectorXd x = cod.solve(rhs);
    const double resid = (A * x - rhs).norm() / std::max(scale, 1e-300);

    EffectiveResult out;
    out.shifts_determined = cod.rank() == nu;
    for (std::size_t j = 0; j < J; ++j) out.lamb_shifts.push_back(x(static_cast<Eigen::Index>(K * J + j)));
    for (std::size_t q = 0; q < K * J; ++q) out.dispersive.push_back(x(static_cast<Eigen::Index>(q)));
    out.alpha_shift = x(nu - 1);
    const FitBlock& first = blocks.front();
    out.delta_resonance = first.correction(0, 0).real() - first.correction(1, 1).real();

    // Off-diagonal <f|H|i> = g_eff prod_k sqrt((max n_k)_{|dn_k|}).
    std::vector<cplx> g;
    double gscale = 0.0;
    for (const FitBlock& b : blocks) {
        double ff = 1.0;
        for (std::size_t k = 0; k < K; ++k) ff *= falling_root(std::max(b.n_i[k], b.n_f[k]), std::abs(b.n_i[k] - b.n_f[k]));
        if (ff == 0.0) throw Error(ErrorKind::NotRepresentableError, "transition has a vanishing Fock factor");
        g.push_back(b.correction(1, 0) / ff);
        gscale = std::max(gscale, std::abs(g.back()));
        if (&b == &blocks.front()) out.fock_factor = ff;
    }
    cplx mean{0.0, 0.0};
    for (cplx v : g) mean += v;
    mean /= static_cast<double>(g.size());
    double spread = 0.0;
    for (cplx v : g) spread = std::max(spread, std::abs(v - mean));
    out.g_eff = mean;

    std::ostringstream msg;
    if (resid > tol) {
        msg << "diagonal shifts are not of the second-quantized form, relative residual " << resid;
        throw Error(ErrorKind::NotRepresentableError, msg.str());
    }
    if (gscale > 0.0 && spread / gscale > tol) {
        msg << "off-diagonal elements do not scale with the Fock factor, relative spread " << spread / gscale;
        throw Error(ErrorKind::NotRepresentableError, msg.str());
    }
    return out;
}

} // namespace usc::effective
