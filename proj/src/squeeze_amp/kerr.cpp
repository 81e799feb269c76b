#include "usc/squeeze_amp.hpp"

#include <cmath>
#include <sstream>

namespace usc::squeeze_amp {

namespace {

// S_b(theta) = exp[-theta/2 (b^2 - b^dag2)] = S(xi = -theta).
Dense single_mode_squeeze(double theta, std::size_t pad) { return hilbert::squeeze_block(pad, cplx(-theta, 0.0), pad); }

// S_bc(theta) = exp[-theta (b c - b^dag c^dag)] on the block of fixed
// n_b - n_c = +-d, indexed by k = min(n_b, n_c).
Dense two_mode_squeeze_block(double theta, std::size_t d, std::size_t pad)
{
    const auto n = static_cast<Eigen::Index>(pad);
    Dense G = Dense::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) {
        const double v = std::sqrt(static_cast<double>(k) * static_cast<double>(k + static_cast<Eigen::Index>(d)));
        // -theta (bc - b^dag c^dag): bc lowers k, so G(k-1, k) = -theta v.
        G(k - 1, k) = -theta * v;
        G(k, k - 1) = theta * v;
    }
    // exp(G) = exp(-i (i G)) with i G hermitian.
    return hilbert::expm_hermitian(cplx(0.0, 1.0) * G, cplx(0.0, -1.0));
}

} // namespace

KerrAmplification kerr_amplification(const KerrAmpParams& p)
{
    const double arg = -std::cos(p.g) * std::tanh(2.0 * p.theta1);
    if (!(std::abs(arg) < 1.0)) {
        std::ostringstream msg;
        msg << "|cos g tanh 2 theta1| = " << std::abs(arg) << " is not below 1";
        throw Error(ErrorKind::AmplificationDomainError, msg.str());
    }
    if (p.g == 0.0) throw Error(ErrorKind::AmplificationDomainError, "Kerr strength g must be nonzero");
    KerrAmplification out;
    out.theta2 = std::atanh(arg);
    out.g_gamma = std::atan(std::tan(p.g) * std::cosh(2.0 * p.theta1));
    out.kappa_amp = 2.0 * out.g_gamma / p.g;
    out.kappa_small_angle = 2.0 * std::cosh(2.0 * p.theta1);

    auto& c = out.circuit;
    if (!p.two_mode) {
        c = {{"S_b", p.theta1}, {"K_ab", p.g}, {"P_b", -p.g / 2.0}, {"S_b", out.theta2},
             {"P_b", -p.g / 2.0}, {"K_ab", p.g}, {"S_b", p.theta1}, {"P_prime", out.g_gamma}};
    } else {
        // K_ab K_ac is realized as K_ab SWAP K_ab SWAP.
        const std::vector<KerrGate> kerr = {{"SWAP_bc", 0.0}, {"K_ab", p.g}, {"SWAP_bc", 0.0}, {"K_ab", p.g}};
        c.push_back({"S_bc", p.theta1});
        c.insert(c.end(), kerr.begin(), kerr.end());
        c.push_back({"P_bc", -p.g / 2.0});
        c.push_back({"S_bc", out.theta2});
        c.push_back({"P_bc", -p.g / 2.0});
        c.insert(c.end(), kerr.begin(), kerr.end());
        c.push_back({"S_bc", p.theta1});
        c.push_back({"P_prime", out.g_gamma});
    }
    return out;
}

KerrVerification verify_kerr_circuit(const KerrAmpParams& p, std::size_t cutoff, std::size_t pad)
{
    if (cutoff < 2) throw Error(ErrorKind::InvalidDimension, "Kerr cutoff must be at least 2");
    if (pad < cutoff) throw Error(ErrorKind::ShapeError, "padding must not be smaller than the cutoff");
    KerrVerification out;
    out.amp = kerr_amplification(p);
    const double g = p.g, gg = out.amp.g_gamma;
    const cplx I(0.0, 1.0);

    if (!p.two_mode) {
        const HilbertSpace sp({2, cutoff}, {"atom", "b"});
        const auto n = static_cast<Eigen::Index>(cutoff);
        const Dense S1 = single_mode_squeeze(p.theta1, pad);
        const Dense S2 = single_mode_squeeze(out.amp.theta2, pad);
        Dense U = Dense::Zero(2 * n, 2 * n), T = Dense::Zero(2 * n, 2 * n);
        for (int na = 0; na < 2; ++na) {
            Vec kp(static_cast<Eigen::Index>(pad)), pp(static_cast<Eigen::Index>(pad));
            for (std::size_t k = 0; k < pad; ++k) {
                const double nb = static_cast<double>(k);
                kp(static_cast<Eigen::Index>(k)) = std::exp(I * (g * na * nb - g * nb / 2.0));
                const double beta = (gg - g) * (na - 0.5) - gg * nb;
                pp(static_cast<Eigen::Index>(k)) = std::exp(-I * beta);
            }
            // P' S1 (K P) S2 (P K) S1, only the kept columns are needed.
            Dense M = kp.asDiagonal() * S1.leftCols(n);
            M = S2 * M;
            M = kp.asDiagonal() * M;
            M = S1.topRows(n) * M;
            M = pp.head(n).asDiagonal() * M;
            U.block(na * n, na * n, n, n) = M;
            for (Eigen::Index k = 0; k < n; ++k) {
                T(na * n + k, na * n + k) = std::exp(I * (2.0 * gg * na * static_cast<double>(k)));
            }
        }
        out.U_circuit = Operator(sp, U);
        out.U_target = Operator(sp, T);
        out.residual = (U - T).cwiseAbs().maxCoeff();
        return out;
    }

    const HilbertSpace sp({2, cutoff, cutoff}, {"atom", "b", "c"});
    const auto dim = static_cast<Eigen::Index>(sp.total());
    Dense U = Dense::Zero(dim, dim), T = Dense::Zero(dim, dim);
    for (std::size_t d = 0; d < cutoff; ++d) {
        const Dense S1 = two_mode_squeeze_block(p.theta1, d, pad);
        const Dense S2 = two_mode_squeeze_block(out.amp.theta2, d, pad);
        const std::size_t keep = cutoff - d;
        for (int na = 0; na < 2; ++na) {
            Vec kp(static_cast<Eigen::Index>(pad)), pp(static_cast<Eigen::Index>(pad));
            for (std::size_t k = 0; k < pad; ++k) {
                const double ntot = static_cast<double>(2 * k + d);
                kp(static_cast<Eigen::Index>(k)) = std::exp(I * (g * na * ntot - g * ntot / 2.0));
                const double beta = 2.0 * (gg - g) * (na - 0.5) - gg * ntot;
                pp(static_cast<Eigen::Index>(k)) = std::exp(-I * beta);
            }
            const auto kk = static_cast<Eigen::Index>(keep);
            Dense M = kp.asDiagonal() * S1.leftCols(kk);
            M = S2 * M;
            M = kp.asDiagonal() * M;
            M = S1.topRows(kk) * M;
            M = pp.head(kk).asDiagonal() * M;
            // The block is the same for n_b - n_c = d and = -d.
            for (int sign : {+1, -1}) {
                if (sign < 0 && d == 0) continue;
                auto idx = [&](std::size_t k) {
                    const std::size_t nb = sign > 0 ? k + d : k;
                    const std::size_t nc = sign > 0 ? k : k + d;
                    return static_cast<Eigen::Index>(sp.index({static_cast<std::size_t>(na), nb, nc}));
                };
                for (std::size_t i = 0; i < keep; ++i) {
                    for (std::size_t j = 0; j < keep; ++j) {
                        U(idx(i), idx(j)) = M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                    }
                    const double ntot = static_cast<double>(2 * i + d);
                    T(idx(i), idx(i)) = std::exp(I * (2.0 * gg * na * ntot));
                }
            }
        }
    }
    out.U_circuit = Operator(sp, U);
    out.U_target = Operator(sp, T);
    out.residual = (U - T).cwiseAbs().maxCoeff();

    // The circuit applies K_ab K_ac as K_ab SWAP K_ab SWAP; check that
    // decomposition on the truncated space as well.
    Dense kab = Dense::Zero(dim, dim), kac = Dense::Zero(dim, dim), swap = Dense::Zero(dim, dim);
    for (std::size_t i = 0; i < sp.total(); ++i) {
        const auto o = sp.occupation(i);
        const auto ii = static_cast<Eigen::Index>(i);
        kab(ii, ii) = std::exp(I * (g * static_cast<double>(o[0] * o[1])));
        kac(ii, ii) = std::exp(I * (g * static_cast<double>(o[0] * o[2])));
        swap(static_cast<Eigen::Index>(sp.index({o[0], o[2], o[1]})), ii) = 1.0;
    }
    const double swap_err = (kab * swap * kab * swap - kab * kac).cwiseAbs().maxCoeff();
    out.residual = std::max(out.residual, swap_err);
    return out;
}

} // namespace usc::squeeze_amp
