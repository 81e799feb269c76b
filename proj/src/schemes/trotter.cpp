#include "usc/schemes.hpp"

#include <cmath>
#include <sstream>

namespace usc::schemes {

using hilbert::destroy;
using hilbert::embed;

void TrotterPlan::validate() const
{
    if (steps < 1) throw Error(ErrorKind::DomainError, "Trotter plan needs at least one step");
    const double mismatch = (omega_q1 - omega_q2) - omega_Rq;
    if (std::abs(mismatch) > 1e-12 * std::max({1.0, std::abs(omega_q1), std::abs(omega_q2)})) {
        std::ostringstream msg;
        msg << "Trotter plan needs omega_q1 - omega_q2 = omega_Rq; off by " << mismatch;
        throw Error(ErrorKind::FrameMismatchError, msg.str());
    }
}

DigitalTrotter dicke_trotter(const TrotterPlan& plan, const JcParams& base, std::size_t N, double t, std::size_t cutoff)
{
    plan.validate();
    base.validate();
    if (N < 1) throw Error(ErrorKind::DomainError, "need at least one qubit");
    if (cutoff < 2) throw Error(ErrorKind::InvalidDimension, "cavity cutoff must be at least 2");
    if (std::abs(base.g - plan.g_R) > 1e-12 * std::max(1.0, std::abs(plan.g_R))) {
        throw Error(ErrorKind::FrameMismatchError, "digital scheme keeps the device coupling: g_R must equal g");
    }

    std::vector<std::size_t> dims(N, 2);
    dims.push_back(cutoff);
    const HilbertSpace sp(dims);
    const Operator a = embed(destroy(cutoff), sp, N);
    const Operator ad = a.adjoint();
    Operator Sz = Operator::zero(sp), jc = Operator::zero(sp), flip = Operator::identity(sp);
    for (std::size_t j = 0; j < N; ++j) {
        const Operator sm = embed(hilbert::sigma_minus(), sp, j);
        Sz += embed(hilbert::sigma_z(), sp, j);
        jc += a * sm.adjoint() + ad * sm;
        // exp(-i pi sigma_x / 2) = -i sigma_x on every qubit
        flip = flip * (cplx(0.0, -1.0) * embed(hilbert::sigma_x(), sp, j));
    }

    // Device JC in the drive frame: Delta_c = omega_Rc / 2, qubit tuned to Delta_q.
    const double Dc = plan.omega_Rc / 2.0;
    auto device = [&](double Dq) { return Dc * (ad * a) + (Dq / 2.0) * Sz + base.g * jc; };
    const Dense F = flip.dense();
    auto U1 = [&](double tau) { return dynamics::propagator(device(plan.omega_q1), tau); };
    auto U2 = [&](double tau) { return Dense(F * dynamics::propagator(device(plan.omega_q2), tau) * F.adjoint()); };

    const double tau = t / static_cast<double>(plan.steps);
    Dense step;
    if (plan.order == TrotterOrder::First) {
        step = U2(tau) * U1(tau);
    } else {
        const Dense q = U1(tau / 2.0);
        step = q * U2(tau) * q;
    }
    const auto d = static_cast<Eigen::Index>(sp.total());
    Dense U = Dense::Identity(d, d);
    for (std::size_t k = 0; k < plan.steps; ++k) U = step * U;

    const Operator target = models::h_dicke(plan.omega_Rc, plan.omega_Rq, plan.g_R, N, cutoff);

    DigitalTrotter out;
    out.U_digital = Operator(sp, U);
    out.U_target = Operator(sp, dynamics::propagator(target, t));
    out.trotter_error = (out.U_digital.dense() - out.U_target.dense()).cwiseAbs().maxCoeff();
    out.omega_RF = base.omega_cav - Dc;
    out.qubit_step1 = out.omega_RF + plan.omega_q1;
    out.qubit_step2 = out.omega_RF + plan.omega_q2;
    return out;
}

DigitalTrotter digital_trotter(const TrotterPlan& plan, const JcParams& base, double t, std::size_t cutoff)
{
    return dicke_trotter(plan, base, 1, t, cutoff);
}

} // namespace usc::schemes
