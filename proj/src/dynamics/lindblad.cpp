#include "usc/dynamics.hpp"

#include <cmath>
#include <vector>

namespace usc::dynamics {

namespace {

// vec(A X B) = (B^T kron A) vec(X) for column stacking.
Sparse super_kron(const Sparse& bt, const Sparse& a)
{
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(static_cast<std::size_t>(bt.nonZeros() * a.nonZeros()));
    for (int kb = 0; kb < bt.outerSize(); ++kb) {
        for (Sparse::InnerIterator ib(bt, kb); ib; ++ib) {
            for (int ka = 0; ka < a.outerSize(); ++ka) {
                for (Sparse::InnerIterator ia(a, ka); ia; ++ia) {
                    trips.emplace_back(ib.row() * a.rows() + ia.row(), ib.col() * a.cols() + ia.col(),
                                       ib.value() * ia.value());
                }
            }
        }
    }
    Sparse out(bt.rows() * a.rows(), bt.cols() * a.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

Sparse sparse_identity(Eigen::Index n)
{
    Sparse id(n, n);
    id.setIdentity();
    return id;
}

} // namespace

void LindbladModel::validate() const
{
    H.require_hermitian("Lindblad Hamiltonian");
    for (const auto& ch : channels) {
        if (ch.op.space() != H.space()) {
            throw Error(ErrorKind::ShapeError, "collapse operator '" + ch.label + "' lives on a different space");
        }
        if (ch.kind == ChannelKind::Standard) {
            if (std::abs(ch.rate.imag()) > 0.0 || ch.rate.real() < 0.0) {
                throw Error(ErrorKind::DomainError, "standard channel '" + ch.label + "' needs a real rate >= 0");
            }
        }
    }
}

Sparse liouvillian(const LindbladModel& m)
{
    const Eigen::Index d = m.H.dim();
    const Sparse id = sparse_identity(d);
    const Sparse H = m.H.sparse();
    const cplx mi(0.0, -1.0);
    // -i (H rho - rho H)
    Sparse L = mi * super_kron(id, H) - mi * super_kron(Sparse(H.transpose()), id);
    for (const auto& ch : m.channels) {
        if (ch.rate == cplx(0.0, 0.0)) continue;
        const Sparse o = ch.op.sparse();
        if (ch.kind == ChannelKind::Standard) {
            const Sparse od = o.adjoint();
            const Sparse odo = od * o;
            Sparse term = super_kron(Sparse(od.transpose()), o);
            term -= 0.5 * super_kron(id, odo);
            term -= 0.5 * super_kron(Sparse(odo.transpose()), id);
            L += ch.rate * term;
        } else {
            const Sparse oo = o * o;
            Sparse term = super_kron(Sparse(o.transpose()), o);
            term -= 0.5 * super_kron(id, oo);
            term -= 0.5 * super_kron(Sparse(oo.transpose()), id);
            L += ch.rate * term;
        }
    }
    L.makeCompressed();
    return L;
}

Dense apply_lindblad(const LindbladModel& m, const Dense& rho)
{
    const cplx mi(0.0, -1.0);
    Dense Hr = m.H.apply(rho);
    Dense out = mi * (Hr - Hr.adjoint());
    for (const auto& ch : m.channels) {
        if (ch.rate == cplx(0.0, 0.0)) continue;
        if (ch.kind == ChannelKind::Standard) {
            const Dense orho = ch.op.apply(rho);
            const Operator od = ch.op.adjoint();
            // o rho o^dag = (o (o rho)^dag)^dag
            const Dense orhood = ch.op.apply(Dense(orho.adjoint())).adjoint();
            const Dense odo_rho = od.apply(orho);
            out += ch.rate * (orhood - 0.5 * odo_rho - 0.5 * odo_rho.adjoint());
        } else {
            const Dense orho = ch.op.apply(rho);
            // o rho o = ((o^T)(o rho)^T)^T
            const Dense orhoo = ch.op.sparse().transpose() * Dense(orho.transpose());
            const Dense oo_rho = ch.op.apply(orho);
            const Dense rho_oo = Dense(ch.op.sparse().transpose() * Dense(ch.op.sparse().transpose() * Dense(rho.transpose()))).transpose();
            out += ch.rate * (Dense(orhoo.transpose()) - 0.5 * oo_rho - 0.5 * rho_oo);
        }
    }
    return out;
}

double trace_preservation_error(const LindbladModel& m)
{
    // Tr(L rho) = vec(I)^dag L vec(rho); the row vector vec(I)^T L must vanish.
    const Sparse L = liouvillian(m);
    const Eigen::Index d = m.H.dim();
    Vec vid = Vec::Zero(d * d);
    for (Eigen::Index k = 0; k < d; ++k) vid(k + k * d) = 1.0;
    const Vec row = L.transpose() * vid;
    return row.size() ? row.cwiseAbs().maxCoeff() : 0.0;
}

} // namespace usc::dynamics
