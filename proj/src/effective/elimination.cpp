#include "usc/effective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace usc::effective {

namespace {

void check_indices(const std::vector<std::size_t>& idx, std::size_t n, const char* what)
{
    std::set<std::size_t> seen;
    for (std::size_t i : idx) {
        if (i >= n) throw Error(ErrorKind::ShapeError, std::string(what) + ": basis index out of range");
        if (!seen.insert(i).second) throw Error(ErrorKind::ShapeError, std::string(what) + ": repeated basis index");
    }
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& idx, std::size_t n)
{
    std::vector<bool> in(n, false);
    for (std::size_t i : idx) in[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (!in[i]) out.push_back(i);
    return out;
}

Dense block(const Dense& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols)
{
    Dense out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                m(static_cast<Eigen::Index>(rows[r]), static_cast<Eigen::Index>(cols[c]));
    return out;
}

Operator flat(Dense m)
{
    const auto n = static_cast<std::size_t>(m.rows());
    return Operator(HilbertSpace::single(n), std::move(m));
}

} // namespace

Operator restrict(const Operator& H, const std::vector<std::size_t>& indices)
{
    check_indices(indices, H.space().total(), "restrict");
    if (indices.empty()) throw Error(ErrorKind::ShapeError, "restrict: empty index set");
    Dense out(static_cast<Eigen::Index>(indices.size()), static_cast<Eigen::Index>(indices.size()));
    for (std::size_t r = 0; r < indices.size(); ++r)
        for (std::size_t c = 0; c < indices.size(); ++c)
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                H(static_cast<Eigen::Index>(indices[r]), static_cast<Eigen::Index>(indices[c]));
    return flat(std::move(out));
}

std::vector<std::size_t> intermediate_manifold(const Operator& H, const std::vector<std::size_t>& seeds,
                                               std::size_t depth)
{
    const std::size_t n = H.space().total();
    check_indices(seeds, n, "intermediate_manifold");
    std::vector<bool> reached(n, false);
    for (std::size_t s : seeds) reached[s] = true;
    std::vector<std::size_t> frontier = seeds;

    auto neighbours = [&](std::size_t col, std::vector<std::size_t>& out) {
        const auto c = static_cast<Eigen::Index>(col);
        if (H.is_sparse()) {
            // Column scan; H is hermitian so rows reachable from col are its column entries.
            const Sparse& m = H.sparse_ref();
            for (Sparse::InnerIterator it(m, c); it; ++it)
                if (it.row() != c && std::abs(it.value()) > 0.0) out.push_back(static_cast<std::size_t>(it.row()));
        } else {
            const Dense& m = H.dense_ref();
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                if (r != c && std::abs(m(r, c)) > 0.0) out.push_back(static_cast<std::size_t>(r));
        }
    };

    std::vector<std::size_t> found;
    for (std::size_t step = 0; step < depth && !frontier.empty(); ++step) {
        std::vector<std::size_t> next;
        for (std::size_t col : frontier) {
            std::vector<std::size_t> nb;
            neighbours(col, nb);
            for (std::size_t r : nb) {
                if (reached[r]) continue;
                reached[r] = true;
                next.push_back(r);
                found.push_back(r);
            }
        }
        frontier = std::move(next);
    }
    std::sort(found.begin(), found.end());
    return found;
}

Operator eliminate_schrieffer_wolff(const std::vector<double>& energies, const Operator& V,
                                    const std::vector<std::size_t>& slow)
{
    const std::size_t n = V.space().total();
    if (energies.size() != n) throw Error(ErrorKind::ShapeError, "one bare energy per basis state is required");
    if (slow.empty() || slow.size() >= n) throw Error(ErrorKind::ShapeError, "slow set must be a nonempty proper subset");
    check_indices(slow, n, "eliminate_schrieffer_wolff");
    const std::vector<std::size_t> fast = complement(slow, n);
    const Dense v = V.dense();
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());

    const auto na = static_cast<Eigen::Index>(slow.size());
    Dense out = block(v, slow, slow);
    for (Eigen::Index i = 0; i < na; ++i) {
        for (Eigen::Index j = 0; j < na; ++j) {
            const std::size_t si = slow[static_cast<std::size_t>(i)], sj = slow[static_cast<std::size_t>(j)];
            cplx acc{0.0, 0.0};
            for (std::size_t a : fast) {
                const cplx num = v(static_cast<Eigen::Index>(si), static_cast<Eigen::Index>(a)) *
                                 v(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(sj));
                if (std::abs(num) == 0.0) continue;
                const double di = energies[si] - energies[a];
                const double dj = energies[sj] - energies[a];
                if (std::abs(di) <= 1e-14 * scale || std::abs(dj) <= 1e-14 * scale) {
                    std::ostringstream msg;
                    msg << "slow state " << (std::abs(di) <= 1e-14 * scale ? si : sj) << " is degenerate with fast state "
                        << a << " they couple to";
                    throw Error(ErrorKind::DegenerateManifoldError, msg.str());
                }
                acc += 0.5 * num * (1.0 / di + 1.0 / dj);
            }
            out(i, j) += acc;
        }
    }
    return flat(std::move(out));
}

void EliminationProblem::validate() const
{
    const std::size_t n = H.space().total();
    if (slow.empty() || slow.size() >= n) throw Error(ErrorKind::ShapeError, "slow set must be a nonempty proper subset");
    check_indices(slow, n, "EliminationProblem");
    H.require_hermitian("elimination Hamiltonian");
}

Operator eliminate_resolvent(const EliminationProblem& p)
{
    p.validate();
    const std::size_t n = p.H.space().total();
    const std::vector<std::size_t> fast = complement(p.slow, n);
    const Dense h = p.H.dense();
    const Dense HA = block(h, p.slow, p.slow);
    const Dense HB = block(h, fast, fast);
    const Dense HAB = block(h, p.slow, fast);

    double E0 = 0.0;
    if (p.E0) {
        E0 = *p.E0;
    } else {
        for (Eigen::Index i = 0; i < HA.rows(); ++i) E0 += HA(i, i).real();
        E0 /= static_cast<double>(HA.rows());
    }

    const double coupling = HAB.cwiseAbs().maxCoeff();
    if (coupling > 0.0) {
        double gap = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < HA.rows(); ++i)
            for (Eigen::Index j = 0; j < HB.rows(); ++j) gap = std::min(gap, std::abs(HA(i, i).real() - HB(j, j).real()));
        if (gap < 10.0 * coupling) {
            std::ostringstream msg;
            msg << "slow manifold is poorly separated: min|E_A - E_B| / max|H_AB| = " << gap / coupling;
            warn(msg.str());
        }
    }

    const auto nb = HB.rows();
    const Dense M = E0 * Dense::Identity(nb, nb) - HB;
    const Eigen::PartialPivLU<Dense> lu(M);
    if (!(lu.rcond() >= 1e-14)) {
        std::ostringstream msg;
        msg << "E0 = " << E0 << " is (numerically) an eigenvalue of the fast block, rcond = " << lu.rcond();
        throw Error(ErrorKind::ResolventSingularError, msg.str());
    }
    const Dense X = lu.solve(Dense(HAB.adjoint()));
    Dense out = HA + HAB * X;
    out = 0.5 * (out + out.adjoint()).eval();
    return flat(std::move(out));
}

} // namespace usc::effective
