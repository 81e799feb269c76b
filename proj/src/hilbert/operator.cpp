#include "usc/hilbert.hpp"

#include <atomic>
#include <cmath>
#include <vector>

namespace usc::hilbert {

namespace {

std::atomic<std::size_t> g_dense_threshold{512};

Sparse kron_sparse(const Sparse& a, const Sparse& b)
{
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka) {
        for (Sparse::InnerIterator ia(a, ka); ia; ++ia) {
            for (int kb = 0; kb < b.outerSize(); ++kb) {
                for (Sparse::InnerIterator ib(b, kb); ib; ++ib) {
                    trips.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                                       ia.value() * ib.value());
                }
            }
        }
    }
    Sparse out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

Sparse identity_sparse(Eigen::Index n)
{
    Sparse id(n, n);
    id.setIdentity();
    return id;
}

} // namespace

std::size_t dense_threshold() { return g_dense_threshold.load(); }

void set_dense_threshold(std::size_t n) { g_dense_threshold.store(n); }

Operator::Operator(HilbertSpace space, Dense m) : space_(std::move(space)), sparse_(false), dense_(std::move(m))
{
    if (dense_.rows() != dim() || dense_.cols() != dim()) {
        throw Error(ErrorKind::ShapeError, "matrix shape does not match Hilbert space dimension");
    }
}

Operator::Operator(HilbertSpace space, Sparse m) : space_(std::move(space))
{
    if (m.rows() != dim() || m.cols() != dim()) {
        throw Error(ErrorKind::ShapeError, "matrix shape does not match Hilbert space dimension");
    }
    if (space_.total() <= dense_threshold()) {
        sparse_ = false;
        dense_ = Dense(m);
    } else {
        sparse_ = true;
        sparse_m_ = std::move(m);
        sparse_m_.makeCompressed();
    }
}

Operator Operator::zero(const HilbertSpace& space)
{
    return Operator(space, Sparse(static_cast<Eigen::Index>(space.total()), static_cast<Eigen::Index>(space.total())));
}

Operator Operator::identity(const HilbertSpace& space)
{
    return Operator(space, identity_sparse(static_cast<Eigen::Index>(space.total())));
}

Dense Operator::dense() const { return sparse_ ? Dense(sparse_m_) : dense_; }

Sparse Operator::sparse() const { return sparse_ ? sparse_m_ : Sparse(dense_.sparseView()); }

const Dense& Operator::dense_ref() const
{
    if (sparse_) throw Error(ErrorKind::ShapeError, "operator is stored sparse");
    return dense_;
}

const Sparse& Operator::sparse_ref() const
{
    if (!sparse_) throw Error(ErrorKind::ShapeError, "operator is stored dense");
    return sparse_m_;
}

cplx Operator::operator()(Eigen::Index row, Eigen::Index col) const
{
    return sparse_ ? sparse_m_.coeff(row, col) : dense_(row, col);
}

Operator Operator::adjoint() const
{
    if (sparse_) return Operator(space_, Sparse(sparse_m_.adjoint()));
    return Operator(space_, Dense(dense_.adjoint()));
}

Vec Operator::apply(const Vec& v) const
{
    if (v.size() != dim()) throw Error(ErrorKind::ShapeError, "vector length does not match operator");
    return sparse_ ? Vec(sparse_m_ * v) : Vec(dense_ * v);
}

Dense Operator::apply(const Dense& m) const
{
    if (m.rows() != dim()) throw Error(ErrorKind::ShapeError, "matrix rows do not match operator");
    return sparse_ ? Dense(sparse_m_ * m) : Dense(dense_ * m);
}

double Operator::max_abs() const
{
    if (!sparse_) return dense_.size() ? dense_.cwiseAbs().maxCoeff() : 0.0;
    double m = 0.0;
    for (int k = 0; k < sparse_m_.outerSize(); ++k) {
        for (Sparse::InnerIterator it(sparse_m_, k); it; ++it) m = std::max(m, std::abs(it.value()));
    }
    return m;
}

double Operator::hermiticity_error() const
{
    if (!sparse_) return (dense_ - dense_.adjoint()).cwiseAbs().maxCoeff();
    Sparse diff = sparse_m_ - Sparse(sparse_m_.adjoint());
    double m = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k) {
        for (Sparse::InnerIterator it(diff, k); it; ++it) m = std::max(m, std::abs(it.value()));
    }
    return m;
}

bool Operator::is_hermitian(double rel_tol) const
{
    const double scale = max_abs();
    return hermiticity_error() <= rel_tol * std::max(scale, 1e-300);
}

const Operator& Operator::require_hermitian(const char* what) const
{
    if (!is_hermitian()) {
        throw Error(ErrorKind::DomainError, std::string(what) + " is not hermitian");
    }
    return *this;
}

void Operator::check_same_space(const Operator& rhs, const char* what) const
{
    if (space_ != rhs.space_) {
        throw Error(ErrorKind::ShapeError, std::string("operator spaces differ in ") + what);
    }
}

Operator& Operator::operator+=(const Operator& rhs)
{
    check_same_space(rhs, "addition");
    if (sparse_ && rhs.sparse_) {
        sparse_m_ += rhs.sparse_m_;
    } else if (!sparse_ && !rhs.sparse_) {
        dense_ += rhs.dense_;
    } else {
        dense_ = dense() + rhs.dense();
        sparse_ = false;
        sparse_m_ = Sparse();
    }
    return *this;
}

Operator& Operator::operator-=(const Operator& rhs)
{
    check_same_space(rhs, "subtraction");
    if (sparse_ && rhs.sparse_) {
        sparse_m_ -= rhs.sparse_m_;
    } else if (!sparse_ && !rhs.sparse_) {
        dense_ -= rhs.dense_;
    } else {
        dense_ = dense() - rhs.dense();
        sparse_ = false;
        sparse_m_ = Sparse();
    }
    return *this;
}

Operator& Operator::operator*=(cplx s)
{
    if (sparse_) {
        sparse_m_ *= s;
    } else {
        dense_ *= s;
    }
    return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs)
{
    lhs.check_same_space(rhs, "product");
    if (lhs.sparse_ && rhs.sparse_) return Operator(lhs.space_, Sparse(lhs.sparse_m_ * rhs.sparse_m_));
    if (!lhs.sparse_ && !rhs.sparse_) return Operator(lhs.space_, Dense(lhs.dense_ * rhs.dense_));
    return Operator(lhs.space_, Dense(lhs.dense() * rhs.dense()));
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator destroy(std::size_t dim)
{
    if (dim < 2) throw Error(ErrorKind::InvalidDimension, "destroy needs dim >= 2");
    const auto n = static_cast<Eigen::Index>(dim);
    Sparse a(n, n);
    std::vector<Eigen::Triplet<cplx>> trips;
    for (Eigen::Index k = 1; k < n; ++k) trips.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
    a.setFromTriplets(trips.begin(), trips.end());
    return Operator(HilbertSpace::single(dim), a);
}

Operator create(std::size_t dim) { return destroy(dim).adjoint(); }

Operator number(std::size_t dim)
{
    if (dim < 2) throw Error(ErrorKind::InvalidDimension, "number needs dim >= 2");
    const auto n = static_cast<Eigen::Index>(dim);
    Sparse m(n, n);
    std::vector<Eigen::Triplet<cplx>> trips;
    for (Eigen::Index k = 1; k < n; ++k) trips.emplace_back(k, k, static_cast<double>(k));
    m.setFromTriplets(trips.begin(), trips.end());
    return Operator(HilbertSpace::single(dim), m);
}

Operator eye(std::size_t dim)
{
    if (dim < 2) throw Error(ErrorKind::InvalidDimension, "identity needs dim >= 2");
    return Operator::identity(HilbertSpace::single(dim));
}

Operator projector(std::size_t dim, std::size_t level) { return transition(dim, level, level); }

Operator transition(std::size_t dim, std::size_t to, std::size_t from)
{
    if (dim < 2) throw Error(ErrorKind::InvalidDimension, "transition needs dim >= 2");
    if (to >= dim || from >= dim) throw Error(ErrorKind::ShapeError, "transition level out of range");
    const auto n = static_cast<Eigen::Index>(dim);
    Sparse m(n, n);
    m.insert(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) = 1.0;
    return Operator(HilbertSpace::single(dim), m);
}

// Spin basis |g>, |e>: sigma_z = diag(-1, +1), sigma^- = |g><e|.
Operator sigma_minus() { return transition(2, 0, 1); }
Operator sigma_plus() { return transition(2, 1, 0); }

Operator sigma_x()
{
    Dense m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return Operator(HilbertSpace::single(2), m);
}

Operator sigma_y()
{
    Dense m(2, 2);
    m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
    return Operator(HilbertSpace::single(2), m);
}

Operator sigma_z()
{
    Dense m(2, 2);
    m << -1.0, 0.0, 0.0, 1.0;
    return Operator(HilbertSpace::single(2), m);
}

Operator kron(const Operator& a, const Operator& b)
{
    std::vector<std::size_t> dims = a.space().dims();
    dims.insert(dims.end(), b.space().dims().begin(), b.space().dims().end());
    HilbertSpace space(dims);
    if (space.total() <= dense_threshold()) {
        Dense ad = a.dense();
        Dense bd = b.dense();
        Dense out(ad.rows() * bd.rows(), ad.cols() * bd.cols());
        for (Eigen::Index i = 0; i < ad.rows(); ++i) {
            for (Eigen::Index j = 0; j < ad.cols(); ++j) {
                out.block(i * bd.rows(), j * bd.cols(), bd.rows(), bd.cols()) = ad(i, j) * bd;
            }
        }
        return Operator(space, out);
    }
    return Operator(space, kron_sparse(a.sparse(), b.sparse()));
}

Operator embed(const Operator& op, const HilbertSpace& space, std::size_t site)
{
    if (site >= space.sites()) throw Error(ErrorKind::ShapeError, "embed site out of range");
    if (op.space().total() != space.dim(site)) {
        throw Error(ErrorKind::ShapeError, "operator dimension does not match the target site");
    }
    std::size_t left = 1;
    std::size_t right = 1;
    for (std::size_t k = 0; k < site; ++k) left *= space.dim(k);
    for (std::size_t k = site + 1; k < space.sites(); ++k) right *= space.dim(k);

    const Sparse s = op.sparse();
    const auto r = static_cast<Eigen::Index>(right);
    const auto d = static_cast<Eigen::Index>(space.dim(site));
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(static_cast<std::size_t>(s.nonZeros()) * left * right);
    for (std::size_t l = 0; l < left; ++l) {
        const auto base = static_cast<Eigen::Index>(l) * d * r;
        for (int k = 0; k < s.outerSize(); ++k) {
            for (Sparse::InnerIterator it(s, k); it; ++it) {
                for (Eigen::Index q = 0; q < r; ++q) {
                    trips.emplace_back(base + it.row() * r + q, base + it.col() * r + q, it.value());
                }
            }
        }
    }
    const auto n = static_cast<Eigen::Index>(space.total());
    Sparse out(n, n);
    out.setFromTriplets(trips.begin(), trips.end());
    return Operator(space, out);
}

} // namespace usc::hilbert
