#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "usc/common.hpp"

namespace usc::hilbert {

// Ordered tensor product of Fock modes and spins. Site 0 is the most
// significant factor of the Kronecker product.
class HilbertSpace {
public:
    HilbertSpace() = default;
    explicit HilbertSpace(std::vector<std::size_t> dims, std::vector<std::string> labels = {});

    static HilbertSpace single(std::size_t dim, std::string label = {});

    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t sites() const noexcept { return dims_.size(); }
    std::size_t dim(std::size_t site) const;
    std::size_t total() const noexcept { return total_; }
    std::size_t site(const std::string& label) const;

    std::size_t index(const std::vector<std::size_t>& occupation) const;
    std::vector<std::size_t> occupation(std::size_t index) const;

    bool operator==(const HilbertSpace& other) const { return dims_ == other.dims_; }
    bool operator!=(const HilbertSpace& other) const { return !(*this == other); }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::string> labels_;
    std::size_t total_ = 1;
};

// Total dimension at or below which operators are stored densely.
std::size_t dense_threshold();
void set_dense_threshold(std::size_t n);

class Operator {
public:
    Operator() = default;
    Operator(HilbertSpace space, Dense m);
    Operator(HilbertSpace space, Sparse m);

    static Operator zero(const HilbertSpace& space);
    static Operator identity(const HilbertSpace& space);

    const HilbertSpace& space() const noexcept { return space_; }
    Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(space_.total()); }
    bool is_sparse() const noexcept { return sparse_; }

    Dense dense() const;
    Sparse sparse() const;
    const Dense& dense_ref() const;
    const Sparse& sparse_ref() const;

    cplx operator()(Eigen::Index row, Eigen::Index col) const;
    Operator adjoint() const;
    Vec apply(const Vec& v) const;
    Dense apply(const Dense& m) const;

    double max_abs() const;
    double hermiticity_error() const;
    bool is_hermitian(double rel_tol = 1e-12) const;
    // Throws domain-error if the hermiticity bound is violated.
    const Operator& require_hermitian(const char* what) const;

    Operator& operator+=(const Operator& rhs);
    Operator& operator-=(const Operator& rhs);
    Operator& operator*=(cplx s);

    friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
    friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
    friend Operator operator*(Operator lhs, cplx s) { return lhs *= s; }
    friend Operator operator*(cplx s, Operator rhs) { return rhs *= s; }
    friend Operator operator*(double s, Operator rhs) { return rhs *= cplx(s, 0.0); }
    friend Operator operator*(Operator lhs, double s) { return lhs *= cplx(s, 0.0); }
    friend Operator operator-(Operator op) { return op *= cplx(-1.0, 0.0); }
    friend Operator operator*(const Operator& lhs, const Operator& rhs);

private:
    void check_same_space(const Operator& rhs, const char* what) const;

    HilbertSpace space_;
    bool sparse_ = false;
    Dense dense_;
    Sparse sparse_m_;
};

Operator commutator(const Operator& a, const Operator& b);

class QState {
public:
    enum class Kind { Ket, Density };

    static QState ket(HilbertSpace space, Vec psi);
    static QState density(HilbertSpace space, Dense rho);
    // Normalizes the input instead of rejecting it.
    static QState normalized_ket(HilbertSpace space, Vec psi);
    // Skips the positivity and trace checks; for integrators that monitor
    // those budgets themselves.
    static QState density_unchecked(HilbertSpace space, Dense rho);
    static QState basis(const HilbertSpace& space, const std::vector<std::size_t>& occupation);

    Kind kind() const noexcept { return kind_; }
    bool is_ket() const noexcept { return kind_ == Kind::Ket; }
    const HilbertSpace& space() const noexcept { return space_; }
    const Vec& vector() const;
    const Dense& matrix() const;
    Dense density_matrix() const;

    cplx expect(const Operator& op) const;

private:
    QState(HilbertSpace space, Kind kind) : space_(std::move(space)), kind_(kind) {}

    HilbertSpace space_;
    Kind kind_;
    Vec psi_;
    Dense rho_;
};

// Single-site building blocks.
Operator destroy(std::size_t dim);
Operator create(std::size_t dim);
Operator number(std::size_t dim);
Operator eye(std::size_t dim);
Operator sigma_minus();
Operator sigma_plus();
Operator sigma_x();
Operator sigma_y();
Operator sigma_z();
Operator projector(std::size_t dim, std::size_t level);
Operator transition(std::size_t dim, std::size_t to, std::size_t from);

Operator embed(const Operator& op, const HilbertSpace& space, std::size_t site);
Operator kron(const Operator& a, const Operator& b);

Operator displace(std::size_t dim, cplx alpha);
Operator squeeze_op(std::size_t dim, cplx xi);

// Matrix elements of the squeeze/displacement unitary computed in a padded
// Fock space of dimension pad and restricted to the lowest dim levels. This
// approaches the untruncated operator as pad grows.
Dense squeeze_block(std::size_t dim, cplx xi, std::size_t pad);
Dense displace_block(std::size_t dim, cplx alpha, std::size_t pad);

Operator operator_function(const Operator& op, const std::function<cplx(double)>& f);

// exp(factor * H) for hermitian H via its eigendecomposition.
Dense expm_hermitian(const Dense& H, cplx factor);
// exp(G) for a general square matrix (Pade scaling and squaring).
Dense expm(const Dense& G);

} // namespace usc::hilbert
