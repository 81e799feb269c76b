#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "usc/hilbert.hpp"

namespace usc::dynamics {

using hilbert::HilbertSpace;
using hilbert::Operator;
using hilbert::QState;

// H(t) = static_part + sum_k coeff_k(t) op_k
struct TimeDependentH {
    struct Term {
        Operator op;
        std::function<cplx(double)> coeff;
    };

    Operator static_part;
    std::vector<Term> terms;

    const HilbertSpace& space() const { return static_part.space(); }
    Operator at(double t) const;
    Vec apply(double t, const Vec& psi) const;
};

enum class ChannelKind { Standard, TwoPhoton };

// Standard: rate * L(op). TwoPhoton: rate * L'(op) with a complex weight,
// L'(o) rho = o rho o - (o o rho + rho o o) / 2.
struct Channel {
    Operator op;
    cplx rate{0.0, 0.0};
    ChannelKind kind = ChannelKind::Standard;
    std::string label;
};

struct LindbladModel {
    Operator H;
    std::vector<Channel> channels;

    const HilbertSpace& space() const { return H.space(); }
    void validate() const;
};

struct TimeGrid {
    double t0 = 0.0;
    double t1 = 1.0;
    std::size_t n_points = 2;
    double tolerance = 1e-10;

    std::vector<double> times() const;
    void validate() const;
};

struct Hygiene {
    double norm_drift = 0.0;
    double trace_drift = 0.0;
    double hermiticity = 0.0;
    double min_eigenvalue = 0.0;
    double energy_drift = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<QState> states;
    Hygiene hygiene;
};

// Column-stacked Liouvillian: vec(L rho) = liouvillian * vec(rho).
Sparse liouvillian(const LindbladModel& m);
Dense apply_lindblad(const LindbladModel& m, const Dense& rho);
// max |L^dagger(I)|, zero for a trace-preserving generator.
double trace_preservation_error(const LindbladModel& m);

Trajectory evolve_unitary(const Operator& H, const QState& psi0, const TimeGrid& grid);
Trajectory evolve_unitary(const TimeDependentH& H, const QState& psi0, const TimeGrid& grid);
Trajectory evolve_lindblad(const LindbladModel& m, const QState& rho0, const TimeGrid& grid);

// exp(-i H t) psi by Lanczos with adaptive sub-stepping.
Vec krylov_expv(const Operator& H, const Vec& psi, double t, double tol = 1e-12, int krylov_dim = 30);
Dense propagator(const Operator& H, double t);

QState steady_state(const LindbladModel& m);
double steady_state_residual(const LindbladModel& m, const QState& rho);

double fidelity(const QState& x, const QState& y);

struct ResultTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    std::vector<std::string> errors;
    std::map<std::string, std::string> metadata;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    void add_column(std::string name, std::vector<double> values);
    const std::vector<double>& column(const std::string& name) const;
    bool has_errors() const;
    void validate() const;
};

struct SweepSpec {
    std::string parameter;
    std::vector<double> values;
    std::size_t levels = 4;

    void validate() const;
};

// Columns: parameter, level_0..level_{k-1} tracked by maximal eigenvector
// overlap. metadata["max_permutation_defect"] records the tracking quality.
ResultTable eigen_sweep(const SweepSpec& spec, const std::function<Operator(double)>& builder, std::size_t jobs = 1);

// Runs fn(0..n-1) on up to `jobs` threads. The first exception is rethrown.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

struct Crossing {
    double location = 0.0;
    double min_gap = 0.0;
};

Crossing avoided_crossing(const ResultTable& table, std::size_t lower, std::size_t upper);
Crossing avoided_crossing_from_gap(const std::vector<double>& x, const std::vector<double>& gap);

} // namespace usc::dynamics
