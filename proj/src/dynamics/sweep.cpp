#include "usc/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace usc::dynamics {

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn)
{
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!first) first = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

void ResultTable::add_column(std::string name, std::vector<double> values)
{
    if (!columns.empty() && values.size() != rows()) {
        throw Error(ErrorKind::ShapeError, "column '" + name + "' has a different length");
    }
    names.push_back(std::move(name));
    columns.push_back(std::move(values));
}

const std::vector<double>& ResultTable::column(const std::string& name) const
{
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (names[k] == name) return columns[k];
    }
    throw Error(ErrorKind::ShapeError, "no column named '" + name + "'");
}

bool ResultTable::has_errors() const
{
    return std::any_of(errors.begin(), errors.end(), [](const std::string& e) { return !e.empty(); });
}

void ResultTable::validate() const
{
    if (names.size() != columns.size()) throw Error(ErrorKind::ShapeError, "column names and data differ in count");
    for (const auto& c : columns) {
        if (c.size() != rows()) throw Error(ErrorKind::ShapeError, "columns differ in length");
    }
    if (!errors.empty() && errors.size() != rows()) {
        throw Error(ErrorKind::ShapeError, "error column length differs from the table");
    }
}

void SweepSpec::validate() const
{
    if (values.empty()) throw Error(ErrorKind::DomainError, "sweep needs at least one value");
    if (levels == 0) throw Error(ErrorKind::DomainError, "sweep needs at least one level");
}

ResultTable eigen_sweep(const SweepSpec& spec, const std::function<Operator(double)>& builder, std::size_t jobs)
{
    spec.validate();
    const std::size_t npts = spec.values.size();
    std::vector<Eigen::VectorXd> energies(npts);
    std::vector<Dense> vectors(npts);

    parallel_for(npts, jobs, [&](std::size_t p) {
        const Operator H = builder(spec.values[p]);
        H.require_hermitian("sweep Hamiltonian");
        Eigen::SelfAdjointEigenSolver<Dense> es(H.dense());
        if (es.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceError, "eigendecomposition failed");
        const auto k = static_cast<Eigen::Index>(std::min<std::size_t>(spec.levels, static_cast<std::size_t>(H.dim())));
        energies[p] = es.eigenvalues().head(k);
        vectors[p] = es.eigenvectors().leftCols(k);
    });

    const auto k = energies.front().size();
    for (const auto& e : energies) {
        if (e.size() != k) throw Error(ErrorKind::ShapeError, "sweep builder changed the Hilbert space size");
    }

    // label[p][j] = index of the sorted eigenpair at point p that continues track j
    std::vector<std::vector<Eigen::Index>> label(npts, std::vector<Eigen::Index>(static_cast<std::size_t>(k)));
    for (Eigen::Index j = 0; j < k; ++j) label[0][static_cast<std::size_t>(j)] = j;
    double defect = 0.0;
    for (std::size_t p = 1; p < npts; ++p) {
        const Eigen::MatrixXd O = (vectors[p - 1].adjoint() * vectors[p]).cwiseAbs();
        // O(i, j): overlap of sorted state i at p-1 with sorted state j at p
        std::vector<Eigen::Index> match(static_cast<std::size_t>(k), -1);
        std::vector<bool> used_row(static_cast<std::size_t>(k), false), used_col(static_cast<std::size_t>(k), false);
        for (Eigen::Index step = 0; step < k; ++step) {
            Eigen::Index bi = -1, bj = -1;
            double best = -1.0, best_de = 0.0;
            for (Eigen::Index i = 0; i < k; ++i) {
                if (used_row[static_cast<std::size_t>(i)]) continue;
                for (Eigen::Index j = 0; j < k; ++j) {
                    if (used_col[static_cast<std::size_t>(j)]) continue;
                    const double de = std::abs(energies[p](j) - energies[p - 1](i));
                    if (O(i, j) > best + 1e-12 || (std::abs(O(i, j) - best) <= 1e-12 && de < best_de)) {
                        best = O(i, j);
                        best_de = de;
                        bi = i;
                        bj = j;
                    }
                }
            }
            used_row[static_cast<std::size_t>(bi)] = used_col[static_cast<std::size_t>(bj)] = true;
            match[static_cast<std::size_t>(bi)] = bj;
        }
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) {
                const double target = match[static_cast<std::size_t>(i)] == j ? 1.0 : 0.0;
                defect = std::max(defect, std::abs(O(i, j) - target));
            }
        }
        for (Eigen::Index t = 0; t < k; ++t) {
            label[p][static_cast<std::size_t>(t)] = match[static_cast<std::size_t>(label[p - 1][static_cast<std::size_t>(t)])];
        }
    }

    ResultTable table;
    table.add_column(spec.parameter, spec.values);
    for (Eigen::Index t = 0; t < k; ++t) {
        std::vector<double> col(npts);
        for (std::size_t p = 0; p < npts; ++p) col[p] = energies[p](label[p][static_cast<std::size_t>(t)]);
        table.add_column("level_" + std::to_string(t), std::move(col));
    }
    std::ostringstream os;
    os.precision(17);
    os << defect;
    table.metadata["max_permutation_defect"] = os.str();
    return table;
}

Crossing avoided_crossing_from_gap(const std::vector<double>& x, const std::vector<double>& gap)
{
    if (x.size() != gap.size() || x.size() < 3) {
        throw Error(ErrorKind::NotBracketedError, "need at least three sweep points");
    }
    const auto it = std::min_element(gap.begin(), gap.end());
    const auto i = static_cast<std::size_t>(it - gap.begin());
    if (i == 0 || i + 1 == gap.size()) {
        throw Error(ErrorKind::NotBracketedError, "gap minimum lies on the sweep boundary");
    }
    // Near an avoided crossing gap^2 is quadratic in the parameter.
    const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
    const double y0 = gap[i - 1] * gap[i - 1], y1 = gap[i] * gap[i], y2 = gap[i + 1] * gap[i + 1];
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double a = (d12 - d01) / (x2 - x0);
    Crossing c;
    if (a <= 0.0) {
        c.location = x1;
        c.min_gap = gap[i];
        return c;
    }
    const double b = d01 - a * (x0 + x1);
    c.location = -b / (2.0 * a);
    const double ymin = y1 + (c.location - x1) * (b + a * (c.location + x1));
    c.min_gap = std::sqrt(std::max(0.0, ymin));
    return c;
}

Crossing avoided_crossing(const ResultTable& table, std::size_t lower, std::size_t upper)
{
    table.validate();
    if (table.columns.empty()) throw Error(ErrorKind::NotBracketedError, "empty table");
    const auto& lo = table.column("level_" + std::to_string(lower));
    const auto& hi = table.column("level_" + std::to_string(upper));
    std::vector<double> gap(lo.size());
    for (std::size_t p = 0; p < lo.size(); ++p) gap[p] = std::abs(hi[p] - lo[p]);
    return avoided_crossing_from_gap(table.columns.front(), gap);
}

} // namespace usc::dynamics
