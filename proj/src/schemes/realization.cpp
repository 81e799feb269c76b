#include "usc/schemes.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace usc::schemes {

Realization cold_atom_map(double mass, double omega0, double k0, double V)
{
    if (!(mass > 0.0) || !(omega0 > 0.0)) throw Error(ErrorKind::DomainError, "mass and omega0 must be positive");
    Realization r;
    r.omega_cav_eff = omega0;
    r.omega_q_eff = V / (2.0 * hbar_si);
    r.g_eff = 2.0 * k0 * std::sqrt(hbar_si * omega0 / (2.0 * mass));
    r.ratio = r.g_eff / r.omega_cav_eff;
    r.balanced = true;
    return r;
}

Realization quantum_dot_map(double Omega_d, double omega_k, double volume, double g_cc, double g_cd,
                            double delta_prime)
{
    if (!(omega_k > 0.0) || !(volume > 0.0) || !(g_cc > 0.0)) {
        throw Error(ErrorKind::DomainError, "omega_k, volume and g_cc must be positive");
    }
    Realization r;
    r.omega_cav_eff = omega_k;
    r.omega_q_eff = Omega_d;
    // The dot couples through sigma_x / 2, so the Rabi coupling is half of g.
    const double g = std::sqrt(omega_k / (2.0 * hbar_si * volume * g_cc)) * (g_cd - g_cc);
    r.g_eff = g / 2.0;
    r.ratio = r.g_eff / r.omega_cav_eff;
    r.balanced = delta_prime == 0.0;
    if (!r.balanced) warn("quantum dot: delta' != 0 leaves a static sigma_x bias outside the Rabi form");
    return r;
}

Realization realization_maps(RealizationKind kind, const std::map<std::string, double>& inputs)
{
    const std::vector<std::string> keys = kind == RealizationKind::ColdAtoms
                                              ? std::vector<std::string>{"mass", "omega0", "k0", "V"}
                                              : std::vector<std::string>{"Omega_d", "omega_k", "volume", "g_cc",
                                                                         "g_cd", "delta_prime"};
    const std::set<std::string> known(keys.begin(), keys.end());
    for (const auto& [k, v] : inputs) {
        if (!known.count(k)) throw Error(ErrorKind::ShapeError, "unknown realization input '" + k + "'");
    }
    auto get = [&](const std::string& k) {
        auto it = inputs.find(k);
        if (it == inputs.end()) throw Error(ErrorKind::ShapeError, "missing realization input '" + k + "'");
        return it->second;
    };
    if (kind == RealizationKind::ColdAtoms) return cold_atom_map(get("mass"), get("omega0"), get("k0"), get("V"));
    return quantum_dot_map(get("Omega_d"), get("omega_k"), get("volume"), get("g_cc"), get("g_cd"),
                           get("delta_prime"));
}

} // namespace usc::schemes
