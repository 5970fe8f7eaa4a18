#include "lzsm/params.hpp"

namespace lzsm {

void ModelParams::validate() const {
    if (kappa_ext < 0.0 || kappa_int < 0.0 || kappa_phi < 0.0)
        throw std::invalid_argument("invalid-rate: decay and dephasing rates must be >= 0");
    if (drive < 0.0)
        throw std::invalid_argument("invalid-rate: drive amplitude F must be >= 0");
    if (zeta != 0.0 && omega_mod <= 0.0)
        throw std::invalid_argument("invalid-rate: omega_mod must be > 0 when zeta != 0");
    if (omega_mod < 0.0)
        throw std::invalid_argument("invalid-rate: omega_mod must be >= 0");
}

ModelParams kerr10() {
    ModelParams p;
    p.chi = from_mhz(-23.5);
    p.kappa_int = from_mhz(1.1);
    p.kappa_ext = from_mhz(3.75);
    p.kappa_phi = from_mhz(0.75);
    p.omega_d = from_mhz(4502.0);  // 4.502 GHz working point
    return p;
}

ModelParams kerr10_with_chi5() {
    ModelParams p = kerr10();
    p.chi5 = from_mhz(-1.1);
    return p;
}

ModelParams duffing32() {
    ModelParams p;
    p.chi = from_mhz(-0.35);
    p.kappa_int = from_mhz(4.92);
    p.kappa_ext = from_mhz(1.49);
    p.kappa_phi = from_mhz(0.4);
    p.omega_d = from_mhz(4306.0);  // 4.306 GHz working point
    return p;
}

} // namespace lzsm
