#pragma once

// System parameters, the harvester model and derived attenuation terms.
// All quantities are SI base units (seconds, meters, watts).

#include <cstdint>
#include <iosfwd>
#include <string>

#include "bswpt/types.hpp"

namespace bswpt {

struct SystemParams {
    double d1 = 200.0;        // AS -> ER distance, m
    double d2 = 10.0;         // ER -> ET distance, m
    double d3 = 200.0;        // AS -> ET distance, m
    double d0 = 1.0;          // path-loss reference distance, m
    double k0 = 1e-3;         // attenuation at the reference distance
    double alpha = 2.52;      // path-loss exponent (calibrated default)
    double ps = 1.0;          // ambient-source transmit power, W
    double pt = 1.0;          // energy-transmitter transmit power, W
    double sigma_n2 = 1e-18;  // AWGN power, W
    double sigma_i2 = 0.0;    // neighbouring-source interference power, W
    double ts = 5e-6;         // ambient symbol duration, s
    double tc = 5e-7;         // chip duration, s
    long ns = 0;              // ambient symbols per backscatter phase
    long nc = 0;              // chips per backscatter phase
    int m = 500;              // antennas at the ET
    double m_g = 1.0;         // Nakagami order, AS -> ER
    double m_h = 1.0;         // Nakagami order, AS -> ET
    double m_f = 10.0;        // Nakagami order, ER -> ET
    double t_off = 0.0;       // correlator timing offset, s
};

struct HarvesterModel {
    double a0 = 1500.0;   // charging-rate steepness, 1/W
    double b0 = 2.2e-3;   // turn-on input power, W
    double c0 = 24e-3;    // saturation power, W
};

// Reduced fraction nc/ns.
struct ChipsPerSymbol {
    long num = 0;
    long den = 0;
};

struct DerivedParams {
    double gamma1 = 0.0;  // AS -> ER attenuation
    double gamma2 = 0.0;  // ER -> ET attenuation
    double gamma3 = 0.0;  // AS -> ET attenuation
    double tb = 0.0;      // backscatter phase duration, s
    ChipsPerSymbol chips_per_symbol;
};

// k0 * (d/d0)^(-alpha)
double path_loss(double d, double k0, double d0, double alpha);

// Throws invalid_parameter_error naming the violated invariant.
void validate(const SystemParams& p);
void validate(const HarvesterModel& h);

DerivedParams derive(const SystemParams& p);

// Flat key=value text, '#' comments, keys in lower_snake_case matching the
// field names. Unknown keys are an error. `alpha`, `ns` and `nc` are
// required; every other key falls back to the defaults above. The
// interference level may be given either as `sigma_i2` (watts) or as
// `interference_db` R, converted so that the post-correlator interference
// term equals ps*gamma3*10^(-R/10), i.e.
// sigma_i2 = ps*gamma3*(ts/ns)*10^(-R/10).
std::pair<SystemParams, HarvesterModel> load_config(std::istream& in);
std::pair<SystemParams, HarvesterModel> load_config_file(const std::string& path);

// The interference_db -> sigma_i2 conversion, exposed for sweep runners.
double sigma_i2_from_db(double ratio_db, const SystemParams& p);

}  // namespace bswpt
