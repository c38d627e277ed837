#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace bswpt {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// A parameter violates its physical or structural contract.
struct invalid_parameter_error : std::runtime_error {
    explicit invalid_parameter_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A config file cannot be parsed or fails validation.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation was called outside its divisibility regime (symbol count vs
// chip count); the caller must fall back to the waveform integrator.
struct regime_error : std::runtime_error {
    explicit regime_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Beamforming was requested on an all-zero reference signal.
struct degenerate_input_error : std::runtime_error {
    explicit degenerate_input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Compensated running sum. Trial averages accumulate 1e4+ values around
// 1e-5 W; plain summation order would also leak into reproducibility.
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double norm2(const cvec& v) {
    KahanSum s;
    for (const cplx& x : v) s.add(std::norm(x));
    return s.value();
}

inline double vec_norm(const cvec& v) { return std::sqrt(norm2(v)); }

// sum_k conj(a_k) * b_k
inline cplx inner(const cvec& a, const cvec& b) {
    KahanSum re, im;
    for (std::size_t k = 0; k < a.size(); ++k) {
        cplx t = std::conj(a[k]) * b[k];
        re.add(t.real());
        im.add(t.imag());
    }
    return {re.value(), im.value()};
}

}  // namespace bswpt
