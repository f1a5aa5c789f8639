#include "zetadiv/exact.hpp"

#include <cmath>

namespace zetadiv {

double PiPowerValue::to_double() const {
    if (pi_exp_ == 0) return coeff_.to_double();
    return coeff_.to_double() * std::pow(M_PI, static_cast<double>(pi_exp_));
}

std::string PiPowerValue::str() const {
    if (pi_exp_ == 0 || coeff_.is_zero()) return coeff_.str();
    const mpz_class num = coeff_.numerator();
    const mpz_class den = coeff_.denominator();
    std::string out;
    if (num == -1)
        out = "-";
    else if (num != 1)
        out = num.get_str() + "*";
    out += "pi";
    if (pi_exp_ != 1) out += "^" + std::to_string(pi_exp_);
    if (den != 1) out += "/" + den.get_str();
    return out;
}

}  // namespace zetadiv
