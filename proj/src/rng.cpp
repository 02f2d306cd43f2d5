#include "swsig/rng.hpp"

#include <cmath>
#include <numbers>

namespace swsig {

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform_unit_oc(); // (0,1], keeps log finite
    const double u2 = uniform_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

} // namespace swsig
