#include "preisach/rng.hpp"

#include <cmath>

namespace preisach {

double normal_polar(std::mt19937_64& eng, double mean, double stddev) {
    if (stddev == 0.0) return mean;
    for (;;) {
        const double u = 2.0 * uniform01(eng) - 1.0;
        const double v = 2.0 * uniform01(eng) - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return mean + stddev * u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

}  // namespace preisach
