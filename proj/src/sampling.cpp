#include "l2pos/sampling.hpp"

#include <cmath>
#include <numbers>

#include "l2pos/errors.hpp"

namespace l2pos::core {

namespace {
constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                           41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
}

HaltonSequence::HaltonSequence(int dim) : dim_(dim) {
    if (dim < 1 || dim > static_cast<int>(std::size(kPrimes)))
        throw InputError("HaltonSequence: unsupported dimension");
    bases_.assign(kPrimes, kPrimes + dim);
}

std::vector<double> HaltonSequence::next() {
    std::vector<double> pt(dim_);
    for (int d = 0; d < dim_; ++d) {
        const int b = bases_[d];
        double f = 1.0, x = 0.0;
        for (unsigned long i = index_; i > 0; i /= b) {
            f /= b;
            x += f * static_cast<double>(i % b);
        }
        pt[d] = x;
    }
    ++index_;
    return pt;
}

std::vector<std::complex<double>> unit_sphere_point(const std::vector<double>& u, int r) {
    if (static_cast<int>(u.size()) < 2 * r) throw InputError("unit_sphere_point: need 2r uniforms");
    std::vector<double> e(r);
    double total = 0.0;
    for (int j = 0; j < r; ++j) {
        // clamp away from 0 so log is finite
        e[j] = -std::log(std::max(u[j], 1e-300));
        total += e[j];
    }
    std::vector<std::complex<double>> a(r);
    for (int j = 0; j < r; ++j) {
        const double mod = std::sqrt(e[j] / total);
        const double phase = 2.0 * std::numbers::pi * u[r + j];
        a[j] = std::polar(mod, phase);
    }
    return a;
}

} // namespace l2pos::core
