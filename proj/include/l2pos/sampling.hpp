#pragma once

// Deterministic low-discrepancy sampling: Halton sequences and uniform points
// on the unit sphere of C^r derived from them.

#include <complex>
#include <vector>

namespace l2pos::core {

// Halton sequence in [0,1)^dim with the first `dim` prime bases. index starts
// at 1 so the all-zero point is never produced.
class HaltonSequence {
  public:
    explicit HaltonSequence(int dim);
    std::vector<double> next();
    void reset() { index_ = 1; }

  private:
    int dim_;
    unsigned long index_ = 1;
    std::vector<int> bases_;
};

// Uniform point on the unit sphere of C^r from 2r uniforms: squared moduli
// from normalized exponential spacings, phases uniform.
std::vector<std::complex<double>> unit_sphere_point(const std::vector<double>& u, int r);

} // namespace l2pos::core
