#pragma once

// Bounded domains in C^n used as the base of every positivity check:
// polydiscs, balls, and boxes, all pseudoconvex by construction.

#include <complex>
#include <string>
#include <vector>

#include "l2pos/errors.hpp"

namespace l2pos::geometry {

using cplx = std::complex<double>;
using Point = std::vector<cplx>;

class Domain {
  public:
    enum class Kind { polydisc, ball, box };

    // polydisc/box: one radius (half-width) per complex axis; ball: single radius.
    Domain(Kind kind, Point center, std::vector<double> radii);

    static Domain polydisc(Point center, std::vector<double> radii);
    static Domain ball(Point center, double radius);
    static Domain box(Point center, std::vector<double> half_widths);

    Kind kind() const { return kind_; }
    int n() const { return static_cast<int>(center_.size()); }
    const Point& center() const { return center_; }
    const std::vector<double>& radii() const { return radii_; }

    bool contains(const Point& z) const;
    // Euclidean distance from z to the complement, 0 outside.
    double boundary_distance(const Point& z) const;
    // Smallest per-axis half-width of the bounding box.
    double bounding_radius() const;

    // Deterministic low-discrepancy interior sample, kept a 5% relative margin
    // away from the boundary.
    std::vector<Point> sample_interior(int count) const;

    std::string kind_name() const;

  private:
    Kind kind_;
    Point center_;
    std::vector<double> radii_;
};

} // namespace l2pos::geometry
