#include "l2pos/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "l2pos/sampling.hpp"

namespace l2pos::geometry {

namespace {
constexpr double kInteriorMargin = 0.05;
}

Domain::Domain(Kind kind, Point center, std::vector<double> radii)
    : kind_(kind), center_(std::move(center)), radii_(std::move(radii)) {
    const int n = static_cast<int>(center_.size());
    if (n < 1) throw InputError("Domain: n must be >= 1");
    const size_t want = kind_ == Kind::ball ? 1 : static_cast<size_t>(n);
    if (radii_.size() != want) throw InputError("Domain: wrong number of radii");
    for (double r : radii_)
        if (!(r > 0.0) || !std::isfinite(r)) throw InputError("Domain: radii must be positive");
    for (cplx c : center_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InputError("Domain: non-finite center");
}

Domain Domain::polydisc(Point center, std::vector<double> radii) {
    return Domain(Kind::polydisc, std::move(center), std::move(radii));
}
Domain Domain::ball(Point center, double radius) {
    return Domain(Kind::ball, std::move(center), {radius});
}
Domain Domain::box(Point center, std::vector<double> half_widths) {
    return Domain(Kind::box, std::move(center), std::move(half_widths));
}

bool Domain::contains(const Point& z) const { return boundary_distance(z) > 0.0; }

double Domain::boundary_distance(const Point& z) const {
    if (static_cast<int>(z.size()) != n()) throw InputError("Domain: point dimension mismatch");
    double d = std::numeric_limits<double>::infinity();
    switch (kind_) {
        case Kind::ball: {
            double s = 0.0;
            for (int j = 0; j < n(); ++j) s += std::norm(z[j] - center_[j]);
            d = radii_[0] - std::sqrt(s);
            break;
        }
        case Kind::polydisc:
            for (int j = 0; j < n(); ++j)
                d = std::min(d, radii_[j] - std::abs(z[j] - center_[j]));
            break;
        case Kind::box:
            for (int j = 0; j < n(); ++j) {
                const cplx w = z[j] - center_[j];
                d = std::min({d, radii_[j] - std::abs(w.real()), radii_[j] - std::abs(w.imag())});
            }
            break;
    }
    return std::max(d, 0.0);
}

double Domain::bounding_radius() const {
    return *std::min_element(radii_.begin(), radii_.end());
}

std::vector<Point> Domain::sample_interior(int count) const {
    if (count < 1) throw InputError("Domain::sample_interior: count must be >= 1");
    const int dim = 2 * n();
    core::HaltonSequence halton(dim);
    std::vector<Point> pts;
    pts.reserve(count);
    const double shrink = 1.0 - kInteriorMargin;

    while (static_cast<int>(pts.size()) < count) {
        const std::vector<double> u = halton.next();
        Point z(n());
        switch (kind_) {
            case Kind::polydisc: {
                for (int j = 0; j < n(); ++j) {
                    const double rho = shrink * radii_[j] * std::sqrt(u[2 * j]);
                    const double th = 2.0 * std::numbers::pi * u[2 * j + 1];
                    z[j] = center_[j] + std::polar(rho, th);
                }
                pts.push_back(std::move(z));
                break;
            }
            case Kind::box: {
                for (int j = 0; j < n(); ++j) {
                    const double x = shrink * radii_[j] * (2.0 * u[2 * j] - 1.0);
                    const double y = shrink * radii_[j] * (2.0 * u[2 * j + 1] - 1.0);
                    z[j] = center_[j] + cplx(x, y);
                }
                pts.push_back(std::move(z));
                break;
            }
            case Kind::ball: {
                double s = 0.0;
                for (int j = 0; j < n(); ++j) {
                    const double x = 2.0 * u[2 * j] - 1.0;
                    const double y = 2.0 * u[2 * j + 1] - 1.0;
                    z[j] = cplx(x, y);
                    s += std::norm(z[j]);
                }
                if (s > shrink * shrink) break; // reject, outside the shrunken ball
                for (int j = 0; j < n(); ++j) z[j] = center_[j] + radii_[0] * z[j];
                pts.push_back(std::move(z));
                break;
            }
        }
    }
    return pts;
}

std::string Domain::kind_name() const {
    switch (kind_) {
        case Kind::polydisc: return "polydisc";
        case Kind::ball: return "ball";
        case Kind::box: return "box";
    }
    return "?";
}

} // namespace l2pos::geometry
