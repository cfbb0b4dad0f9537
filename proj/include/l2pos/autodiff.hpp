#pragma once

// Second-order forward-mode value: function value, gradient, and dense
// Hessian over a fixed set of real variables. Enough operations for the
// weight expression grammar (sums, products, integer powers, exp, log).

#include <cmath>
#include <vector>

#include "l2pos/errors.hpp"

namespace l2pos::geometry {

class D2 {
  public:
    D2() = default;
    D2(double value, int nvars) : v_(value), n_(nvars), g_(nvars, 0.0), h_(static_cast<size_t>(nvars) * nvars, 0.0) {}

    static D2 variable(double value, int nvars, int index) {
        D2 d(value, nvars);
        d.g_[index] = 1.0;
        return d;
    }

    double value() const { return v_; }
    int nvars() const { return n_; }
    double grad(int i) const { return g_[i]; }
    double hess(int i, int j) const { return h_[static_cast<size_t>(i) * n_ + j]; }

    D2& operator+=(const D2& o) {
        v_ += o.v_;
        for (int i = 0; i < n_; ++i) g_[i] += o.g_[i];
        for (size_t k = 0; k < h_.size(); ++k) h_[k] += o.h_[k];
        return *this;
    }
    D2& operator-=(const D2& o) {
        v_ -= o.v_;
        for (int i = 0; i < n_; ++i) g_[i] -= o.g_[i];
        for (size_t k = 0; k < h_.size(); ++k) h_[k] -= o.h_[k];
        return *this;
    }
    friend D2 operator+(D2 a, const D2& b) { return a += b; }
    friend D2 operator-(D2 a, const D2& b) { return a -= b; }
    friend D2 operator-(D2 a) {
        a.v_ = -a.v_;
        for (double& x : a.g_) x = -x;
        for (double& x : a.h_) x = -x;
        return a;
    }
    friend D2 operator*(double s, D2 a) {
        a.v_ *= s;
        for (double& x : a.g_) x *= s;
        for (double& x : a.h_) x *= s;
        return a;
    }

    friend D2 operator*(const D2& a, const D2& b) {
        D2 r(a.v_ * b.v_, a.n_);
        for (int i = 0; i < a.n_; ++i) r.g_[i] = a.g_[i] * b.v_ + a.v_ * b.g_[i];
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j)
                r.h_[static_cast<size_t>(i) * a.n_ + j] =
                    a.hess(i, j) * b.v_ + a.v_ * b.hess(i, j) + a.g_[i] * b.g_[j] + a.g_[j] * b.g_[i];
        return r;
    }

    // chain rule for a scalar map f with derivatives f', f'' at v
    D2 compose(double f, double fp, double fpp) const {
        D2 r(f, n_);
        for (int i = 0; i < n_; ++i) r.g_[i] = fp * g_[i];
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                r.h_[static_cast<size_t>(i) * n_ + j] = fp * hess(i, j) + fpp * g_[i] * g_[j];
        return r;
    }

    friend D2 exp(const D2& a) {
        const double e = std::exp(a.v_);
        return a.compose(e, e, e);
    }
    friend D2 log(const D2& a) {
        if (!(a.v_ > 0.0)) throw InputError("log: argument must be positive");
        return a.compose(std::log(a.v_), 1.0 / a.v_, -1.0 / (a.v_ * a.v_));
    }
    friend D2 pow_int(const D2& a, int k) {
        if (k < 0) throw InputError("pow: negative exponents not supported");
        if (k == 0) return D2(1.0, a.n_);
        D2 r = a;
        for (int i = 1; i < k; ++i) r = r * a;
        return r;
    }

  private:
    double v_ = 0.0;
    int n_ = 0;
    std::vector<double> g_;
    std::vector<double> h_;
};

// namespace-scope redeclarations so qualified lookup finds the friends
D2 exp(const D2& a);
D2 log(const D2& a);
D2 pow_int(const D2& a, int k);

} // namespace l2pos::geometry
