#pragma once

// Weight expression grammar. Real-valued expressions over the coordinates of
// C^n (base) and optionally C^m (fiber):
//
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' nonneg-integer)?
//   atom   := number | var | '(' expr ')'
//           | 'exp' '(' expr ')' | 'log' '(' expr ')' | 'abs2' '(' cvar ')'
//   var    := 'x'K | 'y'K         (real/imaginary part of base coordinate K)
//   cvar   := 'z' | 'zK' | 'w' | 'wK'
//
// abs2(zK) = |z_K|^2, abs2(z) = sum over base coordinates, abs2(wK)/abs2(w)
// the same over fiber coordinates. Unary minus is allowed before a term.

#include <complex>
#include <memory>
#include <span>
#include <string>

#include "l2pos/autodiff.hpp"

namespace l2pos::geometry {

struct ExprNode;

class Expression {
  public:
    // Throws InputError with position information on malformed input.
    static Expression parse(const std::string& text);

    // Bind to n base and m fiber complex coordinates (total real vars 2(n+m));
    // throws InputError if the expression references coordinates out of range.
    void validate(int n_base, int m_fiber) const;

    double eval(std::span<const std::complex<double>> z, int n_base) const;
    D2 eval_d2(std::span<const std::complex<double>> z, int n_base) const;

    const std::string& text() const { return text_; }

  private:
    std::shared_ptr<const ExprNode> root_;
    std::string text_;
};

} // namespace l2pos::geometry
