#pragma once

#include <string>

#include "liesym/expr.hpp"

namespace liesym {

/// Plain-text rendering in the parser's grammar; parse(to_text(e)) == e.
std::string to_text(const Expr& e);

std::string to_latex(const Expr& e);

}  // namespace liesym
