#include "liesym/render.hpp"

#include <array>
#include <cctype>

#include "liesym/calculus.hpp"

namespace liesym {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

bool negative_term(const Expr& term) {
  return split_coefficient(term).first.sign() < 0;
}

struct Style {
  bool latex = false;
};

std::string render(const Expr& e, const Style& style);

bool atomic_for_power(const Expr& e) {
  switch (e.kind()) {
    case Kind::Symbol:
    case Kind::Jet:
    case Kind::Func:
    case Kind::Exp:
    case Kind::Log:
      return true;
    case Kind::Number:
      return e.number().is_integer() && e.number().sign() >= 0;
    default:
      return false;
  }
}

std::string greek(const std::string& name) {
  static const std::array<const char*, 15> letters = {
      "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
      "lambda", "mu",  "nu",   "xi",    "rho",     "sigma", "tau"};
  std::size_t split = name.size();
  while (split > 0 && std::isdigit(static_cast<unsigned char>(name[split - 1]))) --split;
  std::string head = name.substr(0, split);
  const std::string digits = name.substr(split);
  for (const char* l : letters) {
    if (head == l) {
      head = std::string("\\") + l;
      break;
    }
  }
  if (head == "eps") head = "\\varepsilon";
  if (digits.empty()) return head;
  return head + "_{" + digits + "}";
}

std::string render_number(const Rational& r, const Style& style) {
  if (!style.latex || r.is_integer()) return r.str();
  const std::string sign = r.sign() < 0 ? "-" : "";
  return sign + "\\frac{" + r.abs().numerator().get_str() + "}{" + r.denominator().get_str() + "}";
}

std::string render_factor(const Expr& f, const Style& style) {
  std::string s = render(f, style);
  if (f.is(Kind::Add) || (f.is_number() && f.number().sign() < 0)) {
    return style.latex ? "\\left(" + s + "\\right)" : "(" + s + ")";
  }
  return s;
}

std::string render_power(const Expr& base, const Expr& ex, const Style& style) {
  if (ex.is_one()) return render_factor(base, style);
  std::string b = render(base, style);
  if (!atomic_for_power(base)) b = style.latex ? "\\left(" + b + "\\right)" : "(" + b + ")";
  if (style.latex) {
    if (base.is(Kind::Func)) b = "\\left(" + b + "\\right)";
    return b + "^{" + render(ex, style) + "}";
  }
  std::string x = render(ex, style);
  const bool bare = (ex.is_number() && ex.number().is_integer() && ex.number().sign() > 0) ||
                    ex.is(Kind::Symbol);
  return b + "^" + (bare ? x : "(" + x + ")");
}

std::string render_product(const Expr& e, const Style& style) {
  auto [c, rest] = split_coefficient(e);
  std::vector<std::string> numer;
  std::vector<std::string> denom;
  if (!rest.is_one()) {
    for (const auto& f : factors_of(rest)) {
      auto [base, ex] = as_power(f);
      if (ex.is_number() && ex.number().sign() < 0) {
        denom.push_back(render_power(base, Expr(-ex.number()), style));
      } else {
        numer.push_back(render_power(base, ex, style));
      }
    }
  }
  const Rational mag = c.abs();
  const std::string p = mag.numerator().get_str();
  const std::string q = mag.denominator().get_str();
  const std::string sign = c.sign() < 0 ? "-" : "";
  const std::string times = style.latex ? " " : "*";
  if (style.latex) {
    std::string top = join(numer, times);
    if (p != "1" || top.empty()) top = top.empty() ? p : p + " " + top;
    std::vector<std::string> bottom_parts;
    if (q != "1") bottom_parts.push_back(q);
    bottom_parts.insert(bottom_parts.end(), denom.begin(), denom.end());
    if (bottom_parts.empty()) return sign + top;
    return sign + "\\frac{" + top + "}{" + join(bottom_parts, times) + "}";
  }
  if (p != "1" || numer.empty()) numer.insert(numer.begin(), p);
  std::string out = sign + join(numer, times);
  if (q != "1") denom.insert(denom.begin(), q);
  if (denom.size() == 1) out += "/" + denom.front();
  if (denom.size() > 1) out += "/(" + join(denom, times) + ")";
  return out;
}

std::string render_jet(const Expr& e, const Style& style) {
  if (e.index().empty()) return e.name();
  if (!style.latex) return e.name() + "_" + index_string(e.index());
  std::string idx;
  for (const auto& v : e.index()) idx += v.size() > 1 ? greek(v) : v;
  return e.name() + "_{" + idx + "}";
}

std::string render(const Expr& e, const Style& style) {
  switch (e.kind()) {
    case Kind::Number:
      return render_number(e.number(), style);
    case Kind::Symbol:
      return style.latex ? greek(e.name()) : e.name();
    case Kind::Jet:
      return render_jet(e, style);
    case Kind::Func: {
      std::string marks;
      if (style.latex && e.order() > 3) {
        marks = "^{(" + std::to_string(e.order()) + ")}";
      } else {
        marks = std::string(static_cast<std::size_t>(e.order()), '\'');
      }
      const std::string a = render(e.arg(0), style);
      return style.latex ? e.name() + marks + "\\left(" + a + "\\right)"
                         : e.name() + marks + "(" + a + ")";
    }
    case Kind::Exp:
      return style.latex ? "e^{" + render(e.arg(0), style) + "}"
                         : "exp(" + render(e.arg(0), style) + ")";
    case Kind::Log:
      return style.latex ? "\\ln\\left(" + render(e.arg(0), style) + "\\right)"
                         : "ln(" + render(e.arg(0), style) + ")";
    case Kind::Pow:
      if (e.arg(1).is_number() && e.arg(1).number().sign() < 0) return render_product(e, style);
      return render_power(e.arg(0), e.arg(1), style);
    case Kind::Mul:
      return render_product(e, style);
    case Kind::Add: {
      std::string out;
      bool first = true;
      for (const auto& t : e.args()) {
        const bool neg = negative_term(t);
        const Expr shown = neg ? -t : t;
        std::string body = render(shown, style);
        if (neg && shown.is(Kind::Add)) body = style.latex ? "\\left(" + body + "\\right)" : "(" + body + ")";
        if (first) {
          out = neg ? "-" + body : body;
          first = false;
        } else {
          out += (neg ? " - " : " + ") + body;
        }
      }
      return out;
    }
  }
  return {};
}

}  // namespace

std::string to_text(const Expr& e) { return render(e, Style{false}); }

std::string to_latex(const Expr& e) { return render(e, Style{true}); }

}  // namespace liesym
