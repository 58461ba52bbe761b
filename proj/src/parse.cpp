#include "liesym/parse.hpp"

#include <algorithm>
#include <cctype>

#include "liesym/calculus.hpp"

namespace liesym {

std::vector<std::string> split_jet_suffix(std::string_view suffix,
                                          const std::vector<std::string>& variables) {
  std::vector<std::string> sorted = variables;
  std::sort(sorted.begin(), sorted.end(),
            [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < suffix.size()) {
    bool matched = false;
    for (const auto& v : sorted) {
      if (!v.empty() && suffix.substr(pos, v.size()) == v) {
        out.push_back(v);
        pos += v.size();
        matched = true;
        break;
      }
    }
    if (!matched) return {};
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  Expr parse_all() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr expression() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(-term());
      } else {
        break;
      }
    }
    return add(std::move(terms));
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) {
      const std::size_t at = pos_;
      Expr ex = unary();
      try {
        return pow(base, ex);
      } catch (const std::domain_error& err) {
        throw ParseError(err.what(), at);
      }
    }
    return base;
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<Expr> call_arguments() {
    expect('(');
    std::vector<Expr> args{expression()};
    while (accept(',')) args.push_back(expression());
    expect(')');
    return args;
  }

  Expr single_argument(const std::string& name) {
    auto args = call_arguments();
    if (args.size() != 1) fail(name + " takes one argument");
    return args.front();
  }

  bool is_one_of(const std::string& name, const std::vector<std::string>& list) const {
    return std::find(list.begin(), list.end(), name) != list.end();
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Expr(*Rational::parse(text_.substr(start, pos_ - start)));
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'");
    const std::size_t start = pos_;
    const std::string name = identifier();
    int primes = 0;
    while (pos_ < text_.size() && text_[pos_] == '\'') {
      ++primes;
      ++pos_;
    }
    if (is_one_of(name, options_.functions)) {
      return Expr::func(name, primes, single_argument(name));
    }
    if (primes > 0) {
      pos_ = start;
      fail("derivative marks are only allowed on functions");
    }
    if (name == "exp") return exp(single_argument(name));
    if (name == "ln" || name == "log") {
      const std::size_t at = pos_;
      Expr a = single_argument(name);
      try {
        return log(a);
      } catch (const std::domain_error& err) {
        throw ParseError(err.what(), at);
      }
    }
    if (name == "sqrt") return sqrt(single_argument(name));
    if (name == "d") {
      auto args = call_arguments();
      if (args.size() != 2) fail("d takes an expression and a variable");
      if (!args[1].is(Kind::Symbol) && !args[1].is(Kind::Jet)) {
        fail("d differentiates with respect to a symbol or jet coordinate");
      }
      return diff(args[0], args[1]);
    }
    if (name.size() >= 2 && name[0] == 'D' && is_one_of(name.substr(1), options_.variables)) {
      if (!options_.total_derivative) {
        pos_ = start;
        fail("total derivative " + name + " needs a jet space");
      }
      return options_.total_derivative(single_argument(name), name.substr(1));
    }
    if (const auto us = name.find('_'); us != std::string::npos) {
      const std::string dep = name.substr(0, us);
      if (!is_one_of(dep, options_.dependents)) {
        pos_ = start;
        fail("unknown jet variable '" + dep + "'");
      }
      auto index = split_jet_suffix(std::string_view(name).substr(us + 1), options_.variables);
      if (index.empty()) {
        pos_ = start;
        fail("cannot split jet suffix of '" + name + "' into independent variables");
      }
      return Expr::jet(dep, make_index(std::move(index)));
    }
    if (is_one_of(name, options_.dependents)) return Expr::jet(name, {});
    return Expr::symbol(name);
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).parse_all();
}

}  // namespace liesym
