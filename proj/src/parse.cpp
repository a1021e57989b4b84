// Copyright 2026 The lcel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lcel/parse.hpp"

#include <algorithm>
#include <cctype>

#include "lcel/errors.hpp"

namespace lcel {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const JetSpace& space, const ParseOptions& options)
      : text_(text), space_(space), options_(options) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    throw ParseError(message, at);
  }

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
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(-term());
      } else {
        return sum(std::move(terms));
      }
    }
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        acc = quotient(acc, unary());
      } else {
        return acc;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power_expr();
  }

  Expr power_expr() {
    Expr base = primary();
    if (!accept('^')) return base;
    skip_space();
    const bool paren = accept('(');
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be an integer literal");
    if (pos_ - start > 6) fail_at("exponent too large", start);
    int k = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (paren) expect(')');
    return power(base, negative ? -k : k);
  }

  Expr number() {
    const std::size_t start = pos_;
    std::string digits;
    int frac_digits = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_++];
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits += text_[pos_++];
        ++frac_digits;
      }
    }
    if (digits.empty()) fail_at("malformed number", start);
    long exponent = 0;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      bool neg = false;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) neg = text_[p++] == '-';
      const std::size_t es = p;
      while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
      if (es == p) fail_at("malformed exponent in number", pos_);
      if (p - es > 4) fail_at("number exponent too large", es);
      exponent = std::stol(std::string(text_.substr(es, p - es)));
      if (neg) exponent = -exponent;
      pos_ = p;
    }
    exponent -= frac_digits;
    mpz_class num(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational r = exponent < 0 ? Rational(num, scale) : Rational(num * scale, 1);
    r.canonicalize();
    return constant(r);
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  int coordinate_index(const std::string& name) const {
    const auto& c = options_.coordinates;
    auto it = std::find(c.begin(), c.end(), name);
    return it == c.end() ? 0 : static_cast<int>(it - c.begin()) + 1;
  }

  std::optional<Expr> abstract_symbol(const std::string& name, std::size_t at) const {
    if (!options_.abstract_sigma) return std::nullopt;
    if (name == "sigma") return sigma_symbol({});
    if (name.rfind("phi_", 0) != 0) return std::nullopt;
    std::vector<int> idx;
    std::size_t p = 4;
    while (p <= name.size()) {
      const std::size_t q = name.find('_', p);
      const std::string part = name.substr(p, q == std::string::npos ? std::string::npos : q - p);
      if (part.empty() || !std::all_of(part.begin(), part.end(),
                                       [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        fail_at("malformed conformal-factor symbol '" + name + "'", at);
      }
      const int i = std::stoi(part);
      if (i < 1 || i > space_.dim()) fail_at("index out of range in '" + name + "'", at);
      idx.push_back(i);
      if (q == std::string::npos) break;
      p = q + 1;
    }
    return sigma_symbol(std::move(idx));
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected character '" + std::string(1, c) + "'");

    const std::size_t start = pos_;
    const std::string name = identifier();
    if (name == "exp" || name == "sin" || name == "cos" || name == "atan2") {
      if (!accept('(')) fail_at("function '" + name + "' requires an argument list", start);
      Expr a = expr();
      if (name == "atan2") {
        expect(',');
        Expr b = expr();
        expect(')');
        return angle(a, b);
      }
      expect(')');
      if (name == "exp") return exp(a);
      if (name == "sin") return sin(a);
      return cos(a);
    }
    if (const int index = coordinate_index(name); index > 0) {
      int order = 0;
      if (pos_ < text_.size() && text_[pos_] == '\'') {
        while (pos_ < text_.size() && text_[pos_] == '\'') {
          ++order;
          ++pos_;
        }
        if (order > 3) fail_at("more than three primes; write " + name + "(k) instead", start);
      } else if (pos_ < text_.size() && text_[pos_] == '(') {
        ++pos_;
        skip_space();
        const std::size_t ds = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (ds == pos_) fail("expected derivative order");
        if (pos_ - ds > 4) fail_at("derivative order too large", ds);
        order = std::stoi(std::string(text_.substr(ds, pos_ - ds)));
        expect(')');
      }
      if (order > space_.max_jet()) {
        fail_at("derivative order " + std::to_string(order) + " of '" + name + "' exceeds max_jet " +
                    std::to_string(space_.max_jet()),
                start);
      }
      return jet(index, order);
    }
    if (auto s = abstract_symbol(name, start)) return *s;
    if (options_.parameters && !options_.parameters->contains(name)) {
      fail_at("unknown identifier '" + name + "'", start);
    }
    if (pos_ < text_.size() && (text_[pos_] == '\'' || text_[pos_] == '(')) {
      fail_at("'" + name + "' is not a coordinate and cannot be differentiated or called", start);
    }
    return parameter(name);
  }

  std::string_view text_;
  const JetSpace& space_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text, const JetSpace& space, const ParseOptions& options) {
  if (static_cast<int>(options.coordinates.size()) != space.dim()) {
    throw InvalidArgument("coordinate name list length differs from the jet space dimension");
  }
  return Parser(text, space, options).parse();
}

Expr parse_expression(std::string_view text, const JetSpace& space,
                      const std::vector<std::string>& coordinates) {
  ParseOptions options;
  options.coordinates = coordinates;
  return parse_expression(text, space, options);
}

bool is_reserved_name(std::string_view name) {
  return name == "exp" || name == "sin" || name == "cos" || name == "atan2" || name == "sigma" ||
         name.rfind("phi_", 0) == 0;
}

}  // namespace lcel
