#include "mvlab/fn_spec.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "mvlab/construct.hpp"

namespace mvlab {

namespace {

struct NumberArg {
  double value;
  std::size_t position;
};

struct FnArg {
  MultiplicativeFn fn;
  std::size_t position;
};

using Arg = std::variant<NumberArg, FnArg>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  MultiplicativeFn parse() {
    MultiplicativeFn fn = parse_fn();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return fn;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string parse_name() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start]))) {
      pos_ = start;
      fail("expected function name");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Arg parse_arg() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
        const char* first = text_.data() + pos_;
        if (c == '+') ++first;
        double value = 0.0;
        const auto res = std::from_chars(first, text_.data() + text_.size(), value);
        if (res.ec != std::errc() || !std::isfinite(value)) fail("malformed number");
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return NumberArg{value, start};
      }
    }
    return FnArg{parse_fn(), start};
  }

  MultiplicativeFn parse_fn() {
    skip_space();
    const std::size_t name_pos = pos_;
    const std::string name = parse_name();
    std::vector<Arg> args;
    if (peek('(')) {
      ++pos_;
      args.push_back(parse_arg());
      while (peek(',')) {
        ++pos_;
        args.push_back(parse_arg());
      }
      expect(')');
    }
    return build(name, name_pos, args);
  }

  void arity(const std::string& name, std::size_t at, const std::vector<Arg>& args,
             std::size_t n) const {
    if (args.size() != n) {
      throw ParseError(name + " takes " + std::to_string(n) + " argument(s), got " +
                           std::to_string(args.size()),
                       at);
    }
  }

  static MultiplicativeFn fn_arg(const Arg& arg) {
    if (const auto* f = std::get_if<FnArg>(&arg)) return f->fn;
    throw ParseError("expected a function argument", std::get<NumberArg>(arg).position);
  }

  static double number_arg(const Arg& arg) {
    if (const auto* n = std::get_if<NumberArg>(&arg)) return n->value;
    throw ParseError("expected a numeric argument", std::get<FnArg>(arg).position);
  }

  static std::uint64_t integer_arg(const Arg& arg) {
    const double v = number_arg(arg);
    if (v < 0 || v != std::floor(v) || v > 1e15) {
      throw ParseError("expected a non-negative integer", std::get<NumberArg>(arg).position);
    }
    return static_cast<std::uint64_t>(v);
  }

  MultiplicativeFn build(const std::string& name, std::size_t at, const std::vector<Arg>& args) {
    try {
      if (name == "one" || name == "divisor" || name == "moebius" || name == "liouville" ||
          name == "eps") {
        arity(name, at, args, 0);
        if (name == "one") return one();
        if (name == "divisor") return divisor();
        if (name == "moebius") return moebius();
        if (name == "liouville") return liouville();
        return unit();
      }
      if (name == "lambda0" || name == "lambda1") {
        arity(name, at, args, 2);
        const double a = number_arg(args[0]);
        const double b = number_arg(args[1]);
        return name == "lambda0" ? lambda0(a, b) : lambda1(a, b);
      }
      if (name == "twist") {
        arity(name, at, args, 2);
        const MultiplicativeFn f = fn_arg(args[0]);
        return twist(f, number_arg(args[1]));
      }
      if (name == "abs") {
        arity(name, at, args, 1);
        return abs_fn(fn_arg(args[0]));
      }
      if (name == "conv") {
        arity(name, at, args, 2);
        const MultiplicativeFn f = fn_arg(args[0]);
        return dirichlet_convolve(f, fn_arg(args[1]));
      }
      if (name == "char") {
        arity(name, at, args, 3);
        const MultiplicativeFn f = fn_arg(args[0]);
        const std::uint64_t q = integer_arg(args[1]);
        return character_twist(f, q, integer_arg(args[2]));
      }
    } catch (const DomainError& e) {
      throw ParseError(std::string("invalid arguments to ") + name + ": " + e.what(), at);
    }
    throw ParseError("unknown function name '" + name + "'", at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiplicativeFn parse_fn_spec(std::string_view spec) { return Parser(spec).parse(); }

}  // namespace mvlab
