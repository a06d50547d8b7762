// Copyright 2026 The torodyn authors
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

#ifndef TORODYN_EXPR_HPP
#define TORODYN_EXPR_HPP

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "torodyn/error.hpp"

namespace torodyn {

// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

enum class NodeKind {
  kNumber,
  kPi,
  kVarX,
  kVarY,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNeg,
  kSin,
  kCos,
  kPow,
};

// Expression over variables x, y with +, -, *, /, unary minus, sin, cos and
// integer powers. Precedence: ^ > unary - > * / > + -. Nodes live in a flat
// arena; trees are immutable after parsing.
class Expr {
 public:
  struct Node {
    NodeKind kind;
    double value = 0.0;     // kNumber
    int a = -1, b = -1;     // children
    int exponent = 0;       // kPow
    std::size_t offset = 0; // byte offset in the source (for eval errors)
  };

  Expr() { root_ = add_node({NodeKind::kNumber, 0.0, -1, -1, 0, 0}); }

  static Expr parse(std::string_view src) {
    Expr e;
    e.nodes_.clear();
    Parser p{src, 0, &e};
    e.root_ = p.parse_expr();
    p.skip_ws();
    if (p.pos != src.size())
      throw ParseError("unexpected trailing input", p.pos);
    return e;
  }

  double eval(double x, double y) const { return eval_node(root_, x, y); }

  std::string str() const { return print_node(root_, 0); }

  // Same tree with the roles of x and y exchanged.
  Expr swapped_xy() const {
    Expr e = *this;
    for (auto& n : e.nodes_) {
      if (n.kind == NodeKind::kVarX)
        n.kind = NodeKind::kVarY;
      else if (n.kind == NodeKind::kVarY)
        n.kind = NodeKind::kVarX;
    }
    return e;
  }

  bool depends_on_x() const { return depends_on(NodeKind::kVarX); }
  bool depends_on_y() const { return depends_on(NodeKind::kVarY); }

  // True if this expression has the shape `y + g(x)` (used to recognize maps
  // that commute with vertical translations).
  bool is_y_plus_x_only() const { return is_y_plus_x_only_node(root_); }

  bool identical(const Expr& o) const {
    return identical_node(root_, o, o.root_);
  }

 private:
  std::vector<Node> nodes_;
  int root_ = -1;

  int add_node(Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }

  bool depends_on(NodeKind k) const { return subtree_depends(root_, k); }

  bool is_y_plus_x_only_node(int i) const {
    const Node& n = nodes_[i];
    if (n.kind == NodeKind::kVarY) return true;
    if (n.kind == NodeKind::kAdd) {
      bool a_free = !subtree_depends(n.a, NodeKind::kVarY);
      bool b_free = !subtree_depends(n.b, NodeKind::kVarY);
      if (b_free && is_y_plus_x_only_node(n.a)) return true;
      if (a_free && is_y_plus_x_only_node(n.b)) return true;
      return false;
    }
    if (n.kind == NodeKind::kSub)
      return is_y_plus_x_only_node(n.a) &&
             !subtree_depends(n.b, NodeKind::kVarY);
    return false;
  }

  bool subtree_depends(int i, NodeKind k) const {
    const Node& n = nodes_[i];
    if (n.kind == k) return true;
    if (n.a >= 0 && subtree_depends(n.a, k)) return true;
    if (n.b >= 0 && subtree_depends(n.b, k)) return true;
    return false;
  }

  bool identical_node(int i, const Expr& o, int j) const {
    const Node& n = nodes_[i];
    const Node& m = o.nodes_[j];
    if (n.kind != m.kind) return false;
    switch (n.kind) {
      case NodeKind::kNumber:
        return n.value == m.value;
      case NodeKind::kPow:
        return n.exponent == m.exponent && identical_node(n.a, o, m.a);
      case NodeKind::kAdd:
      case NodeKind::kSub:
      case NodeKind::kMul:
      case NodeKind::kDiv:
        return identical_node(n.a, o, m.a) && identical_node(n.b, o, m.b);
      case NodeKind::kNeg:
      case NodeKind::kSin:
      case NodeKind::kCos:
        return identical_node(n.a, o, m.a);
      default:
        return true;  // kPi, kVarX, kVarY
    }
  }

  double eval_node(int i, double x, double y) const {
    const Node& n = nodes_[i];
    switch (n.kind) {
      case NodeKind::kNumber: return n.value;
      case NodeKind::kPi:     return std::numbers::pi_v<double>;
      case NodeKind::kVarX:   return x;
      case NodeKind::kVarY:   return y;
      case NodeKind::kAdd:    return eval_node(n.a, x, y) + eval_node(n.b, x, y);
      case NodeKind::kSub:    return eval_node(n.a, x, y) - eval_node(n.b, x, y);
      case NodeKind::kMul:    return eval_node(n.a, x, y) * eval_node(n.b, x, y);
      case NodeKind::kDiv: {
        double num = eval_node(n.a, x, y);
        double den = eval_node(n.b, x, y);
        if (den == 0.0) throw EvalError("division by zero", n.offset);
        return num / den;
      }
      case NodeKind::kNeg:    return -eval_node(n.a, x, y);
      case NodeKind::kSin:    return std::sin(eval_node(n.a, x, y));
      case NodeKind::kCos:    return std::cos(eval_node(n.a, x, y));
      case NodeKind::kPow: {
        double base = eval_node(n.a, x, y);
        int e = n.exponent;
        if (e < 0) {
          if (base == 0.0) throw EvalError("zero to a negative power", n.offset);
          return 1.0 / powi(base, -e);
        }
        return powi(base, e);
      }
    }
    return 0.0;
  }

  static double powi(double b, int e) {
    double r = 1.0;
    while (e > 0) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  static int prec(NodeKind k) {
    switch (k) {
      case NodeKind::kAdd:
      case NodeKind::kSub: return 1;
      case NodeKind::kMul:
      case NodeKind::kDiv: return 2;
      case NodeKind::kNeg: return 3;
      case NodeKind::kPow: return 4;
      default:             return 5;
    }
  }

  // `ctx` is the minimum precedence that may appear without parentheses.
  std::string print_node(int i, int ctx) const {
    const Node& n = nodes_[i];
    std::string s;
    switch (n.kind) {
      case NodeKind::kNumber: s = format_double(n.value); break;
      case NodeKind::kPi:     s = "pi"; break;
      case NodeKind::kVarX:   s = "x"; break;
      case NodeKind::kVarY:   s = "y"; break;
      case NodeKind::kAdd:
        s = print_node(n.a, 1) + " + " + print_node(n.b, 2);
        break;
      case NodeKind::kSub:
        s = print_node(n.a, 1) + " - " + print_node(n.b, 2);
        break;
      case NodeKind::kMul:
        s = print_node(n.a, 2) + "*" + print_node(n.b, 3);
        break;
      case NodeKind::kDiv:
        s = print_node(n.a, 2) + "/" + print_node(n.b, 3);
        break;
      case NodeKind::kNeg:
        s = "-" + print_node(n.a, 3);
        break;
      case NodeKind::kSin:
        return "sin(" + print_node(n.a, 0) + ")";
      case NodeKind::kCos:
        return "cos(" + print_node(n.a, 0) + ")";
      case NodeKind::kPow:
        s = print_node(n.a, 5) + "^" + std::to_string(n.exponent);
        break;
    }
    if (prec(n.kind) < ctx) return "(" + s + ")";
    return s;
  }

  struct Parser {
    std::string_view src;
    std::size_t pos;
    Expr* out;

    void skip_ws() {
      while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
        ++pos;
    }
    bool eat(char c) {
      skip_ws();
      if (pos < src.size() && src[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    char peek() {
      skip_ws();
      return pos < src.size() ? src[pos] : '\0';
    }

    int parse_expr() {
      int lhs = parse_term();
      for (;;) {
        skip_ws();
        std::size_t at = pos;
        if (eat('+')) {
          int rhs = parse_term();
          lhs = out->add_node({NodeKind::kAdd, 0, lhs, rhs, 0, at});
        } else if (eat('-')) {
          int rhs = parse_term();
          lhs = out->add_node({NodeKind::kSub, 0, lhs, rhs, 0, at});
        } else {
          return lhs;
        }
      }
    }

    int parse_term() {
      int lhs = parse_unary();
      for (;;) {
        skip_ws();
        std::size_t at = pos;
        if (eat('*')) {
          int rhs = parse_unary();
          lhs = out->add_node({NodeKind::kMul, 0, lhs, rhs, 0, at});
        } else if (eat('/')) {
          int rhs = parse_unary();
          lhs = out->add_node({NodeKind::kDiv, 0, lhs, rhs, 0, at});
        } else {
          return lhs;
        }
      }
    }

    int parse_unary() {
      skip_ws();
      std::size_t at = pos;
      if (eat('-')) {
        int child = parse_unary();
        return out->add_node({NodeKind::kNeg, 0, child, -1, 0, at});
      }
      return parse_power();
    }

    int parse_power() {
      int base = parse_atom();
      skip_ws();
      std::size_t at = pos;
      if (eat('^')) {
        skip_ws();
        bool neg = eat('-');
        skip_ws();
        std::size_t d0 = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
          ++pos;
        if (pos == d0)
          throw ParseError("expected integer exponent after '^'", pos);
        int e = std::atoi(std::string(src.substr(d0, pos - d0)).c_str());
        return out->add_node(
            {NodeKind::kPow, 0, base, -1, neg ? -e : e, at});
      }
      return base;
    }

    int parse_atom() {
      skip_ws();
      if (pos >= src.size()) throw ParseError("unexpected end of input", pos);
      std::size_t at = pos;
      char c = src[pos];
      if (c == '(') {
        ++pos;
        int inner = parse_expr();
        if (!eat(')')) throw ParseError("expected ')'", pos);
        return inner;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::string buf(src.substr(pos));
        const char* begin = buf.c_str();
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) throw ParseError("bad numeric literal", pos);
        pos += static_cast<std::size_t>(end - begin);
        return out->add_node({NodeKind::kNumber, v, -1, -1, 0, at});
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t i0 = pos;
        while (pos < src.size() &&
               std::isalnum(static_cast<unsigned char>(src[pos])))
          ++pos;
        std::string_view ident = src.substr(i0, pos - i0);
        if (ident == "x") return out->add_node({NodeKind::kVarX, 0, -1, -1, 0, at});
        if (ident == "y") return out->add_node({NodeKind::kVarY, 0, -1, -1, 0, at});
        if (ident == "pi") return out->add_node({NodeKind::kPi, 0, -1, -1, 0, at});
        if (ident == "sin" || ident == "cos") {
          if (!eat('(')) throw ParseError("expected '(' after function", pos);
          int arg = parse_expr();
          if (!eat(')')) throw ParseError("expected ')'", pos);
          return out->add_node(
              {ident == "sin" ? NodeKind::kSin : NodeKind::kCos, 0, arg, -1, 0,
               at});
        }
        throw ParseError("unknown identifier '" + std::string(ident) + "'", i0);
      }
      throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
  };
};

}  // namespace torodyn

#endif  // TORODYN_EXPR_HPP
