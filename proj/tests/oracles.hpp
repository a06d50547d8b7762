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
//
// Independent reference implementations used only by tests. These stay
// deliberately naive (one-pass evaluation, scalar loops, per-cell flood
// fills) so they share no code path with the library they check.

#ifndef TORODYN_TESTS_ORACLES_HPP
#define TORODYN_TESTS_ORACLES_HPP

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// One-pass expression evaluator: parses and evaluates in a single recursive
// descent without building a tree.

class Eval {
 public:
  static double run(const std::string& src, double x, double y) {
    Eval e{src, 0, x, y};
    double v = e.expr();
    e.ws();
    if (e.pos_ != src.size()) throw std::runtime_error("oracle: trailing");
    return v;
  }

 private:
  Eval(const std::string& s, size_t p, double x, double y)
      : s_(s), pos_(p), x_(x), y_(y) {}

  const std::string& s_;
  size_t pos_;
  double x_, y_;

  void ws() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }
  bool eat(char c) {
    ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double expr() {
    double v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  double term() {
    double v = unary();
    for (;;) {
      if (eat('*'))
        v *= unary();
      else if (eat('/'))
        v /= unary();
      else
        return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    return power();
  }
  double power() {
    double b = atom();
    if (eat('^')) {
      bool neg = eat('-');
      ws();
      size_t d0 = pos_;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
      int e = std::atoi(s_.substr(d0, pos_ - d0).c_str());
      double r = 1.0;
      for (int i = 0; i < e; ++i) r *= b;
      return neg ? 1.0 / r : r;
    }
    return b;
  }
  double atom() {
    ws();
    if (pos_ >= s_.size()) throw std::runtime_error("oracle: eof");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      double v = expr();
      if (!eat(')')) throw std::runtime_error("oracle: )");
      return v;
    }
    if (std::isdigit((unsigned char)c) || c == '.') {
      char* end = nullptr;
      double v = std::strtod(s_.c_str() + pos_, &end);
      pos_ = static_cast<size_t>(end - s_.c_str());
      return v;
    }
    size_t i0 = pos_;
    while (pos_ < s_.size() && std::isalnum((unsigned char)s_[pos_])) ++pos_;
    std::string id = s_.substr(i0, pos_ - i0);
    if (id == "x") return x_;
    if (id == "y") return y_;
    if (id == "pi") return 3.14159265358979323846;
    if (id == "sin" || id == "cos") {
      if (!eat('(')) throw std::runtime_error("oracle: (");
      double a = expr();
      if (!eat(')')) throw std::runtime_error("oracle: )");
      return id == "sin" ? std::sin(a) : std::cos(a);
    }
    throw std::runtime_error("oracle: ident " + id);
  }
};

// ---------------------------------------------------------------------------
// Raw orbit of the golden skew F(x,y) = (x + phi, y + a sin(2 pi x)).

inline std::pair<double, double> skew_orbit(double x, double y, double phi,
                                            double a, long n) {
  const double two_pi = 2.0 * 3.14159265358979323846;
  for (long k = 0; k < n; ++k) {
    double nx = x + phi;
    double ny = y + a * std::sin(two_pi * x);
    x = nx;
    y = ny;
  }
  return {x, y};
}

// Direct Birkhoff sums of the vertical kick, wrapping the angle. Returns the
// max of |a * sum| over prefixes of length <= n (the one-sided deviation sup
// from the base point x0).
inline double skew_vertical_sup(double x0, double phi, double a, long n) {
  const double two_pi = 2.0 * 3.14159265358979323846;
  double x = x0, sum = 0.0, best = 0.0;
  for (long k = 0; k < n; ++k) {
    sum += a * std::sin(two_pi * x);
    if (std::abs(sum) > best) best = std::abs(sum);
    x += phi;
    x -= std::floor(x);
  }
  return best;
}

// Same orbit run backward with the analytic inverse.
inline double skew_vertical_sup_backward(double x0, double phi, double a,
                                         long n) {
  const double two_pi = 2.0 * 3.14159265358979323846;
  double x = x0, sum = 0.0, best = 0.0;
  for (long k = 0; k < n; ++k) {
    x -= phi;
    x -= std::floor(x);
    sum -= a * std::sin(two_pi * x);
    if (std::abs(sum) > best) best = std::abs(sum);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Tiny independent grid with scalar flood fills (x wraps, y does not).

struct Grid {
  int nx, ny;
  std::vector<char> cell;

  Grid(int nx_, int ny_) : nx(nx_), ny(ny_), cell(nx_ * ny_, 0) {}

  char& at(int x, int y) { return cell[y * nx + ((x % nx) + nx) % nx]; }
  char get(int x, int y) const { return cell[y * nx + ((x % nx) + nx) % nx]; }

  // Number of components of {cells with value v}, 4- or 8-connected.
  int components(char v, bool eight) const {
    std::vector<int> mark(nx * ny, -1);
    int count = 0;
    for (int sy = 0; sy < ny; ++sy)
      for (int sx = 0; sx < nx; ++sx) {
        if (get(sx, sy) != v || mark[sy * nx + sx] != -1) continue;
        flood(v, eight, sx, sy, count, mark);
        ++count;
      }
    return count;
  }

  // Flood from (sx, sy) over cells with value v; returns the filled set and
  // whether it touches the bottom/top rows.
  struct Fill {
    std::vector<char> in;
    bool bottom = false, top = false;
    int cells = 0;
  };

  Fill fill_from(char v, bool eight, int sx, int sy) const {
    Fill f;
    f.in.assign(nx * ny, 0);
    if (get(sx, sy) != v) return f;
    std::vector<std::pair<int, int>> stack{{sx, sy}};
    f.in[sy * nx + sx] = 1;
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      stack.pop_back();
      ++f.cells;
      if (y == 0) f.bottom = true;
      if (y == ny - 1) f.top = true;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (!eight && dx != 0 && dy != 0) continue;
          int xx = ((x + dx) % nx + nx) % nx, yy = y + dy;
          if (yy < 0 || yy >= ny) continue;
          if (get(xx, yy) != v || f.in[yy * nx + xx]) continue;
          f.in[yy * nx + xx] = 1;
          stack.emplace_back(xx, yy);
        }
    }
    return f;
  }

 private:
  void flood(char v, bool eight, int sx, int sy, int id,
             std::vector<int>& mark) const {
    std::vector<std::pair<int, int>> stack{{sx, sy}};
    mark[sy * nx + sx] = id;
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      stack.pop_back();
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (!eight && dx != 0 && dy != 0) continue;
          int xx = ((x + dx) % nx + nx) % nx, yy = y + dy;
          if (yy < 0 || yy >= ny) continue;
          if (get(xx, yy) != v || mark[yy * nx + xx] != -1) continue;
          mark[yy * nx + xx] = id;
          stack.emplace_back(xx, yy);
        }
    }
  }
};

// ---------------------------------------------------------------------------
// Exhaustive integer relation minimum in long double.

inline long double relation_min(long double r1, long double r2, int kmax) {
  long double best = 1e30L;
  for (int k1 = -kmax; k1 <= kmax; ++k1)
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      long double s = k1 * r1 + k2 * r2;
      long double frac = s - std::floor(s);  // distance to nearest integer
      long double r = std::min(frac, 1.0L - frac);
      if (r < best) best = r;
    }
  return best;
}

}  // namespace oracle

#endif  // TORODYN_TESTS_ORACLES_HPP
