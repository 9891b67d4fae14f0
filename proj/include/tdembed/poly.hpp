#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdembed/bigrat.hpp"
#include "tdembed/errors.hpp"

// Dense univariate polynomials, coefficients stored lowest degree first.
// Two coefficient domains are enough for the whole library: F_p and Q.

namespace tdembed {

// ---------------------------------------------------------------- F_p[x]

struct FpPoly {
  uint32_t p = 0;
  std::vector<uint32_t> c;  // c[i] multiplies x^i, entries in [0,p)
};

inline FpPoly fp_trim(FpPoly a) {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
  return a;
}

inline int fp_deg(const FpPoly& a) { return static_cast<int>(a.c.size()) - 1; }

inline FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
  FpPoly r{a.p, std::vector<uint32_t>(std::max(a.c.size(), b.c.size()), 0)};
  for (size_t i = 0; i < r.c.size(); ++i) {
    uint64_t s = (i < a.c.size() ? a.c[i] : 0u) + (i < b.c.size() ? b.c[i] : 0u);
    r.c[i] = static_cast<uint32_t>(s % a.p);
  }
  return fp_trim(r);
}

inline FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
  FpPoly r{a.p, std::vector<uint32_t>(std::max(a.c.size(), b.c.size()), 0)};
  for (size_t i = 0; i < r.c.size(); ++i) {
    uint64_t s = (i < a.c.size() ? a.c[i] : 0u) + a.p - (i < b.c.size() ? b.c[i] : 0u) % a.p;
    r.c[i] = static_cast<uint32_t>(s % a.p);
  }
  return fp_trim(r);
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  if (a.c.empty() || b.c.empty()) return FpPoly{a.p, {}};
  FpPoly r{a.p, std::vector<uint32_t>(a.c.size() + b.c.size() - 1, 0)};
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      uint64_t s = r.c[i + j] + static_cast<uint64_t>(a.c[i]) * b.c[j];
      r.c[i + j] = static_cast<uint32_t>(s % a.p);
    }
  }
  return fp_trim(r);
}

inline uint32_t fp_inv_scalar(uint32_t a, uint32_t p) {
  if (a == 0) fail(Errc::DivisionByZero, "inverse of 0 mod p");
  int64_t t = 0, newt = 1, r = p, newr = a % p;
  while (newr != 0) {
    int64_t q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  return static_cast<uint32_t>(((t % p) + p) % p);
}

// remainder of a by b (b nonzero)
inline FpPoly fp_rem(FpPoly a, const FpPoly& b) {
  a = fp_trim(a);
  if (b.c.empty()) fail(Errc::DivisionByZero, "polynomial division by zero");
  uint32_t lead_inv = fp_inv_scalar(b.c.back(), a.p == 0 ? b.p : a.p);
  uint32_t p = b.p;
  while (static_cast<int>(a.c.size()) >= static_cast<int>(b.c.size()) && !a.c.empty()) {
    uint64_t f = static_cast<uint64_t>(a.c.back()) * lead_inv % p;
    size_t shift = a.c.size() - b.c.size();
    for (size_t i = 0; i < b.c.size(); ++i) {
      uint64_t s = a.c[shift + i] + p - static_cast<uint32_t>(f * b.c[i] % p);
      a.c[shift + i] = static_cast<uint32_t>(s % p);
    }
    a = fp_trim(a);
  }
  a.p = p;
  return a;
}

// a^{-1} mod m by extended Euclid; a must be coprime to m
inline FpPoly fp_inv_mod(const FpPoly& a, const FpPoly& m) {
  uint32_t p = m.p;
  FpPoly r0 = m, r1 = fp_rem(a, m);
  FpPoly t0{p, {}}, t1{p, {1}};
  if (r1.c.empty()) fail(Errc::DivisionByZero, "inverse of 0 in F_q");
  while (!r1.c.empty()) {
    // quotient of r0 by r1
    FpPoly q{p, {}};
    FpPoly rem = r0;
    uint32_t lead_inv = fp_inv_scalar(r1.c.back(), p);
    while (static_cast<int>(rem.c.size()) >= static_cast<int>(r1.c.size()) && !rem.c.empty()) {
      uint64_t f = static_cast<uint64_t>(rem.c.back()) * lead_inv % p;
      size_t shift = rem.c.size() - r1.c.size();
      if (q.c.size() < shift + 1) q.c.resize(shift + 1, 0);
      q.c[shift] = static_cast<uint32_t>((q.c[shift] + f) % p);
      for (size_t i = 0; i < r1.c.size(); ++i) {
        uint64_t s = rem.c[shift + i] + p - static_cast<uint32_t>(f * r1.c[i] % p);
        rem.c[shift + i] = static_cast<uint32_t>(s % p);
      }
      rem = fp_trim(rem);
    }
    FpPoly t2 = fp_sub(t0, fp_mul(q, t1));
    r0 = r1;
    r1 = rem;
    t0 = t1;
    t1 = t2;
  }
  if (fp_deg(r0) != 0) fail(Errc::SingularSystem, "element not invertible modulo modulus");
  uint32_t cinv = fp_inv_scalar(r0.c[0], p);
  return fp_rem(fp_mul(t0, FpPoly{p, {cinv}}), m);
}

// Trial division by all monic polynomials of degree <= deg/2.
inline bool fp_irreducible(const FpPoly& m) {
  int d = fp_deg(m);
  if (d < 1) return false;
  if (d == 1) return true;
  for (int dd = 1; dd <= d / 2; ++dd) {
    // enumerate monic divisor candidates of degree dd
    std::vector<uint32_t> digits(dd, 0);
    while (true) {
      FpPoly cand{m.p, digits};
      cand.c.push_back(1);
      if (fp_rem(m, cand).c.empty()) return false;
      int i = 0;
      for (; i < dd; ++i) {
        if (++digits[i] < m.p) break;
        digits[i] = 0;
      }
      if (i == dd) break;
    }
  }
  return true;
}

inline std::string fp_poly_str(const FpPoly& a) {
  if (a.c.empty()) return "0";
  std::string out;
  for (int i = fp_deg(a); i >= 0; --i) {
    if (a.c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(a.c[i]);
    } else {
      if (a.c[i] != 1) out += std::to_string(a.c[i]);
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

// Accepts sums of terms like "x^3", "2x", "x", "1" joined by '+' or '-';
// optional '*' between coefficient and x.
inline FpPoly fp_poly_parse(const std::string& s, uint32_t p) {
  FpPoly r{p, {}};
  size_t i = 0;
  int sign = 1;
  auto add_term = [&](uint64_t coef, size_t exp) {
    if (r.c.size() < exp + 1) r.c.resize(exp + 1, 0);
    uint64_t v = (r.c[exp] + (sign > 0 ? coef % p : (p - coef % p) % p)) % p;
    r.c[exp] = static_cast<uint32_t>(v);
  };
  while (i < s.size()) {
    if (s[i] == ' ') {
      ++i;
      continue;
    }
    if (s[i] == '+') {
      sign = 1;
      ++i;
      continue;
    }
    if (s[i] == '-') {
      sign = -1;
      ++i;
      continue;
    }
    uint64_t coef = 1;
    bool saw_digit = false;
    while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) {
      if (!saw_digit) coef = 0;
      saw_digit = true;
      coef = coef * 10 + (s[i] - '0');
      ++i;
    }
    if (i < s.size() && s[i] == '*') ++i;
    size_t exp = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !isdigit(static_cast<unsigned char>(s[i])))
          fail(Errc::FormatError, "bad exponent in polynomial '" + s + "'");
        exp = 0;
        while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) {
          exp = exp * 10 + (s[i] - '0');
          ++i;
        }
      }
    } else if (!saw_digit) {
      fail(Errc::FormatError, "bad polynomial '" + s + "'");
    }
    add_term(coef, exp);
    sign = 1;
  }
  return fp_trim(r);
}

// ---------------------------------------------------------------- Q[x]

struct RatPoly {
  std::vector<Rat> c;  // lowest degree first
};

inline RatPoly rat_trim(RatPoly a) {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
  return a;
}

inline int rat_deg(const RatPoly& a) { return static_cast<int>(a.c.size()) - 1; }

inline RatPoly rat_add(const RatPoly& a, const RatPoly& b) {
  RatPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] += a.c[i];
    if (i < b.c.size()) r.c[i] += b.c[i];
  }
  return rat_trim(r);
}

inline RatPoly rat_sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] += a.c[i];
    if (i < b.c.size()) r.c[i] -= b.c[i];
  }
  return rat_trim(r);
}

inline RatPoly rat_mul(const RatPoly& a, const RatPoly& b) {
  if (a.c.empty() || b.c.empty()) return {};
  RatPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  return rat_trim(r);
}

// division with remainder, b nonzero
inline std::pair<RatPoly, RatPoly> rat_divmod(RatPoly a, const RatPoly& b) {
  a = rat_trim(a);
  if (b.c.empty()) fail(Errc::DivisionByZero, "polynomial division by zero");
  RatPoly q;
  if (a.c.size() >= b.c.size()) q.c.assign(a.c.size() - b.c.size() + 1, Rat(0));
  Rat lead = b.c.back();
  while (a.c.size() >= b.c.size() && !a.c.empty()) {
    Rat f = a.c.back() / lead;
    size_t shift = a.c.size() - b.c.size();
    q.c[shift] += f;
    for (size_t i = 0; i < b.c.size(); ++i) a.c[shift + i] -= f * b.c[i];
    a = rat_trim(a);
  }
  return {rat_trim(q), a};
}

inline RatPoly rat_rem(const RatPoly& a, const RatPoly& b) { return rat_divmod(a, b).second; }

// a^{-1} mod m (m monic of degree >= 1, gcd(a, m) constant)
inline RatPoly rat_inv_mod(const RatPoly& a, const RatPoly& m) {
  RatPoly r0 = m, r1 = rat_rem(a, m);
  RatPoly t0, t1{{Rat(1)}};
  if (r1.c.empty()) fail(Errc::DivisionByZero, "inverse of 0 in number field");
  while (!r1.c.empty()) {
    auto [q, rem] = rat_divmod(r0, r1);
    RatPoly t2 = rat_sub(t0, rat_mul(q, t1));
    r0 = r1;
    r1 = rem;
    t0 = t1;
    t1 = t2;
  }
  if (rat_deg(r0) != 0)
    fail(Errc::SingularSystem, "element shares a factor with the minimal polynomial");
  RatPoly scale{{Rat(1) / r0.c[0]}};
  return rat_rem(rat_mul(t0, scale), m);
}

// x^n - 1
inline RatPoly rat_xn_minus_1(uint32_t n) {
  RatPoly r;
  r.c.assign(n + 1, Rat(0));
  r.c[0] = Rat(-1);
  r.c[n] = Rat(1);
  return r;
}

// m-th cyclotomic polynomial: (x^m - 1) / prod_{d | m, d < m} Phi_d.
// Irreducible over Q (classical); degree phi(m).
inline RatPoly cyclotomic_poly(uint32_t m) {
  if (m == 0) fail(Errc::FormatError, "cyclotomic index must be positive");
  RatPoly num = rat_xn_minus_1(m);
  for (uint32_t d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    RatPoly phi_d = cyclotomic_poly(d);
    auto [q, rem] = rat_divmod(num, phi_d);
    if (!rem.c.empty()) fail(Errc::SingularSystem, "cyclotomic division not exact");
    num = q;
  }
  return num;
}

inline uint32_t euler_phi(uint32_t m) {
  uint32_t result = m;
  for (uint32_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

}  // namespace tdembed
