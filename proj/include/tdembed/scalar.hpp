#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tdembed/field.hpp"

namespace tdembed {

// An exact element of one of the supported skew fields. Immutable by
// convention: every operation returns a fresh value in canonical form, so
// equality is a plain payload comparison.
struct Scalar {
  DescPtr desc;
  std::vector<uint32_t> fin;           // PrimeField (size 1) / ExtField (size s)
  std::vector<Rat> nf;                 // Rationals (size 1) / NumberField (size deg)
  std::vector<std::vector<Rat>> comp;  // Quaternion 4 / QuaternionPair 2 / CyclicAlgebra 3,
                                       // each entry a base-field coefficient vector
};

namespace nfops {

using Vec = std::vector<Rat>;

inline Vec zero(size_t deg) { return Vec(deg, Rat(0)); }

inline Vec from_int(size_t deg, long long n) {
  Vec v(deg, Rat(0));
  v[0] = Rat(n);
  return v;
}

inline bool is_zero(const Vec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec neg(const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vec mul(const FieldDescriptor& base, const Vec& a, const Vec& b) {
  size_t deg = base.nf_degree();
  if (deg == 1) return {a[0] * b[0]};
  RatPoly pa{a}, pb{b};
  RatPoly prod = rat_rem(rat_mul(pa, pb), base.minpoly);
  Vec r(deg, Rat(0));
  for (size_t i = 0; i < prod.c.size(); ++i) r[i] = prod.c[i];
  return r;
}

inline Vec inv(const FieldDescriptor& base, const Vec& a) {
  if (is_zero(a)) fail(Errc::DivisionByZero, "inverse of 0");
  size_t deg = base.nf_degree();
  if (deg == 1) return {Rat(1) / a[0]};
  RatPoly inv_poly = rat_inv_mod(RatPoly{a}, base.minpoly);
  Vec r(deg, Rat(0));
  for (size_t i = 0; i < inv_poly.c.size(); ++i) r[i] = inv_poly.c[i];
  return r;
}

// apply a precomputed basis-image matrix (columns = images of x^k)
inline Vec apply_map(const std::vector<Vec>& cols, const Vec& a) {
  Vec r(a.size(), Rat(0));
  for (size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    for (size_t i = 0; i < a.size(); ++i) r[i] += cols[k][i] * a[k];
  }
  return r;
}

}  // namespace nfops

// ------------------------------------------------------------ constructors

inline Scalar s_zero(const DescPtr& d) {
  Scalar s;
  s.desc = d;
  switch (d->kind) {
    case FieldKind::PrimeField:
      s.fin = {0};
      break;
    case FieldKind::ExtField:
      s.fin.assign(fp_deg(d->modulus), 0);
      break;
    case FieldKind::Rationals:
    case FieldKind::NumberField:
      s.nf = nfops::zero(d->nf_degree());
      break;
    case FieldKind::Quaternion:
      s.comp.assign(4, nfops::zero(d->base->nf_degree()));
      break;
    case FieldKind::QuaternionPair:
      s.comp.assign(2, nfops::zero(d->base->nf_degree()));
      break;
    case FieldKind::CyclicAlgebra:
      s.comp.assign(3, nfops::zero(d->base->nf_degree()));
      break;
  }
  return s;
}

inline Scalar s_int(const DescPtr& d, long long n) {
  Scalar s = s_zero(d);
  switch (d->kind) {
    case FieldKind::PrimeField:
    case FieldKind::ExtField: {
      long long r = n % static_cast<long long>(d->p);
      if (r < 0) r += d->p;
      s.fin[0] = static_cast<uint32_t>(r);
      break;
    }
    case FieldKind::Rationals:
    case FieldKind::NumberField:
      s.nf[0] = Rat(n);
      break;
    default:
      s.comp[0][0] = Rat(n);
      break;
  }
  return s;
}

inline Scalar s_one(const DescPtr& d) { return s_int(d, 1); }

inline Scalar s_fin(const DescPtr& d, std::vector<uint32_t> coeffs) {
  if (d->kind != FieldKind::PrimeField && d->kind != FieldKind::ExtField)
    fail(Errc::DescriptorMismatch, "finite payload on non-finite descriptor");
  Scalar s = s_zero(d);
  if (coeffs.size() > s.fin.size()) fail(Errc::FormatError, "too many coefficients");
  for (size_t i = 0; i < coeffs.size(); ++i) s.fin[i] = coeffs[i] % d->p;
  return s;
}

inline Scalar s_rat(const DescPtr& d, Rat value) {
  if (d->kind != FieldKind::Rationals) fail(Errc::DescriptorMismatch, "rational payload");
  Scalar s = s_zero(d);
  s.nf[0] = std::move(value);
  return s;
}

inline Scalar s_nf(const DescPtr& d, std::vector<Rat> coeffs) {
  if (d->kind != FieldKind::Rationals && d->kind != FieldKind::NumberField)
    fail(Errc::DescriptorMismatch, "number-field payload");
  if (coeffs.size() > d->nf_degree()) {
    RatPoly reduced = rat_rem(RatPoly{std::move(coeffs)}, d->minpoly);
    coeffs = std::move(reduced.c);
  }
  Scalar s = s_zero(d);
  for (size_t i = 0; i < coeffs.size(); ++i) s.nf[i] = std::move(coeffs[i]);
  return s;
}

// generator of a number field: the class of x (zeta for cyclotomic presets)
inline Scalar nf_generator(const DescPtr& d) {
  if (d->kind != FieldKind::NumberField && d->kind != FieldKind::Rationals)
    fail(Errc::DescriptorMismatch, "generator of non number field");
  return s_nf(d, {Rat(0), Rat(1)});
}

inline Scalar s_components(const DescPtr& d, std::vector<std::vector<Rat>> comps) {
  size_t want = d->kind == FieldKind::Quaternion       ? 4
                : d->kind == FieldKind::QuaternionPair ? 2
                : d->kind == FieldKind::CyclicAlgebra  ? 3
                                                       : 0;
  if (want == 0) fail(Errc::DescriptorMismatch, "component payload on scalar kind");
  if (comps.size() != want) fail(Errc::FormatError, "wrong component count");
  size_t deg = d->base->nf_degree();
  Scalar s = s_zero(d);
  for (size_t i = 0; i < want; ++i) {
    if (comps[i].size() > deg) {
      RatPoly reduced = rat_rem(RatPoly{std::move(comps[i])}, d->base->minpoly);
      comps[i] = std::move(reduced.c);
    }
    for (size_t k = 0; k < comps[i].size(); ++k) s.comp[i][k] = std::move(comps[i][k]);
  }
  return s;
}

// quaternion over a rational base from four plain rationals
inline Scalar s_quat(const DescPtr& d, const Rat& a, const Rat& b, const Rat& c, const Rat& e) {
  size_t deg = d->base->nf_degree();
  auto lift = [&](const Rat& v) {
    std::vector<Rat> x(deg, Rat(0));
    x[0] = v;
    return x;
  };
  return s_components(d, {lift(a), lift(b), lift(c), lift(e)});
}

// ------------------------------------------------------------ predicates

inline bool s_is_zero(const Scalar& a) {
  switch (a.desc->kind) {
    case FieldKind::PrimeField:
    case FieldKind::ExtField:
      for (uint32_t x : a.fin)
        if (x) return false;
      return true;
    case FieldKind::Rationals:
    case FieldKind::NumberField:
      return nfops::is_zero(a.nf);
    default:
      for (const auto& v : a.comp)
        if (!nfops::is_zero(v)) return false;
      return true;
  }
}

inline bool operator==(const Scalar& a, const Scalar& b) {
  if (!same_desc(a.desc, b.desc)) return false;
  return a.fin == b.fin && a.nf == b.nf && a.comp == b.comp;
}

inline bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

namespace detail {
inline void check_same(const Scalar& a, const Scalar& b) {
  if (!same_desc(a.desc, b.desc))
    fail(Errc::DescriptorMismatch, a.desc->name + " vs " + b.desc->name);
}
}  // namespace detail

// ------------------------------------------------------------ arithmetic

inline Scalar s_add(const Scalar& a, const Scalar& b) {
  detail::check_same(a, b);
  Scalar r = a;
  switch (a.desc->kind) {
    case FieldKind::PrimeField:
    case FieldKind::ExtField:
      for (size_t i = 0; i < r.fin.size(); ++i) r.fin[i] = (r.fin[i] + b.fin[i]) % a.desc->p;
      break;
    case FieldKind::Rationals:
    case FieldKind::NumberField:
      r.nf = nfops::add(a.nf, b.nf);
      break;
    default:
      for (size_t i = 0; i < r.comp.size(); ++i) r.comp[i] = nfops::add(a.comp[i], b.comp[i]);
      break;
  }
  return r;
}

inline Scalar s_neg(const Scalar& a) {
  Scalar r = a;
  switch (a.desc->kind) {
    case FieldKind::PrimeField:
    case FieldKind::ExtField:
      for (auto& x : r.fin) x = x ? a.desc->p - x : 0;
      break;
    case FieldKind::Rationals:
    case FieldKind::NumberField:
      r.nf = nfops::neg(a.nf);
      break;
    default:
      for (auto& v : r.comp) v = nfops::neg(v);
      break;
  }
  return r;
}

inline Scalar s_sub(const Scalar& a, const Scalar& b) { return s_add(a, s_neg(b)); }

inline Scalar s_mul(const Scalar& a, const Scalar& b) {
  detail::check_same(a, b);
  const FieldDescriptor& d = *a.desc;
  Scalar r = s_zero(a.desc);
  switch (d.kind) {
    case FieldKind::PrimeField:
      r.fin[0] = static_cast<uint32_t>(static_cast<uint64_t>(a.fin[0]) * b.fin[0] % d.p);
      break;
    case FieldKind::ExtField: {
      FpPoly pa{d.p, a.fin}, pb{d.p, b.fin};
      FpPoly prod = fp_rem(fp_mul(fp_trim(pa), fp_trim(pb)), d.modulus);
      for (size_t i = 0; i < prod.c.size(); ++i) r.fin[i] = prod.c[i];
      break;
    }
    case FieldKind::Rationals:
    case FieldKind::NumberField:
      r.nf = nfops::mul(d, a.nf, b.nf);
      break;
    case FieldKind::Quaternion: {
      const FieldDescriptor& base = *d.base;
      auto& A = a.comp;
      auto& B = b.comp;
      auto m = [&](int i, int j) { return nfops::mul(base, A[i], B[j]); };
      using nfops::add;
      using nfops::sub;
      r.comp[0] = sub(sub(sub(m(0, 0), m(1, 1)), m(2, 2)), m(3, 3));
      r.comp[1] = add(sub(add(m(0, 1), m(1, 0)), m(3, 2)), m(2, 3));
      r.comp[2] = add(add(sub(m(0, 2), m(1, 3)), m(2, 0)), m(3, 1));
      r.comp[3] = add(sub(add(m(0, 3), m(1, 2)), m(2, 1)), m(3, 0));
      break;
    }
    case FieldKind::QuaternionPair: {
      // (z1 + w1 j)(z2 + w2 j) = (z1 z2 - w1 conj(w2)) + (z1 w2 + w1 conj(z2)) j
      const FieldDescriptor& base = *d.base;
      auto conj = [&](const nfops::Vec& v) { return nfops::apply_map(d.twist1, v); };
      r.comp[0] = nfops::sub(nfops::mul(base, a.comp[0], b.comp[0]),
                             nfops::mul(base, a.comp[1], conj(b.comp[1])));
      r.comp[1] = nfops::add(nfops::mul(base, a.comp[0], b.comp[1]),
                             nfops::mul(base, a.comp[1], conj(b.comp[0])));
      break;
    }
    case FieldKind::CyclicAlgebra: {
      // Elements carry right coefficients: x = sum b^i x_i. Moving x_i past
      // b^j applies sigma^{-j}; sigma has order 3, so sigma^{-1} = sigma^2
      // (twist2) and sigma^{-2} = sigma (twist1). b^3 = zeta^7 is central.
      const FieldDescriptor& base = *d.base;
      size_t deg = base.nf_degree();
      nfops::Vec bcube(deg, Rat(0));
      bcube[d.bcube_exp] = 1;
      for (int i = 0; i < 3; ++i) {
        if (nfops::is_zero(a.comp[i])) continue;
        for (int j = 0; j < 3; ++j) {
          if (nfops::is_zero(b.comp[j])) continue;
          nfops::Vec xi = a.comp[i];
          if (j == 1) xi = nfops::apply_map(d.twist2, xi);
          if (j == 2) xi = nfops::apply_map(d.twist1, xi);
          nfops::Vec term = nfops::mul(base, xi, b.comp[j]);
          int t = i + j;
          if (t >= 3) {
            term = nfops::mul(base, term, bcube);
            t -= 3;
          }
          r.comp[t] = nfops::add(r.comp[t], term);
        }
      }
      break;
    }
  }
  return r;
}

inline Scalar s_inv(const Scalar& a);

namespace detail {

// cyclic-algebra inversion: left multiplication by x is a 3x3 linear map over
// the commutative base Q(zeta21); solve M y = e0 and verify both products.
inline Scalar cyclic_inv(const Scalar& a) {
  const FieldDescriptor& d = *a.desc;
  const FieldDescriptor& base = *d.base;
  size_t deg = base.nf_degree();
  nfops::Vec bcube(deg, Rat(0));
  bcube[d.bcube_exp] = 1;
  // M[k][j] multiplies y_j in coordinate k of x*y
  std::array<std::array<nfops::Vec, 3>, 3> M;
  for (auto& row : M)
    for (auto& cell : row) cell = nfops::zero(deg);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      nfops::Vec xi = a.comp[i];
      if (j == 1) xi = nfops::apply_map(d.twist2, xi);
      if (j == 2) xi = nfops::apply_map(d.twist1, xi);
      int t = i + j;
      if (t >= 3) {
        xi = nfops::mul(base, xi, bcube);
        t -= 3;
      }
      M[t][j] = nfops::add(M[t][j], xi);
    }
  }
  // Gaussian elimination over the base field
  std::array<nfops::Vec, 3> rhs = {nfops::from_int(deg, 1), nfops::zero(deg), nfops::zero(deg)};
  std::array<int, 3> rows = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int sel = -1;
    for (int r = col; r < 3; ++r) {
      if (!nfops::is_zero(M[rows[r]][col])) {
        sel = r;
        break;
      }
    }
    if (sel < 0) fail(Errc::SingularSystem, "cyclic algebra inverse system is singular");
    std::swap(rows[col], rows[sel]);
    nfops::Vec pivot_inv = nfops::inv(base, M[rows[col]][col]);
    for (int c = col; c < 3; ++c) M[rows[col]][c] = nfops::mul(base, pivot_inv, M[rows[col]][c]);
    rhs[rows[col]] = nfops::mul(base, pivot_inv, rhs[rows[col]]);
    for (int r = 0; r < 3; ++r) {
      if (r == col || nfops::is_zero(M[rows[r]][col])) continue;
      nfops::Vec f = M[rows[r]][col];
      for (int c = col; c < 3; ++c)
        M[rows[r]][c] = nfops::sub(M[rows[r]][c], nfops::mul(base, f, M[rows[col]][c]));
      rhs[rows[r]] = nfops::sub(rhs[rows[r]], nfops::mul(base, f, rhs[rows[col]]));
    }
  }
  Scalar y = s_zero(a.desc);
  for (int k = 0; k < 3; ++k) y.comp[k] = rhs[rows[k]];
  Scalar one = s_one(a.desc);
  if (s_mul(a, y) != one || s_mul(y, a) != one)
    fail(Errc::SingularSystem, "cyclic algebra inverse failed verification");
  return y;
}

}  // namespace detail

inline Scalar s_inv(const Scalar& a) {
  if (s_is_zero(a)) fail(Errc::DivisionByZero, "inverse of zero in " + a.desc->name);
  const FieldDescriptor& d = *a.desc;
  Scalar r = s_zero(a.desc);
  switch (d.kind) {
    case FieldKind::PrimeField:
      r.fin[0] = fp_inv_scalar(a.fin[0], d.p);
      break;
    case FieldKind::ExtField: {
      FpPoly inv = fp_inv_mod(fp_trim(FpPoly{d.p, a.fin}), d.modulus);
      for (size_t i = 0; i < inv.c.size(); ++i) r.fin[i] = inv.c[i];
      break;
    }
    case FieldKind::Rationals:
    case FieldKind::NumberField:
      r.nf = nfops::inv(d, a.nf);
      break;
    case FieldKind::Quaternion: {
      // conj / norm; over a totally real base the norm a0^2+..+a3^2 of a
      // nonzero quaternion is nonzero
      const FieldDescriptor& base = *d.base;
      nfops::Vec norm = nfops::zero(base.nf_degree());
      for (int i = 0; i < 4; ++i)
        norm = nfops::add(norm, nfops::mul(base, a.comp[i], a.comp[i]));
      if (nfops::is_zero(norm)) fail(Errc::SingularSystem, "quaternion norm vanished");
      nfops::Vec ninv = nfops::inv(base, norm);
      r.comp[0] = nfops::mul(base, a.comp[0], ninv);
      for (int i = 1; i < 4; ++i) r.comp[i] = nfops::neg(nfops::mul(base, a.comp[i], ninv));
      break;
    }
    case FieldKind::QuaternionPair: {
      // q^{-1} = (conj(z), -w) / (z conj(z) + w conj(w)); the norm is central
      const FieldDescriptor& base = *d.base;
      auto conj = [&](const nfops::Vec& v) { return nfops::apply_map(d.twist1, v); };
      nfops::Vec norm = nfops::add(nfops::mul(base, a.comp[0], conj(a.comp[0])),
                                   nfops::mul(base, a.comp[1], conj(a.comp[1])));
      if (nfops::is_zero(norm)) fail(Errc::SingularSystem, "pair quaternion norm vanished");
      nfops::Vec ninv = nfops::inv(base, norm);
      r.comp[0] = nfops::mul(base, conj(a.comp[0]), ninv);
      r.comp[1] = nfops::neg(nfops::mul(base, a.comp[1], ninv));
      break;
    }
    case FieldKind::CyclicAlgebra:
      r = detail::cyclic_inv(a);
      break;
  }
  return r;
}

inline Scalar s_pow(const Scalar& a, long long e) {
  if (e < 0) return s_pow(s_inv(a), -e);
  Scalar acc = s_one(a.desc);
  Scalar base = a;
  while (e > 0) {
    if (e & 1) acc = s_mul(acc, base);
    base = s_mul(base, base);
    e >>= 1;
  }
  return acc;
}

inline Scalar operator+(const Scalar& a, const Scalar& b) { return s_add(a, b); }
inline Scalar operator-(const Scalar& a, const Scalar& b) { return s_sub(a, b); }
inline Scalar operator-(const Scalar& a) { return s_neg(a); }
inline Scalar operator*(const Scalar& a, const Scalar& b) { return s_mul(a, b); }

// ------------------------------------------------------------ keys & enumeration

// Canonical text key; deterministic, used for hashing, ordering and dedup.
inline std::string s_key(const Scalar& a) {
  std::string out;
  switch (a.desc->kind) {
    case FieldKind::PrimeField:
    case FieldKind::ExtField:
      out = "f";
      for (uint32_t x : a.fin) out += "," + std::to_string(x);
      return out;
    case FieldKind::Rationals:
    case FieldKind::NumberField:
      out = "n";
      for (const auto& x : a.nf) out += "," + rat_str(x);
      return out;
    default:
      out = "m";
      for (const auto& v : a.comp) {
        out += "[";
        for (const auto& x : v) out += rat_str(x) + ",";
        out += "]";
      }
      return out;
  }
}

// every element of a finite field, in a fixed order
inline std::vector<Scalar> field_elements(const DescPtr& d) {
  uint64_t q = field_size(*d);
  if (q == 0) fail(Errc::UnsupportedSize, "cannot enumerate infinite field " + d->name);
  std::vector<Scalar> out;
  out.reserve(q);
  size_t s = d->kind == FieldKind::PrimeField ? 1 : static_cast<size_t>(fp_deg(d->modulus));
  std::vector<uint32_t> digits(s, 0);
  while (true) {
    out.push_back(s_fin(d, digits));
    size_t i = 0;
    for (; i < s; ++i) {
      if (++digits[i] < d->p) break;
      digits[i] = 0;
    }
    if (i == s) break;
  }
  return out;
}

}  // namespace tdembed
