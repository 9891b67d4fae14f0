#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tdembed/errors.hpp"
#include "tdembed/poly.hpp"

namespace tdembed {

enum class FieldKind {
  PrimeField,      // F_p
  ExtField,        // F_{p^s} = F_p[x]/(modulus)
  Rationals,       // Q
  NumberField,     // Q[x]/(minpoly)
  Quaternion,      // 1,i,j,k over a totally real base (Q, Q(sqrt2), Q(sqrt5))
  QuaternionPair,  // z + w j with z,w in a cyclotomic base, j z = conj(z) j
  CyclicAlgebra,   // c0 + b c1 + b^2 c2 over Q(zeta21), b^3 = zeta^7, b c = sigma(c) b
};

struct FieldDescriptor;
using DescPtr = std::shared_ptr<const FieldDescriptor>;

struct FieldDescriptor {
  FieldKind kind;
  std::string name;  // canonical preset name; equality of descriptors is name equality
  uint32_t p = 0;    // characteristic of the finite kinds
  FpPoly modulus;    // ExtField only, monic irreducible over F_p

  // Commutative characteristic-0 kinds carry a monic minimal polynomial over Q.
  // Rationals are the degree-1 case (minpoly x), so one element representation
  // (a coefficient vector) covers Q and every number field uniformly.
  RatPoly minpoly;
  uint32_t cyclotomic_m = 0;  // minpoly == Phi_m when nonzero

  DescPtr base;           // component field of the three composite kinds
  uint32_t twist_exp = 0;  // QuaternionPair: conjugation zeta -> zeta^exp;
                           // CyclicAlgebra: sigma(zeta) = zeta^exp
  uint32_t bcube_exp = 0;  // CyclicAlgebra: b^3 = zeta^bcube_exp (central)

  // Basis images of the twist automorphism on the base field (and its square
  // for the cyclic algebra), precomputed so elements stay immutable.
  std::vector<std::vector<Rat>> twist1, twist2;

  size_t nf_degree() const { return minpoly.c.empty() ? 0 : minpoly.c.size() - 1; }
};

inline uint32_t characteristic(const FieldDescriptor& d) {
  return (d.kind == FieldKind::PrimeField || d.kind == FieldKind::ExtField) ? d.p : 0;
}

inline bool same_desc(const DescPtr& a, const DescPtr& b) {
  return a == b || (a && b && a->name == b->name);
}

inline bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace detail {

// image of sum a_k x^k under x -> x^exp, as a matrix column per basis power
inline std::vector<std::vector<Rat>> power_map_matrix(const RatPoly& minpoly, uint32_t exp) {
  size_t deg = minpoly.c.size() - 1;
  RatPoly xe;  // x^exp mod minpoly
  xe.c.assign(exp + 1, Rat(0));
  xe.c[exp] = 1;
  xe = rat_rem(xe, minpoly);
  std::vector<std::vector<Rat>> cols(deg);
  RatPoly acc{{Rat(1)}};
  for (size_t k = 0; k < deg; ++k) {
    cols[k].assign(deg, Rat(0));
    for (size_t i = 0; i < acc.c.size(); ++i) cols[k][i] = acc.c[i];
    acc = rat_rem(rat_mul(acc, xe), minpoly);
  }
  return cols;
}

}  // namespace detail

inline DescPtr make_rationals() {
  auto d = std::make_shared<FieldDescriptor>();
  d->kind = FieldKind::Rationals;
  d->name = "Q";
  d->minpoly.c = {Rat(0), Rat(1)};  // x
  return d;
}

inline DescPtr make_prime_field(uint32_t p) {
  if (!is_prime(p)) fail(Errc::FormatError, "Fp:" + std::to_string(p) + " needs a prime p");
  auto d = std::make_shared<FieldDescriptor>();
  d->kind = FieldKind::PrimeField;
  d->name = "Fp:" + std::to_string(p);
  d->p = p;
  return d;
}

inline DescPtr make_ext_field(uint32_t p, FpPoly modulus) {
  if (!is_prime(p)) fail(Errc::FormatError, "extension field characteristic must be prime");
  modulus.p = p;
  modulus = fp_trim(modulus);
  int s = fp_deg(modulus);
  if (s < 2) fail(Errc::FormatError, "extension modulus must have degree >= 2");
  if (modulus.c.back() != 1) fail(Errc::FormatError, "extension modulus must be monic");
  if (!fp_irreducible(modulus)) fail(Errc::FormatError, "modulus " + fp_poly_str(modulus) + " is reducible over F_" + std::to_string(p));
  uint64_t q = 1;
  for (int i = 0; i < s; ++i) q *= p;
  auto d = std::make_shared<FieldDescriptor>();
  d->kind = FieldKind::ExtField;
  d->name = "Fq:" + std::to_string(q) + ":" + fp_poly_str(modulus);
  d->p = p;
  d->modulus = std::move(modulus);
  return d;
}

inline DescPtr make_number_field(const std::string& name, RatPoly minpoly, uint32_t cyclo_m = 0) {
  minpoly = rat_trim(minpoly);
  if (rat_deg(minpoly) < 1) fail(Errc::FormatError, "minimal polynomial must be nonconstant");
  if (minpoly.c.back() != 1) fail(Errc::FormatError, "minimal polynomial must be monic");
  // Rational-root test catches reducibility for the shipped quadratic presets;
  // cyclotomic polynomials are irreducible over Q by the classical theorem.
  if (rat_deg(minpoly) == 2 && cyclo_m == 0) {
    const Rat& c0 = minpoly.c[0];
    if (numerator(c0) != 0) {
      Int n = numerator(c0) < 0 ? Int(-numerator(c0)) : numerator(c0);
      for (Int r = 1; r * r <= n; ++r) {
        if (n % r == 0) {
          for (const Int& cand : {Int(r), Int(n / r)}) {
            for (int sgn : {1, -1}) {
              Rat root(sgn * cand, denominator(c0) == 1 ? Int(1) : denominator(c0));
              Rat val = minpoly.c[0] + minpoly.c[1] * root + root * root;
              if (val == 0) fail(Errc::FormatError, "minimal polynomial has a rational root");
            }
          }
        }
      }
    }
  }
  auto d = std::make_shared<FieldDescriptor>();
  d->kind = FieldKind::NumberField;
  d->name = name;
  d->minpoly = std::move(minpoly);
  d->cyclotomic_m = cyclo_m;
  return d;
}

inline DescPtr make_cyclotomic(uint32_t m) {
  if (m < 1) fail(Errc::FormatError, "cyclotomic index must be >= 1");
  RatPoly phi = cyclotomic_poly(m);
  if (rat_deg(phi) == 1) {
    // Q(zeta_1) = Q(zeta_2) = Q, but keep the named descriptor so the
    // generator (1 or -1) is still available through the generic path.
    auto d = std::make_shared<FieldDescriptor>();
    d->kind = FieldKind::NumberField;
    d->name = "Q(zeta:" + std::to_string(m) + ")";
    d->minpoly = phi;
    d->cyclotomic_m = m;
    return d;
  }
  return make_number_field("Q(zeta:" + std::to_string(m) + ")", phi, m);
}

inline DescPtr make_quaternion(const DescPtr& base) {
  if (!base || (base->kind != FieldKind::Rationals && base->kind != FieldKind::NumberField))
    fail(Errc::FormatError, "quaternion base must be Q or a number field");
  auto d = std::make_shared<FieldDescriptor>();
  d->kind = FieldKind::Quaternion;
  d->name = "H:" + base->name;
  d->base = base;
  return d;
}

inline DescPtr make_quaternion_pair(uint32_t m) {
  if (m < 3) fail(Errc::FormatError, "quaternion pair base needs a cyclotomic index >= 3");
  DescPtr base = make_cyclotomic(m);
  auto d = std::make_shared<FieldDescriptor>();
  d->kind = FieldKind::QuaternionPair;
  d->name = "Hpair:Q(zeta:" + std::to_string(m) + ")";
  d->base = base;
  d->twist_exp = m - 1;  // complex conjugation zeta -> zeta^{-1}
  d->twist1 = detail::power_map_matrix(base->minpoly, d->twist_exp);
  return d;
}

// Lam's 36-dimensional rational division algebra: Q(zeta21) plus b with
// b^3 = zeta^7 and b c = sigma(c) b, sigma(zeta) = zeta^16. zeta^7 is fixed
// by sigma, so b^3 is central.
inline DescPtr make_lam36() {
  DescPtr base = make_cyclotomic(21);
  auto d = std::make_shared<FieldDescriptor>();
  d->kind = FieldKind::CyclicAlgebra;
  d->name = "Lam36";
  d->base = base;
  d->twist_exp = 16;
  d->bcube_exp = 7;
  d->twist1 = detail::power_map_matrix(base->minpoly, 16);
  d->twist2 = detail::power_map_matrix(base->minpoly, (16u * 16u) % 21u);
  return d;
}

// Named presets: "Fp:5", "Fq:9:x^2+1", "Q", "Q(sqrt2)", "Q(sqrt5)",
// "Q(zeta:21)", "H:Q", "H:Q(sqrt2)", "H:Q(sqrt5)", "Hpair:Q(zeta:6)", "Lam36".
inline DescPtr descriptor_from_name(const std::string& name) {
  auto starts = [&](const std::string& pre) { return name.rfind(pre, 0) == 0; };
  if (name == "Q") return make_rationals();
  if (name == "Lam36") return make_lam36();
  if (name == "Q(sqrt2)")
    return make_number_field("Q(sqrt2)", RatPoly{{Rat(-2), Rat(0), Rat(1)}});
  if (name == "Q(sqrt5)")
    return make_number_field("Q(sqrt5)", RatPoly{{Rat(-5), Rat(0), Rat(1)}});
  if (starts("Q(zeta:")) {
    if (name.back() != ')') fail(Errc::UnknownPreset, name);
    uint32_t m = 0;
    try {
      m = static_cast<uint32_t>(std::stoul(name.substr(7, name.size() - 8)));
    } catch (const std::exception&) {
      fail(Errc::UnknownPreset, name);
    }
    return make_cyclotomic(m);
  }
  if (starts("Fp:")) {
    uint32_t p = 0;
    try {
      p = static_cast<uint32_t>(std::stoul(name.substr(3)));
    } catch (const std::exception&) {
      fail(Errc::UnknownPreset, name);
    }
    return make_prime_field(p);
  }
  if (starts("Fq:")) {
    auto second = name.find(':', 3);
    if (second == std::string::npos) fail(Errc::UnknownPreset, name);
    uint64_t q = 0;
    try {
      q = std::stoull(name.substr(3, second - 3));
    } catch (const std::exception&) {
      fail(Errc::UnknownPreset, name);
    }
    uint32_t p = 0;
    for (uint32_t c = 2; c <= q; ++c) {
      if (q % c == 0) {
        p = c;
        break;
      }
    }
    if (p == 0) fail(Errc::UnknownPreset, name);
    uint64_t qq = q;
    int s = 0;
    while (qq % p == 0) {
      qq /= p;
      ++s;
    }
    if (qq != 1) fail(Errc::FormatError, "Fq size must be a prime power: " + name);
    FpPoly mod = fp_poly_parse(name.substr(second + 1), p);
    if (fp_deg(mod) != s) fail(Errc::FormatError, "modulus degree does not match field size: " + name);
    return make_ext_field(p, mod);
  }
  if (starts("H:")) return make_quaternion(descriptor_from_name(name.substr(2)));
  if (starts("Hpair:Q(zeta:")) {
    if (name.back() != ')') fail(Errc::UnknownPreset, name);
    uint32_t m = 0;
    try {
      m = static_cast<uint32_t>(std::stoul(name.substr(13, name.size() - 14)));
    } catch (const std::exception&) {
      fail(Errc::UnknownPreset, name);
    }
    return make_quaternion_pair(m);
  }
  fail(Errc::UnknownPreset, name);
}

inline uint64_t field_size(const FieldDescriptor& d) {
  if (d.kind == FieldKind::PrimeField) return d.p;
  if (d.kind == FieldKind::ExtField) {
    uint64_t q = 1;
    for (int i = 0; i < fp_deg(d.modulus); ++i) q *= d.p;
    return q;
  }
  return 0;  // infinite
}

}  // namespace tdembed
