#include "opf/families.hpp"

#include <algorithm>
#include <cctype>

#include "opf/error.hpp"

namespace opf::families {

namespace {

std::string lower(std::string_view s) {
  std::string r;
  for (char c : s)
    if (c != '-' && c != '_' && c != ' ') r.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return r;
}

UniPoly lin(const Rat& c0, const Rat& c1) { return UniPoly{c0, c1}; }

const UniPoly kOneMinusX2{Rat(1), Rat(0), Rat(-1)};

}  // namespace

std::string_view familyName(FamilyId id) {
  switch (id) {
    case FamilyId::Jacobi: return "jacobi";
    case FamilyId::Legendre: return "legendre";
    case FamilyId::ChebyshevT: return "chebyshev-t";
    case FamilyId::ChebyshevU: return "chebyshev-u";
    case FamilyId::Gegenbauer: return "gegenbauer";
    case FamilyId::LaguerreAssoc: return "laguerre-assoc";
    case FamilyId::Laguerre: return "laguerre";
    case FamilyId::Hermite: return "hermite";
  }
  return "unknown";
}

std::optional<FamilyId> parseFamily(std::string_view name) {
  const std::string key = lower(name);
  for (FamilyId id : kAllFamilies)
    if (lower(familyName(id)) == key) return id;
  if (key == "chebyshev" || key == "chebyshev1" || key == "t") return FamilyId::ChebyshevT;
  if (key == "chebyshev2" || key == "u") return FamilyId::ChebyshevU;
  if (key == "laguerreassociated" || key == "associatedlaguerre" || key == "laguerrealpha") return FamilyId::LaguerreAssoc;
  return std::nullopt;
}

std::string Endpoint::toString() const {
  if (value) return value->toString();
  return infinitySign < 0 ? "-inf" : "inf";
}

bool FamilySpec::usesAlpha() const {
  return id == FamilyId::Jacobi || id == FamilyId::Gegenbauer || id == FamilyId::LaguerreAssoc;
}

bool FamilySpec::usesBeta() const { return id == FamilyId::Jacobi; }

FamilySpec makeFamily(FamilyId id, FamilyParams params) {
  FamilySpec s{id, {}, {}, {}, {Rat(-1), 0}, {Rat(1), 0}, ""};
  const Rat alpha = params.alpha.value_or(Rat(0));
  const Rat beta = params.beta.value_or(Rat(0));
  switch (id) {
    case FamilyId::Jacobi:
      if (alpha <= Rat(-1) || beta <= Rat(-1))
        throw Error(ErrorCode::UnsupportedParams, "Jacobi needs alpha, beta > -1");
      s.rho = kOneMinusX2;
      s.tau = lin(beta - alpha, -(alpha + beta + Rat(2)));
      s.params = {alpha, beta};
      s.lambdaRule = "n(n+1+alpha+beta)";
      break;
    case FamilyId::Legendre:
      s.rho = kOneMinusX2;
      s.tau = lin(Rat(0), Rat(-2));
      s.lambdaRule = "n(n+1)";
      break;
    case FamilyId::ChebyshevT:
      s.rho = kOneMinusX2;
      s.tau = lin(Rat(0), Rat(-1));
      s.lambdaRule = "n^2";
      break;
    case FamilyId::ChebyshevU:
      s.rho = kOneMinusX2;
      s.tau = lin(Rat(0), Rat(-3));
      s.lambdaRule = "n(n+2)";
      break;
    case FamilyId::Gegenbauer:
      if (alpha <= Rat(-1, 2)) throw Error(ErrorCode::UnsupportedParams, "Gegenbauer needs alpha > -1/2");
      s.rho = kOneMinusX2;
      s.tau = lin(Rat(0), -(Rat(2) * alpha + Rat(1)));
      s.params = {alpha, std::nullopt};
      s.lambdaRule = "n(n+2alpha)";
      break;
    case FamilyId::LaguerreAssoc:
      if (alpha <= Rat(-1)) throw Error(ErrorCode::UnsupportedParams, "associated Laguerre needs alpha > -1");
      s.rho = UniPoly::x();
      s.tau = lin(alpha + Rat(1), Rat(-1));
      s.params = {alpha, std::nullopt};
      s.lower = {Rat(0), 0};
      s.upper = {std::nullopt, 1};
      s.lambdaRule = "n";
      break;
    case FamilyId::Laguerre:
      s.rho = UniPoly::x();
      s.tau = lin(Rat(1), Rat(-1));
      s.lower = {Rat(0), 0};
      s.upper = {std::nullopt, 1};
      s.lambdaRule = "n";
      break;
    case FamilyId::Hermite:
      s.rho = UniPoly::constant(Rat(1));
      s.tau = lin(Rat(0), Rat(-2));
      s.lower = {std::nullopt, -1};
      s.upper = {std::nullopt, 1};
      s.lambdaRule = "2n";
      break;
  }
  return s;
}

Rat lambdaN(const FamilySpec& spec, int n) {
  const Rat tauPrime = spec.tau.derivative().coeff(0);
  const Rat rhoSecond = spec.rho.derivative().derivative().coeff(0);
  return -Rat(n) * (tauPrime + Rat(n - 1, 2) * rhoSecond);
}

Rat tableLambda(const FamilySpec& spec, int n) {
  const Rat N(n);
  const Rat alpha = spec.params.alpha.value_or(Rat(0));
  const Rat beta = spec.params.beta.value_or(Rat(0));
  switch (spec.id) {
    case FamilyId::Jacobi: return N * (N + Rat(1) + alpha + beta);
    case FamilyId::Legendre: return N * (N + Rat(1));
    case FamilyId::ChebyshevT: return N * N;
    case FamilyId::ChebyshevU: return N * (N + Rat(2));
    // n(n+2alpha) is the eigenvalue that C_n^(alpha) actually satisfies
    case FamilyId::Gegenbauer: return N * (N + Rat(2) * alpha);
    case FamilyId::LaguerreAssoc:
    case FamilyId::Laguerre: return N;
    case FamilyId::Hermite: return Rat(2) * N;
  }
  return Rat(0);
}

namespace {

// Generic three-term recurrence a_k P_k = (b_k + c_k x) P_{k-1} - d_k P_{k-2}.
template <class Coeffs>
UniPoly recur(int n, const UniPoly& p0, const UniPoly& p1, Coeffs coeffs) {
  if (n == 0) return p0;
  UniPoly prev = p0, cur = p1;
  for (int k = 2; k <= n; ++k) {
    const auto [a, b, c, d] = coeffs(k);
    UniPoly next = (UniPoly{b, c} * cur - d * prev).scaled(Rat(1) / a);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

struct Step {
  Rat a, b, c, d;
};

UniPoly generate(const FamilySpec& s, int n) {
  const Rat alpha = s.params.alpha.value_or(Rat(0));
  const Rat beta = s.params.beta.value_or(Rat(0));
  const UniPoly one = UniPoly::constant(Rat(1));
  switch (s.id) {
    case FamilyId::Jacobi: {
      const UniPoly p1{(alpha - beta) / Rat(2), (alpha + beta + Rat(2)) / Rat(2)};
      return recur(n, one, p1, [&](int k) {
        const Rat K(k), ab = alpha + beta;
        const Rat s2 = Rat(2) * K + ab;
        return Step{Rat(2) * K * (K + ab) * (s2 - Rat(2)), (s2 - Rat(1)) * (alpha * alpha - beta * beta),
                    (s2 - Rat(1)) * s2 * (s2 - Rat(2)),
                    Rat(2) * (K + alpha - Rat(1)) * (K + beta - Rat(1)) * s2};
      });
    }
    case FamilyId::Legendre:
      return recur(n, one, UniPoly::x(),
                   [](int k) { return Step{Rat(k), Rat(0), Rat(2 * k - 1), Rat(k - 1)}; });
    case FamilyId::ChebyshevT:
      return recur(n, one, UniPoly::x(), [](int) { return Step{Rat(1), Rat(0), Rat(2), Rat(1)}; });
    case FamilyId::ChebyshevU:
      return recur(n, one, UniPoly{Rat(0), Rat(2)}, [](int) { return Step{Rat(1), Rat(0), Rat(2), Rat(1)}; });
    case FamilyId::Gegenbauer:
      if (alpha.isZero()) {
        // C_n^(0) vanishes identically for n >= 1; use the limit C_n^(a)/a = (2/n) T_n
        if (n == 0) return one;
        return generate(makeFamily(FamilyId::ChebyshevT), n).scaled(Rat(2, n));
      }
      return recur(n, one, UniPoly{Rat(0), Rat(2) * alpha}, [&](int k) {
        const Rat K(k);
        return Step{K, Rat(0), Rat(2) * (K + alpha - Rat(1)), K + Rat(2) * alpha - Rat(2)};
      });
    case FamilyId::LaguerreAssoc:
    case FamilyId::Laguerre: {
      const Rat a = s.id == FamilyId::Laguerre ? Rat(0) : alpha;
      return recur(n, one, UniPoly{Rat(1) + a, Rat(-1)}, [&](int k) {
        const Rat K(k);
        return Step{K, Rat(2) * K - Rat(1) + a, Rat(-1), K - Rat(1) + a};
      });
    }
    case FamilyId::Hermite:
      return recur(n, one, UniPoly{Rat(0), Rat(2)}, [](int k) { return Step{Rat(1), Rat(0), Rat(2), Rat(2 * (k - 1))}; });
  }
  return one;
}

}  // namespace

OrthoPoly polyOf(const FamilySpec& spec, int n) {
  if (n < 0) throw Error(ErrorCode::PreconditionViolated, "negative polynomial index");
  // re-validate: a hand-built spec could bypass makeFamily
  const FamilySpec checked = makeFamily(spec.id, spec.params);
  OrthoPoly p{checked, n, generate(checked, n), {}};
  p.derivative = p.poly.derivative();
  return p;
}

UniPoly odeResidual(const OrthoPoly& p) {
  const Rat lambda = lambdaN(p.family, p.n);
  return p.family.rho * p.derivative.derivative() + p.family.tau * p.derivative + p.poly.scaled(lambda);
}

std::vector<FamilySpec> registry(FamilyParams params) {
  std::vector<FamilySpec> out;
  for (FamilyId id : kAllFamilies) out.push_back(makeFamily(id, params));
  return out;
}

}  // namespace opf::families
