#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opf/rat.hpp"
#include "opf/unipoly.hpp"

namespace opf::families {

enum class FamilyId { Jacobi, Legendre, ChebyshevT, ChebyshevU, Gegenbauer, LaguerreAssoc, Laguerre, Hermite };

inline constexpr FamilyId kAllFamilies[] = {FamilyId::Jacobi,        FamilyId::Legendre, FamilyId::ChebyshevT,
                                            FamilyId::ChebyshevU,    FamilyId::Gegenbauer, FamilyId::LaguerreAssoc,
                                            FamilyId::Laguerre,      FamilyId::Hermite};

std::string_view familyName(FamilyId id);
/// Case-insensitive; accepts the names printed by familyName plus short aliases
/// ("chebyshev-t", "laguerre-assoc", ...).
std::optional<FamilyId> parseFamily(std::string_view name);

/// Orthogonality interval endpoint; nullopt stands for infinity with the given sign.
struct Endpoint {
  std::optional<Rat> value;
  int infinitySign = 0;
  std::string toString() const;
};

struct FamilyParams {
  std::optional<Rat> alpha;
  std::optional<Rat> beta;
};

/// One row of the hypergeometric table: rho y'' + tau y' + lambda_n y = 0.
struct FamilySpec {
  FamilyId id;
  UniPoly rho;
  UniPoly tau;
  FamilyParams params;
  Endpoint lower, upper;
  /// Closed form of lambda_n as printed for the row.
  std::string lambdaRule;

  bool usesAlpha() const;
  bool usesBeta() const;
};

/// Builds the row for `id`, validating the classical parameter constraints
/// (Jacobi alpha, beta > -1; Gegenbauer alpha > -1/2; associated Laguerre alpha > -1).
/// Unused parameters are ignored; missing required ones default to 0.
FamilySpec makeFamily(FamilyId id, FamilyParams params = {});

/// lambda_n = -n (tau' + (n-1)/2 rho'').
Rat lambdaN(const FamilySpec& spec, int n);

/// lambda_n from the row's closed form (independent of the derivative formula).
Rat tableLambda(const FamilySpec& spec, int n);

struct OrthoPoly {
  FamilySpec family;
  int n = 0;
  UniPoly poly;
  UniPoly derivative;
};

/// P_n in the standard normalization, generated by the three-term recurrence.
OrthoPoly polyOf(const FamilySpec& spec, int n);

/// rho P_n'' + tau P_n' + lambda_n P_n; identically zero for a valid OrthoPoly.
UniPoly odeResidual(const OrthoPoly& p);

/// Registry of all eight rows at the given parameters.
std::vector<FamilySpec> registry(FamilyParams params = {});

}  // namespace opf::families
