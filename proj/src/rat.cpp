#include "opf/rat.hpp"

#include <cctype>

#include "opf/error.hpp"

namespace opf {

std::string_view errorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::TruncationTooLow: return "TruncationTooLow";
    case ErrorCode::UnsupportedParams: return "UnsupportedParams";
    case ErrorCode::ZeroMu: return "ZeroMu";
    case ErrorCode::NonpositiveLambda: return "NonpositiveLambda";
    case ErrorCode::DegenerateQ: return "DegenerateQ";
    case ErrorCode::InvalidCofactor: return "InvalidCofactor";
    case ErrorCode::PoleAtPoint: return "PoleAtPoint";
    case ErrorCode::TrajectoryLeftDomain: return "TrajectoryLeftDomain";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::SeriesInconclusive: return "SeriesInconclusive";
    case ErrorCode::RuleUndecided: return "RuleUndecided";
    case ErrorCode::NotACriticalPoint: return "NotACriticalPoint";
    case ErrorCode::NonIsolatedCritSet: return "NonIsolatedCritSet";
    case ErrorCode::IdenticallyZero: return "IdenticallyZero";
    case ErrorCode::DegenerateC2: return "DegenerateC2";
    case ErrorCode::NotHypergeometric: return "NotHypergeometric";
    case ErrorCode::SingularSamplePoint: return "SingularSamplePoint";
    case ErrorCode::SingularAtPMOne: return "SingularAtPMOne";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Rat::Rat(long num, long den) {
  if (den == 0) throw Error(ErrorCode::PreconditionViolated, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::PreconditionViolated, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.isZero()) throw Error(ErrorCode::PreconditionViolated, "division by zero rational");
  q_ /= o.q_;
  return *this;
}

Rat Rat::pow(int e) const {
  if (e < 0) return Rat(1) / pow(-e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rat(n, d);
}

std::optional<Rat> Rat::sqrtExact() const {
  if (sign() < 0) return std::nullopt;
  const mpz_class n = num();
  const mpz_class d = den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  return Rat(mpz_class(sqrt(n)), mpz_class(sqrt(d)));
}

std::string Rat::toString() const {
  if (isInteger()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

namespace {

bool allDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");

  bool negative = false;
  std::string_view body = s;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rat value;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto n = body.substr(0, slash);
    const auto d = body.substr(slash + 1);
    if (!allDigits(n) || !allDigits(d)) throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
    const mpz_class den(std::string(d), 10);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    value = Rat(mpz_class(std::string(n), 10), den);
  } else {
    // decimal with optional exponent, converted exactly
    std::string_view mant = body;
    long exponent = 0;
    if (const auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      mant = body.substr(0, e);
      auto ex = body.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!allDigits(ex)) throw Error(ErrorCode::ParseError, "bad exponent in '" + s + "'");
      exponent = std::stol(std::string(ex)) * (eneg ? -1 : 1);
    }
    std::string digits;
    if (const auto dot = mant.find('.'); dot != std::string_view::npos) {
      const auto ip = mant.substr(0, dot);
      const auto fp = mant.substr(dot + 1);
      if ((!ip.empty() && !allDigits(ip)) || (!fp.empty() && !allDigits(fp)) || (ip.empty() && fp.empty()))
        throw Error(ErrorCode::ParseError, "bad decimal '" + s + "'");
      digits = std::string(ip) + std::string(fp);
      exponent -= static_cast<long>(fp.size());
    } else {
      if (!allDigits(mant)) throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
      digits = std::string(mant);
    }
    value = Rat(mpz_class(digits, 10), mpz_class(1)) * Rat(10).pow(static_cast<int>(exponent));
  }
  return negative ? -value : value;
}

}  // namespace opf
