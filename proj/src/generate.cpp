#include "imprand/generate.hpp"

namespace imprand {

std::uint64_t SeededSampler::below(std::uint64_t bound) {
  if (bound == 0) fail(ErrorKind::domain, "empty sampling range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t u = next();
  while (u >= limit) u = next();
  return u % bound;
}

long SeededSampler::between(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(below(span));
}

bool SeededSampler::bernoulli(const Rational& p) {
  const std::uint64_t u = next();
  const mpz_class& num = p.raw().get_num();
  const mpz_class& den = p.raw().get_den();
  if (p.sign() <= 0) return false;
  if (p >= Rational(1)) return true;
  if (mpz_sizeinbase(den.get_mpz_t(), 2) <= 64) {
    const unsigned __int128 lhs = static_cast<unsigned __int128>(u) * mpz_get_ui(den.get_mpz_t());
    const unsigned __int128 rhs = static_cast<unsigned __int128>(mpz_get_ui(num.get_mpz_t())) << 64;
    return lhs < rhs;
  }
  mpz_class lhs;
  mpz_import(lhs.get_mpz_t(), 1, 1, sizeof u, 0, 0, &u);
  lhs *= den;
  mpz_class rhs = num;
  rhs <<= 64;
  return lhs < rhs;
}

PathPrefix sample_path(const ForecastSystem& forecast, std::size_t n, std::uint64_t seed) {
  SeededSampler sampler(seed);
  std::string bits;
  bits.reserve(n);
  const bool stationary = forecast.stationary();
  std::optional<IntervalForecast> fixed;
  if (stationary) fixed = forecast.at(SituationView());
  for (std::size_t k = 0; k < n; ++k) {
    const IntervalForecast i = stationary ? *fixed : eval_forecast(forecast, SituationView(bits));
    if (!i.is_precise())
      fail(ErrorKind::semantics, "cannot sample from the imprecise forecast " + i.str() + " at situation '" + bits +
                                     "'; choose a compatible precise system");
    bits.push_back(sampler.bernoulli(i.lower()) ? '1' : '0');
  }
  return PathPrefix(std::move(bits));
}

CanonicalPath canonical_path_from_string(const std::string& name) {
  if (name == "alternating") return CanonicalPath::alternating;
  if (name == "all_zero") return CanonicalPath::all_zero;
  if (name == "all_one") return CanonicalPath::all_one;
  fail(ErrorKind::parse, "unknown canonical path '" + name + "'");
}

PathPrefix canonical_path(CanonicalPath kind, std::size_t n) {
  std::string bits(n, '0');
  for (std::size_t k = 0; k < n; ++k) {
    if (kind == CanonicalPath::all_one || (kind == CanonicalPath::alternating && k % 2 == 1)) bits[k] = '1';
  }
  return PathPrefix(std::move(bits));
}

}  // namespace imprand
