#ifndef LHSBA_NORMAL_HPP
#define LHSBA_NORMAL_HPP

namespace lhsba {

// Standard normal CDF, Phi(z) = erfc(-z / sqrt 2) / 2.
double normal_cdf(double z) noexcept;

// Standard normal quantile. Acklam's rational approximation followed by one
// Halley step against normal_cdf; |Phi(result) - p| <= 1e-9 on (0, 1).
// Throws DomainError unless 0 < p < 1.
double inverse_normal_cdf(double p);

}  // namespace lhsba

#endif  // LHSBA_NORMAL_HPP
