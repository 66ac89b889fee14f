#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ldpcgm {

/// Dense polynomial with arbitrary-precision integer coefficients.
/// coefficient i multiplies x^i; trailing zeros are always trimmed.
class ExactPolynomial {
public:
    ExactPolynomial() = default;
    explicit ExactPolynomial(std::vector<mpz_class> coeffs);

    static ExactPolynomial monomial(std::size_t power, const mpz_class& value = 1);

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    std::span<const mpz_class> coefficients() const { return coeffs_; }

    /// Coefficient of x^power, 0 beyond the degree.
    mpz_class coefficient(long power) const;

    /// Product truncated to powers <= max_degree.
    ExactPolynomial multiply_truncated(const ExactPolynomial& other, long max_degree) const;

    /// this^exponent truncated to powers <= max_degree (binary exponentiation).
    ExactPolynomial pow_truncated(unsigned long exponent, long max_degree) const;

    std::string to_string() const;

    friend ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b);
    friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b);
    friend bool operator==(const ExactPolynomial& a, const ExactPolynomial& b);

private:
    void trim();
    std::vector<mpz_class> coeffs_;
};

/// ((1+x)^d - (1-x)^d)/2: odd binomial terms only.
ExactPolynomial f_minus(int d);

/// ((1+x)^d + (1-x)^d)/2: even binomial terms only.
ExactPolynomial f_plus(int d);

/// Coefficient of x^a; 0 when a exceeds the degree.
mpz_class coef(const ExactPolynomial& p, long a);

mpz_class binomial(long n, long k);

}  // namespace ldpcgm
