#include "ldpcgm/polynomial.hpp"

#include "ldpcgm/errors.hpp"

#include <algorithm>
#include <sstream>

namespace ldpcgm {

ExactPolynomial::ExactPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

ExactPolynomial ExactPolynomial::monomial(std::size_t power, const mpz_class& value) {
    std::vector<mpz_class> c(power + 1);
    c[power] = value;
    return ExactPolynomial(std::move(c));
}

void ExactPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class ExactPolynomial::coefficient(long power) const {
    if (power < 0 || power > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(power)];
}

ExactPolynomial ExactPolynomial::multiply_truncated(const ExactPolynomial& other,
                                                    long max_degree) const {
    if (is_zero() || other.is_zero() || max_degree < 0) return {};
    const long top = std::min(degree() + other.degree(), max_degree);
    std::vector<mpz_class> out(static_cast<std::size_t>(top + 1));
    for (long i = 0; i <= degree() && i <= top; ++i) {
        const mpz_class& a = coeffs_[i];
        if (a == 0) continue;
        const long jmax = std::min(other.degree(), top - i);
        for (long j = 0; j <= jmax; ++j) {
            const mpz_class& b = other.coeffs_[j];
            if (b != 0) mpz_addmul(out[i + j].get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        }
    }
    return ExactPolynomial(std::move(out));
}

ExactPolynomial ExactPolynomial::pow_truncated(unsigned long exponent, long max_degree) const {
    ExactPolynomial result = monomial(0);
    ExactPolynomial base = multiply_truncated(monomial(0), max_degree);
    while (exponent > 0) {
        if (exponent & 1UL) result = result.multiply_truncated(base, max_degree);
        exponent >>= 1;
        if (exponent > 0) base = base.multiply_truncated(base, max_degree);
    }
    return result;
}

std::string ExactPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << coeffs_[i].get_str();
        if (i == 1) os << "*x";
        if (i > 1) os << "*x^" << i;
    }
    return os.str();
}

ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b) {
    std::vector<mpz_class> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return ExactPolynomial(std::move(out));
}

ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
    return a.multiply_truncated(b, a.degree() + b.degree());
}

bool operator==(const ExactPolynomial& a, const ExactPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
}

namespace {

ExactPolynomial half_binomial(int d, int parity) {
    if (d < 1) throw ValidationError("degree d must be >= 1");
    std::vector<mpz_class> c(static_cast<std::size_t>(d) + 1);
    for (int i = parity; i <= d; i += 2) c[i] = binomial(d, i);
    return ExactPolynomial(std::move(c));
}

}  // namespace

ExactPolynomial f_minus(int d) { return half_binomial(d, 1); }
ExactPolynomial f_plus(int d) { return half_binomial(d, 0); }

mpz_class coef(const ExactPolynomial& p, long a) {
    if (a < 0) throw ValidationError("coefficient index must be >= 0");
    return p.coefficient(a);
}

mpz_class binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

}  // namespace ldpcgm
