#include "fmlab/rational.hpp"

#include <stdexcept>

namespace fmlab {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    bool neg = !digits.empty() && digits[0] == '-';
    std::size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0) return Rational(BigInt(text.substr(0, dot)));
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    BigInt num(digits);
    (void)neg;
    return Rational(num, den);
}

BigInt rational_floor(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && q * denominator(r) != numerator(r)) q -= 1;
    return q;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

}  // namespace fmlab
