#include "growth/rational.hpp"

#include <cmath>
#include <cstdlib>

#include "growth/errors.hpp"

namespace growth {

Rational parse_rational(std::string_view text) {
    if (text.empty()) {
        throw InvalidPresentation("empty rational literal");
    }
    const std::string s(text);
    // Accept only [-]digits[/digits]; mpq_set_str is laxer than we want.
    std::size_t slash = s.find('/');
    auto digits_ok = [](std::string_view part, bool allow_sign) {
        if (part.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') return false;
        }
        return true;
    };
    const std::string_view sv(s);
    bool ok = slash == std::string::npos
                  ? digits_ok(sv, true)
                  : digits_ok(sv.substr(0, slash), true) && digits_ok(sv.substr(slash + 1), false);
    if (!ok) {
        throw InvalidPresentation("malformed rational literal '" + s + "'");
    }
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) {
        throw InvalidPresentation("malformed rational literal '" + s + "'");
    }
    if (q.get_den() == 0) {
        throw InvalidPresentation("zero denominator in '" + s + "'");
    }
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

double rational_log(const Rational& q) {
    if (q <= 0) {
        throw InvalidPresentation("rational_log requires a positive argument");
    }
    long num_exp = 0;
    long den_exp = 0;
    double num_m = mpz_get_d_2exp(&num_exp, q.get_num().get_mpz_t());
    double den_m = mpz_get_d_2exp(&den_exp, q.get_den().get_mpz_t());
    constexpr double ln2 = 0.6931471805599453;
    return std::log(num_m) - std::log(den_m) + static_cast<double>(num_exp - den_exp) * ln2;
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt factorial_odd_double(unsigned long n) {
    BigInt r = 1;
    for (unsigned long i = 1; i <= n; ++i) {
        r *= 2 * i - 1;
    }
    return r;
}

}  // namespace growth
