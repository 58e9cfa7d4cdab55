#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "corput/errors.hpp"
#include "corput/rational.hpp"

namespace corput {

namespace detail {

inline double poly_eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

inline std::vector<double> poly_derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * double(k));
    return d;
}

inline std::vector<double> poly_trim(std::vector<double> c) {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    return c;
}

// Roots in the open unit interval via recursive critical-point isolation.
// Between consecutive critical points the polynomial is monotone, so each
// cell holds at most one sign change and bisection pins it down.
inline void poly_roots01(const std::vector<double>& c_in, std::vector<double>& out) {
    const std::vector<double> c = poly_trim(c_in);
    if (c.size() <= 1) return;
    if (c.size() == 2) {
        const double r = -c[0] / c[1];
        if (r > 0.0 && r < 1.0) out.push_back(r);
        return;
    }
    std::vector<double> nodes{0.0, 1.0};
    poly_roots01(poly_derivative(c), nodes);
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        double a = nodes[i], b = nodes[i + 1];
        double fa = poly_eval(c, a);
        double fb = poly_eval(c, b);
        if (fa == 0.0) {
            if (a > 0.0) out.push_back(a);
            continue;
        }
        if (fa * fb >= 0.0) continue;
        for (int it = 0; it < 120; ++it) {
            const double mid = 0.5 * (a + b);
            const double fm = poly_eval(c, mid);
            if (fm == 0.0) {
                a = b = mid;
                break;
            }
            if ((fa < 0.0) == (fm < 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        out.push_back(0.5 * (a + b));
    }
}

// Integral of |polynomial| over [0,1]: split at interior roots, then sum
// absolute antiderivative differences.
inline double poly_integral01_abs(const std::vector<double>& c_in) {
    const std::vector<double> c = poly_trim(c_in);
    if (c.empty()) return 0.0;
    std::vector<double> anti(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) anti[k + 1] = c[k] / double(k + 1);
    std::vector<double> nodes{0.0, 1.0};
    poly_roots01(c, nodes);
    std::sort(nodes.begin(), nodes.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        total += std::fabs(poly_eval(anti, nodes[i + 1]) - poly_eval(anti, nodes[i]));
    return total;
}

inline std::vector<std::string> split_fields(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = s.find(',', start);
        if (comma == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, comma - start));
        start = comma + 1;
    }
}

inline double parse_real_field(const std::string& token) {
    if (token.empty()) throw ValidationError("empty number in integrand descriptor");
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size())
        throw ValidationError("could not parse number in integrand descriptor: " + token);
    return v;
}

} // namespace detail

// Test integrands addressable from the command line. Grammar:
//   poly:c0,c1,...      sum c_k x^k, coefficients rational or decimal
//   trig:sin|cos,k,amp  amp sin(2 pi k x) or amp cos(2 pi k x), k a positive integer
//   exp:a               e^{a x}
// Polynomials carry exact rational closed forms; the others use doubles with
// hand-derived constants (no quadrature anywhere in the library paths).
class Integrand {
public:
    enum class Kind { poly, trig_sin, trig_cos, expo };

    static Integrand parse(std::string_view descriptor) {
        Integrand f;
        f.id_.assign(descriptor);
        const std::size_t colon = descriptor.find(':');
        if (colon == std::string_view::npos)
            throw ValidationError("integrand descriptor must look like kind:args");
        const std::string_view kind = descriptor.substr(0, colon);
        const auto fields = detail::split_fields(descriptor.substr(colon + 1));
        if (kind == "poly") {
            f.kind_ = Kind::poly;
            if (fields.size() == 1 && fields[0].empty())
                throw ValidationError("polynomial descriptor needs at least one coefficient");
            for (const auto& tok : fields) {
                f.coeffs_.push_back(parse_rational(tok));
                f.coeffs_d_.push_back(to_double(f.coeffs_.back()));
            }
        } else if (kind == "trig") {
            if (fields.size() != 3)
                throw ValidationError("trig descriptor must be trig:sin|cos,k,amp");
            if (fields[0] == "sin")
                f.kind_ = Kind::trig_sin;
            else if (fields[0] == "cos")
                f.kind_ = Kind::trig_cos;
            else
                throw ValidationError("trig descriptor must be trig:sin|cos,k,amp");
            char* end = nullptr;
            const unsigned long k = std::strtoul(fields[1].c_str(), &end, 10);
            if (fields[1].empty() || fields[1][0] == '-' || fields[1][0] == '+' ||
                end != fields[1].c_str() + fields[1].size() || k == 0 ||
                k > 1000000ul)
                throw ValidationError("trig frequency must be a positive integer");
            f.freq_ = static_cast<unsigned>(k);
            f.amp_ = detail::parse_real_field(fields[2]);
        } else if (kind == "exp") {
            if (fields.size() != 1)
                throw ValidationError("exponential descriptor must be exp:a");
            f.kind_ = Kind::expo;
            f.a_ = detail::parse_real_field(fields[0]);
        } else {
            throw ValidationError("unknown integrand kind: " + std::string(kind));
        }
        return f;
    }

    const std::string& id() const { return id_; }
    Kind kind() const { return kind_; }
    bool exact() const { return kind_ == Kind::poly; }

    double operator()(double x) const {
        switch (kind_) {
            case Kind::poly: return detail::poly_eval(coeffs_d_, x);
            case Kind::trig_sin: return amp_ * std::sin(two_pi_k() * x);
            case Kind::trig_cos: return amp_ * std::cos(two_pi_k() * x);
            case Kind::expo: return std::exp(a_ * x);
        }
        return 0.0;
    }

    double integral01() const {
        switch (kind_) {
            case Kind::poly: return to_double(integral01_exact());
            case Kind::trig_sin:
            case Kind::trig_cos: return 0.0; // whole periods over [0,1]
            case Kind::expo: return a_ == 0.0 ? 1.0 : std::expm1(a_) / a_;
        }
        return 0.0;
    }

    double at0() const {
        switch (kind_) {
            case Kind::poly: return coeffs_d_.empty() ? 0.0 : coeffs_d_[0];
            case Kind::trig_sin: return 0.0;
            case Kind::trig_cos: return amp_;
            case Kind::expo: return 1.0;
        }
        return 0.0;
    }

    double at1() const {
        switch (kind_) {
            case Kind::poly: return to_double(at1_exact());
            case Kind::trig_sin: return 0.0; // sin(2 pi k) exactly
            case Kind::trig_cos: return amp_;
            case Kind::expo: return std::exp(a_);
        }
        return 0.0;
    }

    // L1 norm of the second derivative over [0,1].
    double second_derivative_l1() const {
        switch (kind_) {
            case Kind::poly: {
                std::vector<double> dd = detail::poly_derivative(
                    detail::poly_derivative(coeffs_d_));
                return detail::poly_integral01_abs(dd);
            }
            case Kind::trig_sin:
            case Kind::trig_cos: {
                // |amp| (2 pi k)^2 integral |sin| = |amp| (2 pi k)^2 (2/pi)
                const double w = two_pi_k();
                return std::fabs(amp_) * w * w * (2.0 / pi());
            }
            case Kind::expo: return std::fabs(a_ * std::expm1(a_));
        }
        return 0.0;
    }

    // Total variation on [0,1], i.e. the L1 norm of the first derivative.
    double total_variation() const {
        switch (kind_) {
            case Kind::poly:
                return detail::poly_integral01_abs(detail::poly_derivative(coeffs_d_));
            case Kind::trig_sin:
            case Kind::trig_cos: return 4.0 * double(freq_) * std::fabs(amp_);
            case Kind::expo: return std::fabs(std::expm1(a_));
        }
        return 0.0;
    }

    const std::vector<Rational>& coefficients() const {
        require_exact();
        return coeffs_;
    }

    Rational eval_exact(const Rational& x) const {
        require_exact();
        Rational v(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) v = v * x + coeffs_[i];
        return v;
    }

    Rational integral01_exact() const {
        require_exact();
        Rational v(0);
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            v += coeffs_[k] / BigInt(k + 1);
        return v;
    }

    Rational at0_exact() const {
        require_exact();
        return coeffs_.empty() ? Rational(0) : coeffs_[0];
    }

    Rational at1_exact() const {
        require_exact();
        Rational v(0);
        for (const auto& c : coeffs_) v += c;
        return v;
    }

private:
    static double pi() { return 3.141592653589793238462643383279503; }
    double two_pi_k() const { return 2.0 * pi() * double(freq_); }
    void require_exact() const {
        if (kind_ != Kind::poly)
            throw InvariantError("exact accessors need a polynomial integrand");
    }

    std::string id_;
    Kind kind_ = Kind::poly;
    std::vector<Rational> coeffs_;
    std::vector<double> coeffs_d_;
    unsigned freq_ = 1;
    double amp_ = 1.0;
    double a_ = 1.0;
};

} // namespace corput
