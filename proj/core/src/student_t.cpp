#include "eprstat/student_t.hpp"

#include <cmath>
#include <limits>

#include "eprstat/error.hpp"

namespace eprstat {

namespace {

// Continued fraction for I_x(a,b) (Numerical Recipes' betacf, modified
// Lentz). Converges fast for x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x)
{
    constexpr int max_iter = 10000;
    constexpr double eps = 1e-16;
    constexpr double tiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) {
        d = tiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < eps) {
            return h;
        }
    }
    throw InvariantViolation("incomplete beta continued fraction did not converge");
}

// I_x(a,b) given both x and y = 1 - x, so callers can supply whichever
// side they computed without cancellation.
double incomplete_beta(double a, double b, double x, double y)
{
    if (x <= 0.0) {
        return 0.0;
    }
    if (y <= 0.0) {
        return 1.0;
    }
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(y);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

// P(T <= -|t|): the lower tail mass, always <= 1/2.
double lower_tail(double t, double dof)
{
    const double t2 = t * t;
    const double x = dof / (dof + t2);
    const double y = t2 / (dof + t2);
    return 0.5 * incomplete_beta(0.5 * dof, 0.5, x, y);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x)
{
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "incomplete beta needs a, b > 0 and x in [0, 1]");
    }
    return incomplete_beta(a, b, x, 1.0 - x);
}

double student_t_cdf(double t, double dof)
{
    if (!(dof > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "t distribution needs positive degrees of freedom");
    }
    if (std::isnan(t)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (std::isinf(t)) {
        return t > 0 ? 1.0 : 0.0;
    }
    const double tail = lower_tail(t, dof);
    return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_sf(double t, double dof)
{
    return student_t_cdf(-t, dof);
}

}  // namespace eprstat
