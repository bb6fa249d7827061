#include "eprstat/observables.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "eprstat/error.hpp"

namespace eprstat {

ZeroFluxPolicy ZeroFluxPolicy::smooth(double eps)
{
    if (!(eps > 0.0) || eps > 1e-3) {
        throw Error(ErrorCode::InvalidArgument, "smoothing epsilon must lie in (0, 1e-3]");
    }
    return {Mode::Smooth, eps};
}

ZeroFluxPolicy ZeroFluxPolicy::parse(const std::string& text)
{
    if (text == "skip") {
        return skip();
    }
    if (text == "strict") {
        return strict();
    }
    constexpr std::string_view prefix = "smooth=";
    if (text.starts_with(prefix)) {
        const auto body = text.substr(prefix.size());
        try {
            std::size_t used = 0;
            const double eps = std::stod(body, &used);
            if (used == body.size()) {
                return smooth(eps);
            }
        } catch (const std::invalid_argument&) {
        } catch (const std::out_of_range&) {
        }
    }
    throw Error(ErrorCode::InvalidArgument,
                "unknown zero-flux policy '" + text + "' (expected skip, strict or smooth=EPS)");
}

std::string ZeroFluxPolicy::to_string() const
{
    switch (mode) {
    case Mode::Skip: return "skip";
    case Mode::Strict: return "strict";
    case Mode::Smooth: {
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), epsilon);
        (void)ec;
        return "smooth=" + std::string(buf, end);
    }
    }
    return "skip";
}

//---------------------------------------------------------------------------//

double entropy(const MarkovEstimate& chain)
{
    const double log_r = std::log(static_cast<double>(chain.size()));
    double s = 0.0;
    for (double p : chain.dos()) {
        if (p > 0.0) {
            s -= p * std::log(p);
        }
    }
    // Rounding can push a uniform distribution a hair past 1 or a
    // degenerate one a hair below 0.
    return std::clamp(s / log_r, 0.0, 1.0);
}

EprResult epr(const MarkovEstimate& chain, ZeroFluxPolicy policy)
{
    const auto r = chain.size();
    EprResult out;
    double sum = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            double forward = chain.flux(i, j);
            double backward = chain.flux(j, i);
            if (forward == 0.0 && backward == 0.0) {
                continue;
            }
            if (forward == 0.0 || backward == 0.0) {
                ++out.one_sided_pairs;
                if (policy.mode == ZeroFluxPolicy::Mode::Skip) {
                    ++out.skipped_pairs;
                    continue;
                }
                if (policy.mode == ZeroFluxPolicy::Mode::Strict) {
                    throw OneSidedZeroFluxError(i, j);
                }
            }
            if (policy.mode == ZeroFluxPolicy::Mode::Smooth) {
                forward += policy.epsilon;
                backward += policy.epsilon;
            }
            sum += (forward - backward) * std::log(forward / backward);
        }
    }
    out.value = sum / std::log(static_cast<double>(r));
    return out;
}

Matrix<double> velocity(const MarkovEstimate& chain)
{
    const auto& space = chain.space();
    const auto r = space.size();
    const auto d = space.dimension();
    Matrix<double> v(r, d, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j) {
                continue;
            }
            const double net_in = chain.flux(j, i) - chain.flux(i, j);
            if (net_in == 0.0) {
                continue;
            }
            for (std::size_t a = 0; a < d; ++a) {
                v(i, a) += net_in * (space.coordinate(i, a) - space.coordinate(j, a));
            }
        }
    }
    return v;
}

double motion(const MarkovEstimate& chain, const Matrix<double>& v)
{
    double m = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
        double speed2 = 0.0;
        for (double c : v.row(i)) {
            speed2 += c * c;
        }
        m += chain.dos()[i] * speed2;
    }
    return 0.5 * m;
}

double motion(const MarkovEstimate& chain)
{
    return motion(chain, velocity(chain));
}

ObservableReport full_report(const MarkovEstimate& chain, ZeroFluxPolicy policy)
{
    ObservableReport rep;
    const auto production = epr(chain, policy);
    rep.entropy = entropy(chain);
    rep.epr = production.value;
    rep.skipped_pairs = production.skipped_pairs;
    rep.one_sided_pairs = production.one_sided_pairs;
    rep.velocity = velocity(chain);
    rep.motion = motion(chain, rep.velocity);
    rep.policy_used = policy;
    return rep;
}

}  // namespace eprstat
