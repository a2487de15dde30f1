// SPDX-License-Identifier: MIT
#include "stablab/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace stablab {

void QuadratureSpec::validate() const {
    if (max_subdivisions < 1) throw DomainError("max_subdivisions", "must be >= 1");
    if (!(abs_tol > 0.0)) throw DomainError("abs_tol", "must be > 0");
    if (!(rel_tol > 0.0)) throw DomainError("rel_tol", "must be > 0");
    if (!(oscillatory_cutoff > 0.0)) throw DomainError("oscillatory_cutoff", "must be > 0");
}

namespace detail {

const std::array<double, 11>& Gk21::nodes() {
    static const std::array<double, 11> x = [] {
        std::array<double, 11> out{};
        const auto& src = boost::math::quadrature::gauss_kronrod<double, 21>::abscissa();
        std::copy(src.begin(), src.end(), out.begin());
        return out;
    }();
    return x;
}

const std::array<double, 11>& Gk21::kronrod_weights() {
    static const std::array<double, 11> w = [] {
        std::array<double, 11> out{};
        const auto& src = boost::math::quadrature::gauss_kronrod<double, 21>::weights();
        std::copy(src.begin(), src.end(), out.begin());
        return out;
    }();
    return w;
}

const std::array<double, 5>& Gk21::gauss_weights() {
    static const std::array<double, 5> w = [] {
        std::array<double, 5> out{};
        const auto& src = boost::math::quadrature::gauss<double, 10>::weights();
        std::copy(src.begin(), src.end(), out.begin());
        return out;
    }();
    return w;
}

}  // namespace detail

std::vector<double> uniform_breakpoints(double a, double b, double max_width) {
    const double span = b - a;
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(std::abs(span) / max_width)));
    std::vector<double> pts(n + 1);
    for (std::size_t i = 0; i <= n; ++i) pts[i] = a + span * static_cast<double>(i) / static_cast<double>(n);
    pts.back() = b;
    return pts;
}

}  // namespace stablab
