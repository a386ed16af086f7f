#include "adpath/grover.hpp"

#include "adpath/error.hpp"
#include "adpath/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <mutex>
#include <thread>

namespace adpath::grover {

namespace {

void check_size(double N) {
    if (!(N >= 2.0)) throw Error(ErrorKind::InvalidArgument, "database size must be >= 2");
}

} // namespace

double gap(double N, double q) {
    check_size(N);
    return std::sqrt(4.0 * (1.0 - q) * q / N + (1.0 - 2.0 * q) * (1.0 - 2.0 * q));
}

double bloch_speed(double N, double q) {
    const double g = gap(N, q);
    return std::sqrt(1.0 / N - 1.0 / (N * N)) * 2.0 / (g * g);
}

double min_gap(double N) {
    check_size(N);
    return 1.0 / std::sqrt(N);
}

BlochPath path(double N) {
    check_size(N);
    const double a = 1.0 / std::sqrt(N);
    const double b = std::sqrt(1.0 - 1.0 / N);
    const Vec3 n_psi(2.0 * a * b, 0.0, a * a - b * b);
    const Vec3 z(0.0, 0.0, 1.0);
    return bloch_path([=](double q) -> Vec3 { return -(1.0 - q) * n_psi - q * z; },
                      [=](double) -> Vec3 { return n_psi - z; });
}

double GammaRule::gamma(double N) const {
    double g = 0.0;
    switch (kind) {
    case Kind::ProportionalToG0: g = value * min_gap(N); break;
    case Kind::Fixed: g = value; break;
    case Kind::PowerLaw: g = std::pow(N, -value / 2.0); break;
    }
    if (!(g > 0.0)) throw Error(ErrorKind::NonPositiveRate, "gamma rule yields non-positive rate");
    return g;
}

std::string GammaRule::describe() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::ProportionalToG0: os << "gamma = " << value << " * g0"; break;
    case Kind::Fixed: os << "gamma = " << value; break;
    case Kind::PowerLaw: os << "gamma = N^(-" << value << "/2)"; break;
    }
    return os.str();
}

double mass(double N, double gamma, double q) {
    const double g = gap(N, q);
    const double v = bloch_speed(N, q);
    return 0.25 * gamma * v * v / (g * g + gamma * gamma);
}

std::vector<double> breakpoints(double N) {
    const double w = 1.0 / std::sqrt(N);
    std::vector<double> out{0.5};
    for (double k = 0.25; k * w < 0.5; k *= 2.0) {
        out.push_back(0.5 - k * w);
        out.push_back(0.5 + k * w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double tau_for_gamma(double N, double gamma, double tol) {
    if (!(N >= 2.0)) throw Error(ErrorKind::InvalidArgument, "database size must be >= 2");
    if (!(gamma > 0.0)) throw Error(ErrorKind::NonPositiveRate, "gamma must be positive");
    QuadratureOptions qo;
    qo.tol = tol;
    qo.initial_panels = 4;
    const auto bp = breakpoints(N);
    const auto f = [N, gamma](double q) { return std::sqrt(mass(N, gamma, q)); };
    const double root = adaptive_simpson(f, 0.0, 1.0, qo, bp).value;
    return root * root;
}

double tau(double N, const GammaRule& rule, double tol) {
    return tau_for_gamma(N, rule.gamma(N), tol);
}

LogLogFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "log-log fit needs >= 2 matching points");
    }
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "log-log fit needs positive data");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[i]) - my);
    }
    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (x.size() > 2) {
        double rss = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = std::log(y[i]) - fit.intercept - fit.slope * std::log(x[i]);
            rss += r * r;
        }
        fit.slope_stderr = std::sqrt(rss / (n - 2.0) / sxx);
    }
    return fit;
}

ScalingResult scaling_experiment(const std::vector<std::uint64_t>& N_list, const GammaRule& rule,
                                 std::size_t exclude_smallest, std::size_t threads) {
    if (N_list.size() < 4) throw Error(ErrorKind::InvalidArgument, "scaling experiment needs >= 4 sizes");
    if (!std::is_sorted(N_list.begin(), N_list.end()) ||
        std::adjacent_find(N_list.begin(), N_list.end()) != N_list.end()) {
        throw Error(ErrorKind::NotMonotone, "N list must be strictly ascending");
    }
    if (N_list.front() < 2) throw Error(ErrorKind::InvalidArgument, "database size must be >= 2");
    if (N_list.size() < exclude_smallest + 2) {
        throw Error(ErrorKind::InvalidArgument, "too few sizes left after excluding the smallest");
    }

    ScalingResult res;
    res.rows.resize(N_list.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t i = next++; i < N_list.size(); i = next++) {
            try {
                const auto N = static_cast<double>(N_list[i]);
                const double g = rule.gamma(N);
                res.rows[i] = {N_list[i], g, tau_for_gamma(N, g)};
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const std::size_t n_threads = std::clamp<std::size_t>(threads, 1, N_list.size());
        for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<double> xs, ys;
    for (std::size_t i = exclude_smallest; i < res.rows.size(); ++i) {
        xs.push_back(static_cast<double>(res.rows[i].N));
        ys.push_back(res.rows[i].tau);
    }
    res.fit = loglog_fit(xs, ys);
    res.fit_first_N = res.rows[exclude_smallest].N;
    res.fit_last_N = res.rows.back().N;
    return res;
}

} // namespace adpath::grover
