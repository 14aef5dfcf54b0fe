#include "contsense/numerics.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace contsense::num {

Extremum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                            double xtol, int max_iter) {
    if (!(hi > lo)) {
        throw std::invalid_argument("golden_section_max: need hi > lo");
    }
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    int it = 0;
    while (b - a > xtol && ++it <= max_iter) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return (f1 > f2) ? Extremum{x1, f1} : Extremum{x2, f2};
}

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    if (a == b) return {0.0, 0.0};
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 15, tol, &err);
    return {v, err};
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    const int workers = std::min(std::max(threads, 1), n);
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const int i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace contsense::num
