#include "omspec/scan.hpp"

#include <omp.h>

#include <exception>

namespace omspec {

std::vector<double> scan_serial(const PointFunction& f, std::span<const double> xs) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
    return out;
}

std::vector<double> scan_parallel(const PointFunction& f, std::span<const double> xs) {
    std::vector<double> out(xs.size());
    const auto n = static_cast<long>(xs.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(omspec_scan_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<double> scan(const PointFunction& f, std::span<const double> xs, Execution exec) {
    return exec == Execution::parallel ? scan_parallel(f, xs) : scan_serial(f, xs);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace omspec
