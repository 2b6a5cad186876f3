// Detuning scans. Every sample is independent, so the OpenMP kernel and the
// serial reference must agree bit for bit.

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace omspec {

enum class Execution { serial, parallel };

// f must be safe to call concurrently.
using PointFunction = std::function<double(double)>;

std::vector<double> scan_serial(const PointFunction& f, std::span<const double> xs);
std::vector<double> scan_parallel(const PointFunction& f, std::span<const double> xs);
std::vector<double> scan(const PointFunction& f, std::span<const double> xs, Execution exec);

int max_threads();

}  // namespace omspec
