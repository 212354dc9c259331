#pragma once

#include <atomic>

namespace maxrep {

/// Global float-backend tolerance. Every sign decision made on doubles
/// (zero eigenvalue counting, residual gates, transversality) consults
/// this value unless the caller passes an explicit override.
inline std::atomic<double>& tolerance_storage() {
    static std::atomic<double> eps{1e-9};
    return eps;
}

inline double tolerance() { return tolerance_storage().load(std::memory_order_relaxed); }

inline void set_tolerance(double eps) { tolerance_storage().store(eps, std::memory_order_relaxed); }

} // namespace maxrep
