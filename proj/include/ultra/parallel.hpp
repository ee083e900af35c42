#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <vector>

#include <omp.h>

namespace ultra {

/// Execution policy for the data-parallel kernels. The serial variants are
/// the reference implementations; both produce identical results.
enum class Exec { Serial, Parallel };

/// Fixed block size for ordered reductions. Block boundaries never depend on
/// the thread count, so float reductions are bit-reproducible.
inline constexpr std::size_t kReductionBlock = 256;

/// out[i] = f(i) for i in [0, count).
template <class T, class F>
std::vector<T> tabulate(std::size_t count, F&& f, Exec exec = Exec::Parallel) {
    std::vector<T> out(count);
    if (exec == Exec::Serial) {
        for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(ultra_tabulate_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

/// sum_{i < count} f(i), accumulated per fixed block and reduced in block order.
template <class T, class F>
T ordered_sum(std::size_t count, F&& f, Exec exec = Exec::Parallel) {
    std::size_t blocks = (count + kReductionBlock - 1) / kReductionBlock;
    auto block_sum = [&](std::size_t b) {
        T acc{};
        std::size_t end = std::min(count, (b + 1) * kReductionBlock);
        for (std::size_t i = b * kReductionBlock; i < end; ++i) acc += f(i);
        return acc;
    };
    std::vector<T> partial = tabulate<T>(blocks, block_sum, exec);
    T total{};
    for (auto& s : partial) total += s;
    return total;
}

}  // namespace ultra
